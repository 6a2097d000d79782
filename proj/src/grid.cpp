#include "ncdq/grid.hpp"

#include <cmath>
#include <numeric>

namespace ncdq {

void GridSpec::validate() const {
    for (const GridAxis* axis : {&axis1, &axis2}) {
        if (axis->count < 1) throw ConfigError("grid: count >= 1 violated");
        if (!std::isfinite(axis->min) || !std::isfinite(axis->max)) throw ConfigError("grid: finite range required");
        if (axis->min > axis->max) throw ConfigError("grid: min <= max violated");
    }
    if (axis1.var == axis2.var) throw ConfigError("grid: the two plotted axes must differ");
}

void normalize_grid(std::vector<double>& values, double cell_area) {
    const double total = std::accumulate(values.begin(), values.end(), 0.0) * cell_area;
    if (total == 0.0 || !std::isfinite(total)) throw NumericalError("grid normalization: integral is zero or not finite");
    for (double& v : values) v /= total;
}

}  // namespace ncdq
