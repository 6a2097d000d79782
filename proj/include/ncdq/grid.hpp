#ifndef NCDQ_GRID_HPP
#define NCDQ_GRID_HPP

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#include "ncdq/phase_space.hpp"

namespace ncdq {

/// Evenly spaced samples of one phase-space slot; count = 1 gives just min.
struct GridAxis {
    Var var = Var::x1;
    double min = -1.0;
    double max = 1.0;
    std::size_t count = 1;

    double at(std::size_t i) const {
        if (count <= 1) return min;
        return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    double step() const { return count <= 1 ? 1.0 : (max - min) / static_cast<double>(count - 1); }
};

/// Two plotted axes over a fixed base point; flat index is row-major with
/// axis1 as the slow index.
struct GridSpec {
    GridAxis axis1;
    GridAxis axis2{Var::p1};
    PhasePoint base;

    /// Throws ConfigError on empty, non-finite, inverted or coincident axes.
    void validate() const;

    std::size_t size() const { return axis1.count * axis2.count; }

    PhasePoint point(std::size_t flat) const {
        PhasePoint pt = base;
        pt.coords[index_of(axis1.var)] = axis1.at(flat / axis2.count);
        pt.coords[index_of(axis2.var)] = axis2.at(flat % axis2.count);
        return pt;
    }

    double cell_area() const { return axis1.step() * axis2.step(); }
};

/// Reference implementation: f at every grid point, row-major.
template <class F>
auto tabulate_serial(const GridSpec& grid, F&& f) {
    using Value = std::invoke_result_t<F&, const PhasePoint&>;
    std::vector<Value> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.point(i));
    return out;
}

/// OpenMP version of tabulate_serial. Every point is computed independently
/// and written to its own slot, so results are bit-identical to the serial
/// kernel regardless of scheduling. The first exception thrown by any
/// worker is rethrown after the parallel region.
template <class F>
auto tabulate_parallel(const GridSpec& grid, F&& f) {
    using Value = std::invoke_result_t<F&, const PhasePoint&>;
    std::vector<Value> out(grid.size());
    const auto n = static_cast<std::ptrdiff_t>(out.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[i] = f(grid.point(static_cast<std::size_t>(i)));
        } catch (...) {
#pragma omp critical(ncdq_grid_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

/// Divides by Σ values × cell area so the grid integrates to one. Plotting
/// aid only; Wigner functions are otherwise kept unnormalized.
void normalize_grid(std::vector<double>& values, double cell_area);

}  // namespace ncdq

#endif
