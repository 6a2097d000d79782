#ifndef NCDQ_UNIVARIATE_HPP
#define NCDQ_UNIVARIATE_HPP

#include <utility>
#include <vector>

#include "ncdq/phase_poly.hpp"

namespace ncdq {

/// Polynomial G(H) = Σ coeffs[j] H^j in a single variable.
template <class R>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static UniPoly monomial(unsigned degree, R c = R(1)) {
        std::vector<R> v(degree + 1, R(0));
        v[degree] = std::move(c);
        return UniPoly(std::move(v));
    }

    const std::vector<R>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    UniPoly derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<R> d(coeffs_.size() - 1);
        for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = coeffs_[j] * R(static_cast<long>(j));
        return UniPoly(std::move(d));
    }

    /// G(H) as a phase-space polynomial, by Horner's rule.
    template <class S>
    PhasePoly<S> compose(const PhasePoly<S>& h) const {
        PhasePoly<S> acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * h + PhasePoly<S>::constant(ScalarTraits<S>::from_real(*it));
        return acc;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == R(0)) coeffs_.pop_back();
    }

    std::vector<R> coeffs_;
};

}  // namespace ncdq

#endif
