#ifndef NCDQ_GAUSS_LAG_HPP
#define NCDQ_GAUSS_LAG_HPP

#include <cmath>
#include <map>
#include <utility>

#include "ncdq/errors.hpp"
#include "ncdq/linear_map.hpp"
#include "ncdq/phase_poly.hpp"

namespace ncdq {

/// exp(q(ξ))·p(ξ) with q of total degree at most 2.
///
/// The class is closed under differentiation, multiplication by
/// polynomials and invertible linear substitutions, which is all the star
/// engine needs to act on Wigner functions.
template <class S>
class GaussLagFn {
public:
    using Poly = PhasePoly<S>;
    using Real = RealOf<S>;

    GaussLagFn() = default;

    GaussLagFn(Poly exponent, Poly prefactor) : exponent_(std::move(exponent)), prefactor_(std::move(prefactor)) {
        if (exponent_.degree() > 2) throw UnsupportedProduct("GaussLagFn exponent must have degree <= 2");
    }

    static GaussLagFn polynomial(Poly p) { return GaussLagFn(Poly{}, std::move(p)); }

    const Poly& exponent() const { return exponent_; }
    const Poly& prefactor() const { return prefactor_; }
    bool is_polynomial() const { return exponent_.is_zero(); }

    /// ∂_v(e^q p) = e^q (∂_v p + (∂_v q) p).
    GaussLagFn derivative(Var v) const {
        return GaussLagFn(exponent_, prefactor_.derivative(v) + exponent_.derivative(v) * prefactor_);
    }

    GaussLagFn derivative(const Exponent& alpha) const {
        GaussLagFn out = *this;
        for (int i = 0; i < kPhaseDim; ++i)
            for (int k = 0; k < alpha[i]; ++k) out = out.derivative(static_cast<Var>(i));
        return out;
    }

    GaussLagFn conj() const { return GaussLagFn(exponent_.conj(), prefactor_.conj()); }

    friend GaussLagFn operator*(const GaussLagFn& w, const Poly& p) { return GaussLagFn(w.exponent_, w.prefactor_ * p); }
    friend GaussLagFn operator*(const Poly& p, const GaussLagFn& w) { return w * p; }
    friend GaussLagFn operator*(const GaussLagFn& w, const S& s) { return GaussLagFn(w.exponent_, w.prefactor_ * s); }
    friend GaussLagFn operator*(const S& s, const GaussLagFn& w) { return w * s; }

    /// Ordinary pointwise product; exponents add.
    friend GaussLagFn operator*(const GaussLagFn& a, const GaussLagFn& b) {
        return GaussLagFn(a.exponent_ + b.exponent_, a.prefactor_ * b.prefactor_);
    }

    /// Sums are only representable when the Gaussian factors coincide.
    friend GaussLagFn operator+(const GaussLagFn& a, const GaussLagFn& b) {
        require_same_exponent(a, b);
        return GaussLagFn(a.exponent_, a.prefactor_ + b.prefactor_);
    }
    friend GaussLagFn operator-(const GaussLagFn& a, const GaussLagFn& b) {
        require_same_exponent(a, b);
        return GaussLagFn(a.exponent_, a.prefactor_ - b.prefactor_);
    }

    friend bool operator==(const GaussLagFn& a, const GaussLagFn& b) {
        return a.exponent_ == b.exponent_ && a.prefactor_ == b.prefactor_;
    }

private:
    static void require_same_exponent(const GaussLagFn& a, const GaussLagFn& b) {
        if (!(a.exponent_ == b.exponent_)) {
            // float backends may differ by rounding in the exponent
            if constexpr (ScalarTraits<S>::exact) {
                throw UnsupportedProduct("GaussLagFn sum with different exponents");
            } else {
                const double scale = std::max(1.0, std::max(a.exponent_.max_abs(), b.exponent_.max_abs()));
                if (max_coefficient_difference(a.exponent_, b.exponent_) > 1e-12 * scale)
                    throw UnsupportedProduct("GaussLagFn sum with different exponents");
            }
        }
    }

    Poly exponent_;
    Poly prefactor_;
};

using ExactGaussLag = GaussLagFn<ExactComplex>;
using FloatGaussLag = GaussLagFn<Complex>;

/// exp(q(pt))·p(pt). Exact-backend functions are rounded to doubles first.
template <class S>
Complex gausslag_eval(const GaussLagFn<S>& w, const PhasePoint& pt) {
    Complex q, p;
    if constexpr (ScalarTraits<S>::exact) {
        const FloatPoly qf = to_float(w.exponent()), pf = to_float(w.prefactor());
        q = qf.evaluate(pt);
        p = pf.evaluate(pt);
    } else {
        q = w.exponent().evaluate(pt);
        p = w.prefactor().evaluate(pt);
    }
    const Complex value = std::exp(q) * p;
    if (!std::isfinite(q.real()) || !std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw NumericalError("GaussLagFn evaluation is not finite");
    return value;
}

template <class S>
GaussLagFn<S> substitute_linear(const GaussLagFn<S>& w, const Matrix4<RealOf<S>>& m,
                                const Vec4<RealOf<S>>& shift = {}) {
    return GaussLagFn<S>(substitute_linear(w.exponent(), m, shift), substitute_linear(w.prefactor(), m, shift));
}

/// Repeated conjugated derivatives D_v p = ∂_v p + (∂_v q) p of a GaussLagFn
/// prefactor, memoized per multi-index.
template <class S>
class GaussLagDerivatives {
public:
    explicit GaussLagDerivatives(const GaussLagFn<S>& w) {
        for (int i = 0; i < kPhaseDim; ++i) grad_[i] = w.exponent().derivative(static_cast<Var>(i));
        cache_.emplace(Exponent{}, w.prefactor());
    }

    const PhasePoly<S>& operator()(const Exponent& beta) {
        if (auto it = cache_.find(beta); it != cache_.end()) return it->second;
        int v = 0;
        while (beta[v] == 0) ++v;
        Exponent lower = beta;
        --lower[v];
        const PhasePoly<S> prev = (*this)(lower);
        PhasePoly<S> next = prev.derivative(static_cast<Var>(v)) + grad_[v] * prev;
        return cache_.emplace(beta, std::move(next)).first->second;
    }

private:
    std::array<PhasePoly<S>, kPhaseDim> grad_;
    std::map<Exponent, PhasePoly<S>> cache_;
};

inline FloatGaussLag to_float(const ExactGaussLag& w) {
    return FloatGaussLag(to_float(w.exponent()), to_float(w.prefactor()));
}

}  // namespace ncdq

#endif
