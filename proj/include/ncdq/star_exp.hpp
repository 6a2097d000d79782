#ifndef NCDQ_STAR_EXP_HPP
#define NCDQ_STAR_EXP_HPP

#include <cmath>
#include <string>

#include "ncdq/quadratic.hpp"
#include "ncdq/star.hpp"
#include "ncdq/univariate.hpp"

namespace ncdq {

/// Closed-form star exponential of a perfect-square Hamiltonian,
///   Exp(Ht/iħ) = sec(kt/ħ) · exp((H/ik) tan(kt/ħ)),
/// evaluated pointwise. Construction fails at caustics (cos(kt/ħ) = 0).
class StarExpClosed {
public:
    StarExpClosed(FloatPoly hamiltonian, double k, double hbar, Complex t);

    Complex operator()(const PhasePoint& pt) const;

    double k() const { return k_; }
    Complex time() const { return t_; }

private:
    FloatPoly h_;
    double k_;
    Complex secant_;
    Complex exponent_scale_;  // tan(kt/ħ)/(ik)
    Complex t_;
};

/// Relative size of cos(kt/ħ) below which t is treated as a caustic.
inline constexpr double kCausticTolerance = 1e-12;

StarExpClosed star_exp_closed(const PerfectSquareHamiltonian<double>& h, const FloatContext& ctx, Complex t);

/// Compares H★G(H) computed with the star engine against the reduced
/// one-variable operator (H − k²∂_H − k²H∂²_H)G applied to G. Returns the
/// largest coefficient of the difference; zero in the exact backend.
template <class S>
double verify_operator_reduction(const StarContext<S>& ctx, const PerfectSquareHamiltonian<RealOf<S>>& h,
                                 const UniPoly<RealOf<S>>& g) {
    using Real = RealOf<S>;
    using T = ScalarTraits<S>;
    const PhasePoly<S> hp = h.template polynomial<S>();
    const Real k = k_of(h, ctx.params());
    const Real k2 = k * k;

    const PhasePoly<S> lhs = star(ctx, hp, g.compose(hp));

    const UniPoly<Real> g1 = g.derivative();
    const UniPoly<Real> g2 = g1.derivative();
    const PhasePoly<S> rhs = hp * g.compose(hp) - g1.compose(hp) * T::from_real(k2) -
                             hp * g2.compose(hp) * T::from_real(k2);
    return max_coefficient_difference(lhs, rhs);
}

}  // namespace ncdq

#endif
