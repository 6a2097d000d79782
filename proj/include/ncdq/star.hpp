#ifndef NCDQ_STAR_HPP
#define NCDQ_STAR_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "ncdq/errors.hpp"
#include "ncdq/gauss_lag.hpp"
#include "ncdq/phase_poly.hpp"

namespace ncdq {

/// One nonzero entry Π^{left,right} of the Poisson tensor, premultiplied by
/// i/2 so that the star product is  f exp(Σ factor ←∂_left →∂_right) g.
template <class S>
struct PoissonEntry {
    int left;
    int right;
    S factor;
};

/// Immutable configuration of the star product: the deformation and, for
/// the float backend, the comparison tolerance used by verification helpers.
template <class S>
class StarContext {
public:
    using Real = RealOf<S>;

    explicit StarContext(DeformationParams<Real> params, double tolerance = 1e-10)
        : params_(std::move(params)), tolerance_(tolerance) {
        if constexpr (!ScalarTraits<S>::exact)
            if (!(tolerance_ > 0.0)) throw ConfigError("star context: tolerance > 0 violated");
        build_entries();
    }

    const DeformationParams<Real>& params() const { return params_; }
    double tolerance() const { return tolerance_; }
    const std::vector<PoissonEntry<S>>& entries() const { return entries_; }

private:
    void build_entries() {
        using T = ScalarTraits<S>;
        const S half_i = T::i() * T::from_real(Real(1) / Real(2));
        auto push = [&](Var l, Var r, const Real& w) {
            if (w == Real(0)) return;
            entries_.push_back({index_of(l), index_of(r), half_i * T::from_real(w)});
            entries_.push_back({index_of(r), index_of(l), -(half_i * T::from_real(w))});
        };
        push(Var::x1, Var::p1, params_.hbar);
        push(Var::x2, Var::p2, params_.hbar);
        push(Var::x1, Var::x2, params_.mu);
        push(Var::p1, Var::p2, params_.nu);
    }

    DeformationParams<Real> params_;
    double tolerance_;
    std::vector<PoissonEntry<S>> entries_;
};

using ExactContext = StarContext<ExactComplex>;
using FloatContext = StarContext<Complex>;

namespace detail {

/// Weight of every (α, β) derivative pair appearing in the truncated
/// bidifferential exponential, with α ≤ left_cap, β ≤ right_cap
/// componentwise and |α| = |β| ≤ max_order.
template <class S>
using PairWeights = std::map<std::pair<Exponent, Exponent>, S>;

template <class S>
void enumerate_pairs(const std::vector<PoissonEntry<S>>& entries, std::size_t idx, int remaining,
                     const Exponent& left_cap, const Exponent& right_cap, Exponent alpha, Exponent beta,
                     const S& weight, PairWeights<S>& out) {
    if (idx == entries.size()) {
        auto [it, inserted] = out.try_emplace({alpha, beta}, weight);
        if (!inserted) it->second += weight;
        return;
    }
    const auto& e = entries[idx];
    S w = weight;
    for (int k = 0;; ++k) {
        enumerate_pairs(entries, idx + 1, remaining - k, left_cap, right_cap, alpha, beta, w, out);
        if (k == remaining) break;
        if (alpha[e.left] == left_cap[e.left] || beta[e.right] == right_cap[e.right]) break;
        ++alpha[e.left];
        ++beta[e.right];
        // factor^(k+1)/(k+1)!
        w = w * e.factor / ScalarTraits<S>::from_int(k + 1);
    }
}

template <class S>
PairWeights<S> pair_weights(const std::vector<PoissonEntry<S>>& entries, int max_order, const Exponent& left_cap,
                            const Exponent& right_cap) {
    PairWeights<S> out;
    enumerate_pairs(entries, 0, max_order, left_cap, right_cap, Exponent{}, Exponent{},
                    ScalarTraits<S>::from_int(1), out);
    std::erase_if(out, [](const auto& kv) { return ScalarTraits<S>::is_zero(kv.second); });
    return out;
}

inline Exponent uniform_cap(int d) {
    const auto v = static_cast<std::uint16_t>(std::max(d, 0));
    return {v, v, v, v};
}

/// Σ_{α,β} w_{αβ} L(α)·R(β), grouped by the left index when group_left so
/// that each distinct α costs one polynomial multiplication.
template <class S, class LeftFn, class RightFn>
PhasePoly<S> contract(const PairWeights<S>& weights, LeftFn&& left, RightFn&& right, bool group_left) {
    std::map<Exponent, PhasePoly<S>> grouped;
    for (const auto& [ab, w] : weights) {
        const auto& [alpha, beta] = ab;
        const PhasePoly<S>& other = group_left ? right(beta) : left(alpha);
        grouped[group_left ? alpha : beta] += other * w;
    }
    PhasePoly<S> out;
    for (const auto& [idx, partial] : grouped) out += group_left ? left(idx) * partial : partial * right(idx);
    return out;
}

template <class S>
class PolyDerivatives {
public:
    explicit PolyDerivatives(const PhasePoly<S>& f) : f_(f) {}
    const PhasePoly<S>& operator()(const Exponent& a) {
        auto it = cache_.find(a);
        if (it == cache_.end()) it = cache_.emplace(a, f_.derivative(a)).first;
        return it->second;
    }

private:
    const PhasePoly<S>& f_;
    std::map<Exponent, PhasePoly<S>> cache_;
};

}  // namespace detail

/// f ★ g for polynomials. The exponential series terminates exactly at
/// min(deg f, deg g) derivative pairs.
template <class S>
PhasePoly<S> star(const StarContext<S>& ctx, const PhasePoly<S>& f, const PhasePoly<S>& g) {
    if (f.is_zero() || g.is_zero()) return {};
    const int order = std::min(f.degree(), g.degree());
    const auto weights = detail::pair_weights(ctx.entries(), order, f.max_exponents(), g.max_exponents());
    detail::PolyDerivatives<S> df(f), dg(g);
    return detail::contract<S>(weights, df, dg, true);
}

/// f ★ w with w = e^q p; terminates at deg f derivative pairs.
template <class S>
GaussLagFn<S> star(const StarContext<S>& ctx, const PhasePoly<S>& f, const GaussLagFn<S>& w) {
    if (w.is_polynomial()) return GaussLagFn<S>::polynomial(star(ctx, f, w.prefactor()));
    if (f.is_zero()) return GaussLagFn<S>(w.exponent(), {});
    const int order = f.degree();
    const auto weights = detail::pair_weights(ctx.entries(), order, f.max_exponents(), detail::uniform_cap(order));
    detail::PolyDerivatives<S> df(f);
    GaussLagDerivatives<S> dw(w);
    return GaussLagFn<S>(w.exponent(), detail::contract<S>(weights, df, dw, true));
}

/// w ★ g with w = e^q p; terminates at deg g derivative pairs.
template <class S>
GaussLagFn<S> star(const StarContext<S>& ctx, const GaussLagFn<S>& w, const PhasePoly<S>& g) {
    if (w.is_polynomial()) return GaussLagFn<S>::polynomial(star(ctx, w.prefactor(), g));
    if (g.is_zero()) return GaussLagFn<S>(w.exponent(), {});
    const int order = g.degree();
    const auto weights = detail::pair_weights(ctx.entries(), order, detail::uniform_cap(order), g.max_exponents());
    GaussLagDerivatives<S> dw(w);
    detail::PolyDerivatives<S> dg(g);
    return GaussLagFn<S>(w.exponent(), detail::contract<S>(weights, dw, dg, false));
}

/// Star product of two Gaussian-class functions. Only defined when one side
/// is in fact a polynomial; otherwise the series does not terminate.
template <class S>
GaussLagFn<S> star(const StarContext<S>& ctx, const GaussLagFn<S>& a, const GaussLagFn<S>& b) {
    if (a.is_polynomial()) return star(ctx, a.prefactor(), b);
    if (b.is_polynomial()) return star(ctx, a, b.prefactor());
    throw UnsupportedProduct("star product of two non-polynomial GaussLagFn values is not representable");
}

/// [f, g]_★ = f★g − g★f.
template <class S, class F, class G>
auto moyal_bracket(const StarContext<S>& ctx, const F& f, const G& g) {
    return star(ctx, f, g) - star(ctx, g, f);
}

/// h ★ h ★ ⋯ ★ h (n factors); n = 0 gives 1.
template <class S>
PhasePoly<S> star_power(const StarContext<S>& ctx, const PhasePoly<S>& h, unsigned n) {
    PhasePoly<S> acc = PhasePoly<S>::constant(ScalarTraits<S>::from_int(1));
    for (unsigned i = 0; i < n; ++i) acc = star(ctx, acc, h);
    return acc;
}

/// Taylor coefficients c_n = (1/n!)(1/iħ)^n (h★)^n, n = 0..order, of the
/// star exponential in t.
inline std::vector<FloatPoly> star_exp_coefficients(const FloatContext& ctx, const FloatPoly& h, unsigned order) {
    std::vector<FloatPoly> coeffs;
    coeffs.reserve(order + 1);
    const Complex step = 1.0 / (Complex(0.0, 1.0) * ctx.params().hbar);
    FloatPoly power = FloatPoly::constant(1.0);
    Complex scale = 1.0;
    for (unsigned n = 0; n <= order; ++n) {
        if (n > 0) {
            power = star(ctx, h, power);
            scale *= step / static_cast<double>(n);
        }
        coeffs.push_back(power * scale);
    }
    return coeffs;
}

/// Partial sum Σ_{n ≤ order} (1/n!)(t/iħ)^n (h★)^n. Complex t covers the
/// Wick-rotated regime t = −iτ.
inline FloatPoly star_exp_series(const FloatContext& ctx, const FloatPoly& h, Complex t, unsigned order) {
    const auto coeffs = star_exp_coefficients(ctx, h, order);
    FloatPoly sum;
    Complex tn = 1.0;
    for (unsigned n = 0; n <= order; ++n) {
        sum += coeffs[n] * tn;
        tn *= t;
    }
    return sum;
}

}  // namespace ncdq

#endif
