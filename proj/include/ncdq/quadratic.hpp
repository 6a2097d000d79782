#ifndef NCDQ_QUADRATIC_HPP
#define NCDQ_QUADRATIC_HPP

#include <array>
#include <vector>

#include "ncdq/errors.hpp"
#include "ncdq/gauss_lag.hpp"
#include "ncdq/phase_poly.hpp"

namespace ncdq {

/// H = (a·x + b·p)² + (c·x + d·p)² with x = (x1, x2), p = (p1, p2).
template <class R>
struct PerfectSquareHamiltonian {
    std::array<R, 2> a{};
    std::array<R, 2> b{};
    std::array<R, 2> c{};
    std::array<R, 2> d{};

    /// The two squared linear forms as coefficient rows over (x1, x2, p1, p2).
    std::array<R, kPhaseDim> first_form() const { return {a[0], a[1], b[0], b[1]}; }
    std::array<R, kPhaseDim> second_form() const { return {c[0], c[1], d[0], d[1]}; }

    template <class S>
    PhasePoly<S> polynomial() const {
        const auto l1 = PhasePoly<S>::linear(first_form());
        const auto l2 = PhasePoly<S>::linear(second_form());
        return l1 * l1 + l2 * l2;
    }

    /// Same H with the two squares exchanged; flips the sign of k.
    PerfectSquareHamiltonian swapped() const { return {c, d, a, b}; }
};

/// k = (a·d − b·c)ħ + (a∧c)μ + (b∧d)ν, with u∧v = u₁v₂ − u₂v₁.
template <class R>
R k_of(const PerfectSquareHamiltonian<R>& h, const DeformationParams<R>& params) {
    const R dot_ad = h.a[0] * h.d[0] + h.a[1] * h.d[1];
    const R dot_bc = h.b[0] * h.c[0] + h.b[1] * h.c[1];
    const R wedge_ac = h.a[0] * h.c[1] - h.a[1] * h.c[0];
    const R wedge_bd = h.b[0] * h.d[1] - h.b[1] * h.d[0];
    return R((dot_ad - dot_bc) * params.hbar + wedge_ac * params.mu + wedge_bd * params.nu);
}

/// L_n(z) by the three-term recurrence (n+1)L_{n+1} = (2n+1−z)L_n − nL_{n−1}.
template <class T>
T laguerre(unsigned n, const T& z) {
    T prev(1);
    if (n == 0) return prev;
    T cur = T(1) - z;
    for (unsigned k = 1; k < n; ++k) {
        T next = (T(2 * k + 1) - z) * cur - T(k) * prev;
        next /= T(k + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Power-basis coefficients of L_n: (−1)^j C(n, j)/j!.
std::vector<Rational> laguerre_coefficients(unsigned n);

/// e^{−H/k} L_n(2H/k) for a phase-space polynomial H and k > 0, with the
/// Laguerre polynomial expanded into the prefactor.
template <class S>
GaussLagFn<S> wigner_from_k(const PhasePoly<S>& h, const RealOf<S>& k, unsigned n) {
    using T = ScalarTraits<S>;
    using Real = RealOf<S>;
    if (!(k > 0)) throw SingularityError("Wigner function requires k > 0");
    const auto coeffs = laguerre_coefficients(n);
    const PhasePoly<S> z = h * T::from_real(Real(Real(2) / k));
    PhasePoly<S> prefactor;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        Real c;
        if constexpr (T::exact) c = *it;
        else c = it->get_d();
        prefactor = prefactor * z + PhasePoly<S>::constant(T::from_real(c));
    }
    return GaussLagFn<S>(h * T::from_real(Real(Real(-1) / k)), std::move(prefactor));
}

/// Levels E_n = (2n+1)k. When the raw k is negative the squares are
/// swapped (k → −k) and `sign_normalized` records it.
template <class R>
struct SpectralData {
    R k{};
    std::vector<R> levels;
    bool sign_normalized = false;
};

/// k with the sign convention used by wigner_n and spectrum; throws on k = 0.
template <class R>
R normalized_k(const PerfectSquareHamiltonian<R>& h, const DeformationParams<R>& params, bool* flipped = nullptr) {
    const R k = k_of(h, params);
    if (k == R(0)) throw SingularityError("degenerate Hamiltonian: k = 0");
    if (flipped) *flipped = k < R(0);
    return k < R(0) ? R(-k) : k;
}

template <class S>
GaussLagFn<S> wigner_n(const PerfectSquareHamiltonian<RealOf<S>>& h, const DeformationParams<RealOf<S>>& params,
                       unsigned n) {
    return wigner_from_k(h.template polynomial<S>(), normalized_k(h, params), n);
}

template <class R>
SpectralData<R> spectrum(const PerfectSquareHamiltonian<R>& h, const DeformationParams<R>& params, unsigned n_max) {
    SpectralData<R> out;
    out.k = normalized_k(h, params, &out.sign_normalized);
    out.levels.reserve(n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n) out.levels.push_back(R(R(2 * n + 1) * out.k));
    return out;
}

}  // namespace ncdq

#endif
