// Shared generators and independent oracles for the test suites. Nothing
// here calls into the star engine's pair-weight machinery.
#ifndef NCDQ_TESTS_SUPPORT_HPP
#define NCDQ_TESTS_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "ncdq/phase_poly.hpp"
#include "ncdq/quadratic.hpp"

namespace ncdq::testing {

inline Rational q(long num, unsigned long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Small rationals p/q, |p| <= 6, 1 <= q <= 4.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    Rational rational(int max_num = 6, int max_den = 4) {
        std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
        return q(num(rng_), static_cast<unsigned long>(den(rng_)));
    }

    Rational nonzero_rational() {
        for (;;) {
            Rational r = rational();
            if (sgn(r) != 0) return r;
        }
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    /// Random exact polynomial of total degree <= max_degree with `terms`
    /// attempted terms; coefficients complex rational when `complex`.
    ExactPoly poly(int max_degree, int terms, bool complex = false) {
        ExactPoly p;
        for (int t = 0; t < terms; ++t) {
            Exponent e{};
            int budget = integer(0, max_degree);
            for (int i = 0; i < kPhaseDim; ++i) {
                const int k = i == kPhaseDim - 1 ? budget : integer(0, budget);
                e[i] = static_cast<std::uint16_t>(k);
                budget -= k;
            }
            p.add_term(e, complex ? ExactComplex(rational(), rational()) : ExactComplex(rational()));
        }
        return p;
    }

    PerfectSquareHamiltonian<Rational> hamiltonian() {
        PerfectSquareHamiltonian<Rational> h;
        for (auto* v : {&h.a, &h.b, &h.c, &h.d})
            for (auto& x : *v) x = rational(3, 3);
        return h;
    }

    DeformationParams<Rational> deformation() {
        for (;;) {
            DeformationParams<Rational> p{q(integer(1, 6), static_cast<unsigned long>(integer(1, 4))), rational(3, 4),
                                          rational(3, 4)};
            if (p.hbar * p.hbar > p.mu * p.nu) return p;
        }
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Poisson tensor Π^{ab} over (x1, x2, p1, p2).
inline std::array<std::array<Rational, 4>, 4> poisson_tensor(const DeformationParams<Rational>& p) {
    std::array<std::array<Rational, 4>, 4> t;
    for (auto& row : t)
        for (auto& v : row) v = 0;
    t[0][2] = p.hbar;
    t[2][0] = -p.hbar;
    t[1][3] = p.hbar;
    t[3][1] = -p.hbar;
    t[0][1] = p.mu;
    t[1][0] = -p.mu;
    t[2][3] = p.nu;
    t[3][2] = -p.nu;
    return t;
}

/// Order-by-order expansion of the star product over ordered index
/// sequences: Σ_n (i/2)^n/n! Σ_{a₁b₁…aₙbₙ} Π^{a₁b₁}⋯Π^{aₙbₙ} ∂_{a₁…aₙ}f ∂_{b₁…bₙ}g.
/// Cost grows like 16^n; keep degrees small.
inline ExactPoly brute_force_star(const ExactPoly& f, const ExactPoly& g, const DeformationParams<Rational>& prm) {
    if (f.is_zero() || g.is_zero()) return {};
    const auto pi = poisson_tensor(prm);
    const int top = std::min(f.degree(), g.degree());
    ExactPoly out;
    ExactComplex order_factor(1);
    const ExactComplex half_i(q(0), q(1, 2));
    for (int n = 0; n <= top; ++n) {
        if (n > 0) order_factor = order_factor * half_i / ExactComplex(static_cast<long>(n));
        std::map<std::pair<Exponent, Exponent>, Rational> weights;
        std::function<void(int, Exponent, Exponent, Rational)> rec = [&](int depth, Exponent a, Exponent b,
                                                                         Rational w) {
            if (sgn(w) == 0) return;
            if (depth == n) {
                weights[{a, b}] += w;
                return;
            }
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    if (sgn(pi[i][j]) == 0) continue;
                    Exponent a2 = a, b2 = b;
                    ++a2[i];
                    ++b2[j];
                    rec(depth + 1, a2, b2, Rational(w * pi[i][j]));
                }
        };
        rec(0, Exponent{}, Exponent{}, Rational(1));
        for (const auto& [ab, w] : weights) {
            if (sgn(w) == 0) continue;
            out += f.derivative(ab.first) * g.derivative(ab.second) * (order_factor * ExactComplex(w));
        }
    }
    return out;
}

/// L_n(z) = Σ_j C(n,j)(−z)^j/j!, the explicit sum in exact arithmetic.
inline Rational laguerre_explicit(unsigned n, const Rational& z) {
    Rational sum(0), term(1);
    for (unsigned j = 0; j <= n; ++j) {
        if (j > 0) term = term * Rational(static_cast<long>(n - j + 1)) * (-z) / Rational(static_cast<long>(j * j));
        sum += term;
    }
    return sum;
}

inline double laguerre_explicit(unsigned n, double z) { return laguerre_explicit(n, Rational(z)).get_d(); }

/// Truncated power series in one variable.
using Series = std::vector<double>;

inline Series series_mul(const Series& a, const Series& b) {
    Series c(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

inline Series series_inv(const Series& a) {
    Series r(a.size(), 0.0);
    r[0] = 1.0 / a[0];
    for (std::size_t n = 1; n < a.size(); ++n) {
        double s = 0.0;
        for (std::size_t k = 1; k <= n; ++k) s += a[k] * r[n - k];
        r[n] = -s / a[0];
    }
    return r;
}

/// exp of a series with zero constant term, via n·e_n = Σ k·a_k·e_{n−k}.
inline Series series_exp(const Series& a) {
    Series e(a.size(), 0.0);
    e[0] = std::exp(a[0]);
    for (std::size_t n = 1; n < a.size(); ++n) {
        double s = 0.0;
        for (std::size_t k = 1; k <= n; ++k) s += static_cast<double>(k) * a[k] * e[n - k];
        e[n] = s / static_cast<double>(n);
    }
    return e;
}

/// Taylor coefficients in τ of sech(kτ/ħ)·exp(−(H/k) tanh(kτ/ħ)) at τ = 0,
/// i.e. the closed-form star exponential at t = −iτ.
inline Series wick_closed_form_taylor(double h_value, double k, double hbar, std::size_t order) {
    const std::size_t len = order + 1;
    Series ch(len, 0.0), sh(len, 0.0);
    double u = k / hbar, term = 1.0;
    for (std::size_t n = 0; n < len; ++n) {
        if (n > 0) term *= u / static_cast<double>(n);
        (n % 2 == 0 ? ch : sh)[n] = term;
    }
    const Series sech = series_inv(ch);
    Series tanh = series_mul(sh, sech);
    for (double& c : tanh) c *= -h_value / k;
    return series_mul(sech, series_exp(tanh));
}

}  // namespace ncdq::testing

#endif
