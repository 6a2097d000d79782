#ifndef NCDQ_PHASE_POLY_HPP
#define NCDQ_PHASE_POLY_HPP

#include <algorithm>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "ncdq/errors.hpp"
#include "ncdq/phase_space.hpp"
#include "ncdq/scalar.hpp"

namespace ncdq {

/// Polynomial in (x1, x2, p1, p2) with coefficients in backend S.
///
/// Terms are kept in a sorted map so iteration order, printing and every
/// derived computation are deterministic. Zero coefficients are never
/// stored; in the float backend coefficients below `ScalarTraits<S>::chop`
/// times the largest magnitude are dropped after each arithmetic operation.
template <class S>
class PhasePoly {
public:
    using Scalar = S;
    using Traits = ScalarTraits<S>;
    using Real = typename Traits::Real;
    using Terms = std::map<Exponent, S>;

    PhasePoly() = default;

    static PhasePoly constant(const S& c) { return monomial(Exponent{}, c); }

    static PhasePoly variable(Var v) { return monomial(unit_exponent(v), Traits::from_int(1)); }

    static PhasePoly monomial(const Exponent& e, const S& c) {
        PhasePoly p;
        if (!Traits::is_zero(c)) p.terms_.emplace(e, c);
        return p;
    }

    /// Σ coeffs[i]·ξ_i + offset, the building block of linear substitutions.
    static PhasePoly linear(const std::array<Real, kPhaseDim>& coeffs, const Real& offset = Real(0)) {
        PhasePoly p = constant(Traits::from_real(offset));
        for (int i = 0; i < kPhaseDim; ++i)
            p.add_term(unit_exponent(static_cast<Var>(i)), Traits::from_real(coeffs[i]));
        return p;
    }

    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Maximum total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    /// Componentwise maximum exponent over all terms.
    Exponent max_exponents() const {
        Exponent m{};
        for (const auto& [e, c] : terms_)
            for (int i = 0; i < kPhaseDim; ++i) m[i] = std::max(m[i], e[i]);
        return m;
    }

    S coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? S{} : it->second;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& [e, c] : terms_) m = std::max(m, Traits::magnitude(c));
        return m;
    }

    /// Accumulates c into the coefficient of e without renormalizing.
    void add_term(const Exponent& e, const S& c) {
        if (Traits::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) terms_.erase(it);
        }
    }

    /// ∂^alpha of the polynomial.
    PhasePoly derivative(const Exponent& alpha) const {
        PhasePoly out;
        for (const auto& [e, c] : terms_) {
            long factor = 1;
            Exponent reduced = e;
            bool vanishes = false;
            for (int i = 0; i < kPhaseDim && !vanishes; ++i) {
                if (alpha[i] > e[i]) {
                    vanishes = true;
                    break;
                }
                for (int k = 0; k < alpha[i]; ++k) factor *= e[i] - k;
                reduced[i] = static_cast<std::uint16_t>(e[i] - alpha[i]);
            }
            if (!vanishes) out.terms_.emplace(reduced, c * Traits::from_int(factor));
        }
        return out;
    }

    PhasePoly derivative(Var v, int order = 1) const {
        Exponent alpha{};
        alpha[index_of(v)] = static_cast<std::uint16_t>(order);
        return derivative(alpha);
    }

    /// Value at a point with backend-real coordinates.
    S evaluate(const BasicPhasePoint<Real>& pt) const {
        const Exponent top = max_exponents();
        std::array<std::vector<Real>, kPhaseDim> powers;
        for (int i = 0; i < kPhaseDim; ++i) {
            powers[i].resize(top[i] + 1);
            powers[i][0] = Real(1);
            for (int k = 1; k <= top[i]; ++k) powers[i][k] = powers[i][k - 1] * pt[i];
        }
        S sum{};
        for (const auto& [e, c] : terms_) {
            const Real monomial = Real(powers[0][e[0]] * powers[1][e[1]]) * Real(powers[2][e[2]] * powers[3][e[3]]);
            if constexpr (Traits::exact) sum += c * S(monomial);
            else sum += c * monomial;
        }
        if (!Traits::is_finite(sum)) throw NumericalError("polynomial evaluation overflowed");
        return sum;
    }

    PhasePoly conj() const {
        PhasePoly out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, Traits::conj(c));
        return out;
    }

    PhasePoly& operator+=(const PhasePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        normalize();
        return *this;
    }

    PhasePoly& operator-=(const PhasePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        normalize();
        return *this;
    }

    PhasePoly& operator*=(const S& s) {
        if (Traits::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        normalize();
        return *this;
    }

    friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
    friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
    friend PhasePoly operator-(PhasePoly a) {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }
    friend PhasePoly operator*(PhasePoly a, const S& s) { return a *= s; }
    friend PhasePoly operator*(const S& s, PhasePoly a) { return a *= s; }

    friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
        PhasePoly out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e;
                for (int i = 0; i < kPhaseDim; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
                out.add_term(e, ca * cb);
            }
        out.normalize();
        return out;
    }
    PhasePoly& operator*=(const PhasePoly& o) { return *this = *this * o; }

    friend bool operator==(const PhasePoly& a, const PhasePoly& b) { return a.terms_ == b.terms_; }

    /// Drops terms whose magnitude is at most rel·max_abs().
    void chop(double rel) {
        if (rel <= 0.0 || terms_.empty()) return;
        const double cut = rel * max_abs();
        std::erase_if(terms_, [&](const auto& kv) { return Traits::magnitude(kv.second) <= cut; });
    }

    friend std::ostream& operator<<(std::ostream& os, const PhasePoly& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (const auto& [e, c] : p.terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c << ")";
            for (int i = 0; i < kPhaseDim; ++i) {
                if (e[i] == 0) continue;
                os << "*" << var_name(static_cast<Var>(i));
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os;
    }

private:
    void normalize() {
        std::erase_if(terms_, [](const auto& kv) { return Traits::is_zero(kv.second); });
        chop(Traits::chop);
    }

    Terms terms_;
};

using ExactPoly = PhasePoly<ExactComplex>;
using FloatPoly = PhasePoly<Complex>;

template <class S>
S poly_eval(const PhasePoly<S>& f, const BasicPhasePoint<RealOf<S>>& pt) {
    return f.evaluate(pt);
}

/// max |coefficient of a - b|, without materializing the difference.
template <class S>
double max_coefficient_difference(const PhasePoly<S>& a, const PhasePoly<S>& b) {
    double m = 0.0;
    for (const auto& [e, c] : a.terms()) m = std::max(m, ScalarTraits<S>::magnitude(c - b.coefficient(e)));
    for (const auto& [e, c] : b.terms())
        if (!a.terms().contains(e)) m = std::max(m, ScalarTraits<S>::magnitude(c));
    return m;
}

/// Exact → float conversion (rationals rounded to nearest double).
inline FloatPoly to_float(const ExactPoly& p) {
    FloatPoly out;
    for (const auto& [e, c] : p.terms()) out.add_term(e, c.to_complex());
    return out;
}

}  // namespace ncdq

#endif
