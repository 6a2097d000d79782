#ifndef NCDQ_LINEAR_MAP_HPP
#define NCDQ_LINEAR_MAP_HPP

#include <array>
#include <cmath>
#include <utility>

#include "ncdq/errors.hpp"
#include "ncdq/phase_poly.hpp"

namespace ncdq {

template <class R>
using Vec4 = std::array<R, kPhaseDim>;

/// Row-major 4×4 matrix acting on (x1, x2, p1, p2).
template <class R>
using Matrix4 = std::array<Vec4<R>, kPhaseDim>;

template <class R>
Matrix4<R> identity_matrix() {
    Matrix4<R> m{};
    for (auto& row : m) row.fill(R(0));
    for (int i = 0; i < kPhaseDim; ++i) m[i][i] = R(1);
    return m;
}

template <class R>
Matrix4<R> operator*(const Matrix4<R>& a, const Matrix4<R>& b) {
    Matrix4<R> c{};
    for (int i = 0; i < kPhaseDim; ++i)
        for (int j = 0; j < kPhaseDim; ++j) {
            R s(0);
            for (int k = 0; k < kPhaseDim; ++k) s += a[i][k] * b[k][j];
            c[i][j] = s;
        }
    return c;
}

template <class R>
Vec4<R> operator*(const Matrix4<R>& a, const Vec4<R>& v) {
    Vec4<R> out{};
    for (int i = 0; i < kPhaseDim; ++i) {
        R s(0);
        for (int k = 0; k < kPhaseDim; ++k) s += a[i][k] * v[k];
        out[i] = s;
    }
    return out;
}

template <class R>
BasicPhasePoint<R> apply(const Matrix4<R>& m, const BasicPhasePoint<R>& pt, const Vec4<R>& shift = {}) {
    BasicPhasePoint<R> out;
    out.coords = m * pt.coords;
    for (int i = 0; i < kPhaseDim; ++i) out.coords[i] += shift[i];
    return out;
}

namespace detail {

inline bool negligible_pivot(const Rational& p, const Rational&) { return sgn(p) == 0; }
inline bool negligible_pivot(double p, double scale) { return std::abs(p) <= 1e-13 * scale; }

inline Rational magnitude(const Rational& r) { return abs(r); }
inline double magnitude(double r) { return std::abs(r); }

}  // namespace detail

/// Gauss–Jordan inverse with partial pivoting; throws SingularityError when
/// a pivot vanishes (exactly for rationals, relative to the largest entry for
/// doubles).
template <class R>
Matrix4<R> inverse(const Matrix4<R>& m) {
    R scale(0);
    for (const auto& row : m)
        for (const auto& v : row)
            if (detail::magnitude(v) > scale) scale = detail::magnitude(v);

    Matrix4<R> a = m;
    Matrix4<R> inv = identity_matrix<R>();
    for (int col = 0; col < kPhaseDim; ++col) {
        int pivot = col;
        for (int r = col + 1; r < kPhaseDim; ++r)
            if (detail::magnitude(a[r][col]) > detail::magnitude(a[pivot][col])) pivot = r;
        if (detail::negligible_pivot(a[pivot][col], scale)) throw SingularityError("linear map is singular");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const R p = a[col][col];
        for (int j = 0; j < kPhaseDim; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (int r = 0; r < kPhaseDim; ++r) {
            if (r == col) continue;
            const R f = a[r][col];
            for (int j = 0; j < kPhaseDim; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

/// Composes f with ξ ↦ Mξ + shift, i.e. returns g(ξ) = f(Mξ + shift).
template <class S>
PhasePoly<S> substitute_linear(const PhasePoly<S>& f, const Matrix4<RealOf<S>>& m,
                               const Vec4<RealOf<S>>& shift = {}) {
    (void)inverse(m);  // rejects singular maps

    const Exponent top = f.max_exponents();
    std::array<std::vector<PhasePoly<S>>, kPhaseDim> powers;
    for (int i = 0; i < kPhaseDim; ++i) {
        const PhasePoly<S> form = PhasePoly<S>::linear(m[i], shift[i]);
        powers[i].reserve(top[i] + 1);
        powers[i].push_back(PhasePoly<S>::constant(ScalarTraits<S>::from_int(1)));
        for (int k = 1; k <= top[i]; ++k) powers[i].push_back(powers[i].back() * form);
    }

    PhasePoly<S> out;
    for (const auto& [e, c] : f.terms()) {
        PhasePoly<S> term = PhasePoly<S>::constant(c);
        for (int i = 0; i < kPhaseDim; ++i)
            if (e[i] > 0) term = term * powers[i][e[i]];
        out += term;
    }
    return out;
}

}  // namespace ncdq

#endif
