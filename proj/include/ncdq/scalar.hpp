#ifndef NCDQ_SCALAR_HPP
#define NCDQ_SCALAR_HPP

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <ostream>
#include <string>
#include <utility>

namespace ncdq {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Complex number with arbitrary-precision rational parts. No rounding.
class ExactComplex {
public:
    ExactComplex() = default;
    ExactComplex(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
    ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }
    ExactComplex(long v) : re_(v) {}

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    ExactComplex conj() const { return {re_, -im_}; }

    ExactComplex& operator+=(const ExactComplex& o) {
        if (sgn(o.re_) != 0) re_ += o.re_;
        if (sgn(o.im_) != 0) im_ += o.im_;
        return *this;
    }
    ExactComplex& operator-=(const ExactComplex& o) {
        if (sgn(o.re_) != 0) re_ -= o.re_;
        if (sgn(o.im_) != 0) im_ -= o.im_;
        return *this;
    }
    ExactComplex& operator*=(const ExactComplex& o) {
        *this = *this * o;
        return *this;
    }
    ExactComplex& operator/=(const ExactComplex& o) {
        *this = *this / o;
        return *this;
    }

    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator-(const ExactComplex& a) { return {-a.re_, -a.im_}; }

    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        // Most coefficients in practice are purely real or purely imaginary.
        const bool ar = sgn(a.im_) == 0, br = sgn(b.im_) == 0;
        if (ar && br) return raw(a.re_ * b.re_, 0);
        const bool ai = sgn(a.re_) == 0, bi = sgn(b.re_) == 0;
        if (ar && bi) return raw(0, a.re_ * b.im_);
        if (ai && br) return raw(0, a.im_ * b.re_);
        if (ai && bi) return raw(-a.im_ * b.im_, 0);
        return raw(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }

    friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
        const Rational den = b.re_ * b.re_ + b.im_ * b.im_;
        if (sgn(den) == 0) throw std::domain_error("ExactComplex: division by zero");
        return {Rational((a.re_ * b.re_ + a.im_ * b.im_) / den),
                Rational((a.im_ * b.re_ - a.re_ * b.im_) / den)};
    }

    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

    friend std::ostream& operator<<(std::ostream& os, const ExactComplex& z) {
        os << z.re_;
        if (sgn(z.im_) != 0) os << (sgn(z.im_) > 0 ? "+" : "-") << abs(z.im_) << "i";
        return os;
    }

private:
    // Parts produced by gmp arithmetic are already canonical.
    template <class A, class B>
    static ExactComplex raw(A&& re, B&& im) {
        ExactComplex z;
        z.re_ = std::forward<A>(re);
        z.im_ = std::forward<B>(im);
        return z;
    }

    Rational re_{0};
    Rational im_{0};
};

/// Per-backend arithmetic facts. `Real` is the coefficient type of
/// physical parameters and real coordinates in that backend.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactComplex> {
    using Real = Rational;
    static constexpr bool exact = true;
    /// Relative chop threshold applied after polynomial arithmetic.
    static constexpr double chop = 0.0;

    static ExactComplex from_real(const Rational& r) { return ExactComplex(r); }
    static ExactComplex from_int(long v) { return ExactComplex(v); }
    static ExactComplex i() { return {Rational(0), Rational(1)}; }
    static ExactComplex conj(const ExactComplex& z) { return z.conj(); }
    static bool is_zero(const ExactComplex& z) { return z.is_zero(); }
    static bool is_finite(const ExactComplex&) { return true; }
    static double magnitude(const ExactComplex& z) {
        return std::hypot(z.real().get_d(), z.imag().get_d());
    }
    static Complex to_complex(const ExactComplex& z) { return z.to_complex(); }
};

template <>
struct ScalarTraits<Complex> {
    using Real = double;
    static constexpr bool exact = false;
    static constexpr double chop = 1e-13;

    static Complex from_real(double r) { return {r, 0.0}; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static Complex i() { return {0.0, 1.0}; }
    static Complex conj(const Complex& z) { return std::conj(z); }
    static bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }
    static bool is_finite(const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    }
    static double magnitude(const Complex& z) { return std::abs(z); }
    static Complex to_complex(const Complex& z) { return z; }
};

template <class S>
using RealOf = typename ScalarTraits<S>::Real;

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double r) { return r; }

/// Parse a decimal literal ("0.1", "-3", "2.5e-3", "1/3") into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace ncdq

#endif
