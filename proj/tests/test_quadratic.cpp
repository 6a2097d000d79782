#include <doctest.h>

#include <cmath>

#include "ncdq/quadratic.hpp"
#include "ncdq/star.hpp"
#include "ncdq/star_exp.hpp"
#include "support.hpp"

using namespace ncdq;
using ncdq::testing::Gen;
using ncdq::testing::q;

namespace {

PerfectSquareHamiltonian<Rational> oscillator_x1_p1() {
    PerfectSquareHamiltonian<Rational> h;
    h.a = {q(1), q(0)};
    h.b = {q(0), q(0)};
    h.c = {q(0), q(0)};
    h.d = {q(1), q(0)};
    return h;
}

}  // namespace

TEST_CASE("k_of examples") {
    const auto h = oscillator_x1_p1();
    CHECK(k_of(h, DeformationParams<Rational>{q(1), q(0), q(0)}) == q(1));
    CHECK(k_of(h, DeformationParams<Rational>{q(1, 2), q(7), q(-3)}) == q(1, 2));

    PerfectSquareHamiltonian<Rational> g;
    g.a = {q(1), q(0)};
    g.b = {q(0), q(0)};
    g.c = {q(0), q(1)};
    g.d = {q(0), q(0)};
    // a∧c = 1, so k = μ
    CHECK(k_of(g, DeformationParams<Rational>{q(1), q(2, 3), q(0)}) == q(2, 3));
}

TEST_CASE("laguerre examples") {
    CHECK(laguerre(0, 3.7) == 1.0);
    CHECK(laguerre(1, 0.5) == 0.5);
    CHECK(std::abs(laguerre(2, 1.0) - (-0.5)) < 1e-15);
    CHECK(laguerre(3, q(2)) == q(-1, 3));
    CHECK(laguerre_coefficients(2) == std::vector<Rational>{q(1), q(-2), q(1, 2)});
}

TEST_CASE("property: recurrence Laguerre values match the explicit sum") {
    Gen gen(12);
    for (int i = 0; i < 200; ++i) {
        const unsigned n = static_cast<unsigned>(gen.integer(0, 50));
        const double z = gen.uniform(0, 8);
        const double explicit_sum = ncdq::testing::laguerre_explicit(n, z);
        CHECK(std::abs(laguerre(n, z) - explicit_sum) <= 1e-12 * std::max(1.0, std::abs(explicit_sum)));
    }
}

TEST_CASE("property: exact Laguerre recurrence equals the coefficient expansion") {
    Gen gen(13);
    for (unsigned n = 0; n <= 12; ++n) {
        const Rational z = gen.rational();
        const auto coeffs = laguerre_coefficients(n);
        Rational horner(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) horner = horner * z + *it;
        CHECK(laguerre(n, z) == horner);
    }
}

TEST_CASE("wigner_n examples") {
    const auto h = oscillator_x1_p1();
    const DeformationParams<Rational> prm{q(1), q(0), q(0)};
    const ExactGaussLag w0 = wigner_n<ExactComplex>(h, prm, 0);
    const ExactPoly hp = h.polynomial<ExactComplex>();
    CHECK(w0.exponent() == -hp);
    CHECK(w0.prefactor() == ExactPoly::constant(ExactComplex(1)));
    const ExactGaussLag w1 = wigner_n<ExactComplex>(h, prm, 1);
    CHECK(w1.prefactor() == ExactPoly::constant(ExactComplex(1)) - hp * ExactComplex(q(2)));
    // point value e^{-1}(1 - 2) at H = 1
    CHECK(std::abs(gausslag_eval(w1, PhasePoint(1, 0, 0, 0)) - Complex(-std::exp(-1.0))) < 1e-15);
}

TEST_CASE("property: H star W_n = W_n star H = (2n+1) k W_n exactly") {
    Gen gen(14);
    int checked = 0;
    while (checked < 30) {
        const auto prm = gen.deformation();
        const auto h = gen.hamiltonian();
        if (k_of(h, prm) == 0) continue;
        ++checked;
        const ExactContext ctx(prm);
        const ExactPoly hp = h.polynomial<ExactComplex>();
        const Rational k = normalized_k(h, prm);
        for (unsigned n = 0; n <= 3; ++n) {
            const ExactGaussLag w = wigner_n<ExactComplex>(h, prm, n);
            const ExactGaussLag scaled(w.exponent(), w.prefactor() * ExactComplex(Rational((2 * n + 1) * k)));
            REQUIRE(star(ctx, hp, w) == scaled);
            REQUIRE(star(ctx, w, hp) == scaled);
        }
    }
}

TEST_CASE("spectrum examples") {
    const auto h = oscillator_x1_p1();
    const auto s = spectrum(h, DeformationParams<Rational>{q(1), q(0), q(0)}, 2);
    CHECK(s.k == q(1));
    CHECK(s.levels == std::vector<Rational>{q(1), q(3), q(5)});
    CHECK_FALSE(s.sign_normalized);

    const auto swapped = spectrum(h.swapped(), DeformationParams<Rational>{q(1), q(0), q(0)}, 2);
    CHECK(swapped.levels == s.levels);
    CHECK(swapped.sign_normalized);

    PerfectSquareHamiltonian<Rational> degenerate;
    degenerate.a = {q(1), q(0)};
    degenerate.b = {q(0), q(0)};
    degenerate.c = {q(1), q(0)};
    degenerate.d = {q(0), q(0)};
    CHECK_THROWS_AS(spectrum(degenerate, DeformationParams<Rational>{q(1), q(0), q(0)}, 2), SingularityError);
}

TEST_CASE("property: swapping the squares flips k and keeps the polynomial") {
    Gen gen(15);
    for (int i = 0; i < 50; ++i) {
        const auto prm = gen.deformation();
        const auto h = gen.hamiltonian();
        CHECK(k_of(h.swapped(), prm) == -k_of(h, prm));
        CHECK(h.swapped().polynomial<ExactComplex>() == h.polynomial<ExactComplex>());
    }
}

TEST_CASE("operator reduction examples") {
    const auto h = oscillator_x1_p1();
    const ExactContext ctx(DeformationParams<Rational>{q(1), q(0), q(0)});
    for (unsigned deg = 0; deg <= 3; ++deg)
        CHECK(verify_operator_reduction(ctx, h, UniPoly<Rational>::monomial(deg)) == 0.0);
    // H★H = H² − k² by the reduced operator
    const ExactPoly hp = h.polynomial<ExactComplex>();
    CHECK(star(ctx, hp, hp) == hp * hp - ExactPoly::constant(ExactComplex(1)));
}

TEST_CASE("property: operator reduction holds for random Hamiltonians and G(H)") {
    Gen gen(16);
    for (int i = 0; i < 100; ++i) {
        const auto prm = gen.deformation();
        const ExactContext ctx(prm);
        const auto h = gen.hamiltonian();
        std::vector<Rational> coeffs;
        const int deg = gen.integer(0, 3);
        for (int j = 0; j <= deg; ++j) coeffs.push_back(gen.rational());
        const UniPoly<Rational> g(std::move(coeffs));
        REQUIRE(verify_operator_reduction(ctx, h, g) == 0.0);
    }
}

TEST_CASE("float backend reproduces the eigen-relation to rounding") {
    Gen gen(17);
    for (int i = 0; i < 10; ++i) {
        const auto prm = to_float(gen.deformation());
        const FloatContext ctx(prm);
        const auto hr = gen.hamiltonian();
        PerfectSquareHamiltonian<double> h;
        for (int j = 0; j < 2; ++j) {
            h.a[j] = hr.a[j].get_d();
            h.b[j] = hr.b[j].get_d();
            h.c[j] = hr.c[j].get_d();
            h.d[j] = hr.d[j].get_d();
        }
        if (std::abs(k_of(h, prm)) < 1e-6) continue;
        const double k = normalized_k(h, prm);
        const FloatPoly hp = h.polynomial<Complex>();
        for (unsigned n = 0; n <= 5; ++n) {
            const FloatGaussLag w = wigner_n<Complex>(h, prm, n);
            const FloatPoly lhs = star(ctx, hp, w).prefactor();
            const FloatPoly rhs = w.prefactor() * Complex((2.0 * n + 1) * k);
            CHECK(max_coefficient_difference(lhs, rhs) <= 1e-10 * std::max(1.0, rhs.max_abs()));
        }
    }
}
