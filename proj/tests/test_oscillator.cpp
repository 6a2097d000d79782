#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ncdq/oscillator.hpp"
#include "ncdq/star.hpp"
#include "support.hpp"

using namespace ncdq;
using ncdq::testing::Gen;

namespace {

FloatPoly fx(Var v) { return FloatPoly::variable(v); }

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

CoupledOscillatorSpec random_spec(Gen& gen) {
    for (;;) {
        CoupledOscillatorSpec s{gen.uniform(0.5, 2.0), gen.uniform(0.5, 2.0), gen.uniform(0.5, 3.0),
                                gen.uniform(0.5, 3.0), gen.uniform(-1.5, 1.5)};
        if (4 * s.C1 * s.C2 - s.C3 * s.C3 > 0.5) return s;
    }
}

DeformationParams<double> random_params(Gen& gen) {
    for (;;) {
        DeformationParams<double> p{gen.uniform(0.5, 1.5), gen.uniform(-0.5, 0.5), gen.uniform(-0.5, 0.5)};
        if (p.hbar * p.hbar > p.mu * p.nu) return p;
    }
}

PhasePoint random_point(Gen& gen, double r = 1.5) {
    return PhasePoint(gen.uniform(-r, r), gen.uniform(-r, r), gen.uniform(-r, r), gen.uniform(-r, r));
}

PhasePoint mapped(const Matrix4<double>& m, const PhasePoint& pt) {
    PhasePoint out;
    out.coords = m * pt.coords;
    return out;
}

}  // namespace

TEST_CASE("rescale example") {
    const RescaledOscillator r = rescale({4.0, 1.0, 1.0, 1.0, 0.3});
    CHECK(r.m == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.c1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.c2 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.c3 == 0.3);
    CHECK(r.map[0][0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(rescale({0.0, 1.0, 1.0, 1.0, 0.0}), ConfigError);
}

TEST_CASE("property: rescaling produces the equal-mass Hamiltonian") {
    Gen gen(30);
    for (int i = 0; i < 20; ++i) {
        const auto spec = random_spec(gen);
        const auto r = rescale(spec);
        const FloatPoly x1 = fx(Var::x1), x2 = fx(Var::x2), p1 = fx(Var::p1), p2 = fx(Var::p2);
        const FloatPoly expected = (p1 * p1 + p2 * p2) * Complex(1 / (2 * r.m)) +
                                   (x1 * x1 * Complex(r.c1) + x2 * x2 * Complex(r.c2) + x1 * x2 * Complex(r.c3)) *
                                       Complex(0.5);
        const FloatPoly got = substitute_linear(spec.hamiltonian(), inverse(r.map));
        CHECK(max_coefficient_difference(got, expected) < 1e-13);
    }
}

TEST_CASE("property: mixing angle diagonalizes the potential with the larger coefficient on y1") {
    Gen gen(31);
    for (int i = 0; i < 200; ++i) {
        const double c1 = gen.uniform(0.1, 3), c2 = gen.uniform(0.1, 3), c3 = gen.uniform(-2, 2);
        const double alpha = mixing_angle(c1, c2, c3);
        if (std::abs(c2 - c1) > 1e-3) CHECK(std::abs(std::tan(alpha) - c3 / (c2 - c1)) < 1e-9 * (1 + std::abs(std::tan(alpha))));
        // express the potential in y = R(α/2)x, i.e. substitute x = R⁻¹y
        const FloatPoly x1 = fx(Var::x1), x2 = fx(Var::x2);
        const FloatPoly v = x1 * x1 * Complex(c1) + x2 * x2 * Complex(c2) + x1 * x2 * Complex(c3);
        const FloatPoly vy = substitute_linear(v, inverse(rotation_map(alpha)));
        const double scale = std::abs(c1) + std::abs(c2) + std::abs(c3);
        CHECK(std::abs(vy.coefficient({1, 1, 0, 0})) < 1e-12 * scale);
        CHECK(vy.coefficient({2, 0, 0, 0}).real() >= vy.coefficient({0, 2, 0, 0}).real() - 1e-12 * scale);
    }
    CHECK(mixing_angle(1.0, 1.0, 0.0) == 0.0);
}

TEST_CASE("normal_params examples and stability") {
    const auto np = normal_params(4.0, 1.0, 0.0);
    CHECK(np.K == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::exp(2 * np.eta) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(normal_params(1.0, 1.0, 0.0).eta == 0.0);
    CHECK_THROWS_AS(normal_params(1.0, 1.0, 2.0), ConfigError);
    CHECK_THROWS_AS(normal_params(-1.0, -1.0, 0.0), ConfigError);
}

TEST_CASE("decomposition angle examples") {
    // commutative case with η > 0
    const auto np = normal_params(4.0, 1.0, 0.0);
    const auto ang = decomposition_angles(np.K, 1.0, np.eta, {1.0, 0.0, 0.0});
    CHECK(std::abs(ang.a - std::numbers::pi / 2) < 1e-12);
    CHECK(std::abs(ang.b) < 1e-12);
    // η = 0 and μ = −ν: the sum a + b is free
    const auto iso = decomposition_angles(1.0, 1.0, 0.0, {1.0, 0.5, -0.5});
    CHECK(iso.a == std::numbers::pi);
    CHECK_THROWS_AS(decomposition_angles(1.0, 1.0, 0.0, {1.0, 2.0, 2.0}), ConfigError);
}

TEST_CASE("property: the split always sums to the normal-mode Hamiltonian") {
    Gen gen(32);
    for (int i = 0; i < 50; ++i) {
        const double K = gen.uniform(0.2, 3), m = gen.uniform(0.2, 3), eta = gen.uniform(0, 1.5);
        const SplitAngles ang{gen.uniform(-4, 4), gen.uniform(-4, 4)};
        const auto split = build_decomposition(K, m, eta, ang);
        const FloatPoly y1 = fx(Var::x1), y2 = fx(Var::x2), q1 = fx(Var::p1), q2 = fx(Var::p2);
        const FloatPoly target = (q1 * q1 + q2 * q2) * Complex(1 / (2 * m)) +
                                 (y1 * y1 * Complex(std::exp(2 * eta)) + y2 * y2 * Complex(std::exp(-2 * eta))) *
                                     Complex(K / 2);
        const FloatPoly sum = split.h1.polynomial<Complex>() + split.h2.polynomial<Complex>();
        CHECK(max_coefficient_difference(sum, target) < 1e-12 * std::max(1.0, target.max_abs()));
    }
}

TEST_CASE("betas and k1, k2 in the isotropic noncommutative case") {
    for (double theta : {0.1, 0.5, 1.0}) {
        const auto bd = betas_deltas(1.0, 1.0, 0.0, {1.0, theta, -theta});
        CHECK(rel_err(bd.beta1, 2 * std::sqrt(1 + theta * theta)) < 1e-14);
        CHECK(bd.beta2 == 0.0);
        REQUIRE(bd.delta2.has_value());
        CHECK(*bd.delta2 == 0.0);
        const auto k = k1k2(bd.beta1, bd.beta2, 1.0);
        CHECK(rel_err(k.k1, std::sqrt(1 + theta * theta) / 2) < 1e-14);
        CHECK(k.k1 == k.k2);
    }
    CHECK_FALSE(betas_deltas(1.0, 1.0, 0.0, {1.0, 0.5, 0.5}).delta2.has_value());
    CHECK_THROWS_AS(k1k2(1.0, 2.0, 1.0), ConfigError);
}

TEST_CASE("commutative spectrum of two uncoupled oscillators") {
    // ω₁ = 2, ω₂ = 1
    const auto sol = solve({1.0, 1.0, 4.0, 1.0, 0.0}, {1.0, 0.0, 0.0});
    for (unsigned n1 = 0; n1 <= 3; ++n1)
        for (unsigned n2 = 0; n2 <= 3; ++n2) {
            const double expected = 2.0 * (n1 + 0.5) + 1.0 * (n2 + 0.5);
            CHECK(rel_err(energy(sol, n1, n2), expected) < 1e-13);
            CHECK(rel_err(energy_commutative(sol, n1, n2), expected) < 1e-13);
        }
}

TEST_CASE("isotropic noncommutative energies") {
    for (double theta : {0.1, 0.5, 1.0}) {
        const auto sol = solve({1.0, 1.0, 1.0, 1.0, 0.0}, {1.0, theta, -theta});
        CHECK(rel_err(energy(sol, 0, 0), std::sqrt(1 + theta * theta)) < 1e-13);
        CHECK(rel_err(energy(sol, 2, 1), 4 * std::sqrt(1 + theta * theta)) < 1e-13);
    }
    const auto sol = solve({1.0, 1.0, 1.0, 1.0, 0.0}, {1.0, 1.0, -1.0});
    CHECK(rel_err(energy(sol, 0, 0), std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("solve rejects invalid input") {
    CHECK_THROWS_AS(solve({1, 1, 1, 1, 3}, {1, 0, 0}), ConfigError);
    CHECK_THROWS_AS(solve({1, 1, 1, 1, 0}, {0, 0, 0}), ConfigError);
    CHECK_THROWS_AS(solve({1, 1, 1, 1, 0}, {1, 2, 2}), ConfigError);
    CHECK_THROWS_AS(solve({-1, 1, 1, 1, 0}, {1, 0, 0}), ConfigError);
}

TEST_CASE("property: pipeline invariants over random specs") {
    Gen gen(33);
    for (int i = 0; i < 25; ++i) {
        const auto spec = random_spec(gen);
        const auto prm = random_params(gen);
        const auto sol = solve(spec, prm);
        const FloatContext ctx(prm);
        const FloatPoly h1 = sol.h1.polynomial<Complex>(), h2 = sol.h2.polynomial<Complex>();

        // normal form: H₀ expressed in (y, q)
        const FloatPoly normal = substitute_linear(spec.hamiltonian(), sol.from_normal);
        CHECK(max_coefficient_difference(normal, h1 + h2) < 1e-10);

        CHECK(max_coefficient_difference(moyal_bracket(ctx, h1, h2), FloatPoly{}) < 1e-10);
        CHECK(max_coefficient_difference(star(ctx, h1, h2), h1 * h2) < 1e-10);

        for (unsigned n1 = 0; n1 <= 2; ++n1)
            for (unsigned n2 = 0; n2 <= 2; ++n2) {
                const auto f = energy_forms(sol, n1, n2);
                CHECK(rel_err(f.from_beta, f.from_k) < 1e-12);
                if (f.from_delta) CHECK(rel_err(*f.from_delta, f.from_k) < 1e-12);
            }
    }
}

TEST_CASE("property: product states are eigenfunctions of the total Hamiltonian in both coordinate systems") {
    Gen gen(34);
    for (int i = 0; i < 10; ++i) {
        const auto spec = random_spec(gen);
        const auto prm = random_params(gen);
        const auto sol = solve(spec, prm);
        const FloatContext ctx(prm);
        const unsigned n1 = static_cast<unsigned>(gen.integer(0, 3)), n2 = static_cast<unsigned>(gen.integer(0, 3));
        const auto st = wigner_state(sol, n1, n2);

        const FloatPoly total = sol.h1.polynomial<Complex>() + sol.h2.polynomial<Complex>();
        const FloatPoly lhs = star(ctx, total, st.w).prefactor();
        const FloatPoly rhs = st.w.prefactor() * Complex(st.energy);
        CHECK(max_coefficient_difference(lhs, rhs) <= 1e-10 * std::max(1.0, rhs.max_abs()));

        const FloatGaussLag orig = to_original_coords(st, sol);
        const FloatPoly lhs0 = star(ctx, spec.hamiltonian(), orig).prefactor();
        const FloatPoly rhs0 = orig.prefactor() * Complex(st.energy);
        CHECK(max_coefficient_difference(lhs0, rhs0) <= 1e-10 * std::max(1.0, rhs0.max_abs()));
    }
}

TEST_CASE("property: to_original_coords agrees with evaluating at the forward-mapped point") {
    Gen gen(35);
    const auto sol = solve(random_spec(gen), random_params(gen));
    const auto st = wigner_state(sol, 2, 1);
    const FloatGaussLag orig = to_original_coords(st, sol);
    for (int i = 0; i < 50; ++i) {
        const PhasePoint y = random_point(gen);
        const Complex direct = gausslag_eval(st.w, y);
        CHECK(std::abs(gausslag_eval(orig, mapped(sol.from_normal, y)) - direct) < 1e-12);
    }
}

TEST_CASE("perturbative energy approaches the exact one quadratically") {
    const CoupledOscillatorSpec spec{1.0, 1.0, 2.0, 1.0, 0.4};
    double prev = 0;
    for (double eps : {1e-1, 1e-2}) {
        const auto sol = solve(spec, {1.0, 2 * eps, -eps});
        const double err = std::abs(energy_perturbative(sol, 1, 0) - energy(sol, 1, 0));
        if (prev > 0) CHECK(err < prev / 50);
        prev = err;
    }
    const auto degenerate = solve({1.0, 1.0, 1.0, 1.0, 0.0}, {1.0, 0.3, 0.2});
    CHECK_THROWS_AS(energy_perturbative(degenerate, 0, 0), SingularityError);
}

TEST_CASE("time evolution factorizes and starts at one") {
    const auto sol = solve({1.0, 2.0, 1.5, 2.5, 0.6}, {1.0, 0.2, -0.1});
    const FloatContext ctx(sol.params);
    Gen gen(36);
    const auto at0 = time_evolution(sol, 0.0);
    const auto at_t = time_evolution(sol, 0.37);
    const auto e1 = star_exp_closed(sol.h1, ctx, 0.37), e2 = star_exp_closed(sol.h2, ctx, 0.37);
    for (int i = 0; i < 10; ++i) {
        const PhasePoint pt = random_point(gen);
        CHECK(std::abs(at0(pt) - 1.0) < 1e-15);
        CHECK(std::abs(at_t(pt) - e1(pt) * e2(pt)) < 1e-14);
        CHECK(std::abs(at_t.at_original(mapped(sol.from_normal, pt)) - at_t(pt)) < 1e-12);
    }
}

TEST_CASE("caustics name the offending frequency") {
    const auto sol = solve({1.0, 1.0, 4.0, 1.0, 0.0}, {1.0, 0.0, 0.0});
    const double k1 = sol.k1;
    try {
        (void)time_evolution(sol, std::numbers::pi * sol.params.hbar / (2 * k1));
        FAIL("expected a SingularityError");
    } catch (const SingularityError& e) {
        CHECK(std::string(e.what()).rfind("k1", 0) == 0);
    }
}

TEST_CASE("Wick-rotated Dirichlet sum converges to the closed form") {
    const auto sol = solve({1.0, 1.0, 4.0, 1.0, 0.0}, {1.0, 0.1, -0.2});
    const auto closed = time_evolution(sol, Complex(0.0, -0.8));
    Gen gen(37);
    for (int i = 0; i < 20; ++i) {
        const PhasePoint pt = random_point(gen, 1.0);
        const Complex c = closed(pt);
        CHECK(std::abs(c.imag()) < 1e-14);
        CHECK(std::abs(wick_dirichlet_sum(sol, 0.8, 25, pt) - c.real()) < 1e-8);
    }
}
