#include "ncdq/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "ncdq/star.hpp"
#include "ncdq/star_exp.hpp"

namespace ncdq {

Suite parse_suite(const std::string& name) {
    if (name == "algebra") return Suite::algebra;
    if (name == "genvalue") return Suite::genvalue;
    if (name == "oscillator") return Suite::oscillator;
    if (name == "evolution") return Suite::evolution;
    throw ConfigError("unknown verify suite '" + name + "' (algebra|genvalue|oscillator|evolution)");
}

const char* suite_name(Suite s) {
    switch (s) {
        case Suite::algebra: return "algebra";
        case Suite::genvalue: return "genvalue";
        case Suite::oscillator: return "oscillator";
        case Suite::evolution: return "evolution";
    }
    return "?";
}

bool VerifyReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

template <class S>
constexpr bool is_exact = ScalarTraits<S>::exact;

class Recorder {
public:
    Recorder(VerifyReport& report, double tolerance) : report_(report), tolerance_(tolerance) {}

    void record(std::string identity, std::string anchor, double residual, bool exact) {
        const double tol = exact ? 0.0 : tolerance_;
        const bool ok = exact ? residual == 0.0 : residual < tol;
        report_.checks.push_back({std::move(identity), std::move(anchor), residual, tol, ok});
    }

    void record_with(std::string identity, std::string anchor, double residual, double tol) {
        report_.checks.push_back({std::move(identity), std::move(anchor), residual, tol, residual < tol});
    }

private:
    VerifyReport& report_;
    double tolerance_;
};

/// Small random rationals p/q with |p| <= 5, q in 1..3.
struct RationalSource {
    std::mt19937_64 rng;

    Rational next() {
        std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
        Rational r(num(rng), den(rng));
        r.canonicalize();
        return r;
    }

    template <class R>
    R real() {
        if constexpr (std::is_same_v<R, Rational>) return next();
        else return next().get_d();
    }
};

template <class S>
PhasePoly<S> random_poly(RationalSource& src, int max_degree, int terms) {
    std::uniform_int_distribution<int> exp_dist(0, max_degree);
    PhasePoly<S> p;
    for (int t = 0; t < terms; ++t) {
        Exponent e{};
        int budget = max_degree;
        for (int i = 0; i < kPhaseDim; ++i) {
            const int k = std::min(budget, exp_dist(src.rng) % (budget + 1));
            e[i] = static_cast<std::uint16_t>(k);
            budget -= k;
        }
        p.add_term(e, ScalarTraits<S>::from_real(src.real<RealOf<S>>()));
    }
    return p;
}

template <class S>
PerfectSquareHamiltonian<RealOf<S>> random_hamiltonian(RationalSource& src, const DeformationParams<RealOf<S>>& params) {
    using R = RealOf<S>;
    for (;;) {
        PerfectSquareHamiltonian<R> h;
        for (auto* v : {&h.a, &h.b, &h.c, &h.d})
            for (auto& x : *v) x = src.real<R>();
        if (!(k_of(h, params) == R(0))) return h;
    }
}

template <class S>
double residual_of(const PhasePoly<S>& diff) {
    return diff.max_abs();
}

template <class S>
void algebra_suite(const VerifyOptions& opt, Recorder& rec, const StarContext<S>& ctx) {
    using P = PhasePoly<S>;
    using T = ScalarTraits<S>;
    constexpr bool exact = is_exact<S>;
    const auto& prm = ctx.params();
    const P x1 = P::variable(Var::x1), x2 = P::variable(Var::x2), p1 = P::variable(Var::p1), p2 = P::variable(Var::p2);
    const auto ic = [&](const RealOf<S>& v) { return P::constant(T::i() * T::from_real(v)); };
    const RealOf<S> zero(0);

    struct Rel {
        const char* name;
        const char* anchor;
        P lhs;
        P expected;
    };
    const std::vector<Rel> relations = {
        {"[x1,x2]*", "[x1,x2]* = i*mu", moyal_bracket(ctx, x1, x2), ic(prm.mu)},
        {"[p1,p2]*", "[p1,p2]* = i*nu", moyal_bracket(ctx, p1, p2), ic(prm.nu)},
        {"[x1,p1]*", "[x1,p1]* = i*hbar", moyal_bracket(ctx, x1, p1), ic(prm.hbar)},
        {"[x2,p2]*", "[x2,p2]* = i*hbar", moyal_bracket(ctx, x2, p2), ic(prm.hbar)},
        {"[x1,p2]*", "[x1,p2]* = 0", moyal_bracket(ctx, x1, p2), ic(zero)},
        {"[x2,p1]*", "[x2,p1]* = 0", moyal_bracket(ctx, x2, p1), ic(zero)},
    };
    for (const auto& r : relations) rec.record(r.name, r.anchor, residual_of(r.lhs - r.expected), exact);

    RationalSource src{std::mt19937_64(opt.seed)};
    double assoc = 0.0, conj = 0.0, jacobi = 0.0;
    for (unsigned i = 0; i < opt.samples; ++i) {
        const P f = random_poly<S>(src, 3, 4), g = random_poly<S>(src, 3, 4), h = random_poly<S>(src, 3, 4);
        assoc = std::max(assoc, residual_of(star(ctx, star(ctx, f, g), h) - star(ctx, f, star(ctx, g, h))));
        conj = std::max(conj, residual_of(star(ctx, f, g).conj() - star(ctx, g.conj(), f.conj())));
        const P jac = moyal_bracket(ctx, f, moyal_bracket(ctx, g, h)) + moyal_bracket(ctx, g, moyal_bracket(ctx, h, f)) +
                      moyal_bracket(ctx, h, moyal_bracket(ctx, f, g));
        jacobi = std::max(jacobi, residual_of(jac));
    }
    rec.record("associativity", "(f*g)*h = f*(g*h)", assoc, exact);
    rec.record("conjugation", "conj(f*g) = conj(g)*conj(f)", conj, exact);
    rec.record("jacobi", "[f,[g,h]] + [g,[h,f]] + [h,[f,g]] = 0", jacobi, exact);
}

template <class S>
void genvalue_suite(const VerifyOptions& opt, Recorder& rec, const StarContext<S>& ctx) {
    using R = RealOf<S>;
    using T = ScalarTraits<S>;
    constexpr bool exact = is_exact<S>;
    RationalSource src{std::mt19937_64(opt.seed)};

    double left = 0.0, right = 0.0, reduction = 0.0;
    for (unsigned i = 0; i < opt.samples; ++i) {
        const auto h = random_hamiltonian<S>(src, ctx.params());
        const auto hp = h.template polynomial<S>();
        const R k = normalized_k(h, ctx.params());
        const double scale = exact ? 1.0 : std::max(1.0, to_double(k));
        for (unsigned n = 0; n <= opt.n_max; ++n) {
            const auto w = wigner_n<S>(h, ctx.params(), n);
            const auto ew = w * T::from_real(R(R(2 * n + 1) * k));
            const double norm = exact ? 1.0 : std::max(1.0, w.prefactor().max_abs() * scale);
            left = std::max(left, residual_of((star(ctx, hp, w) - ew).prefactor()) / norm);
            right = std::max(right, residual_of((star(ctx, w, hp) - ew).prefactor()) / norm);
        }
        for (unsigned deg = 0; deg <= 3; ++deg) {
            const double r = verify_operator_reduction(ctx, h, UniPoly<R>::monomial(deg));
            const double norm = exact ? 1.0 : std::max(1.0, std::pow(hp.max_abs(), deg + 1));
            reduction = std::max(reduction, r / norm);
        }
    }
    rec.record("H*W_n = E_n W_n", "H*W_n = (2n+1) k W_n", left, exact);
    rec.record("W_n*H = E_n W_n", "W_n*H = (2n+1) k W_n", right, exact);
    rec.record("operator reduction", "H*G(H) = (H - k^2 d/dH - k^2 H d^2/dH^2) G", reduction, exact);
}

double relative_residual(const FloatPoly& diff, const FloatPoly& reference) {
    return diff.max_abs() / std::max(1.0, reference.max_abs());
}

void oscillator_suite(const VerifyOptions& opt, Recorder& rec) {
    const auto params = to_float(opt.params);
    const OscillatorSolution sol = solve(opt.oscillator, params);
    const FloatContext ctx(params, opt.tolerance);
    const FloatPoly h1 = sol.h1.polynomial<Complex>(), h2 = sol.h2.polynomial<Complex>();
    const FloatPoly total = sol.normal_hamiltonian();

    rec.record("H1 + H2 = H", "H1 + H2 = (q1^2+q2^2)/(2m) + K/2 (e^{2eta} y1^2 + e^{-2eta} y2^2)",
               relative_residual(h1 + h2 - total, total), false);
    const FloatPoly original = substitute_linear(opt.oscillator.hamiltonian(), sol.from_normal);
    rec.record("normal form", "H0(X(y,q), P(y,q)) = normal-mode Hamiltonian", relative_residual(original - total, total),
               false);
    const FloatPoly prod = h1 * h2;
    rec.record("[H1,H2]* = 0", "[H1,H2]* = 0", relative_residual(moyal_bracket(ctx, h1, h2), prod), false);
    rec.record("H1*H2 = H1 H2", "H1*H2 = H1 H2", relative_residual(star(ctx, h1, h2) - prod, prod), false);
    rec.record("k1 two routes", "k(H1) = (beta1+beta2)/(4m)", std::abs(k_of(sol.h1, params) - sol.k1) / sol.k1, false);
    rec.record("k2 two routes", "k(H2) = (beta1-beta2)/(4m)", std::abs(k_of(sol.h2, params) - sol.k2) / sol.k2, false);

    // Transformed coordinates keep the same commutators.
    double coords = 0.0;
    std::array<FloatPoly, kPhaseDim> normal;
    for (int i = 0; i < kPhaseDim; ++i) normal[i] = FloatPoly::linear(sol.to_normal[i]);
    for (int i = 0; i < kPhaseDim; ++i)
        for (int j = 0; j < kPhaseDim; ++j) {
            const Complex expected = moyal_bracket(ctx, FloatPoly::variable(static_cast<Var>(i)),
                                                   FloatPoly::variable(static_cast<Var>(j)))
                                         .coefficient(Exponent{});
            const Complex got = moyal_bracket(ctx, normal[i], normal[j]).coefficient(Exponent{});
            coords = std::max(coords, std::abs(got - expected));
        }
    rec.record("rotation keeps commutators", "[y_i,q_j]* = [x_i,p_j]* etc.", coords, false);

    double gen1 = 0.0, gen2 = 0.0, gen_total = 0.0, energies = 0.0;
    const unsigned top = std::min(opt.n_max, 3u);
    for (unsigned n = 0; n <= top; ++n) {
        const auto w1 = wigner_from_k(h1, sol.k1, n);
        const auto w2 = wigner_from_k(h2, sol.k2, n);
        gen1 = std::max(gen1, relative_residual((star(ctx, h1, w1) - w1 * Complex((2.0 * n + 1) * sol.k1)).prefactor(),
                                                w1.prefactor()));
        gen2 = std::max(gen2, relative_residual((star(ctx, h2, w2) - w2 * Complex((2.0 * n + 1) * sol.k2)).prefactor(),
                                                w2.prefactor()));
    }
    for (unsigned a = 0; a <= std::min(top, 2u); ++a)
        for (unsigned b = 0; b <= std::min(top, 2u); ++b) {
            const WignerState st = wigner_state(sol, a, b);
            const auto lhs = star(ctx, total, st.w) - st.w * Complex(st.energy);
            const auto rhs = star(ctx, st.w, total) - st.w * Complex(st.energy);
            gen_total = std::max({gen_total, relative_residual(lhs.prefactor(), st.w.prefactor()),
                                  relative_residual(rhs.prefactor(), st.w.prefactor())});
            const double via_k_of = (2.0 * a + 1) * k_of(sol.h1, params) + (2.0 * b + 1) * k_of(sol.h2, params);
            energies = std::max(energies, std::abs(via_k_of - st.energy) / st.energy);
        }
    rec.record("H1*W1 = E1 W1", "H1*W_n1 = (2n1+1) k1 W_n1", gen1, false);
    rec.record("H2*W2 = E2 W2", "H2*W_n2 = (2n2+1) k2 W_n2", gen2, false);
    rec.record("H*W = E W", "H*W_{n1n2} = W_{n1n2}*H = E_{n1n2} W_{n1n2}", gen_total, false);
    rec.record("energy two routes", "E = (2n1+1)k(H1) + (2n2+1)k(H2)", energies, false);
}

void evolution_suite(const VerifyOptions& opt, Recorder& rec) {
    const auto params = to_float(opt.params);
    const OscillatorSolution sol = solve(opt.oscillator, params);
    const CoupledEvolution zero = time_evolution(sol, 0.0);
    const CoupledEvolution wick = time_evolution(sol, Complex(0.0, -opt.tau));

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    double at_zero = 0.0, deviation = 0.0;
    for (unsigned i = 0; i < 100; ++i) {
        const PhasePoint pt(coord(rng), coord(rng), coord(rng), coord(rng));
        at_zero = std::max(at_zero, std::abs(zero(pt) - 1.0));
        deviation = std::max(deviation, std::abs(wick(pt) - wick_dirichlet_sum(sol, opt.tau, opt.terms, pt)));
    }
    rec.record("Exp(t=0) = 1", "Exp(0) = 1", at_zero, false);
    std::ostringstream name;
    name << "Fourier-Dirichlet partial sum (" << opt.terms << "x" << opt.terms << " terms)";
    rec.record_with(name.str(), "Exp1 Exp2 = sum e^{-E tau/hbar} W_{n1n2} (t = -i tau)", deviation, 1e-6);
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& opt) {
    VerifyReport report;
    report.suite = suite_name(opt.suite);
    const bool symbolic = opt.suite == Suite::algebra || opt.suite == Suite::genvalue;
    const bool exact = symbolic && opt.backend == Backend::exact;
    report.backend = exact ? "exact" : "float";
    Recorder rec(report, opt.tolerance);

    switch (opt.suite) {
        case Suite::algebra:
            if (exact) algebra_suite(opt, rec, ExactContext(opt.params));
            else algebra_suite(opt, rec, FloatContext(to_float(opt.params), opt.tolerance));
            break;
        case Suite::genvalue:
            if (exact) genvalue_suite(opt, rec, ExactContext(opt.params));
            else genvalue_suite(opt, rec, FloatContext(to_float(opt.params), opt.tolerance));
            break;
        case Suite::oscillator: oscillator_suite(opt, rec); break;
        case Suite::evolution: evolution_suite(opt, rec); break;
    }
    return report;
}

}  // namespace ncdq
