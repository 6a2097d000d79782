#include "ncdq/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace ncdq {
namespace {

constexpr double kCheckTolerance = 1e-10;

bool close(double a, double b, double rel = kCheckTolerance) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

void require_close(double a, double b, const char* what) {
    if (!close(a, b)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "cross-check failed for " << what << ": " << a << " vs " << b;
        throw ConsistencyError(msg.str());
    }
}

bool negligible(double value, double scale) { return std::abs(value) <= 1e-14 * std::max(scale, 1e-300); }

FloatPoly var(Var v) { return FloatPoly::variable(v); }

}  // namespace

FloatPoly CoupledOscillatorSpec::hamiltonian() const {
    const FloatPoly X1 = var(Var::x1), X2 = var(Var::x2), P1 = var(Var::p1), P2 = var(Var::p2);
    return P1 * P1 * Complex(1.0 / (2.0 * m1)) + P2 * P2 * Complex(1.0 / (2.0 * m2)) +
           (X1 * X1 * Complex(C1) + X2 * X2 * Complex(C2) + X1 * X2 * Complex(C3)) * Complex(0.5);
}

RescaledOscillator rescale(const CoupledOscillatorSpec& spec) {
    if (!(spec.m1 > 0.0) || !(spec.m2 > 0.0)) throw ConfigError("oscillator: masses m1 > 0 and m2 > 0 required");
    RescaledOscillator r;
    r.m = std::sqrt(spec.m1 * spec.m2);
    r.c1 = spec.C1 * std::sqrt(spec.m2 / spec.m1);
    r.c2 = spec.C2 * std::sqrt(spec.m1 / spec.m2);
    r.c3 = spec.C3;
    const double s = std::pow(spec.m1 / spec.m2, 0.25);
    r.map = identity_matrix<double>();
    r.map[0][0] = s;
    r.map[1][1] = 1.0 / s;
    r.map[2][2] = 1.0 / s;
    r.map[3][3] = s;
    return r;
}

double mixing_angle(double c1, double c2, double c3) {
    if (c3 == 0.0 && c1 == c2) return 0.0;
    const double alpha = std::atan2(c3 == 0.0 ? 0.0 : -c3, c1 - c2);

    // Cross term ½((c₁−c₂) sin α + c₃ cos α) must vanish; y₁² must carry the
    // larger coefficient (c₁−c₂) cos α − c₃ sin α ≥ 0.
    const double r = std::hypot(c1 - c2, c3);
    const double cross = (c1 - c2) * std::sin(alpha) + c3 * std::cos(alpha);
    const double split = (c1 - c2) * std::cos(alpha) - c3 * std::sin(alpha);
    if (std::abs(cross) > 1e-12 * r || split < 0.0)
        throw ConsistencyError("mixing angle does not diagonalize the potential");
    return alpha;
}

Matrix4<double> rotation_map(double alpha) {
    const double c = std::cos(alpha / 2.0), s = std::sin(alpha / 2.0);
    Matrix4<double> m{};
    for (int block = 0; block < kPhaseDim; block += 2) {
        m[block][block] = c;
        m[block][block + 1] = -s;
        m[block + 1][block] = s;
        m[block + 1][block + 1] = c;
    }
    return m;
}

NormalModeParams normal_params(double c1, double c2, double c3) {
    const double disc = 4.0 * c1 * c2 - c3 * c3;
    if (!(disc > 0.0)) throw ConfigError("unstable potential: 4*c1*c2 > c3^2 violated");
    if (!(c1 > 0.0)) throw ConfigError("unstable potential: c1 > 0 violated (negative-definite potential)");
    const double root = std::sqrt(disc);
    const double e2eta = (c1 + c2 + std::hypot(c1 - c2, c3)) / root;
    return {0.5 * root, 0.5 * std::log(e2eta)};
}

BetaDelta betas_deltas(double K, double m, double eta, const DeformationParams<double>& params) {
    if (!(K > 0.0) || !(m > 0.0)) throw ConfigError("betas: K > 0 and m > 0 required");
    const double ep = std::exp(eta), em = std::exp(-eta);
    const double plus = ep + em, minus = ep - em;
    const double Km = K * m;
    const double h2Km = params.hbar * params.hbar * Km;
    const double diff = Km * params.mu - params.nu;
    const double sum = Km * params.mu + params.nu;

    BetaDelta out;
    out.beta1 = std::sqrt(plus * plus * h2Km + diff * diff);
    out.beta2 = std::sqrt(minus * minus * h2Km + sum * sum);
    out.delta1 = diff * diff / (plus * plus * h2Km);

    if (!negligible(minus, plus)) {
        out.delta2 = sum * sum / (minus * minus * h2Km);
    } else if (negligible(sum, std::abs(Km * params.mu) + std::abs(params.nu))) {
        out.delta2 = 0.0;
    }

    // Radical and factored forms must agree.
    const double scale = params.hbar * std::sqrt(Km);
    require_close(out.beta1, plus * scale * std::sqrt(1.0 + out.delta1), "beta1");
    if (out.delta2 && !negligible(minus, plus))
        require_close(out.beta2, minus * scale * std::sqrt(1.0 + *out.delta2), "beta2");
    return out;
}

SplitAngles decomposition_angles(double K, double m, double eta, const DeformationParams<double>& params) {
    params.validate();
    const BetaDelta bd = betas_deltas(K, m, eta, params);
    const double Km = K * m;
    const double s = params.hbar * std::sqrt(Km);
    const double plus = std::exp(eta) + std::exp(-eta), minus = std::exp(eta) - std::exp(-eta);
    const double diff = Km * params.mu - params.nu;
    const double sum = Km * params.mu + params.nu;

    const double a_minus_b = std::atan2(s * plus, diff);
    SplitAngles out;
    const bool free_sum = bd.beta2 <= 1e-12 * bd.beta1;
    if (free_sum) {
        // a + b is unconstrained; fix a = π.
        out.a = std::numbers::pi;
        out.b = out.a - a_minus_b;
    } else {
        const double a_plus_b = std::atan2(s * minus, -sum);
        out.a = 0.5 * (a_plus_b + a_minus_b);
        out.b = 0.5 * (a_plus_b - a_minus_b);
    }

    const double tol = 1e-10;
    bool ok = std::abs(std::sin(out.a - out.b) - s * plus / bd.beta1) <= tol &&
              std::abs(std::cos(out.a - out.b) - diff / bd.beta1) <= tol;
    if (!free_sum)
        ok = ok && std::abs(std::sin(out.a + out.b) - s * minus / bd.beta2) <= tol &&
             std::abs(std::cos(out.a + out.b) + sum / bd.beta2) <= tol;
    if (!ok) throw ConsistencyError("decomposition angles: no branch satisfies all sine/cosine conditions");
    return out;
}

SplitHamiltonians build_decomposition(double K, double m, double eta, const SplitAngles& angles) {
    const double sy1 = std::exp(eta) * std::sqrt(K) / std::sqrt(2.0);
    const double sy2 = std::exp(-eta) * std::sqrt(K) / std::sqrt(2.0);
    const double sq = 1.0 / std::sqrt(2.0 * m);
    const double sa = std::sin(angles.a), ca = std::cos(angles.a);
    const double sb = std::sin(angles.b), cb = std::cos(angles.b);

    // Forms over (y1, y2 | q1, q2) stored as (a, b) and (c, d).
    SplitHamiltonians out;
    out.h1.a = {sy1 * sa, 0.0};
    out.h1.b = {0.0, sq * ca};
    out.h1.c = {0.0, sy2 * sb};
    out.h1.d = {sq * cb, 0.0};
    out.h2.a = {sy1 * ca, 0.0};
    out.h2.b = {0.0, -sq * sa};
    out.h2.c = {0.0, sy2 * cb};
    out.h2.d = {-sq * sb, 0.0};
    return out;
}

FrequencyPair k1k2(double beta1, double beta2, double m) {
    if (!(beta1 >= beta2) || !(beta2 >= 0.0)) throw ConfigError("k1k2: beta1 >= beta2 >= 0 required");
    return {(beta1 + beta2) / (4.0 * m), (beta1 - beta2) / (4.0 * m)};
}

FrequencyPair k_from_angles(double K, double m, double eta, const SplitAngles& angles,
                            const DeformationParams<double>& params) {
    const double sa = std::sin(angles.a), ca = std::cos(angles.a);
    const double sb = std::sin(angles.b), cb = std::cos(angles.b);
    const double ep = std::exp(eta), em = std::exp(-eta);
    const double pre = params.hbar * std::sqrt(K) / (2.0 * std::sqrt(m));
    return {pre * (ep * sa * cb - em * sb * ca) + K * params.mu / 2.0 * sa * sb - params.nu / (2.0 * m) * ca * cb,
            pre * (em * sa * cb - ep * sb * ca) + K * params.mu / 2.0 * ca * cb - params.nu / (2.0 * m) * sa * sb};
}

FloatPoly OscillatorSolution::normal_hamiltonian() const {
    const FloatPoly y1 = var(Var::x1), y2 = var(Var::x2), q1 = var(Var::p1), q2 = var(Var::p2);
    return (q1 * q1 + q2 * q2) * Complex(1.0 / (2.0 * m)) +
           (y1 * y1 * Complex(std::exp(2.0 * eta)) + y2 * y2 * Complex(std::exp(-2.0 * eta))) * Complex(K / 2.0);
}

OscillatorSolution solve(const CoupledOscillatorSpec& spec, const DeformationParams<double>& params) {
    params.validate();
    OscillatorSolution sol;
    sol.spec = spec;
    sol.params = params;

    const RescaledOscillator r = rescale(spec);
    sol.m = r.m;
    sol.c1 = r.c1;
    sol.c2 = r.c2;
    sol.c3 = r.c3;
    const NormalModeParams np = normal_params(r.c1, r.c2, r.c3);
    sol.K = np.K;
    sol.eta = np.eta;
    sol.alpha = mixing_angle(r.c1, r.c2, r.c3);
    sol.omega = std::sqrt(sol.K / sol.m);
    sol.to_normal = rotation_map(sol.alpha) * r.map;
    sol.from_normal = inverse(sol.to_normal);

    const BetaDelta bd = betas_deltas(sol.K, sol.m, sol.eta, params);
    sol.beta1 = bd.beta1;
    sol.beta2 = bd.beta2;
    sol.delta1 = bd.delta1;
    sol.delta2 = bd.delta2;
    const FrequencyPair k = k1k2(bd.beta1, bd.beta2, sol.m);
    sol.k1 = k.k1;
    sol.k2 = k.k2;

    sol.angles = decomposition_angles(sol.K, sol.m, sol.eta, params);
    const SplitHamiltonians split = build_decomposition(sol.K, sol.m, sol.eta, sol.angles);
    sol.h1 = split.h1;
    sol.h2 = split.h2;

    const FrequencyPair from_angles = k_from_angles(sol.K, sol.m, sol.eta, sol.angles, params);
    require_close(sol.k1, from_angles.k1, "k1 (angle formula)");
    require_close(sol.k2, from_angles.k2, "k2 (angle formula)");
    require_close(sol.k1, k_of(sol.h1, params), "k1 (perfect-square constant)");
    require_close(sol.k2, k_of(sol.h2, params), "k2 (perfect-square constant)");

    const FloatPoly sum = sol.h1.polynomial<Complex>() + sol.h2.polynomial<Complex>();
    const FloatPoly target = sol.normal_hamiltonian();
    if (max_coefficient_difference(sum, target) > 1e-12 * std::max(1.0, target.max_abs()))
        throw ConsistencyError("split Hamiltonians do not sum to the normal-mode Hamiltonian");
    return sol;
}

EnergyForms energy_forms(const OscillatorSolution& sol, unsigned n1, unsigned n2) {
    const double a = n1, b = n2;
    EnergyForms out;
    out.from_k = (2 * a + 1) * sol.k1 + (2 * b + 1) * sol.k2;
    out.from_beta = ((a + b + 1) * sol.beta1 + (a - b) * sol.beta2) / (2.0 * sol.m);
    if (sol.delta2) {
        const double ep = std::exp(sol.eta), em = std::exp(-sol.eta);
        out.from_delta = sol.params.hbar * sol.omega / 2.0 *
                         ((a + b + 1) * (ep + em) * std::sqrt(1.0 + sol.delta1) +
                          (a - b) * (ep - em) * std::sqrt(1.0 + *sol.delta2));
    }
    return out;
}

double energy(const OscillatorSolution& sol, unsigned n1, unsigned n2) {
    const EnergyForms f = energy_forms(sol, n1, n2);
    require_close(f.from_k, f.from_beta, "energy (beta form)");
    if (f.from_delta) require_close(f.from_k, *f.from_delta, "energy (delta form)");
    return f.from_k;
}

double energy_commutative(const OscillatorSolution& sol, unsigned n1, unsigned n2) {
    return sol.params.hbar * sol.omega * (std::exp(sol.eta) * (n1 + 0.5) + std::exp(-sol.eta) * (n2 + 0.5));
}

double energy_perturbative(const OscillatorSolution& sol, unsigned n1, unsigned n2) {
    if (!sol.delta2) throw SingularityError("perturbative energy: delta2 undefined at eta = 0 with K m mu + nu != 0");
    const double ep = std::exp(sol.eta), em = std::exp(-sol.eta);
    const double a = n1, b = n2;
    return sol.params.hbar * sol.omega *
           (ep * (a + 0.5) + em * (b + 0.5) + (a + b + 1) / 4.0 * (ep + em) * sol.delta1 +
            (a - b) / 4.0 * (ep - em) * *sol.delta2);
}

WignerState wigner_state(const OscillatorSolution& sol, unsigned n1, unsigned n2) {
    if (!(sol.k1 > 0.0) || !(sol.k2 > 0.0)) throw SingularityError("Wigner state requires k1 > 0 and k2 > 0");
    WignerState st;
    st.n1 = n1;
    st.n2 = n2;
    st.w = wigner_from_k(sol.h1.polynomial<Complex>(), sol.k1, n1) *
           wigner_from_k(sol.h2.polynomial<Complex>(), sol.k2, n2);
    st.energy = energy(sol, n1, n2);
    return st;
}

FloatGaussLag to_original_coords(const WignerState& state, const OscillatorSolution& sol) {
    return substitute_linear(state.w, sol.to_normal);
}

namespace {

StarExpClosed labelled_factor(const PerfectSquareHamiltonian<double>& h, double k, const char* label, double hbar,
                              Complex t) {
    try {
        return StarExpClosed(h.polynomial<Complex>(), k, hbar, t);
    } catch (const SingularityError& e) {
        throw SingularityError(std::string(label) + ": " + e.what());
    }
}

}  // namespace

CoupledEvolution::CoupledEvolution(const OscillatorSolution& sol, Complex t)
    : first_(labelled_factor(sol.h1, sol.k1, "k1", sol.params.hbar, t)),
      second_(labelled_factor(sol.h2, sol.k2, "k2", sol.params.hbar, t)),
      to_normal_(sol.to_normal) {}

Complex CoupledEvolution::operator()(const PhasePoint& normal_pt) const { return first_(normal_pt) * second_(normal_pt); }

Complex CoupledEvolution::at_original(const PhasePoint& original_pt) const {
    PhasePoint mapped;
    mapped.coords = to_normal_ * original_pt.coords;
    return (*this)(mapped);
}

CoupledEvolution time_evolution(const OscillatorSolution& sol, Complex t) { return CoupledEvolution(sol, t); }

double wick_dirichlet_sum(const OscillatorSolution& sol, double tau, unsigned terms, const PhasePoint& normal_pt) {
    const double e1 = sol.h1.polynomial<Complex>().evaluate(normal_pt).real();
    const double e2 = sol.h2.polynomial<Complex>().evaluate(normal_pt).real();
    const double hbar = sol.params.hbar;
    std::vector<double> w1(terms), w2(terms);
    for (unsigned n = 0; n < terms; ++n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        w1[n] = 2.0 * sign * std::exp(-sol.k1 * (2.0 * n + 1) * tau / hbar - e1 / sol.k1) *
                laguerre(n, 2.0 * e1 / sol.k1);
        w2[n] = 2.0 * sign * std::exp(-sol.k2 * (2.0 * n + 1) * tau / hbar - e2 / sol.k2) *
                laguerre(n, 2.0 * e2 / sol.k2);
    }
    double sum = 0.0;
    for (unsigned a = 0; a < terms; ++a)
        for (unsigned b = 0; b < terms; ++b) sum += w1[a] * w2[b];
    return sum;
}

}  // namespace ncdq
