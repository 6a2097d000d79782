#ifndef NCDQ_OSCILLATOR_HPP
#define NCDQ_OSCILLATOR_HPP

#include <optional>

#include "ncdq/gauss_lag.hpp"
#include "ncdq/linear_map.hpp"
#include "ncdq/quadratic.hpp"
#include "ncdq/star_exp.hpp"

namespace ncdq {

/// H₀ = P₁²/(2m₁) + P₂²/(2m₂) + ½(C₁X₁² + C₂X₂² + C₃X₁X₂).
struct CoupledOscillatorSpec {
    double m1 = 1.0;
    double m2 = 1.0;
    double C1 = 1.0;
    double C2 = 1.0;
    double C3 = 0.0;

    /// H₀ as a polynomial in (X1, X2, P1, P2).
    FloatPoly hamiltonian() const;
};

/// Equal-mass form after the diagonal rescaling; `map` sends (X, P) to (x, p).
struct RescaledOscillator {
    double m;
    double c1;
    double c2;
    double c3;
    Matrix4<double> map;
};

RescaledOscillator rescale(const CoupledOscillatorSpec& spec);

/// Mixing angle α with tan α = c₃/(c₂ − c₁), on the branch that puts the
/// larger potential coefficient on y₁. Returns 0 when c₃ = 0 and c₁ = c₂.
double mixing_angle(double c1, double c2, double c3);

/// Rotation by α/2 applied to (x1, x2) and to (p1, p2): (x, p) → (y, q).
Matrix4<double> rotation_map(double alpha);

struct NormalModeParams {
    double K;
    double eta;
};

/// K = ½√(4c₁c₂ − c₃²) and e^{2η} = (c₁ + c₂ + √((c₁−c₂)² + c₃²))/√(4c₁c₂ − c₃²).
NormalModeParams normal_params(double c1, double c2, double c3);

/// Decomposition angles a, b.
struct SplitAngles {
    double a;
    double b;
};

SplitAngles decomposition_angles(double K, double m, double eta, const DeformationParams<double>& params);

struct SplitHamiltonians {
    PerfectSquareHamiltonian<double> h1;
    PerfectSquareHamiltonian<double> h2;
};

/// The two perfect-square pieces over (y1, y2, q1, q2); they sum to the
/// normal-mode Hamiltonian for every choice of angles.
SplitHamiltonians build_decomposition(double K, double m, double eta, const SplitAngles& angles);

struct BetaDelta {
    double beta1;
    double beta2;
    double delta1;
    /// Undefined (nullopt) when η = 0 but Kmμ + ν ≠ 0.
    std::optional<double> delta2;
};

BetaDelta betas_deltas(double K, double m, double eta, const DeformationParams<double>& params);

struct FrequencyPair {
    double k1;
    double k2;
};

/// k₁ = (β₁+β₂)/(4m), k₂ = (β₁−β₂)/(4m).
FrequencyPair k1k2(double beta1, double beta2, double m);

/// k₁, k₂ directly from the angles a, b (no β's involved).
FrequencyPair k_from_angles(double K, double m, double eta, const SplitAngles& angles,
                            const DeformationParams<double>& params);

/// Everything derived from a CoupledOscillatorSpec on a given deformation.
/// Built once by solve(); immutable afterwards.
struct OscillatorSolution {
    CoupledOscillatorSpec spec;
    DeformationParams<double> params;
    double m = 0, c1 = 0, c2 = 0, c3 = 0;
    double alpha = 0;
    double K = 0, eta = 0;
    SplitAngles angles{};
    double beta1 = 0, beta2 = 0;
    double delta1 = 0;
    std::optional<double> delta2;
    double k1 = 0, k2 = 0;
    double omega = 0;
    PerfectSquareHamiltonian<double> h1, h2;
    Matrix4<double> to_normal;    ///< (X, P) → (y, q)
    Matrix4<double> from_normal;  ///< (y, q) → (X, P)

    /// (q₁²+q₂²)/(2m) + (K/2)(e^{2η}y₁² + e^{−2η}y₂²).
    FloatPoly normal_hamiltonian() const;
};

/// Runs the whole pipeline and cross-checks every quantity that has two
/// independent formulas. Throws ConfigError on invalid input and
/// ConsistencyError if a cross-check fails.
OscillatorSolution solve(const CoupledOscillatorSpec& spec, const DeformationParams<double>& params);

struct EnergyForms {
    double from_k;     ///< (2n₁+1)k₁ + (2n₂+1)k₂
    double from_beta;  ///< ((n₁+n₂+1)β₁ + (n₁−n₂)β₂)/(2m)
    std::optional<double> from_delta;  ///< √(1+Δ) form; absent when Δ₂ is undefined
};

EnergyForms energy_forms(const OscillatorSolution& sol, unsigned n1, unsigned n2);

/// E_{n₁n₂}; all available forms are evaluated and must agree.
double energy(const OscillatorSolution& sol, unsigned n1, unsigned n2);

/// ħω(e^η(n₁+½) + e^{−η}(n₂+½)): the same K, η, m with μ = ν = 0.
double energy_commutative(const OscillatorSolution& sol, unsigned n1, unsigned n2);

/// First-order expansion in Δ₁, Δ₂. Throws when Δ₂ is undefined.
double energy_perturbative(const OscillatorSolution& sol, unsigned n1, unsigned n2);

struct WignerState {
    unsigned n1 = 0;
    unsigned n2 = 0;
    FloatGaussLag w;  ///< over (y1, y2, q1, q2)
    double energy = 0;
};

/// W⁽¹⁾_{n₁}·W⁽²⁾_{n₂} in normal coordinates.
WignerState wigner_state(const OscillatorSolution& sol, unsigned n1, unsigned n2);

/// The same state as a function of the original (X1, X2, P1, P2).
FloatGaussLag to_original_coords(const WignerState& state, const OscillatorSolution& sol);

/// Exp₁·Exp₂ for the two commuting pieces, evaluated pointwise.
class CoupledEvolution {
public:
    CoupledEvolution(const OscillatorSolution& sol, Complex t);

    /// Value at a point in normal coordinates (y, q).
    Complex operator()(const PhasePoint& normal_pt) const;
    /// Value at a point in original coordinates (X, P).
    Complex at_original(const PhasePoint& original_pt) const;

private:
    StarExpClosed first_;
    StarExpClosed second_;
    Matrix4<double> to_normal_;
};

CoupledEvolution time_evolution(const OscillatorSolution& sol, Complex t);

/// Wick-rotated Fourier–Dirichlet partial sum
///   Σ_{n₁,n₂<terms} 4(−1)^{n₁+n₂} e^{−E_{n₁n₂}τ/ħ} W⁽¹⁾_{n₁}W⁽²⁾_{n₂}
/// at a point in normal coordinates; Laguerre values by recurrence.
double wick_dirichlet_sum(const OscillatorSolution& sol, double tau, unsigned terms, const PhasePoint& normal_pt);

}  // namespace ncdq

#endif
