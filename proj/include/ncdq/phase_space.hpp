#ifndef NCDQ_PHASE_SPACE_HPP
#define NCDQ_PHASE_SPACE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "ncdq/errors.hpp"
#include "ncdq/scalar.hpp"

namespace ncdq {

/// Slots of the 2+2 dimensional phase space, in storage order.
enum class Var : int { x1 = 0, x2 = 1, p1 = 2, p2 = 3 };

inline constexpr int kPhaseDim = 4;

inline constexpr int index_of(Var v) { return static_cast<int>(v); }

/// Exponents of (x1, x2, p1, p2) in a monomial.
using Exponent = std::array<std::uint16_t, kPhaseDim>;

inline int total_degree(const Exponent& e) { return e[0] + e[1] + e[2] + e[3]; }

inline Exponent unit_exponent(Var v) {
    Exponent e{};
    e[index_of(v)] = 1;
    return e;
}

template <class T>
struct BasicPhasePoint {
    std::array<T, kPhaseDim> coords{};

    const T& operator[](int i) const { return coords[i]; }
    T& operator[](int i) { return coords[i]; }
    const T& operator[](Var v) const { return coords[index_of(v)]; }
};

/// Point with finite double coordinates (x1, x2, p1, p2).
struct PhasePoint : BasicPhasePoint<double> {
    PhasePoint() = default;
    PhasePoint(double x1, double x2, double p1, double p2) : BasicPhasePoint<double>{{x1, x2, p1, p2}} {
        for (double c : coords)
            if (!std::isfinite(c)) throw ConfigError("phase point coordinates must be finite");
    }
};

/// The deformation (ħ, μ, ν). The aggregate itself is unchecked so that the
/// star engine can also be driven in the classical limit ħ = μ = ν = 0; use
/// checked() wherever the physical constraints matter.
template <class R>
struct DeformationParams {
    R hbar{1};
    R mu{0};
    R nu{0};

    static DeformationParams checked(R hbar, R mu, R nu) {
        DeformationParams p{std::move(hbar), std::move(mu), std::move(nu)};
        p.validate();
        return p;
    }

    /// Throws ConfigError unless ħ > 0 and ħ² > μν.
    void validate() const {
        if (!(hbar > 0)) throw ConfigError("deformation: hbar > 0 violated");
        if (!(hbar * hbar > mu * nu)) throw ConfigError("deformation: hbar^2 > mu*nu violated");
    }

    /// Antisymmetric ε with ε₁₂ = +1.
    static constexpr int epsilon(int i, int j) { return i == j ? 0 : (i < j ? 1 : -1); }
};

inline DeformationParams<double> to_float(const DeformationParams<Rational>& p) {
    return {p.hbar.get_d(), p.mu.get_d(), p.nu.get_d()};
}

/// Human-readable slot name.
inline const char* var_name(Var v) {
    static constexpr const char* names[] = {"x1", "x2", "p1", "p2"};
    return names[index_of(v)];
}

}  // namespace ncdq

#endif
