#include "ncdq/star_exp.hpp"

#include <sstream>

namespace ncdq {

StarExpClosed::StarExpClosed(FloatPoly hamiltonian, double k, double hbar, Complex t)
    : h_(std::move(hamiltonian)), k_(k), t_(t) {
    if (k == 0.0) throw SingularityError("star exponential: degenerate Hamiltonian (k = 0)");
    if (!(hbar > 0.0)) throw ConfigError("star exponential: hbar > 0 violated");
    const Complex phase = k * t / hbar;
    const Complex c = std::cos(phase);
    if (std::abs(c) <= kCausticTolerance * std::max(1.0, std::abs(std::sin(phase)))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "star exponential is singular: cos(k t / hbar) = 0 at t = " << t.real();
        if (t.imag() != 0.0) msg << (t.imag() > 0 ? "+" : "") << t.imag() << "i";
        msg << " for k = " << k;
        throw SingularityError(msg.str());
    }
    secant_ = 1.0 / c;
    exponent_scale_ = std::tan(phase) / (Complex(0.0, 1.0) * k);
}

Complex StarExpClosed::operator()(const PhasePoint& pt) const {
    const Complex value = secant_ * std::exp(h_.evaluate(pt) * exponent_scale_);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw NumericalError("star exponential evaluation is not finite");
    return value;
}

StarExpClosed star_exp_closed(const PerfectSquareHamiltonian<double>& h, const FloatContext& ctx, Complex t) {
    return StarExpClosed(h.polynomial<Complex>(), k_of(h, ctx.params()), ctx.params().hbar, t);
}

}  // namespace ncdq
