#ifndef NCDQ_VERIFY_HPP
#define NCDQ_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ncdq/oscillator.hpp"

namespace ncdq {

enum class Backend { exact, floating };

enum class Suite { algebra, genvalue, oscillator, evolution };

Suite parse_suite(const std::string& name);
const char* suite_name(Suite s);

struct CheckResult {
    std::string identity;
    std::string anchor;  ///< the identity being checked, as a formula
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::string suite;
    std::string backend;
    std::vector<CheckResult> checks;

    bool pass() const;
};

struct VerifyOptions {
    Suite suite = Suite::algebra;
    Backend backend = Backend::exact;
    DeformationParams<Rational> params{Rational(1), Rational(0), Rational(0)};
    CoupledOscillatorSpec oscillator;
    double tolerance = 1e-10;
    unsigned samples = 20;
    std::uint64_t seed = 424242;
    double tau = 0.5;
    unsigned terms = 25;
    unsigned n_max = 5;
};

/// Runs one invariant suite. Failures are recorded in the report, never
/// thrown; invalid options still raise ConfigError.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace ncdq

#endif
