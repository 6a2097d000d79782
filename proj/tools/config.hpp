#ifndef NCDQ_TOOLS_CONFIG_HPP
#define NCDQ_TOOLS_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncdq/grid.hpp"
#include "ncdq/oscillator.hpp"
#include "ncdq/verify.hpp"

namespace ncdq::cli {

/// One recognized configuration key. Every key lives in exactly one INI
/// section and can be overridden by the flag --<key>.
struct KeySpec {
    const char* section;
    const char* key;
    const char* fallback;
    const char* help;
};

const std::vector<KeySpec>& known_keys();

/// Raw key/value settings after defaults, config file and flag overrides.
class JobConfig {
public:
    JobConfig();

    /// Merges an INI file; unknown sections or keys are ConfigErrors.
    void load_ini(const std::string& path);
    void set(const std::string& key, const std::string& value);

    const std::string& raw(const std::string& key) const;
    bool has(const std::string& key) const { return !raw(key).empty(); }

    double real(const std::string& key) const;
    Rational rational(const std::string& key) const;
    unsigned count(const std::string& key) const;
    bool flag(const std::string& key) const;

    DeformationParams<double> deformation() const;
    DeformationParams<Rational> exact_deformation() const;
    CoupledOscillatorSpec oscillator() const;
    GridSpec grid() const;
    Backend backend() const;
    VerifyOptions verify_options() const;

    /// "# [section] key = value" lines in key-table order.
    std::vector<std::string> provenance() const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace ncdq::cli

#endif
