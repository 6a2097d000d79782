#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>

namespace ncdq::cli {

const std::vector<KeySpec>& known_keys() {
    static const std::vector<KeySpec> keys = {
        {"deformation", "hbar", "1", "reduced Planck constant, > 0"},
        {"deformation", "mu", "0", "position noncommutativity"},
        {"deformation", "nu", "0", "momentum noncommutativity"},
        {"oscillator", "m1", "1", "mass of the first oscillator"},
        {"oscillator", "m2", "1", "mass of the second oscillator"},
        {"oscillator", "C1", "1", "coefficient of X1^2 (times 1/2)"},
        {"oscillator", "C2", "1", "coefficient of X2^2 (times 1/2)"},
        {"oscillator", "C3", "0", "coefficient of X1 X2 (times 1/2)"},
        {"quantum", "n1", "0", "first quantum number"},
        {"quantum", "n2", "0", "second quantum number"},
        {"quantum", "n1_max", "3", "largest n1 in a spectrum"},
        {"quantum", "n2_max", "3", "largest n2 in a spectrum"},
        {"grid", "axis1", "x1", "first plotted slot (x1|x2|p1|p2)"},
        {"grid", "axis1_min", "-3", "first axis lower bound"},
        {"grid", "axis1_max", "3", "first axis upper bound"},
        {"grid", "axis1_count", "41", "first axis sample count"},
        {"grid", "axis2", "p1", "second plotted slot (x1|x2|p1|p2)"},
        {"grid", "axis2_min", "-3", "second axis lower bound"},
        {"grid", "axis2_max", "3", "second axis upper bound"},
        {"grid", "axis2_count", "41", "second axis sample count"},
        {"grid", "x1", "0", "fixed value of x1 when not plotted"},
        {"grid", "x2", "0", "fixed value of x2 when not plotted"},
        {"grid", "p1", "0", "fixed value of p1 when not plotted"},
        {"grid", "p2", "0", "fixed value of p2 when not plotted"},
        {"grid", "coords", "original", "grid coordinates (original|normal)"},
        {"grid", "normalize", "false", "rescale values so the grid integrates to one"},
        {"evolve", "t", "", "real time (exclusive with tau)"},
        {"evolve", "tau", "", "imaginary time, t = -i tau (exclusive with t)"},
        {"verify", "suite", "algebra", "algebra|genvalue|oscillator|evolution"},
        {"verify", "backend", "exact", "exact|float (algebra and genvalue suites)"},
        {"verify", "tolerance", "1e-10", "float-backend tolerance"},
        {"verify", "samples", "20", "random samples per identity"},
        {"verify", "seed", "424242", "random seed"},
        {"verify", "terms", "25", "partial-sum terms per mode (evolution suite)"},
        {"verify", "n_max", "5", "largest Wigner index checked"},
        {"output", "out", "", "output path (stdout when empty)"},
        {"output", "format", "", "csv|json (command default when empty)"},
    };
    return keys;
}

namespace {

const KeySpec* find_key(const std::string& key) {
    for (const auto& k : known_keys())
        if (key == k.key) return &k;
    return nullptr;
}

Var parse_var(const std::string& name, const std::string& key) {
    for (Var v : {Var::x1, Var::x2, Var::p1, Var::p2})
        if (name == var_name(v)) return v;
    throw ConfigError(key + ": expected one of x1, x2, p1, p2, got '" + name + "'");
}

}  // namespace

JobConfig::JobConfig() {
    for (const auto& k : known_keys()) values_[k.key] = k.fallback;
}

void JobConfig::load_ini(const std::string& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError("config: key '" + section + "' outside a section");
        for (const auto& [key, value] : body) {
            const KeySpec* spec = find_key(key);
            if (!spec || section != spec->section)
                throw ConfigError("config: unknown key '" + key + "' in section [" + section + "]");
            values_[key] = value.get_value<std::string>();
        }
    }
}

void JobConfig::set(const std::string& key, const std::string& value) {
    if (!find_key(key)) throw ConfigError("unknown key '" + key + "'");
    values_[key] = value;
}

const std::string& JobConfig::raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown key '" + key + "'");
    return it->second;
}

double JobConfig::real(const std::string& key) const {
    const std::string& s = raw(key);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError(key + ": expected a finite number, got '" + s + "'");
    return v;
}

Rational JobConfig::rational(const std::string& key) const {
    try {
        return parse_rational(raw(key));
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a decimal or rational number, got '" + raw(key) + "'");
    }
}

unsigned JobConfig::count(const std::string& key) const {
    const std::string& s = raw(key);
    unsigned v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size())
        throw ConfigError(key + ": expected a non-negative integer, got '" + s + "'");
    return v;
}

bool JobConfig::flag(const std::string& key) const {
    const std::string& s = raw(key);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + s + "'");
}

DeformationParams<double> JobConfig::deformation() const {
    return DeformationParams<double>::checked(real("hbar"), real("mu"), real("nu"));
}

DeformationParams<Rational> JobConfig::exact_deformation() const {
    return DeformationParams<Rational>::checked(rational("hbar"), rational("mu"), rational("nu"));
}

CoupledOscillatorSpec JobConfig::oscillator() const {
    return {real("m1"), real("m2"), real("C1"), real("C2"), real("C3")};
}

GridSpec JobConfig::grid() const {
    GridSpec g;
    g.axis1 = {parse_var(raw("axis1"), "axis1"), real("axis1_min"), real("axis1_max"), count("axis1_count")};
    g.axis2 = {parse_var(raw("axis2"), "axis2"), real("axis2_min"), real("axis2_max"), count("axis2_count")};
    g.base = PhasePoint(real("x1"), real("x2"), real("p1"), real("p2"));
    g.validate();
    return g;
}

Backend JobConfig::backend() const {
    const std::string& b = raw("backend");
    if (b == "exact") return Backend::exact;
    if (b == "float") return Backend::floating;
    throw ConfigError("backend: expected exact or float, got '" + b + "'");
}

VerifyOptions JobConfig::verify_options() const {
    VerifyOptions opt;
    opt.suite = parse_suite(raw("suite"));
    opt.backend = backend();
    opt.params = exact_deformation();
    opt.oscillator = oscillator();
    opt.tolerance = real("tolerance");
    if (!(opt.tolerance > 0.0)) throw ConfigError("tolerance: tolerance > 0 violated");
    opt.samples = count("samples");
    opt.seed = count("seed");
    opt.terms = count("terms");
    opt.n_max = count("n_max");
    if (opt.terms < 1) throw ConfigError("terms: terms >= 1 violated");
    return opt;
}

std::vector<std::string> JobConfig::provenance() const {
    std::vector<std::string> lines;
    for (const auto& k : known_keys())
        lines.push_back(std::string("# [") + k.section + "] " + k.key + " = " + raw(k.key));
    return lines;
}

}  // namespace ncdq::cli
