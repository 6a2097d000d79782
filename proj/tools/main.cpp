// ncdq: spectra, Wigner grids, verification suites and time evolution for
// the coupled oscillator on noncommutative phase space.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "config.hpp"

namespace ncdq::cli {
namespace {

enum Exit { kPass = 0, kFailed = 1, kInvalid = 2 };

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// A rectangular result with named columns, rendered as CSV or JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // CSV-ready cells
    std::vector<std::vector<nlohmann::json>> json_rows;
};

nlohmann::json config_json(const JobConfig& cfg) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& k : known_keys()) out[k.section][k.key] = cfg.raw(k.key);
    return out;
}

std::string render_csv(const std::string& command, const JobConfig& cfg, const std::vector<std::string>& notes,
                       const Table& t) {
    std::ostringstream os;
    os << "# ncdq " << command << "\n";
    for (const auto& line : cfg.provenance()) os << line << "\n";
    for (const auto& n : notes) os << "# " << n << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
        os << "\n";
    }
    return os.str();
}

std::string render_json(const std::string& command, const JobConfig& cfg, const std::vector<std::string>& notes,
                        const Table& t) {
    nlohmann::json doc;
    doc["command"] = command;
    doc["config"] = config_json(cfg);
    doc["notes"] = notes;
    doc["columns"] = t.columns;
    doc["rows"] = t.json_rows;
    return doc.dump(2) + "\n";
}

void emit(const JobConfig& cfg, const std::string& text) {
    const std::string& path = cfg.raw("out");
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("out: cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw ConfigError("out: write to '" + path + "' failed");
}

std::string format_of(const JobConfig& cfg, const char* fallback) {
    const std::string f = cfg.has("format") ? cfg.raw("format") : fallback;
    if (f != "csv" && f != "json") throw ConfigError("format: expected csv or json, got '" + f + "'");
    return f;
}

void emit_table(const std::string& command, const JobConfig& cfg, const std::vector<std::string>& notes,
                const Table& t) {
    emit(cfg, format_of(cfg, "csv") == "csv" ? render_csv(command, cfg, notes, t) : render_json(command, cfg, notes, t));
}

bool normal_coords(const JobConfig& cfg) {
    const std::string& c = cfg.raw("coords");
    if (c == "normal") return true;
    if (c == "original") return false;
    throw ConfigError("coords: expected original or normal, got '" + c + "'");
}

std::vector<std::string> frequency_notes(const OscillatorSolution& sol) {
    return {"k1 = " + num(sol.k1), "k2 = " + num(sol.k2)};
}

int cmd_spectrum(const JobConfig& cfg) {
    const auto sol = solve(cfg.oscillator(), cfg.deformation());
    const unsigned n1_max = cfg.count("n1_max"), n2_max = cfg.count("n2_max");
    Table t;
    t.columns = {"n1", "n2", "E", "E_comm", "shift"};
    for (unsigned a = 0; a <= n1_max; ++a)
        for (unsigned b = 0; b <= n2_max; ++b) {
            const double e = energy(sol, a, b), ec = energy_commutative(sol, a, b);
            t.rows.push_back({std::to_string(a), std::to_string(b), num(e), num(ec), num(e - ec)});
            t.json_rows.push_back({a, b, e, ec, e - ec});
        }
    emit_table("spectrum", cfg, frequency_notes(sol), t);
    return kPass;
}

template <class Value>
Table grid_table(const GridSpec& g, const std::vector<Value>& values) {
    Table t;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double a = g.axis1.at(i / g.axis2.count), b = g.axis2.at(i % g.axis2.count);
        if constexpr (std::is_same_v<Value, Complex>) {
            t.rows.push_back({num(a), num(b), num(values[i].real()), num(values[i].imag())});
            t.json_rows.push_back({a, b, values[i].real(), values[i].imag()});
        } else {
            t.rows.push_back({num(a), num(b), num(values[i])});
            t.json_rows.push_back({a, b, values[i]});
        }
    }
    return t;
}

int cmd_wigner_grid(const JobConfig& cfg) {
    const auto sol = solve(cfg.oscillator(), cfg.deformation());
    const GridSpec g = cfg.grid();
    const bool normal = normal_coords(cfg);
    const WignerState st = wigner_state(sol, cfg.count("n1"), cfg.count("n2"));
    const FloatGaussLag w = normal ? st.w : to_original_coords(st, sol);
    std::vector<double> values = tabulate_parallel(g, [&](const PhasePoint& pt) { return gausslag_eval(w, pt).real(); });
    if (cfg.flag("normalize")) normalize_grid(values, g.cell_area());
    Table t = grid_table(g, values);
    t.columns = {"axis1", "axis2", "value"};
    auto notes = frequency_notes(sol);
    notes.push_back("E = " + num(st.energy));
    notes.push_back(std::string("axis1 = ") + var_name(g.axis1.var) + ", axis2 = " + var_name(g.axis2.var) +
                    (normal ? " (normal coordinates y, q)" : " (original coordinates X, P)"));
    emit_table("wigner-grid", cfg, notes, t);
    return kPass;
}

int cmd_evolve(const JobConfig& cfg) {
    if (cfg.has("t") == cfg.has("tau")) throw ConfigError("evolve: exactly one of t and tau must be given");
    const Complex time = cfg.has("t") ? Complex(cfg.real("t"), 0.0) : Complex(0.0, -cfg.real("tau"));
    const auto sol = solve(cfg.oscillator(), cfg.deformation());
    const GridSpec g = cfg.grid();
    const bool normal = normal_coords(cfg);
    const CoupledEvolution evo = time_evolution(sol, time);
    const auto values = tabulate_parallel(g, [&](const PhasePoint& pt) { return normal ? evo(pt) : evo.at_original(pt); });
    Table t = grid_table(g, values);
    t.columns = {"axis1", "axis2", "re", "im"};
    auto notes = frequency_notes(sol);
    notes.push_back(cfg.has("t") ? "t = " + cfg.raw("t") : "tau = " + cfg.raw("tau") + " (t = -i tau)");
    emit_table("evolve", cfg, notes, t);
    return kPass;
}

int cmd_verify(const JobConfig& cfg) {
    const VerifyReport report = run_verify(cfg.verify_options());
    if (format_of(cfg, "json") == "csv") {
        Table t;
        t.columns = {"identity", "anchor", "residual", "tolerance", "pass"};
        for (const auto& c : report.checks)
            t.rows.push_back({c.identity, c.anchor, num(c.residual), num(c.tolerance), c.pass ? "true" : "false"});
        emit(cfg, render_csv("verify", cfg, {"suite = " + report.suite, "backend = " + report.backend}, t));
    } else {
        nlohmann::json doc;
        doc["command"] = "verify";
        doc["suite"] = report.suite;
        doc["backend"] = report.backend;
        doc["pass"] = report.pass();
        doc["config"] = config_json(cfg);
        doc["checks"] = nlohmann::json::array();
        for (const auto& c : report.checks)
            doc["checks"].push_back({{"identity", c.identity},
                                     {"anchor", c.anchor},
                                     {"residual", c.residual},
                                     {"tolerance", c.tolerance},
                                     {"pass", c.pass}});
        emit(cfg, doc.dump(2) + "\n");
    }
    return report.pass() ? kPass : kFailed;
}

}  // namespace
}  // namespace ncdq::cli

int main(int argc, char** argv) {
    using namespace ncdq::cli;
    CLI::App app{"Deformation quantization of coupled oscillators on noncommutative phase space"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
    std::map<std::string, std::string> overrides;
    std::vector<CLI::Option*> options;
    for (const auto& k : known_keys())
        options.push_back(app.add_option(std::string("--") + k.key, overrides[k.key], k.help));

    auto* spectrum = app.add_subcommand("spectrum", "energy levels E(n1, n2) with the commutative reference");
    auto* wigner = app.add_subcommand("wigner-grid", "Wigner function of state (n1, n2) on a 2D grid");
    auto* verify = app.add_subcommand("verify", "run an invariant suite and report residuals");
    auto* evolve = app.add_subcommand("evolve", "star exponential Exp1 Exp2 on a 2D grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInvalid;
    }

    try {
        JobConfig cfg;
        if (!config_path.empty()) cfg.load_ini(config_path);
        for (std::size_t i = 0; i < known_keys().size(); ++i)
            if (options[i]->count() > 0) cfg.set(known_keys()[i].key, overrides[known_keys()[i].key]);

        if (spectrum->parsed()) return cmd_spectrum(cfg);
        if (wigner->parsed()) return cmd_wigner_grid(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (evolve->parsed()) return cmd_evolve(cfg);
    } catch (const ncdq::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const ncdq::SingularityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kInvalid;
}
