#include "ssys/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace ssys {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::set<std::string> kSchemeKeys = {"a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"};
const std::set<std::string> kSSystemKeys = {"alpha1", "alpha2", "beta1", "beta2",
                                            "g11",    "g12",    "g21",   "g22",
                                            "h11",    "h12",    "h21",   "h22"};
const std::set<std::string> kDoubleKeys = {
    "rel_tol", "abs_tol", "max_step", "max_time", "escape_radius", "overflow_guard",
    "u_min",   "u_max",   "v_min",    "v_max",    "section_angle", "sweep_min",
    "sweep_max"};
const std::set<std::string> kIntKeys = {"grid", "sweep_count"};

}  // namespace

config_error::config_error(std::string file, int line_number, const std::string& message)
    : std::runtime_error(line_number > 0 ? file + ":" + std::to_string(line_number) + ": " + message
                                         : file + ": " + message),
      file_(std::move(file)),
      line_(line_number) {}

IntegratorOptions AnalysisConfig::integrator_options(IntegratorOptions base) const {
    if (rel_tol) base.rel_tol = *rel_tol;
    if (abs_tol) base.abs_tol = *abs_tol;
    if (max_step) base.max_step = *max_step;
    if (max_time) base.max_time = *max_time;
    if (escape_radius) base.escape_radius = *escape_radius;
    if (overflow_guard) base.overflow_guard = *overflow_guard;
    return base;
}

AnalysisConfig parse_config(std::istream& in, const std::string& name) {
    std::map<std::string, double> values;
    std::map<std::string, int> int_values;
    std::map<std::string, int> seen_line;
    std::string out_dir = ".";
    bool out_dir_set = false;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(name, line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error(name, line_no, "empty key");
        if (value.empty()) throw config_error(name, line_no, "empty value for key '" + key + "'");

        if (seen_line.count(key))
            throw config_error(name, line_no,
                               "duplicate key '" + key + "' (first set on line " +
                                   std::to_string(seen_line[key]) + ")");
        seen_line[key] = line_no;

        if (key == "out_dir") {
            out_dir = value;
            out_dir_set = true;
            continue;
        }

        const bool is_int = kIntKeys.count(key) > 0;
        const bool is_double =
            kSchemeKeys.count(key) || kSSystemKeys.count(key) || kDoubleKeys.count(key);
        if (!is_int && !is_double)
            throw config_error(name, line_no, "unknown key '" + key + "'");

        if (is_int) {
            int v = 0;
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc() || ptr != value.data() + value.size())
                throw config_error(name, line_no, "invalid integer '" + value + "' for key '" + key + "'");
            int_values[key] = v;
        } else {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc() || ptr != value.data() + value.size())
                throw config_error(name, line_no, "invalid number '" + value + "' for key '" + key + "'");
            values[key] = v;
        }
    }

    auto count_of = [&](const std::set<std::string>& keys) {
        int c = 0;
        for (const auto& k : keys) c += values.count(k) ? 1 : 0;
        return c;
    };
    const int n_scheme = count_of(kSchemeKeys);
    const int n_ssys = count_of(kSSystemKeys);
    if (n_scheme > 0 && n_ssys > 0)
        throw config_error(name, 0, "both scheme (a1..b4) and S-system (alpha*, g*, h*) keys present; provide exactly one input form");
    if (n_scheme == 0 && n_ssys == 0)
        throw config_error(name, 0, "no input: provide either the eight scheme keys a1..a4, b1..b4 or the twelve S-system keys");
    auto missing_msg = [&](const std::set<std::string>& keys) {
        std::string m;
        for (const auto& k : keys)
            if (!values.count(k)) m += (m.empty() ? "" : ", ") + k;
        return m;
    };
    if (n_scheme > 0 && n_scheme != 8)
        throw config_error(name, 0, "incomplete scheme input; missing: " + missing_msg(kSchemeKeys));
    if (n_ssys > 0 && n_ssys != 12)
        throw config_error(name, 0, "incomplete S-system input; missing: " + missing_msg(kSSystemKeys));

    AnalysisConfig cfg;
    if (out_dir_set) cfg.out_dir = out_dir;
    if (n_scheme == 8) {
        ParameterScheme s{values["a1"], values["a2"], values["a3"], values["a4"],
                          values["b1"], values["b2"], values["b3"], values["b4"]};
        if (!s.all_finite()) throw config_error(name, 0, "scheme entries must be finite");
        cfg.scheme = s;
    } else {
        SSystem sys;
        sys.alpha1 = values["alpha1"];
        sys.alpha2 = values["alpha2"];
        sys.beta1 = values["beta1"];
        sys.beta2 = values["beta2"];
        sys.G = {{{values["g11"], values["g12"]}, {values["g21"], values["g22"]}}};
        sys.H = {{{values["h11"], values["h12"]}, {values["h21"], values["h22"]}}};
        try {
            sys.validate();
        } catch (const std::invalid_argument& e) {
            throw config_error(name, 0, e.what());
        }
        cfg.ssystem = sys;
    }

    auto opt = [&](const char* k) -> std::optional<double> {
        if (values.count(k)) return values[k];
        return std::nullopt;
    };
    cfg.rel_tol = opt("rel_tol");
    cfg.abs_tol = opt("abs_tol");
    cfg.max_step = opt("max_step");
    cfg.max_time = opt("max_time");
    cfg.escape_radius = opt("escape_radius");
    cfg.overflow_guard = opt("overflow_guard");

    if (values.count("u_min")) cfg.window.u_min = values["u_min"];
    if (values.count("u_max")) cfg.window.u_max = values["u_max"];
    if (values.count("v_min")) cfg.window.v_min = values["v_min"];
    if (values.count("v_max")) cfg.window.v_max = values["v_max"];
    if (int_values.count("grid")) cfg.window.grid = int_values["grid"];
    if (values.count("section_angle")) cfg.section_angle = values["section_angle"];
    if (values.count("sweep_min")) cfg.sweep.c_min = values["sweep_min"];
    if (values.count("sweep_max")) cfg.sweep.c_max = values["sweep_max"];
    if (int_values.count("sweep_count")) cfg.sweep.count = int_values["sweep_count"];

    if (!(cfg.window.u_min < cfg.window.u_max) || !(cfg.window.v_min < cfg.window.v_max))
        throw config_error(name, 0, "portrait window bounds must be ordered (u_min < u_max, v_min < v_max)");
    if (cfg.window.grid < 1) throw config_error(name, 0, "grid must be >= 1");
    if (!(cfg.sweep.c_min > 0.0) || !(cfg.sweep.c_max > cfg.sweep.c_min) || cfg.sweep.count < 1)
        throw config_error(name, 0, "sweep must satisfy 0 < sweep_min < sweep_max, sweep_count >= 1");

    return cfg;
}

AnalysisConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path, 0, "cannot open config file");
    return parse_config(in, path);
}

}  // namespace ssys
