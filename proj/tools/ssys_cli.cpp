// Command-line front end: classification reports, phase portraits,
// Poincare diagnostics, and the two-limit-cycle demonstration.
//
// Exit codes: 0 success, 1 numerical failure, 2 configuration error.

#include "ssys/bautin.hpp"
#include "ssys/classify.hpp"
#include "ssys/config.hpp"
#include "ssys/dynamics.hpp"
#include "ssys/forms.hpp"
#include "ssys/report.hpp"
#include "svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::optional<double> rel_tol, abs_tol, max_time, section;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool config_required) {
    auto* opt = cmd->add_option("--config", f.config_path, "analysis config file");
    if (config_required) opt->required();
    cmd->add_option("--out", f.out_dir, "output directory (overrides config out_dir)");
    cmd->add_option("--rel-tol", f.rel_tol, "integrator relative tolerance");
    cmd->add_option("--abs-tol", f.abs_tol, "integrator absolute tolerance");
    cmd->add_option("--max-time", f.max_time, "integration time limit");
    cmd->add_option("--section", f.section, "Poincare section ray angle (radians)");
}

ssys::AnalysisConfig load_config(const CommonFlags& f) {
    ssys::AnalysisConfig cfg = ssys::parse_config_file(f.config_path);
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    if (f.rel_tol) cfg.rel_tol = f.rel_tol;
    if (f.abs_tol) cfg.abs_tol = f.abs_tol;
    if (f.max_time) cfg.max_time = f.max_time;
    if (f.section) cfg.section_angle = *f.section;
    return cfg;
}

fs::path ensure_out_dir(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

ssys::ParameterScheme scheme_of(const ssys::AnalysisConfig& cfg) {
    if (cfg.scheme) return *cfg.scheme;
    const ssys::EquilibriumResult eq = ssys::solve_equilibrium(*cfg.ssystem);
    if (!eq.unique())
        throw std::runtime_error(
            "det(G-H) = 0: the S-system has no unique positive equilibrium to analyze");
    return ssys::to_exponential(ssys::scale_ssystem(*cfg.ssystem, eq.x1, eq.x2));
}

int cmd_classify(const CommonFlags& flags) {
    const ssys::AnalysisConfig cfg = load_config(flags);
    const std::string report = ssys::classification_report_json(cfg);
    const fs::path out = ensure_out_dir(cfg.out_dir) / "classify_report.json";
    std::ofstream file(out);
    file << report;
    std::cout << report;
    std::cerr << "report written to " << out.string() << "\n";
    return kExitOk;
}

int cmd_portrait(const CommonFlags& flags) {
    const ssys::AnalysisConfig cfg = load_config(flags);
    const ssys::ParameterScheme s = scheme_of(cfg);
    const ssys::IntegratorOptions opts = cfg.integrator_options(ssys::portrait_options());
    const ssys::PortraitWindow& w = cfg.window;

    const fs::path out = ensure_out_dir(cfg.out_dir);
    std::vector<ssys::Trajectory> trajectories;
    ordered_json summary;
    summary["seeds"] = ordered_json::array();

    // row-major seed lattice over the window
    for (int iv = 0; iv < w.grid; ++iv) {
        for (int iu = 0; iu < w.grid; ++iu) {
            const double u =
                w.grid == 1 ? 0.5 * (w.u_min + w.u_max)
                            : w.u_min + (w.u_max - w.u_min) * iu / double(w.grid - 1);
            const double v =
                w.grid == 1 ? 0.5 * (w.v_min + w.v_max)
                            : w.v_min + (w.v_max - w.v_min) * iv / double(w.grid - 1);
            const int index = iv * w.grid + iu;
            ordered_json entry;
            entry["seed"] = index;
            entry["u0"] = u;
            entry["v0"] = v;
            try {
                ssys::IntegratorOptions po = opts;
                if (!cfg.max_time) po.max_time = 40.0;
                ssys::Trajectory tr = ssys::integrate(s, {u, v}, po);
                entry["termination"] = ssys::to_string(tr.termination);
                char name[64];
                std::snprintf(name, sizeof name, "trajectory_%03d.csv", index);
                std::ofstream csv(out / name);
                ssys::write_trajectory_csv(csv, tr);
                entry["file"] = name;
                trajectories.push_back(std::move(tr));
            } catch (const ssys::integration_error& e) {
                entry["termination"] = "integration_failure";
                entry["error"] = e.what();
            }
            summary["seeds"].push_back(entry);
        }
    }

    {  // nullcline endpoints and svg
        std::ofstream nc(out / "nullclines.csv");
        nc << "which,j_a,j_b\n";
        nc << "u," << ssys::format_double(s.a1 - s.a2) << ',' << ssys::format_double(s.b1 - s.b2)
           << "\n";
        nc << "v," << ssys::format_double(s.a3 - s.a4) << ',' << ssys::format_double(s.b3 - s.b4)
           << "\n";
        std::ofstream svg(out / "portrait.svg");
        svg << ssys::tool::portrait_svg(s, w, trajectories);
    }
    std::ofstream sj(out / "portrait_summary.json");
    sj << summary.dump(2) << "\n";
    std::cout << "portrait written to " << (out / "portrait.svg").string() << " ("
              << trajectories.size() << " trajectories)\n";
    return kExitOk;
}

int cmd_poincare(const CommonFlags& flags) {
    const ssys::AnalysisConfig cfg = load_config(flags);
    const ssys::ParameterScheme s = scheme_of(cfg);
    ssys::IntegratorOptions opts = cfg.integrator_options();
    if (!cfg.max_time) opts.max_time = 400.0;
    const ssys::Section section{cfg.section_angle};

    const fs::path out = ensure_out_dir(cfg.out_dir);
    std::ofstream csv(out / "poincare.csv");
    csv << "c,return_coordinate,displacement,return_time\n";
    int successes = 0;
    for (int i = 0; i < cfg.sweep.count; ++i) {
        const double c = cfg.sweep.count == 1
                             ? cfg.sweep.c_min
                             : cfg.sweep.c_min + (cfg.sweep.c_max - cfg.sweep.c_min) * i /
                                                     double(cfg.sweep.count - 1);
        try {
            const ssys::SectionCrossing cr = ssys::poincare_return(s, section, c, opts);
            csv << ssys::format_double(c) << ',' << ssys::format_double(cr.coordinate) << ','
                << ssys::format_double(cr.coordinate - c) << ','
                << ssys::format_double(cr.return_time) << "\n";
            ++successes;
        } catch (const std::exception& e) {
            csv << ssys::format_double(c) << ",,,# " << e.what() << "\n";
        }
    }
    std::cout << "poincare sweep: " << successes << "/" << cfg.sweep.count
              << " returns, written to " << (out / "poincare.csv").string() << "\n";
    return successes > 0 ? kExitOk : kExitNumerical;
}

int cmd_bautin_demo(const CommonFlags& flags) {
    // self-contained: the base point is built in; a config is optional
    std::string out_dir = flags.out_dir.empty() ? "." : flags.out_dir;
    if (!flags.config_path.empty()) {
        const ssys::AnalysisConfig cfg = load_config(flags);
        out_dir = cfg.out_dir;
    }

    auto scheme_json = [](const ssys::ParameterScheme& s) {
        return ordered_json{{"a1", s.a1}, {"a2", s.a2}, {"a3", s.a3}, {"a4", s.a4},
                            {"b1", s.b1}, {"b2", s.b2}, {"b3", s.b3}, {"b4", s.b4}};
    };
    auto cycle_json = [](const ssys::LimitCycle& c) {
        return ordered_json{{"section_coordinate", c.coordinate},
                            {"stability", ssys::to_string(c.stability)},
                            {"period", c.period}};
    };

    try {
        const ssys::BautinDemoResult r = ssys::run_bautin_demo();
        ordered_json rep;
        rep["base"] = {{"scheme", scheme_json(r.base)}, {"L1", r.base_L1}, {"L2", r.base_L2}};
        rep["stage1"] = {{"epsilon", r.stage1.epsilon},
                         {"L1", r.stage1.L1},
                         {"scheme", scheme_json(r.stage1.scheme)},
                         {"cycle", cycle_json(r.stage1.cycle)}};
        rep["stage2"] = {{"epsilon", r.stage2.epsilon},
                         {"trace", r.stage2.trace},
                         {"scheme", scheme_json(r.stage2.scheme)},
                         {"cycles", ordered_json::array(
                                        {cycle_json(r.stage2.cycles[0]), cycle_json(r.stage2.cycles[1])})}};
        const fs::path out = ensure_out_dir(out_dir) / "bautin_report.json";
        std::ofstream file(out);
        file << rep.dump(2) << "\n";
        std::cout << rep.dump(2) << "\n";
        std::cerr << "report written to " << out.string() << "\n";
        return kExitOk;
    } catch (const ssys::bautin_search_error& e) {
        std::cerr << "bautin-demo: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar S-system stability and center analysis"};
    app.require_subcommand(1);

    CommonFlags classify_flags, portrait_flags, poincare_flags, bautin_flags;
    CLI::App* classify = app.add_subcommand("classify", "full classification report");
    add_common(classify, classify_flags, true);
    CLI::App* portrait = app.add_subcommand("portrait", "trajectory bundle, nullclines and SVG");
    add_common(portrait, portrait_flags, true);
    CLI::App* poincare = app.add_subcommand("poincare", "return-map sweep along a section");
    add_common(poincare, poincare_flags, true);
    CLI::App* bautin = app.add_subcommand("bautin-demo", "two-limit-cycle construction");
    add_common(bautin, bautin_flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitConfig : kExitOk;
    }

    try {
        if (classify->parsed()) return cmd_classify(classify_flags);
        if (portrait->parsed()) return cmd_portrait(portrait_flags);
        if (poincare->parsed()) return cmd_poincare(poincare_flags);
        if (bautin->parsed()) return cmd_bautin_demo(bautin_flags);
    } catch (const ssys::config_error& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
