#include <doctest.h>

#include "ssys/config.hpp"
#include "ssys/report.hpp"

#include <json.hpp>

#include <sstream>

using namespace ssys;
using nlohmann::json;

namespace {

AnalysisConfig parse_str(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in, "test.cfg");
}

int error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_config(in, "test.cfg");
    } catch (const config_error& e) {
        return e.line();
    }
    return -1;
}

const char* kSinhCfg =
    "# global center, clockwise\n"
    "a1 = 0\na2 = 0\na3 = -1\na4 = 1\n"
    "b1 = 1\nb2 = -1\nb3 = 0\nb4 = 0\n";

}  // namespace

TEST_CASE("scheme config parses with comments and options") {
    const AnalysisConfig cfg = parse_str(std::string(kSinhCfg) +
                                         "rel_tol = 1e-9   # tight\n"
                                         "section_angle = 0.5\n"
                                         "out_dir = out/run1\n");
    REQUIRE(cfg.scheme.has_value());
    CHECK(!cfg.ssystem.has_value());
    CHECK(cfg.scheme->a3 == -1.0);
    CHECK(cfg.rel_tol == 1e-9);
    CHECK(cfg.section_angle == 0.5);
    CHECK(cfg.out_dir == "out/run1");
    const IntegratorOptions o = cfg.integrator_options();
    CHECK(o.rel_tol == 1e-9);
    CHECK(o.abs_tol == IntegratorOptions{}.abs_tol);
}

TEST_CASE("ssystem config parses") {
    const AnalysisConfig cfg = parse_str(
        "alpha1 = 1\nalpha2 = 1\nbeta1 = 1\nbeta2 = 1\n"
        "g11 = 0\ng12 = 0\ng21 = 0\ng22 = 0\n"
        "h11 = 1\nh12 = 0\nh21 = 0\nh22 = 1\n");
    REQUIRE(cfg.ssystem.has_value());
    CHECK(cfg.ssystem->H[0][0] == 1.0);
}

TEST_CASE("config errors are line anchored") {
    CHECK(error_line("a1 = 0\nnot a key value line\n") == 2);
    CHECK(error_line("a1 = 0\nwhat = 1\n") == 2);
    CHECK(error_line("a1 = 0\na1 = 1\n") == 2);
    CHECK(error_line("a1 = zero\n") == 1);
    CHECK(error_line(std::string(kSinhCfg) + "grid = 2.5\n") == 10);
}

TEST_CASE("config input-form validation") {
    // both forms
    CHECK_THROWS_AS(parse_str(std::string(kSinhCfg) + "alpha1 = 1\n"), config_error);
    // neither form
    CHECK_THROWS_AS(parse_str("rel_tol = 1e-8\n"), config_error);
    // incomplete scheme
    CHECK_THROWS_AS(parse_str("a1 = 0\na2 = 0\n"), config_error);
    // unordered window
    CHECK_THROWS_AS(parse_str(std::string(kSinhCfg) + "u_min = 2\nu_max = -2\n"), config_error);
    // nonpositive rates
    CHECK_THROWS_AS(parse_str("alpha1 = -1\nalpha2 = 1\nbeta1 = 1\nbeta2 = 1\n"
                              "g11 = 0\ng12 = 0\ng21 = 0\ng22 = 0\n"
                              "h11 = 1\nh12 = 0\nh21 = 0\nh22 = 1\n"),
                    config_error);
}

TEST_CASE("classification report carries every field for a center scheme") {
    const AnalysisConfig cfg = parse_str(kSinhCfg);
    const std::string text = classification_report_json(cfg);
    const json rep = json::parse(text);

    for (const char* key :
         {"input", "equilibrium", "scheme", "trace", "det", "sign_matrix", "local_stability",
          "global_stability", "boundedness", "center_cases", "L1", "L2", "L2_note", "ell1",
          "global_center", "orientation", "note"})
        CHECK(rep.contains(key));

    CHECK(rep["input"] == "scheme");
    CHECK(rep["equilibrium"].is_null());
    CHECK(rep["trace"] == 0.0);
    CHECK(rep["det"] == 4.0);
    CHECK(rep["global_center"] == true);
    CHECK(rep["orientation"] == "clockwise");
    CHECK(rep["L1"] == 0.0);
    bool has_s = false;
    for (const auto& c : rep["center_cases"])
        if (c["tag"] == "S") has_s = true;
    CHECK(has_s);
}

TEST_CASE("report for an S-system input includes the equilibrium") {
    // G - H = -I: log x* = -(log beta/alpha), so beta = (e^-1, e^-2)
    // places the equilibrium at (e, e^2)
    const AnalysisConfig cfg = parse_str(
        "alpha1 = 1\nalpha2 = 1\n"
        "beta1 = 0.36787944117144233\nbeta2 = 0.1353352832366127\n"
        "g11 = 0\ng12 = 0\ng21 = 0\ng22 = 0\n"
        "h11 = 1\nh12 = 0\nh21 = 0\nh22 = 1\n");
    const json rep = json::parse(classification_report_json(cfg));
    CHECK(rep["input"] == "ssystem");
    REQUIRE(rep["equilibrium"].is_object());
    CHECK(std::abs(rep["equilibrium"]["x1"].get<double>() - 2.718281828459045) < 1e-12);
    CHECK(std::abs(rep["equilibrium"]["x2"].get<double>() - 7.38905609893065) < 1e-12);
    CHECK(rep["local_stability"]["verdict"] == "asymptotically_stable_for_all_gamma");
    CHECK(rep["global_stability"]["branch"] == "a");
}

TEST_CASE("degenerate S-system yields a note, not an error") {
    const AnalysisConfig cfg = parse_str(
        "alpha1 = 1\nalpha2 = 1\nbeta1 = 1\nbeta2 = 1\n"
        "g11 = 1\ng12 = 0\ng21 = 0\ng22 = 1\n"
        "h11 = 1\nh12 = 0\nh21 = 0\nh22 = 1\n");
    const json rep = json::parse(classification_report_json(cfg));
    CHECK(rep["equilibrium"] == "degenerate");
    CHECK(rep["trace"].is_null());
    CHECK(rep["note"].is_string());
}

TEST_CASE("a det J = 0 scheme reports the equilibrium-curve note") {
    const AnalysisConfig cfg = parse_str(
        "a1 = 1\na2 = 2\na3 = 3\na4 = 4\nb1 = 5\nb2 = 6\nb3 = 7\nb4 = 8\n");
    const json rep = json::parse(classification_report_json(cfg));
    CHECK(rep["det"] == 0.0);
    CHECK(rep["local_stability"].is_null());
    CHECK(rep["note"].get<std::string>().find("curve of equilibria") != std::string::npos);
}

TEST_CASE("report generation is deterministic") {
    const AnalysisConfig cfg = parse_str(kSinhCfg);
    CHECK(classification_report_json(cfg) == classification_report_json(cfg));
}

TEST_CASE("format_double round trips") {
    for (double x : {0.1, -1.0 / 3.0, 1e-300, 123456789.123456789, 0.0}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("trajectory csv format") {
    Trajectory tr;
    tr.samples = {{0.0, 1.0, 2.0}, {0.5, 1.25, -0.5}};
    tr.termination = Termination::escaped;
    std::ostringstream out;
    write_trajectory_csv(out, tr);
    CHECK(out.str() == "t,u,v\n0,1,2\n0.5,1.25,-0.5\n# termination: escaped\n");
}
