#pragma once

#include "ssys/dynamics.hpp"
#include "ssys/forms.hpp"
#include "ssys/scheme.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

// Analysis configuration: a flat key = value text format with # comments,
// chosen for diffability in test fixtures. Exactly one input form must be
// present: either the eight scheme keys a1..a4, b1..b4, or the twelve
// S-system keys alpha1, alpha2, beta1, beta2, g11..g22, h11..h22.
//
// Optional keys:
//   rel_tol, abs_tol, max_step, max_time, escape_radius, overflow_guard
//   u_min, u_max, v_min, v_max, grid          (portrait window and density)
//   section_angle                              (radians)
//   sweep_min, sweep_max, sweep_count          (poincare coordinate sweep)
//   out_dir

namespace ssys {

class config_error : public std::runtime_error {
  public:
    config_error(std::string file, int line_number, const std::string& message);
    const std::string& file() const { return file_; }
    int line() const { return line_; }  // 0 for file-level errors

  private:
    std::string file_;
    int line_;
};

struct PortraitWindow {
    double u_min = -3.0, u_max = 3.0;
    double v_min = -3.0, v_max = 3.0;
    int grid = 5;  // grid x grid seed lattice
};

struct SweepSpec {
    double c_min = 0.2;
    double c_max = 2.0;
    int count = 16;
};

struct AnalysisConfig {
    std::optional<ParameterScheme> scheme;
    std::optional<SSystem> ssystem;

    // Integrator fields are optional so each command may keep its own
    // defaults for values the user did not set.
    std::optional<double> rel_tol, abs_tol, max_step, max_time;
    std::optional<double> escape_radius, overflow_guard;

    PortraitWindow window;
    double section_angle = 0.0;
    SweepSpec sweep;
    std::string out_dir = ".";

    /// Base options overridden by whichever fields were set.
    IntegratorOptions integrator_options(IntegratorOptions base = {}) const;
};

AnalysisConfig parse_config(std::istream& in, const std::string& name);
AnalysisConfig parse_config_file(const std::string& path);

}  // namespace ssys
