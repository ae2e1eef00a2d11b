#pragma once

#include "ssys/config.hpp"

#include <iosfwd>
#include <string>

namespace ssys {

/// Shortest round-trip decimal representation (std::to_chars); the float
/// format used in every CSV/JSON output so identical inputs produce
/// byte-identical files.
std::string format_double(double x);

/// Runs the full classification on the configured input and serializes the
/// report as pretty-printed JSON. Every field is always present; fields
/// that do not apply hold null. Fields: equilibrium, trace, det,
/// sign_matrix, local_stability, global_stability, boundedness,
/// center_cases, L1, L2, L2_note, ell1, global_center, orientation, note.
std::string classification_report_json(const AnalysisConfig& cfg);

/// Trajectory CSV: header "t,u,v", one row per sample, and a trailing
/// "# termination: ..." comment.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace ssys
