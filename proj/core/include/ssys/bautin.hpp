#pragma once

#include "ssys/dynamics.hpp"
#include "ssys/scheme.hpp"

#include <stdexcept>

// Two-limit-cycle construction: starting from the built-in degenerate
// weak focus (L1 = 0, L2 < 0), stage 1 lowers a2 = b3 jointly (trace
// stays 0, L1 turns positive) until a stable cycle appears, and stage 2
// raises a2 alone (trace turns negative) until a small unstable cycle
// coexists with the stable one.

namespace ssys {

/// The built-in base point: a = (0,-1,-1,4), b = (0,-2,-1,0).
/// tr J = 0, det J = 9, L1 = 0, L2 = -10*pi/288.
ParameterScheme bautin_base_scheme();

struct BautinStage1 {
    double epsilon;        // a2 = b3 = -1 - epsilon
    double L1;             // first focal value after the perturbation (> 0)
    ParameterScheme scheme;
    LimitCycle cycle;      // the stable cycle found on the section
};

struct BautinStage2 {
    double epsilon;        // a2 += epsilon (relative to stage 1)
    double trace;          // tr J = -epsilon < 0
    ParameterScheme scheme;
    std::vector<LimitCycle> cycles;  // exactly two: inner unstable, outer stable
};

struct BautinDemoResult {
    ParameterScheme base;
    double base_L1;
    double base_L2;
    BautinStage1 stage1;
    BautinStage2 stage2;
};

class bautin_search_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct BautinSearchOptions {
    Section section{0.0};                    // positive u-axis
    std::vector<double> stage1_candidates{0.02, 0.04, 0.06, 0.08};
    /// Stage-2 candidates as multiples of epsilon1^2.
    std::vector<double> stage2_factors{0.30, 0.15, 0.08, 0.04, 0.02};
    CycleSearchOptions cycle_search{};       // c range set by the search
    IntegratorOptions integrator{};          // tightened defaults set by the search
};

BautinSearchOptions default_bautin_options();

/// Runs the two-stage perturbation search; throws bautin_search_error with
/// diagnostics when the budget is exhausted without finding the two-cycle
/// configuration.
BautinDemoResult run_bautin_demo(const BautinSearchOptions& opts = default_bautin_options());

}  // namespace ssys
