#pragma once

#include "ssys/forms.hpp"
#include "ssys/scheme.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Numerical companion to the exact classifiers: adaptive embedded
// Runge-Kutta 5(4) integration of the exponential-form field with dense
// output, convergence/escape detection, Poincare return maps, closed-orbit
// tests, and limit-cycle search.

namespace ssys {

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double max_time = 1000.0;
    /// Terminate with Escaped once ||(u,v)|| exceeds this.
    double escape_radius = 100.0;
    /// Terminate with Overflow once any exponent a_i u + b_i v exceeds
    /// this (near the double-precision exp limit).
    double overflow_guard = 700.0;
    /// Attempted-step budget; exceeding it raises integration_error with
    /// the partial trajectory. Guards against stiff slow-manifold passages,
    /// which this explicit pair does not handle (no stiff fallback).
    long max_steps = 10'000'000;
    /// When false, only the initial and final samples are stored.
    bool keep_samples = true;

    void validate() const;  // throws std::invalid_argument
};

/// Loose defaults for phase portraits (speed over conservation quality).
IntegratorOptions portrait_options();

enum class Termination : std::uint8_t { time_limit, converged_to_origin, escaped, overflow };
std::string to_string(Termination t);

struct TrajectorySample {
    double t, u, v;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;  // t strictly increasing
    Termination termination = Termination::time_limit;
    /// Accumulated polar angle around the origin (signed, radians).
    double winding = 0.0;

    const TrajectorySample& initial() const { return samples.front(); }
    const TrajectorySample& final() const { return samples.back(); }
};

class integration_error : public std::runtime_error {
  public:
    integration_error(const std::string& what, Trajectory partial_trajectory)
        : std::runtime_error(what), partial(std::move(partial_trajectory)) {}
    Trajectory partial;
};

/// Adaptive Dormand-Prince 5(4) solution from x0. Terminates on the time
/// limit, on entering the ball of radius 10*abs_tol around the origin with
/// the field pointing inward (converged_to_origin), on leaving
/// escape_radius (escaped), or on an exponent exceeding overflow_guard
/// (overflow). Step-size underflow raises integration_error carrying the
/// partial trajectory.
Trajectory integrate(const ParameterScheme& s, Vec2 x0, const IntegratorOptions& opts);

enum class ConvergenceAnswer : std::uint8_t { yes, no_escaped, undecided };
std::string to_string(ConvergenceAnswer a);

/// Wraps integrate: yes on converged_to_origin, no on escaped, undecided
/// on the time limit (and on overflow, which certifies nothing).
ConvergenceAnswer converges_to_origin(const ParameterScheme& s, Vec2 x0,
                                      const IntegratorOptions& opts);

/// Ray section {c * (cos angle, sin angle) : c > 0}.
struct Section {
    double angle = 0.0;

    Vec2 direction() const;
    Vec2 normal() const;
};

struct SectionCrossing {
    double coordinate;   // signed distance along the section direction
    double return_time;
};

class no_return_error : public std::runtime_error {
  public:
    no_return_error(const std::string& what, Termination term)
        : std::runtime_error(what), termination(term) {}
    Termination termination;
};

/// First return to the section in the same crossing direction (one full
/// revolution). The crossing is located by bisection on the dense output
/// to |section residual| < 1e-12 * scale. Throws std::domain_error when
/// the field is not transversal to the section at the start point and
/// no_return_error when the trajectory terminates without returning.
SectionCrossing poincare_return(const ParameterScheme& s, Section section, double c0,
                                const IntegratorOptions& opts);

enum class CycleStability : std::uint8_t { stable, unstable };
std::string to_string(CycleStability st);

struct LimitCycle {
    double coordinate;  // fixed point of the return map on the section
    CycleStability stability;
    double period;
};

struct LimitCycleReport {
    /// True when the displacement map vanished at every seed within
    /// continuum_tol: a continuum of closed orbits, no isolated cycles.
    bool continuum = false;
    std::vector<LimitCycle> cycles;  // sorted by coordinate
    std::vector<std::pair<double, std::string>> skipped_seeds;
};

struct CycleSearchOptions {
    double c_min = 0.05;
    double c_max = 1.5;
    int n_seeds = 24;
    double root_tol = 1e-9;       // bisection width on the section coordinate
    double dedup_tol = 1e-6;      // merge roots closer than this
    double continuum_tol = 1e-8;  // displacement magnitude treated as zero
};

/// Evaluates the displacement d(c) = P(c) - c on a seed grid, brackets
/// sign changes, refines each root by bisection, and classifies stability
/// from the displacement slope across the root (d falling: stable;
/// rising: unstable). Requires det J > 0 at the origin.
LimitCycleReport find_limit_cycles(const ParameterScheme& s, Section section,
                                   const CycleSearchOptions& search,
                                   const IntegratorOptions& opts);

/// True iff the orbit through x0 != 0 winds once around the origin and
/// re-crosses the ray through x0 within tol_close of its start
/// (default 1e-6 * ||x0||).
bool orbit_closed(const ParameterScheme& s, Vec2 x0, const IntegratorOptions& opts,
                  double tol_close = -1.0);

}  // namespace ssys
