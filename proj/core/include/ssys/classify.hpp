#pragma once

#include "ssys/forms.hpp"
#include "ssys/scheme.hpp"

#include <string>
#include <vector>

// Exact decision procedures for the exponential-form system: Jacobian and
// sign analysis, local and global stability for all positive gamma,
// boundedness of solutions, the seven-case center classification with
// focal values, global centers, rotation sense, and the Hopf coefficient.

namespace ssys {

struct Jacobian {
    double j11, j12, j21, j22;

    double trace() const { return j11 + j22; }
    double det() const { return j11 * j22 - j12 * j21; }
    double max_abs() const;
    SignMatrix sign(double eps) const;
};

/// Jacobian of the exponential-form field at the origin:
/// ((a1-a2, b1-b2), (a3-a4, b3-b4)).
Jacobian jacobian(const ParameterScheme& s);

/// Shifts the scheme so that a1 = b1 = 0 (orbitally equivalent); the form
/// in which the focal-value formulas are stated.
ParameterScheme normalize_for_focal(const ParameterScheme& s);

struct StabilityVerdict {
    enum class Kind { stable_all_gamma, globally_stable_all_gamma, not_for_all_gamma };
    Kind kind;
    char branch = 0;     // 'a'..'e' when (globally) stable
    std::string reason;  // populated for not_for_all_gamma

    bool holds() const { return kind != Kind::not_for_all_gamma; }
};

/// Asymptotic stability of the origin for all gamma1, gamma2 > 0:
/// det(G-H) > 0 and sign(G-H) matching one of the five patterns
/// (-,*;*,-), (0,+;-,-), (0,-;+,-), (-,-;+,0), (-,+;-,0).
/// Throws std::invalid_argument when det(G-H) == 0 within tolerance.
StabilityVerdict local_stability_all_gamma(const Mat2& G, const Mat2& H,
                                           double eps_eq = kDefaultEqTol);

/// Global asymptotic stability for all gamma > 0: branch (a) is the first
/// pattern above; branches (b)-(e) are the remaining patterns plus an
/// exponent chain, e.g. (b) requires a3 <= a1 = a2 <= a4. The chains are
/// evaluated on the gamma = 1 exponential form; they are gamma-independent.
StabilityVerdict global_stability_all_gamma(const Mat2& G, const Mat2& H,
                                            double eps_eq = kDefaultEqTol);

/// Same verdicts computed directly on a scheme (sign of J replaces
/// sign(G-H); the chains read the scheme entries).
StabilityVerdict local_stability_for_scheme(const ParameterScheme& s,
                                            double eps_eq = kDefaultEqTol);
StabilityVerdict global_stability_for_scheme(const ParameterScheme& s,
                                             double eps_eq = kDefaultEqTol);

struct BoundednessStatus {
    enum class Kind { bounded, unbounded, inconclusive };
    // Case labels of the boundedness analysis; "uncovered" marks sign
    // patterns (with det J > 0) it does not address.
    enum class Case { a, b1, b2, c1, c2, d1, d2, e1, e2, uncovered };

    Kind kind;
    Case which;
    std::string detail;
};

std::string to_string(BoundednessStatus::Kind k);
std::string to_string(BoundednessStatus::Case c);

/// Boundedness of all forward solutions, per the nine sign-pattern cases.
/// Bounded is issued for case (a) and for the equality cases (b2),(c2),
/// (d2),(e2) when the chain holds; Unbounded when a necessary chain is
/// violated; Inconclusive in (b1),(c1),(d1),(e1) when the merely-necessary
/// chain holds. Requires det J > 0 (std::domain_error otherwise).
BoundednessStatus boundedness_status(const ParameterScheme& s, double eps_eq = kDefaultEqTol);

enum class CenterCaseTag : std::uint8_t { S, I1, I2, I3, I4, R1, R2 };
std::string to_string(CenterCaseTag tag);

struct CenterCase {
    CenterCaseTag tag;
    /// First-integral descriptor for S, I1..I4 (and the R1&R2 overlap), or
    /// the reversibility reflection line for pure R1 / R2.
    std::string witness;
};

struct CenterCaseSet {
    std::vector<CenterCase> cases;
    /// Nonempty when the precondition tr J = 0, det J > 0 failed; the case
    /// list is then empty.
    std::string precondition_failure;

    bool contains(CenterCaseTag tag) const;
    bool empty() const { return cases.empty(); }
};

/// All matching rows of the center table (overlaps are meaningful):
///   S:  a1=a2, b3=b4          I1: a1=a3, b1=b3       I2: a1=a4, b1=b4
///   I3: a2=a4, b2=b4          I4: a2=a3, b2=b3
///   R1: a1+b1=a4+b4, a2+b2=a3+b3      R2: a1-b1=a3-b3, a2-b2=a4-b4
CenterCaseSet center_cases(const ParameterScheme& s, double eps_eq = kDefaultEqTol);

struct FocalValues {
    enum class L2Kind {
        value,                     // computed from the printed closed form
        zero_by_integrability,     // the L1=0 branch landed in an integrable case
        undefined_requires_L1_zero // L1 != 0; the second focal value is moot
    };

    double L1 = 0.0;
    L2Kind l2_kind = L2Kind::undefined_requires_L1_zero;
    double L2 = 0.0;          // meaningful for l2_kind == value (0 for z.b.i.)
    std::string l2_branch;    // which leaf of the case tree fired: "S","I1","I2","b","c2","c4"

    /// L2 treated as exactly 0 when zero by integrability.
    double l2_or_zero() const;
    bool l2_defined() const { return l2_kind != L2Kind::undefined_requires_L1_zero; }
};

/// First two focal values of the weak focus, from the closed forms stated
/// on the normalized scheme (a1=b1=0). Preconditions tr J = 0 and
/// det J > 0 within tolerance (std::domain_error otherwise);
/// internal contradictions (e.g. b2 = 0 after normalization) raise
/// std::logic_error.
FocalValues focal_values(const ParameterScheme& s, double eps_eq = kDefaultEqTol);

struct CenterDecision {
    bool center = false;
    CenterCaseSet cases;
    bool focal_available = false;
    FocalValues focal;  // valid when focal_available
    std::string explanation;
};

/// The origin is a center iff tr J = 0, det J > 0 and at least one table
/// case matches. The decision also carries the focal values as a
/// cross-check (both vanish exactly when a case matches).
CenterDecision is_center(const ParameterScheme& s, double eps_eq = kDefaultEqTol);

/// A center is global iff
///   min(a3,a4) <= min(a1,a2) <= max(a1,a2) <= max(a3,a4) and
///   min(b1,b2) <= min(b3,b4) <= max(b3,b4) <= max(b1,b2).
/// Precondition: is_center(s) (std::domain_error otherwise).
bool is_global_center(const ParameterScheme& s, double eps_eq = kDefaultEqTol);

enum class Orientation : std::uint8_t { clockwise, anticlockwise };
std::string to_string(Orientation o);

/// Rotation sense of the center: clockwise iff a3<a4 and b1>b2,
/// anticlockwise iff a3>a4 and b1<b2 (det J > 0 forces one of the two).
Orientation orientation(const ParameterScheme& s, double eps_eq = kDefaultEqTol);

/// First Lyapunov quantity of the Andronov-Hopf bifurcation at tr J = 0:
/// negative means the weak focus is asymptotically stable (supercritical
/// bifurcation), positive repelling (subcritical). Preconditions
/// det J > 0, tr J = 0, b1 != b2.
double hopf_ell1(const ParameterScheme& s, double eps_eq = kDefaultEqTol);

}  // namespace ssys
