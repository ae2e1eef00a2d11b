#pragma once

#include "ssys/classify.hpp"
#include "ssys/scheme.hpp"

// Closed-form conserved quantities and auxiliary scalar functions: the
// per-case first integrals, the Lyapunov function of the boundedness
// proof, the Dulac-scaled divergence, and the separatrix curve.
//
// Every term of the form e^{alpha z}/alpha in the printed integrals is
// implemented as phi(alpha, z) = (e^{alpha z} - 1)/alpha, which differs
// only by an additive constant per term (conservation and level-set
// topology are unaffected) and has a removable singularity at alpha = 0.

namespace ssys {

/// phi(alpha, z) = (exp(alpha z) - 1)/alpha, continuously extended by z at
/// alpha = 0; switches to a 4-term Taylor series for |alpha z| < 1e-4 to
/// avoid cancellation.
double phi(double alpha, double z);
/// d/dz phi(alpha, z) = exp(alpha z).
double phi_dz(double alpha, double z);

enum class FirstIntegralCase : std::uint8_t { S, I1, I2, I3, I4, R12 };
std::string to_string(FirstIntegralCase c);

/// A first integral with its case tag and derived constants.
///   S:   phi(p,u) - phi(q,u) - phi(r,v) + phi(s,v)
///          p=a3-a1, q=a4-a1, r=b1-b4, s=b2-b4
///   I1:  -phi(p,u-v)  + phi(q,u) - phi(r,v)   p=a1-a2, q=a4-a2, r=b2-b4
///   I2:  -phi(p,u+v)  + phi(q,u) + phi(r,v)   p=a1-a2, q=a3-a2, r=b2-b3
///   I3:  -phi(p,-u+v) - phi(q,u) + phi(r,v)   p=a1-a2, q=a3-a1, r=b1-b3
///   I4:  -phi(p,-u-v) - phi(q,u) - phi(r,v)   p=a1-a2, q=a4-a1, r=b1-b4
///   R12: (1 + e^{r(u+v)}) (e^{qu} + e^{qv})^{-r/q}   q=a4-a1, r=a3-a1
struct FirstIntegral {
    FirstIntegralCase kind;
    double p = 0.0, q = 0.0, r = 0.0, s = 0.0;

    double value(Vec2 x) const;
    Vec2 gradient(Vec2 x) const;
};

/// Validates the case conditions on the scheme (table equalities, plus
/// tr J = 0 where the derivation needs it) and derives the constants.
/// Throws std::domain_error when the conditions fail and for the
/// degenerate R12 sub-case q = 0.
FirstIntegral make_first_integral(const ParameterScheme& s, FirstIntegralCase c,
                                  double eps_eq = kDefaultEqTol);

/// Convenience evaluation of the case integral at a point.
double first_integral(const ParameterScheme& s, FirstIntegralCase c, Vec2 x,
                      double eps_eq = kDefaultEqTol);

/// The positive multiplier h with h*f Hamiltonian for the case integral:
/// e^{-au-bv} with (a,b) = (a1,b4) for S, (a2,b4) for I1, (a2,b3) for I2,
/// (a1,b3) for I3, (a1,b4) for I4; for R12 additionally
/// (e^{qu}+e^{qv})^{-(q+r)/q}.
double integrating_factor(const ParameterScheme& s, FirstIntegralCase c, Vec2 x,
                          double eps_eq = kDefaultEqTol);

/// Lyapunov function of the boundedness proof for the a1 = a2 sign case:
/// V(u,v) = -(phi(a3-a1,u) - phi(a4-a1,u)) + (phi(b1-b4,v) - phi(b2-b4,v)),
/// normalized to V(0,0) = 0, with
/// dV/du = -e^{-a1 u}(e^{a3 u} - e^{a4 u}), dV/dv = e^{-b4 v}(e^{b1 v} - e^{b2 v}).
double lyapunov_V(const ParameterScheme& s, Vec2 x, double eps_eq = kDefaultEqTol);
Vec2 lyapunov_V_gradient(const ParameterScheme& s, Vec2 x);

/// Divergence of the field scaled by e^{-au-bv}, divided by the factor:
/// (a1-a) e^{a1u+b1v} + (a-a2) e^{a2u+b2v} + (b3-b) e^{a3u+b3v} + (b-b4) e^{a4u+b4v}.
double dulac_divergence(const ParameterScheme& s, double a, double b, Vec2 x);

/// For a1 = a2 and a1 > a4: solves
///   phi(b1-b4, v) - phi(b2-b4, v) = -e^{(a4-a1)u} / (a4-a1)
/// for u at a given v > 0 (the explicit orbit of the three-monomial
/// auxiliary system whose graph separates bounded from unbounded motion).
/// Monotone bisection; throws std::domain_error when no solution exists
/// (left-hand side outside the range of the right-hand side).
double separatrix_u_of_v(const ParameterScheme& s, double v, double eps_eq = kDefaultEqTol);

}  // namespace ssys
