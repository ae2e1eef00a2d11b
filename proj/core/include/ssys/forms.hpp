#pragma once

#include "ssys/scheme.hpp"

#include <array>

// Transformation chain from a raw planar S-system
//
//   dx1/dt = alpha1 x1^g11 x2^g12 - beta1 x1^h11 x2^h12
//   dx2/dt = alpha2 x1^g21 x2^g22 - beta2 x1^h21 x2^h22
//
// through the scaled system (equilibrium moved to (1,1)) to the
// exponential form abbreviated by a ParameterScheme.

namespace ssys {

using Mat2 = std::array<std::array<double, 2>, 2>;

double det2(const Mat2& m);
Mat2 sub2(const Mat2& x, const Mat2& y);
double max_abs2(const Mat2& m);

struct SSystem {
    double alpha1 = 1.0, alpha2 = 1.0, beta1 = 1.0, beta2 = 1.0;
    Mat2 G{{{1.0, 0.0}, {0.0, 1.0}}};
    Mat2 H{{{0.0, 0.0}, {0.0, 0.0}}};

    /// Throws std::invalid_argument on nonpositive rate coefficients or
    /// nonfinite entries.
    void validate() const;

    /// Right-hand side at a positive point.
    Vec2 rhs(double x1, double x2) const;
};

struct ScaledSystem {
    double gamma1 = 1.0, gamma2 = 1.0;
    Mat2 G, H;

    Vec2 rhs(double x1, double x2) const;
};

struct EquilibriumResult {
    enum class Kind { unique, degenerate_none_or_infinite } kind;
    // Strictly positive when kind == unique.
    double x1 = 0.0, x2 = 0.0;

    bool unique() const { return kind == Kind::unique; }
};

/// Solves for the positive equilibrium by taking logarithms: if
/// det(G-H) != 0 (relative guard eps_det * max(1, ||G-H||)), log x* solves
/// (G-H) log x = (log(beta1/alpha1), log(beta2/alpha2)) by Cramer's rule;
/// otherwise the system has no equilibrium or infinitely many.
EquilibriumResult solve_equilibrium(const SSystem& sys, double eps_det = 1e-12);

/// Scales the S-system so that the given positive equilibrium moves to
/// (1,1):  gamma1 = alpha1 x1*^(g11-1) x2*^g12, gamma2 = alpha2 x1*^g21
/// x2*^(g22-1). Throws std::invalid_argument when (x1,x2) is not an
/// equilibrium of sys (relative residual above tol).
ScaledSystem scale_ssystem(const SSystem& sys, double x1, double x2, double tol = 1e-8);

/// Exponential-form scheme of the scaled system (transformation
/// x1 = exp(gamma1 u), x2 = exp(gamma2 v)).
ParameterScheme to_exponential(const ScaledSystem& ss);

/// Scheme built directly from exponent matrices and gamma; equals
/// to_exponential of the scaled system with those parameters.
ParameterScheme exponential_scheme(const Mat2& G, const Mat2& H, double gamma1 = 1.0,
                                   double gamma2 = 1.0);

/// Exponential-form vector field. No clamping: overflow handling is the
/// integrator's responsibility.
Vec2 eval_vector_field(const ParameterScheme& s, Vec2 p);

/// Largest exponent a_i u + b_i v over the four monomials; the integrator
/// terminates with Overflow when this exceeds its guard.
double max_exponent(const ParameterScheme& s, Vec2 p);

}  // namespace ssys
