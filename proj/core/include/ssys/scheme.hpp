#pragma once

#include <array>
#include <cstdint>
#include <string>

// Parameter scheme of a planar exponential-form system
//
//   du/dt = exp(a1 u + b1 v) - exp(a2 u + b2 v)
//   dv/dt = exp(a3 u + b3 v) - exp(a4 u + b4 v)
//
// together with its equivalence transformations (shift, uniform scale,
// time reversal) and the dihedral-group D4 action on parameter space.

namespace ssys {

struct Vec2 {
    double u = 0.0;
    double v = 0.0;

    double norm() const;
};

struct ParameterScheme {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
    double b1 = 0.0, b2 = 0.0, b3 = 0.0, b4 = 0.0;

    // i in 1..4
    double a(int i) const;
    double b(int i) const;

    std::array<double, 8> flat() const { return {a1, a2, a3, a4, b1, b2, b3, b4}; }

    /// Largest entry magnitude; used to scale equality tolerances.
    double max_abs() const;
    bool all_finite() const;

    bool operator==(const ParameterScheme&) const = default;
};

/// Absolute tolerance for the exact algebraic equalities of the
/// classification predicates, scaled by max(1, scheme max-norm).
inline constexpr double kDefaultEqTol = 1e-12;

enum class SymmetryTag : std::uint8_t { r0, r1, r2, r3, s0, s1, s2, s3 };

/// One of the eight elements of the symmetry group of the square,
/// carried both as a tag and as its 2x2 integer matrix so that group
/// composition is exact integer arithmetic.
struct SymmetryElement {
    SymmetryTag tag;
    std::array<std::array<int, 2>, 2> m;  // orthogonal, entries in {-1,0,1}

    Vec2 apply(Vec2 p) const;
    int det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

const SymmetryElement& symmetry(SymmetryTag tag);
const std::array<SymmetryElement, 8>& dihedral_group();
std::string to_string(SymmetryTag tag);

/// compose(g, h) acts as "h first, then g"; the matrix is m(g)*m(h).
SymmetryElement compose(const SymmetryElement& g, const SymmetryElement& h);
SymmetryElement inverse(const SymmetryElement& g);

/// Transforms the scheme under the coordinate change (u,v) -> g(u,v).
ParameterScheme apply_symmetry(const ParameterScheme& s, const SymmetryElement& g);

/// Scheme of the time-reversed system t -> -t.
ParameterScheme time_reverse(const ParameterScheme& s);

/// Subtracts a from every a_i and b from every b_i. The resulting vector
/// field equals the original multiplied by exp(-a u - b v), so the two
/// systems are orbitally equivalent.
ParameterScheme shift_equivalent(const ParameterScheme& s, double a, double b);

/// Divides every entry by c > 0; orbits correspond under (u,v) -> (cu,cv)
/// with time rescaled. Throws std::domain_error for c <= 0.
ParameterScheme uniform_scale(const ParameterScheme& s, double c);

enum class Sign : std::uint8_t { negative, zero, positive };

/// Entrywise sign with dead zone |x| <= eps.
Sign sign_of(double x, double eps);

/// Concrete sign pattern of a 2x2 matrix in position order (1,1),(1,2),(2,1),(2,2).
struct SignMatrix {
    Sign s11, s12, s21, s22;

    std::string str() const;  // e.g. "(-,+;-,0)"
    bool operator==(const SignMatrix&) const = default;
};

/// Sign pattern with wildcard entries, used by the classifiers.
struct SignPattern {
    enum class Entry : std::uint8_t { negative, zero, positive, any };
    Entry e11, e12, e21, e22;

    bool matches(const SignMatrix& sm) const;
};

}  // namespace ssys
