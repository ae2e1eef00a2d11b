#include "ssys/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace ssys {

double det2(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

Mat2 sub2(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = x[i][j] - y[i][j];
    return r;
}

double max_abs2(const Mat2& m) {
    double v = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) v = std::max(v, std::abs(m[i][j]));
    return v;
}

void SSystem::validate() const {
    if (!(alpha1 > 0.0) || !(alpha2 > 0.0) || !(beta1 > 0.0) || !(beta2 > 0.0))
        throw std::invalid_argument("S-system rate coefficients must be strictly positive");
    for (const Mat2* m : {&G, &H})
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!std::isfinite((*m)[i][j]))
                    throw std::invalid_argument("S-system exponents must be finite");
    if (!std::isfinite(alpha1 + alpha2 + beta1 + beta2))
        throw std::invalid_argument("S-system rate coefficients must be finite");
}

namespace {

double monomial(double c, double x1, double x2, double e1, double e2) {
    return c * std::pow(x1, e1) * std::pow(x2, e2);
}

}  // namespace

Vec2 SSystem::rhs(double x1, double x2) const {
    return {monomial(alpha1, x1, x2, G[0][0], G[0][1]) - monomial(beta1, x1, x2, H[0][0], H[0][1]),
            monomial(alpha2, x1, x2, G[1][0], G[1][1]) - monomial(beta2, x1, x2, H[1][0], H[1][1])};
}

Vec2 ScaledSystem::rhs(double x1, double x2) const {
    return {gamma1 * (monomial(1.0, x1, x2, G[0][0], G[0][1]) - monomial(1.0, x1, x2, H[0][0], H[0][1])),
            gamma2 * (monomial(1.0, x1, x2, G[1][0], G[1][1]) - monomial(1.0, x1, x2, H[1][0], H[1][1]))};
}

EquilibriumResult solve_equilibrium(const SSystem& sys, double eps_det) {
    sys.validate();
    const Mat2 m = sub2(sys.G, sys.H);
    const double d = det2(m);
    const double guard = eps_det * std::max(1.0, max_abs2(m));
    if (std::abs(d) <= guard)
        return {EquilibriumResult::Kind::degenerate_none_or_infinite, 0.0, 0.0};

    const double rhs1 = std::log(sys.beta1 / sys.alpha1);
    const double rhs2 = std::log(sys.beta2 / sys.alpha2);
    // Cramer's rule; the dimension is fixed at 2.
    const double lx1 = (rhs1 * m[1][1] - rhs2 * m[0][1]) / d;
    const double lx2 = (m[0][0] * rhs2 - m[1][0] * rhs1) / d;
    return {EquilibriumResult::Kind::unique, std::exp(lx1), std::exp(lx2)};
}

ScaledSystem scale_ssystem(const SSystem& sys, double x1, double x2, double tol) {
    sys.validate();
    if (!(x1 > 0.0) || !(x2 > 0.0))
        throw std::invalid_argument("equilibrium must be strictly positive");

    const double p1 = monomial(sys.alpha1, x1, x2, sys.G[0][0], sys.G[0][1]);
    const double q1 = monomial(sys.beta1, x1, x2, sys.H[0][0], sys.H[0][1]);
    const double p2 = monomial(sys.alpha2, x1, x2, sys.G[1][0], sys.G[1][1]);
    const double q2 = monomial(sys.beta2, x1, x2, sys.H[1][0], sys.H[1][1]);
    if (std::abs(p1 - q1) > tol * (std::abs(p1) + std::abs(q1)) ||
        std::abs(p2 - q2) > tol * (std::abs(p2) + std::abs(q2)))
        throw std::invalid_argument("point is not an equilibrium of the S-system");

    ScaledSystem out;
    out.G = sys.G;
    out.H = sys.H;
    out.gamma1 = sys.alpha1 * std::pow(x1, sys.G[0][0] - 1.0) * std::pow(x2, sys.G[0][1]);
    out.gamma2 = sys.alpha2 * std::pow(x1, sys.G[1][0]) * std::pow(x2, sys.G[1][1] - 1.0);
    return out;
}

ParameterScheme to_exponential(const ScaledSystem& ss) {
    return exponential_scheme(ss.G, ss.H, ss.gamma1, ss.gamma2);
}

ParameterScheme exponential_scheme(const Mat2& G, const Mat2& H, double gamma1, double gamma2) {
    ParameterScheme s;
    s.a1 = gamma1 * (G[0][0] - 1.0);
    s.b1 = gamma2 * G[0][1];
    s.a2 = gamma1 * (H[0][0] - 1.0);
    s.b2 = gamma2 * H[0][1];
    s.a3 = gamma1 * G[1][0];
    s.b3 = gamma2 * (G[1][1] - 1.0);
    s.a4 = gamma1 * H[1][0];
    s.b4 = gamma2 * (H[1][1] - 1.0);
    return s;
}

Vec2 eval_vector_field(const ParameterScheme& s, Vec2 p) {
    return {std::exp(s.a1 * p.u + s.b1 * p.v) - std::exp(s.a2 * p.u + s.b2 * p.v),
            std::exp(s.a3 * p.u + s.b3 * p.v) - std::exp(s.a4 * p.u + s.b4 * p.v)};
}

double max_exponent(const ParameterScheme& s, Vec2 p) {
    const double e1 = s.a1 * p.u + s.b1 * p.v;
    const double e2 = s.a2 * p.u + s.b2 * p.v;
    const double e3 = s.a3 * p.u + s.b3 * p.v;
    const double e4 = s.a4 * p.u + s.b4 * p.v;
    return std::max(std::max(e1, e2), std::max(e3, e4));
}

}  // namespace ssys
