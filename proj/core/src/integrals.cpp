#include "ssys/integrals.hpp"

#include <cmath>
#include <stdexcept>

namespace ssys {

namespace {

double eq_tol(const ParameterScheme& s, double eps_eq) {
    return eps_eq * std::max(1.0, s.max_abs());
}

bool eq(double x, double y, double tol) { return std::abs(x - y) <= tol; }

void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}

}  // namespace

double phi(double alpha, double z) {
    const double az = alpha * z;
    if (std::abs(az) < 1e-4) {
        // (e^{az}-1)/alpha = z (1 + az/2 + (az)^2/6 + (az)^3/24 + ...);
        // the truncation error is below 1e-18 relative here, while the
        // direct formula loses half the digits to cancellation.
        return z * (1.0 + az * (0.5 + az * (1.0 / 6.0 + az / 24.0)));
    }
    return std::expm1(az) / alpha;
}

double phi_dz(double alpha, double z) { return std::exp(alpha * z); }

std::string to_string(FirstIntegralCase c) {
    static const char* names[] = {"S", "I1", "I2", "I3", "I4", "R12"};
    return names[static_cast<int>(c)];
}

FirstIntegral make_first_integral(const ParameterScheme& s, FirstIntegralCase c, double eps_eq) {
    const double tol = eq_tol(s, eps_eq);
    const double tr = (s.a1 - s.a2) + (s.b3 - s.b4);
    FirstIntegral out;
    out.kind = c;
    switch (c) {
        case FirstIntegralCase::S:
            require(eq(s.a1, s.a2, tol) && eq(s.b3, s.b4, tol), "case S requires a1=a2, b3=b4");
            out.p = s.a3 - s.a1;
            out.q = s.a4 - s.a1;
            out.r = s.b1 - s.b4;
            out.s = s.b2 - s.b4;
            return out;
        case FirstIntegralCase::I1:
            require(eq(s.a1, s.a3, tol) && eq(s.b1, s.b3, tol), "case I1 requires a1=a3, b1=b3");
            require(eq(tr, 0.0, tol), "case I1 requires tr J = 0");
            out.p = s.a1 - s.a2;
            out.q = s.a4 - s.a2;
            out.r = s.b2 - s.b4;
            return out;
        case FirstIntegralCase::I2:
            require(eq(s.a1, s.a4, tol) && eq(s.b1, s.b4, tol), "case I2 requires a1=a4, b1=b4");
            require(eq(tr, 0.0, tol), "case I2 requires tr J = 0");
            out.p = s.a1 - s.a2;
            out.q = s.a3 - s.a2;
            out.r = s.b2 - s.b3;
            return out;
        case FirstIntegralCase::I3:
            require(eq(s.a2, s.a4, tol) && eq(s.b2, s.b4, tol), "case I3 requires a2=a4, b2=b4");
            require(eq(tr, 0.0, tol), "case I3 requires tr J = 0");
            out.p = s.a1 - s.a2;
            out.q = s.a3 - s.a1;
            out.r = s.b1 - s.b3;
            return out;
        case FirstIntegralCase::I4:
            require(eq(s.a2, s.a3, tol) && eq(s.b2, s.b3, tol), "case I4 requires a2=a3, b2=b3");
            require(eq(tr, 0.0, tol), "case I4 requires tr J = 0");
            out.p = s.a1 - s.a2;
            out.q = s.a4 - s.a1;
            out.r = s.b1 - s.b4;
            return out;
        case FirstIntegralCase::R12:
            require(eq(s.a1 + s.b1, s.a4 + s.b4, tol) && eq(s.a2 + s.b2, s.a3 + s.b3, tol),
                    "case R12 requires the R1 equalities");
            require(eq(s.a1 - s.b1, s.a3 - s.b3, tol) && eq(s.a2 - s.b2, s.a4 - s.b4, tol),
                    "case R12 requires the R2 equalities");
            require(eq(tr, 0.0, tol), "case R12 requires tr J = 0");
            out.q = s.a4 - s.a1;
            out.r = s.a3 - s.a1;
            if (eq(out.q, 0.0, tol)) throw std::domain_error("degenerate R12 integral: q = a4 - a1 = 0");
            return out;
    }
    throw std::logic_error("unknown first-integral case");
}

double FirstIntegral::value(Vec2 x) const {
    const double u = x.u, v = x.v;
    switch (kind) {
        case FirstIntegralCase::S:
            return (phi(p, u) - phi(q, u)) - (phi(r, v) - phi(s, v));
        case FirstIntegralCase::I1:
            return -phi(p, u - v) + phi(q, u) - phi(r, v);
        case FirstIntegralCase::I2:
            return -phi(p, u + v) + phi(q, u) + phi(r, v);
        case FirstIntegralCase::I3:
            return -phi(p, -u + v) - phi(q, u) + phi(r, v);
        case FirstIntegralCase::I4:
            return -phi(p, -u - v) - phi(q, u) - phi(r, v);
        case FirstIntegralCase::R12:
            return (1.0 + std::exp(r * (u + v))) *
                   std::pow(std::exp(q * u) + std::exp(q * v), -r / q);
    }
    throw std::logic_error("unknown first-integral case");
}

Vec2 FirstIntegral::gradient(Vec2 x) const {
    const double u = x.u, v = x.v;
    switch (kind) {
        case FirstIntegralCase::S:
            return {phi_dz(p, u) - phi_dz(q, u), -phi_dz(r, v) + phi_dz(s, v)};
        case FirstIntegralCase::I1:
            return {-phi_dz(p, u - v) + phi_dz(q, u), phi_dz(p, u - v) - phi_dz(r, v)};
        case FirstIntegralCase::I2:
            return {-phi_dz(p, u + v) + phi_dz(q, u), -phi_dz(p, u + v) + phi_dz(r, v)};
        case FirstIntegralCase::I3:
            return {phi_dz(p, -u + v) - phi_dz(q, u), -phi_dz(p, -u + v) + phi_dz(r, v)};
        case FirstIntegralCase::I4:
            return {phi_dz(p, -u - v) - phi_dz(q, u), phi_dz(p, -u - v) - phi_dz(r, v)};
        case FirstIntegralCase::R12: {
            const double squ = std::exp(q * u) + std::exp(q * v);
            const double common = r * std::pow(squ, -r / q - 1.0);
            return {common * (std::exp(r * (u + v) + q * v) - std::exp(q * u)),
                    common * (std::exp(r * (u + v) + q * u) - std::exp(q * v))};
        }
    }
    throw std::logic_error("unknown first-integral case");
}

double first_integral(const ParameterScheme& s, FirstIntegralCase c, Vec2 x, double eps_eq) {
    return make_first_integral(s, c, eps_eq).value(x);
}

double integrating_factor(const ParameterScheme& s, FirstIntegralCase c, Vec2 x, double eps_eq) {
    const double u = x.u, v = x.v;
    switch (c) {
        case FirstIntegralCase::S: return std::exp(-s.a1 * u - s.b4 * v);
        case FirstIntegralCase::I1: return std::exp(-s.a2 * u - s.b4 * v);
        case FirstIntegralCase::I2: return std::exp(-s.a2 * u - s.b3 * v);
        case FirstIntegralCase::I3: return std::exp(-s.a1 * u - s.b3 * v);
        case FirstIntegralCase::I4: return std::exp(-s.a1 * u - s.b4 * v);
        case FirstIntegralCase::R12: {
            const FirstIntegral fi = make_first_integral(s, c, eps_eq);
            return std::exp(-s.a1 * u - s.b4 * v) *
                   std::pow(std::exp(fi.q * u) + std::exp(fi.q * v), -(fi.q + fi.r) / fi.q);
        }
    }
    throw std::logic_error("unknown first-integral case");
}

double lyapunov_V(const ParameterScheme& s, Vec2 x, double eps_eq) {
    require(eq(s.a1, s.a2, eq_tol(s, eps_eq)), "lyapunov_V requires a1 = a2");
    return -(phi(s.a3 - s.a1, x.u) - phi(s.a4 - s.a1, x.u)) +
           (phi(s.b1 - s.b4, x.v) - phi(s.b2 - s.b4, x.v));
}

Vec2 lyapunov_V_gradient(const ParameterScheme& s, Vec2 x) {
    return {-(std::exp((s.a3 - s.a1) * x.u) - std::exp((s.a4 - s.a1) * x.u)),
            std::exp((s.b1 - s.b4) * x.v) - std::exp((s.b2 - s.b4) * x.v)};
}

double dulac_divergence(const ParameterScheme& s, double a, double b, Vec2 x) {
    const double u = x.u, v = x.v;
    return (s.a1 - a) * std::exp(s.a1 * u + s.b1 * v) + (a - s.a2) * std::exp(s.a2 * u + s.b2 * v) +
           (s.b3 - b) * std::exp(s.a3 * u + s.b3 * v) + (b - s.b4) * std::exp(s.a4 * u + s.b4 * v);
}

double separatrix_u_of_v(const ParameterScheme& s, double v, double eps_eq) {
    const double tol = eq_tol(s, eps_eq);
    require(eq(s.a1, s.a2, tol), "separatrix requires a1 = a2");
    require(s.a1 > s.a4 + tol, "separatrix requires a1 > a4");
    require(v > 0.0, "separatrix requires v > 0");

    const double lhs = phi(s.b1 - s.b4, v) - phi(s.b2 - s.b4, v);
    const double k = s.a4 - s.a1;  // < 0
    // rhs(u) = -e^{k u}/k, strictly decreasing from +inf to 0 on u in R.
    if (!(lhs > 0.0))
        throw std::domain_error("separatrix: left-hand side outside the range of -e^{ku}/k");

    auto g = [&](double u) { return -std::exp(k * u) / k - lhs; };  // decreasing in u

    // bracket the root, expanding geometrically
    double lo = 0.0, hi = 0.0;
    if (g(0.0) > 0.0) {
        hi = 1.0;
        while (g(hi) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e12) throw std::domain_error("separatrix: bracket expansion failed");
        }
    } else {
        lo = -1.0;
        while (g(lo) < 0.0) {
            hi = lo;
            lo *= 2.0;
            if (lo < -1e12) throw std::domain_error("separatrix: bracket expansion failed");
        }
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace ssys
