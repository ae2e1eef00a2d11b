#include "ssys/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace ssys {

namespace {

using P = SignPattern::Entry;

double eq_tol(const ParameterScheme& s, double eps_eq) {
    return eps_eq * std::max(1.0, s.max_abs());
}

bool eq(double x, double y, double tol) { return std::abs(x - y) <= tol; }

// The five sign patterns under which the origin is asymptotically stable
// for every gamma, in branch order.
constexpr SignPattern kStablePatterns[5] = {
    {P::negative, P::any, P::any, P::negative},       // (a)
    {P::zero, P::positive, P::negative, P::negative}, // (b)
    {P::zero, P::negative, P::positive, P::negative}, // (c)
    {P::negative, P::negative, P::positive, P::zero}, // (d)
    {P::negative, P::positive, P::negative, P::zero}, // (e)
};

}  // namespace

double Jacobian::max_abs() const {
    return std::max(std::max(std::abs(j11), std::abs(j12)), std::max(std::abs(j21), std::abs(j22)));
}

SignMatrix Jacobian::sign(double eps) const {
    return {sign_of(j11, eps), sign_of(j12, eps), sign_of(j21, eps), sign_of(j22, eps)};
}

Jacobian jacobian(const ParameterScheme& s) {
    return {s.a1 - s.a2, s.b1 - s.b2, s.a3 - s.a4, s.b3 - s.b4};
}

ParameterScheme normalize_for_focal(const ParameterScheme& s) {
    return shift_equivalent(s, s.a1, s.b1);
}

StabilityVerdict local_stability_for_scheme(const ParameterScheme& s, double eps_eq) {
    const Jacobian J = jacobian(s);
    const double tol = eq_tol(s, eps_eq);
    const double d = J.det();
    if (std::abs(d) <= tol * std::max(1.0, J.max_abs()))
        throw std::invalid_argument("degenerate input: det J = 0");
    if (d < 0.0)
        return {StabilityVerdict::Kind::not_for_all_gamma, 0, "det J < 0: the origin is a saddle"};

    const SignMatrix sm = J.sign(tol);
    for (int i = 0; i < 5; ++i) {
        if (kStablePatterns[i].matches(sm)) {
            return {StabilityVerdict::Kind::stable_all_gamma, static_cast<char>('a' + i), ""};
        }
    }
    if (sm.s11 == Sign::zero && sm.s22 == Sign::zero)
        return {StabilityVerdict::Kind::not_for_all_gamma, 0,
                "both diagonal entries zero: the origin is a center, not asymptotically stable"};
    return {StabilityVerdict::Kind::not_for_all_gamma, 0,
            "a positive diagonal entry makes tr J > 0 for some gamma; sign " + sm.str()};
}

StabilityVerdict global_stability_for_scheme(const ParameterScheme& s, double eps_eq) {
    StabilityVerdict local = local_stability_for_scheme(s, eps_eq);
    if (!local.holds()) return local;

    const double tol = eq_tol(s, eps_eq);
    auto chain = [&](double lo, double mid_a, double mid_b, double hi) {
        // lo <= mid_a = mid_b <= hi; the middle equality is already granted
        // by the sign pattern, the outer inequalities separate global from
        // merely local.
        return lo <= std::min(mid_a, mid_b) + tol && std::max(mid_a, mid_b) <= hi + tol;
    };

    bool holds = false;
    switch (local.branch) {
        case 'a': holds = true; break;
        case 'b': holds = chain(s.a3, s.a1, s.a2, s.a4); break;
        case 'c': holds = chain(s.a4, s.a1, s.a2, s.a3); break;
        case 'd': holds = chain(s.b1, s.b3, s.b4, s.b2); break;
        case 'e': holds = chain(s.b2, s.b3, s.b4, s.b1); break;
        default: break;
    }
    if (holds)
        return {StabilityVerdict::Kind::globally_stable_all_gamma, local.branch, ""};
    return {StabilityVerdict::Kind::not_for_all_gamma, 0,
            std::string("exponent chain of branch (") + local.branch +
                ") violated: unbounded solutions exist"};
}

StabilityVerdict local_stability_all_gamma(const Mat2& G, const Mat2& H, double eps_eq) {
    return local_stability_for_scheme(exponential_scheme(G, H), eps_eq);
}

StabilityVerdict global_stability_all_gamma(const Mat2& G, const Mat2& H, double eps_eq) {
    return global_stability_for_scheme(exponential_scheme(G, H), eps_eq);
}

std::string to_string(BoundednessStatus::Kind k) {
    switch (k) {
        case BoundednessStatus::Kind::bounded: return "bounded";
        case BoundednessStatus::Kind::unbounded: return "unbounded";
        case BoundednessStatus::Kind::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(BoundednessStatus::Case c) {
    static const char* names[] = {"a", "b1", "b2", "c1", "c2", "d1", "d2", "e1", "e2", "uncovered"};
    return names[static_cast<int>(c)];
}

BoundednessStatus boundedness_status(const ParameterScheme& s, double eps_eq) {
    const Jacobian J = jacobian(s);
    const double tol = eq_tol(s, eps_eq);
    if (!(J.det() > tol * std::max(1.0, J.max_abs())))
        throw std::domain_error("boundedness analysis requires det J > 0");

    const SignMatrix sm = J.sign(tol);
    using K = BoundednessStatus::Kind;
    using C = BoundednessStatus::Case;

    auto necessary = [&](C which, double lo, double mid_lo, double mid_hi, double hi,
                         const std::string& chain) -> BoundednessStatus {
        // strict middle inequality granted by the sign pattern
        if (lo <= mid_lo + tol && mid_hi <= hi + tol)
            return {K::inconclusive, which, "necessary condition " + chain + " holds"};
        return {K::unbounded, which, "necessary condition " + chain + " violated"};
    };
    auto equivalent = [&](C which, double lo, double mid, double hi,
                          const std::string& chain) -> BoundednessStatus {
        if (lo <= mid + tol && mid <= hi + tol)
            return {K::bounded, which, "condition " + chain + " holds"};
        return {K::unbounded, which, "condition " + chain + " violated"};
    };

    if (SignPattern{P::negative, P::any, P::any, P::negative}.matches(sm))
        return {K::bounded, C::a, "both diagonal entries negative"};

    if (SignPattern{P::positive, P::positive, P::negative, P::negative}.matches(sm))
        return necessary(C::b1, s.a3, s.a2, s.a1, s.a4, "a3 <= a2 < a1 <= a4");
    if (SignPattern{P::zero, P::positive, P::negative, P::negative}.matches(sm))
        return equivalent(C::b2, s.a3, s.a1, s.a4, "a3 <= a1 = a2 <= a4");

    if (SignPattern{P::positive, P::negative, P::positive, P::negative}.matches(sm))
        return necessary(C::c1, s.a4, s.a2, s.a1, s.a3, "a4 <= a2 < a1 <= a3");
    if (SignPattern{P::zero, P::negative, P::positive, P::negative}.matches(sm))
        return equivalent(C::c2, s.a4, s.a1, s.a3, "a4 <= a1 = a2 <= a3");

    if (SignPattern{P::negative, P::negative, P::positive, P::positive}.matches(sm))
        return necessary(C::d1, s.b1, s.b4, s.b3, s.b2, "b1 <= b4 < b3 <= b2");
    if (SignPattern{P::negative, P::negative, P::positive, P::zero}.matches(sm))
        return equivalent(C::d2, s.b1, s.b3, s.b2, "b1 <= b3 = b4 <= b2");

    if (SignPattern{P::negative, P::positive, P::negative, P::positive}.matches(sm))
        return necessary(C::e1, s.b2, s.b4, s.b3, s.b1, "b2 <= b4 < b3 <= b1");
    if (SignPattern{P::negative, P::positive, P::negative, P::zero}.matches(sm))
        return equivalent(C::e2, s.b2, s.b3, s.b1, "b2 <= b3 = b4 <= b1");

    return {K::inconclusive, C::uncovered, "sign pattern " + sm.str() + " outside the classified cases"};
}

std::string to_string(CenterCaseTag tag) {
    static const char* names[] = {"S", "I1", "I2", "I3", "I4", "R1", "R2"};
    return names[static_cast<int>(tag)];
}

bool CenterCaseSet::contains(CenterCaseTag tag) const {
    return std::any_of(cases.begin(), cases.end(),
                       [&](const CenterCase& c) { return c.tag == tag; });
}

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

CenterCaseSet center_cases(const ParameterScheme& s, double eps_eq) {
    const Jacobian J = jacobian(s);
    const double tol = eq_tol(s, eps_eq);
    CenterCaseSet out;
    if (!eq(J.trace(), 0.0, tol)) {
        out.precondition_failure = "tr J != 0";
        return out;
    }
    if (!(J.det() > tol * std::max(1.0, J.max_abs()))) {
        out.precondition_failure = "det J <= 0";
        return out;
    }

    if (eq(s.a1, s.a2, tol) && eq(s.b3, s.b4, tol))
        out.cases.push_back({CenterCaseTag::S, "separable first integral, p=" + num(s.a3 - s.a1) +
                                                   " q=" + num(s.a4 - s.a1) + " r=" + num(s.b1 - s.b4) +
                                                   " s=" + num(s.b2 - s.b4)});
    if (eq(s.a1, s.a3, tol) && eq(s.b1, s.b3, tol))
        out.cases.push_back({CenterCaseTag::I1,
                             "first integral with factor exp(-a2 u - b4 v), p=" + num(s.a1 - s.a2) +
                                 " q=" + num(s.a4 - s.a2) + " r=" + num(s.b2 - s.b4)});
    if (eq(s.a1, s.a4, tol) && eq(s.b1, s.b4, tol))
        out.cases.push_back({CenterCaseTag::I2,
                             "first integral with factor exp(-a2 u - b3 v), p=" + num(s.a1 - s.a2) +
                                 " q=" + num(s.a3 - s.a2) + " r=" + num(s.b2 - s.b3)});
    if (eq(s.a2, s.a4, tol) && eq(s.b2, s.b4, tol))
        out.cases.push_back({CenterCaseTag::I3,
                             "first integral with factor exp(-a1 u - b3 v), p=" + num(s.a1 - s.a2) +
                                 " q=" + num(s.a3 - s.a1) + " r=" + num(s.b1 - s.b3)});
    if (eq(s.a2, s.a3, tol) && eq(s.b2, s.b3, tol))
        out.cases.push_back({CenterCaseTag::I4,
                             "first integral with factor exp(-a1 u - b4 v), p=" + num(s.a1 - s.a2) +
                                 " q=" + num(s.a4 - s.a1) + " r=" + num(s.b1 - s.b4)});
    if (eq(s.a1 + s.b1, s.a4 + s.b4, tol) && eq(s.a2 + s.b2, s.a3 + s.b3, tol))
        out.cases.push_back({CenterCaseTag::R1, "reversible across the line u = v"});
    if (eq(s.a1 - s.b1, s.a3 - s.b3, tol) && eq(s.a2 - s.b2, s.a4 - s.b4, tol))
        out.cases.push_back({CenterCaseTag::R2, "reversible across the line u = -v"});
    return out;
}

double FocalValues::l2_or_zero() const {
    if (l2_kind == L2Kind::undefined_requires_L1_zero)
        throw std::logic_error("L2 undefined: L1 != 0");
    return l2_kind == L2Kind::value ? L2 : 0.0;
}

FocalValues focal_values(const ParameterScheme& s, double eps_eq) {
    const double tol = eq_tol(s, eps_eq);
    const Jacobian J = jacobian(s);
    if (!eq(J.trace(), 0.0, tol))
        throw std::domain_error("focal values require tr J = 0");

    // All formulas are stated on the normalized scheme (a1 = b1 = 0).
    const ParameterScheme n = normalize_for_focal(s);
    const double a3 = n.a3, a4 = n.a4;
    const double b2 = n.b2, b3 = n.b3, b4 = n.b4;

    const double det = (a3 - a4) * b2 - (b3 - b4) * (b3 - b4);
    if (!(det > tol * std::max(1.0, J.max_abs())))
        throw std::domain_error("focal values require det J > 0");
    // det J > 0 forces a3 != a4 and b2 != 0.
    if (eq(b2, 0.0, tol) || eq(a3, a4, tol))
        throw std::logic_error("inconsistent state: det J > 0 but b2 = 0 or a3 = a4");

    const double pi = std::numbers::pi;
    const double sq = std::sqrt(det);
    const double D = a3 * a4 + a3 * b4 - a4 * b3;

    FocalValues out;
    out.L1 = -(pi / 8.0) * (b3 - b4) * (D * b2 - (a3 - a4) * b3 * b4) / (sq * b2);

    if (!eq(out.L1, 0.0, tol)) {
        out.l2_kind = FocalValues::L2Kind::undefined_requires_L1_zero;
        return out;
    }

    if (eq(b3, b4, tol)) {
        out.l2_kind = FocalValues::L2Kind::zero_by_integrability;
        out.l2_branch = "S";
        return out;
    }

    const double d_scale = std::max(1.0, J.max_abs()) * std::max(1.0, J.max_abs());
    if (!eq(D, 0.0, eps_eq * d_scale)) {
        // L1 = 0 with b3 != b4, D != 0 pins b2 = (a3-a4) b3 b4 / D, and
        // b3, b4 != 0 follows from b2 != 0.
        out.l2_kind = FocalValues::L2Kind::value;
        out.l2_branch = "b";
        out.L2 = -(pi / 288.0) * (b3 - b4) * (a4 + b4) * (a3 - b3) * (a3 - b3 + b4) *
                 (a4 + b4 - b3) * (a3 * b4 - a4 * b3) * (a3 * b4 - a4 * b3) /
                 (sq * D * b3 * b4);
        return out;
    }

    if (eq(b3, 0.0, tol)) {
        // D = a3 (a4 + b4) = 0
        if (eq(a3, 0.0, tol)) {
            out.l2_kind = FocalValues::L2Kind::zero_by_integrability;
            out.l2_branch = "I1";
        } else {
            out.l2_kind = FocalValues::L2Kind::value;
            out.l2_branch = "c2";
            out.L2 = -(pi / 288.0) * a3 * a4 * a4 * (a3 - a4) * (a4 + b2) * (a3 - a4 - b2) /
                     (sq * b2);
        }
        return out;
    }
    if (eq(b4, 0.0, tol)) {
        // D = a4 (a3 - b3) = 0
        if (eq(a4, 0.0, tol)) {
            out.l2_kind = FocalValues::L2Kind::zero_by_integrability;
            out.l2_branch = "I2";
        } else {
            out.l2_kind = FocalValues::L2Kind::value;
            out.l2_branch = "c4";
            out.L2 = (pi / 288.0) * a3 * a3 * a4 * (a3 - a4) * (a3 - b2) * (a3 - a4 - b2) /
                     (sq * b2);
        }
        return out;
    }

    // L1 = 0 and D = 0 with b3 b4 != 0 would force a3 = a4, contradicting
    // det J > 0; unreachable under the precondition.
    throw std::logic_error("focal-value case tree: input outside the L1 = 0 decomposition");
}

CenterDecision is_center(const ParameterScheme& s, double eps_eq) {
    CenterDecision out;
    out.cases = center_cases(s, eps_eq);
    if (!out.cases.precondition_failure.empty()) {
        out.center = false;
        out.explanation = "not a center: " + out.cases.precondition_failure;
        return out;
    }
    out.focal = focal_values(s, eps_eq);
    out.focal_available = true;
    out.center = !out.cases.empty();

    std::string tags;
    for (const auto& c : out.cases.cases) tags += (tags.empty() ? "" : ",") + to_string(c.tag);
    if (out.center) {
        out.explanation = "center via case(s) {" + tags + "}; L1 = " + std::to_string(out.focal.L1);
        if (out.focal.l2_defined())
            out.explanation += ", L2 = " + std::to_string(out.focal.l2_or_zero());
    } else {
        out.explanation = "no table case matches; the focal values do not all vanish (L1 = " +
                          std::to_string(out.focal.L1) + ")";
    }
    return out;
}

bool is_global_center(const ParameterScheme& s, double eps_eq) {
    if (!is_center(s, eps_eq).center)
        throw std::domain_error("is_global_center requires a center");
    const double tol = eq_tol(s, eps_eq);
    const double amin = std::min(s.a1, s.a2), amax = std::max(s.a1, s.a2);
    const double bmin = std::min(s.b3, s.b4), bmax = std::max(s.b3, s.b4);
    return std::min(s.a3, s.a4) <= amin + tol && amax <= std::max(s.a3, s.a4) + tol &&
           std::min(s.b1, s.b2) <= bmin + tol && bmax <= std::max(s.b1, s.b2) + tol;
}

std::string to_string(Orientation o) {
    return o == Orientation::clockwise ? "clockwise" : "anticlockwise";
}

Orientation orientation(const ParameterScheme& s, double eps_eq) {
    if (!is_center(s, eps_eq).center)
        throw std::domain_error("orientation requires a center");
    if (s.a3 < s.a4 && s.b1 > s.b2) return Orientation::clockwise;
    if (s.a3 > s.a4 && s.b1 < s.b2) return Orientation::anticlockwise;
    // det J > 0 with tr J = 0 forces opposite off-diagonal signs.
    throw std::logic_error("orientation: off-diagonal signs inconsistent with a center");
}

double hopf_ell1(const ParameterScheme& s, double eps_eq) {
    const double tol = eq_tol(s, eps_eq);
    const Jacobian J = jacobian(s);
    if (!eq(J.trace(), 0.0, tol)) throw std::domain_error("hopf_ell1 requires tr J = 0");
    if (!(J.det() > tol * std::max(1.0, J.max_abs())))
        throw std::domain_error("hopf_ell1 requires det J > 0");
    if (eq(s.b1, s.b2, tol))
        throw std::domain_error("b1 = b2 is inconsistent with tr J = 0, det J > 0");

    const double a31 = s.a3 - s.a1, a41 = s.a4 - s.a1;
    const double b31 = s.b3 - s.b1, b41 = s.b4 - s.b1;
    return -(s.b3 - s.b4) * (a31 * a41 + a31 * b41 - a41 * b31 -
                             (s.a3 - s.a4) * b31 * b41 / (s.b2 - s.b1));
}

}  // namespace ssys
