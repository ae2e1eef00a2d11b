#include "ssys/report.hpp"

#include "ssys/classify.hpp"
#include "ssys/integrals.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <ostream>

namespace ssys {

using json = nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

std::string classification_report_json(const AnalysisConfig& cfg) {
    json rep;
    std::string note;

    std::optional<ParameterScheme> scheme = cfg.scheme;

    rep["input"] = cfg.scheme ? "scheme" : "ssystem";
    rep["equilibrium"] = nullptr;
    if (cfg.ssystem) {
        const SSystem& sys = *cfg.ssystem;
        const EquilibriumResult eq = solve_equilibrium(sys);
        if (eq.unique()) {
            rep["equilibrium"] = {{"x1", eq.x1}, {"x2", eq.x2}};
            scheme = to_exponential(scale_ssystem(sys, eq.x1, eq.x2));
        } else {
            rep["equilibrium"] = "degenerate";
            note = "det(G-H) = 0: no equilibrium or infinitely many; nothing to classify";
        }
    }

    if (!scheme) {
        for (const char* k : {"scheme", "trace", "det", "sign_matrix", "local_stability",
                              "global_stability", "boundedness", "center_cases", "L1", "L2",
                              "L2_note", "ell1", "global_center", "orientation"})
            rep[k] = nullptr;
        rep["note"] = note;
        return rep.dump(2) + "\n";
    }

    const ParameterScheme& s = *scheme;
    rep["scheme"] = {{"a1", s.a1}, {"a2", s.a2}, {"a3", s.a3}, {"a4", s.a4},
                     {"b1", s.b1}, {"b2", s.b2}, {"b3", s.b3}, {"b4", s.b4}};

    const Jacobian J = jacobian(s);
    const double tol = kDefaultEqTol * std::max(1.0, s.max_abs());
    rep["trace"] = J.trace();
    rep["det"] = J.det();
    rep["sign_matrix"] = J.sign(tol).str();

    const bool degenerate = std::abs(J.det()) <= tol * std::max(1.0, J.max_abs());
    if (degenerate) {
        for (const char* k : {"local_stability", "global_stability", "boundedness",
                              "center_cases", "L1", "L2", "L2_note", "ell1", "global_center",
                              "orientation"})
            rep[k] = nullptr;
        rep["note"] = "det J = 0 within tolerance: the origin lies on a curve of equilibria";
        return rep.dump(2) + "\n";
    }

    auto verdict_json = [](const StabilityVerdict& v) -> json {
        json j;
        switch (v.kind) {
            case StabilityVerdict::Kind::stable_all_gamma:
                j["verdict"] = "asymptotically_stable_for_all_gamma";
                break;
            case StabilityVerdict::Kind::globally_stable_all_gamma:
                j["verdict"] = "globally_asymptotically_stable_for_all_gamma";
                break;
            case StabilityVerdict::Kind::not_for_all_gamma:
                j["verdict"] = "not_for_all_gamma";
                break;
        }
        j["branch"] = v.branch ? json(std::string(1, v.branch)) : json(nullptr);
        j["reason"] = v.reason.empty() ? json(nullptr) : json(v.reason);
        return j;
    };
    rep["local_stability"] = verdict_json(local_stability_for_scheme(s));
    rep["global_stability"] = verdict_json(global_stability_for_scheme(s));

    if (J.det() > 0.0) {
        const BoundednessStatus b = boundedness_status(s);
        rep["boundedness"] = {{"status", to_string(b.kind)},
                              {"case", to_string(b.which)},
                              {"detail", b.detail}};
    } else {
        rep["boundedness"] = nullptr;
    }

    const CenterDecision cd = is_center(s);
    json cases = json::array();
    for (const auto& c : cd.cases.cases)
        cases.push_back({{"tag", to_string(c.tag)}, {"witness", c.witness}});
    rep["center_cases"] = cases;

    if (cd.focal_available) {
        rep["L1"] = cd.focal.L1;
        switch (cd.focal.l2_kind) {
            case FocalValues::L2Kind::value:
                rep["L2"] = cd.focal.L2;
                rep["L2_note"] = "closed form, branch " + cd.focal.l2_branch;
                break;
            case FocalValues::L2Kind::zero_by_integrability:
                rep["L2"] = 0.0;
                rep["L2_note"] = "zero by integrability (case " + cd.focal.l2_branch + ")";
                break;
            case FocalValues::L2Kind::undefined_requires_L1_zero:
                rep["L2"] = nullptr;
                rep["L2_note"] = "undefined: L1 != 0";
                break;
        }
        rep["ell1"] = hopf_ell1(s);
    } else {
        rep["L1"] = nullptr;
        rep["L2"] = nullptr;
        rep["L2_note"] = cd.cases.precondition_failure.empty()
                             ? json(nullptr)
                             : json("not a weak focus: " + cd.cases.precondition_failure);
        rep["ell1"] = nullptr;
    }

    if (cd.center) {
        rep["global_center"] = is_global_center(s);
        rep["orientation"] = to_string(orientation(s));
    } else {
        rep["global_center"] = nullptr;
        rep["orientation"] = nullptr;
    }
    rep["note"] = note.empty() ? json(nullptr) : json(note);
    return rep.dump(2) + "\n";
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,u,v\n";
    for (const TrajectorySample& s : traj.samples)
        out << format_double(s.t) << ',' << format_double(s.u) << ',' << format_double(s.v)
            << '\n';
    out << "# termination: " << to_string(traj.termination) << '\n';
}

}  // namespace ssys
