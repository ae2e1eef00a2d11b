#include "ssys/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace ssys {

void IntegratorOptions::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("integrator tolerances must be positive");
    if (!(max_step > 0.0) || !(max_time > 0.0))
        throw std::invalid_argument("max_step and max_time must be positive");
    if (!(escape_radius > 0.0)) throw std::invalid_argument("escape_radius must be positive");
    if (!(overflow_guard > 0.0)) throw std::invalid_argument("overflow_guard must be positive");
    if (max_steps < 1) throw std::invalid_argument("max_steps must be positive");
}

IntegratorOptions portrait_options() {
    IntegratorOptions o;
    o.rel_tol = 1e-6;
    o.abs_tol = 1e-9;
    return o;
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::time_limit: return "time_limit";
        case Termination::converged_to_origin: return "converged_to_origin";
        case Termination::escaped: return "escaped";
        case Termination::overflow: return "overflow";
    }
    return "?";
}

std::string to_string(ConvergenceAnswer a) {
    switch (a) {
        case ConvergenceAnswer::yes: return "yes";
        case ConvergenceAnswer::no_escaped: return "no_escaped";
        case ConvergenceAnswer::undecided: return "undecided";
    }
    return "?";
}

std::string to_string(CycleStability st) {
    return st == CycleStability::stable ? "stable" : "unstable";
}

Vec2 Section::direction() const { return {std::cos(angle), std::sin(angle)}; }
Vec2 Section::normal() const { return {-std::sin(angle), std::cos(angle)}; }

namespace {

// Dormand-Prince 5(4) pair, FSAL, with the order-4 continuous extension.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct DenseOut {
    double t0 = 0.0, h = 0.0;
    std::array<double, 5> cu{}, cv{};

    Vec2 eval(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        return {cu[0] + th * (cu[1] + th1 * (cu[2] + th * (cu[3] + th1 * cu[4]))),
                cv[0] + th * (cv[1] + th1 * (cv[2] + th * (cv[3] + th1 * cv[4])))};
    }
};

struct StepEvent {
    double t0;
    Vec2 y0;
    double t1;
    Vec2 y1;
    const DenseOut* dense;
};

bool finite(Vec2 y) { return std::isfinite(y.u) && std::isfinite(y.v); }

// One adaptive integration; the observer runs after each accepted step and
// may stop the run by returning true.
Trajectory drive(const ParameterScheme& s, Vec2 x0, const IntegratorOptions& opts,
                 const std::function<bool(const StepEvent&)>& observer, bool* observer_stop) {
    opts.validate();
    if (observer_stop) *observer_stop = false;

    Trajectory traj;
    traj.samples.push_back({0.0, x0.u, x0.v});

    const double conv_radius = 10.0 * opts.abs_tol;
    auto converged = [&](Vec2 y) {
        const double r = y.norm();
        if (r >= conv_radius) return false;
        if (r == 0.0) return true;  // the constant solution at the equilibrium
        const Vec2 f = eval_vector_field(s, y);
        return f.u * (-y.u) + f.v * (-y.v) > 0.0;
    };

    double t = 0.0;
    Vec2 y = x0;
    auto finish = [&](Termination term) {
        traj.termination = term;
        if (!opts.keep_samples && traj.samples.size() > 1) {
            traj.samples = {traj.samples.front(), traj.samples.back()};
        }
        return traj;
    };
    auto push_sample = [&](double tt, Vec2 yy) {
        if (opts.keep_samples || traj.samples.size() < 2)
            traj.samples.push_back({tt, yy.u, yy.v});
        else
            traj.samples.back() = {tt, yy.u, yy.v};
    };

    if (max_exponent(s, y) > opts.overflow_guard) return finish(Termination::overflow);
    if (y.norm() > opts.escape_radius) return finish(Termination::escaped);
    if (converged(y)) return finish(Termination::converged_to_origin);

    Vec2 f = eval_vector_field(s, y);

    // initial step size from the scaled norms of y and f
    double h;
    {
        auto sc = [&](double x, double ref) { return x / (opts.abs_tol + opts.rel_tol * std::abs(ref)); };
        const double d0 = std::hypot(sc(y.u, y.u), sc(y.v, y.v));
        const double d1 = std::hypot(sc(f.u, y.u), sc(f.v, y.v));
        h = (d0 > 1e-10 && d1 > 1e-10) ? 0.01 * d0 / d1 : 1e-6;
        h = std::min({h, opts.max_step, opts.max_time});
    }

    // h only needs to keep t + h distinguishable from t; exponential-form
    // orbits legitimately mix step sizes across ~12 decades within one
    // revolution.
    const double h_floor = 16.0 * std::numeric_limits<double>::epsilon();
    bool just_rejected = false;
    long attempts = 0;

    while (t < opts.max_time) {
        // within rounding of the time limit: do not force a sub-ulp step
        if (opts.max_time - t <= h_floor * std::max(1.0, std::abs(t))) break;
        h = std::min({h, opts.max_step, opts.max_time - t});
        if (h < h_floor * std::max(1.0, std::abs(t)))
            throw integration_error("step size underflow at t = " + std::to_string(t), traj);
        if (++attempts > opts.max_steps)
            throw integration_error("step budget exhausted at t = " + std::to_string(t), traj);

        auto fld = [&](Vec2 p) { return eval_vector_field(s, p); };
        const Vec2 k1 = f;
        const Vec2 k2 = fld({y.u + h * a21 * k1.u, y.v + h * a21 * k1.v});
        const Vec2 k3 = fld({y.u + h * (a31 * k1.u + a32 * k2.u), y.v + h * (a31 * k1.v + a32 * k2.v)});
        const Vec2 k4 = fld({y.u + h * (a41 * k1.u + a42 * k2.u + a43 * k3.u),
                             y.v + h * (a41 * k1.v + a42 * k2.v + a43 * k3.v)});
        const Vec2 k5 = fld({y.u + h * (a51 * k1.u + a52 * k2.u + a53 * k3.u + a54 * k4.u),
                             y.v + h * (a51 * k1.v + a52 * k2.v + a53 * k3.v + a54 * k4.v)});
        const Vec2 k6 = fld({y.u + h * (a61 * k1.u + a62 * k2.u + a63 * k3.u + a64 * k4.u + a65 * k5.u),
                             y.v + h * (a61 * k1.v + a62 * k2.v + a63 * k3.v + a64 * k4.v + a65 * k5.v)});
        const Vec2 y1 = {y.u + h * (b1 * k1.u + b3 * k3.u + b4 * k4.u + b5 * k5.u + b6 * k6.u),
                         y.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v)};
        const Vec2 k7 = finite(y1) ? fld(y1) : Vec2{0.0, 0.0};

        double err;
        if (!finite(y1) || !finite(k2) || !finite(k3) || !finite(k4) || !finite(k5) ||
            !finite(k6) || !finite(k7)) {
            err = std::numeric_limits<double>::infinity();
        } else {
            const double eu = h * (e1 * k1.u + e3 * k3.u + e4 * k4.u + e5 * k5.u + e6 * k6.u + e7 * k7.u);
            const double ev = h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v);
            const double su = opts.abs_tol + opts.rel_tol * std::max(std::abs(y.u), std::abs(y1.u));
            const double sv = opts.abs_tol + opts.rel_tol * std::max(std::abs(y.v), std::abs(y1.v));
            err = std::sqrt(0.5 * ((eu / su) * (eu / su) + (ev / sv) * (ev / sv)));
        }

        if (!(err <= 1.0)) {
            const double fac =
                std::isfinite(err) ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.1;
            h *= fac;
            just_rejected = true;
            continue;
        }

        // accepted: assemble dense output
        DenseOut dense;
        dense.t0 = t;
        dense.h = h;
        {
            const double dyu = y1.u - y.u, dyv = y1.v - y.v;
            const double bsplu = h * k1.u - dyu, bsplv = h * k1.v - dyv;
            dense.cu = {y.u, dyu, bsplu, dyu - h * k7.u - bsplu,
                        h * (d1 * k1.u + d3 * k3.u + d4 * k4.u + d5 * k5.u + d6 * k6.u + d7 * k7.u)};
            dense.cv = {y.v, dyv, bsplv, dyv - h * k7.v - bsplv,
                        h * (d1 * k1.v + d3 * k3.v + d4 * k4.v + d5 * k5.v + d6 * k6.v + d7 * k7.v)};
        }

        // winding accumulation over dense subsamples
        {
            Vec2 prev = y;
            for (int j = 1; j <= 4; ++j) {
                const Vec2 cur = (j == 4) ? y1 : dense.eval(t + h * j / 4.0);
                if (prev.norm() > 0.0 && cur.norm() > 0.0)
                    traj.winding += std::atan2(prev.u * cur.v - prev.v * cur.u,
                                               prev.u * cur.u + prev.v * cur.v);
                prev = cur;
            }
        }

        const double t_new = t + h;
        push_sample(t_new, y1);

        if (observer) {
            const StepEvent ev{t, y, t_new, y1, &dense};
            if (observer(ev)) {
                if (observer_stop) *observer_stop = true;
                return finish(traj.termination);
            }
        }

        const Vec2 f1 = k7;
        t = t_new;
        y = y1;
        f = f1;

        if (max_exponent(s, y) > opts.overflow_guard) return finish(Termination::overflow);
        if (y.norm() > opts.escape_radius) return finish(Termination::escaped);
        if (converged(y)) return finish(Termination::converged_to_origin);

        double fac = 0.9 * std::pow(std::max(err, 1e-30), -0.2);
        fac = std::min(just_rejected ? 1.0 : 5.0, std::max(0.2, fac));
        just_rejected = false;
        h *= fac;
    }
    return finish(Termination::time_limit);
}

}  // namespace

Trajectory integrate(const ParameterScheme& s, Vec2 x0, const IntegratorOptions& opts) {
    return drive(s, x0, opts, nullptr, nullptr);
}

ConvergenceAnswer converges_to_origin(const ParameterScheme& s, Vec2 x0,
                                      const IntegratorOptions& opts) {
    IntegratorOptions o = opts;
    o.keep_samples = false;
    switch (integrate(s, x0, o).termination) {
        case Termination::converged_to_origin: return ConvergenceAnswer::yes;
        case Termination::escaped: return ConvergenceAnswer::no_escaped;
        case Termination::time_limit:
        case Termination::overflow: return ConvergenceAnswer::undecided;
    }
    return ConvergenceAnswer::undecided;
}

SectionCrossing poincare_return(const ParameterScheme& s, Section section, double c0,
                                const IntegratorOptions& opts) {
    if (!(c0 > 0.0)) throw std::invalid_argument("poincare_return requires c0 > 0");
    const Vec2 d = section.direction();
    const Vec2 n = section.normal();
    const Vec2 x0{c0 * d.u, c0 * d.v};

    const Vec2 f0 = eval_vector_field(s, x0);
    const double dir0 = f0.u * n.u + f0.v * n.v;
    const double f0n = std::hypot(f0.u, f0.v);
    if (!(std::abs(dir0) > 1e-8 * f0n))
        throw std::domain_error("section is not transversal to the field at the start point");

    const double arm_tol = 1e-12 * std::max(1.0, c0);
    const double residual_tol = 1e-12 * std::max(1.0, c0);

    IntegratorOptions o = opts;
    o.keep_samples = false;

    bool found = false;
    SectionCrossing result{0.0, 0.0};

    double w_prev = 0.0;
    bool prev_armed = false;
    double t_prev = 0.0;

    auto w_of = [&](Vec2 y) { return y.u * n.u + y.v * n.v; };

    auto observer = [&](const StepEvent& ev) -> bool {
        constexpr int kSub = 8;
        for (int j = 1; j <= kSub; ++j) {
            const double tj = ev.t0 + (ev.t1 - ev.t0) * j / kSub;
            const Vec2 yj = (j == kSub) ? ev.y1 : ev.dense->eval(tj);
            const double wj = w_of(yj);
            const bool crossing = prev_armed && (w_prev * wj < 0.0 || wj == 0.0);
            if (crossing) {
                // refine by bisection on the dense output
                double lo = t_prev, hi = tj, wlo = w_prev;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double wm = w_of(ev.dense->eval(mid));
                    if (std::abs(wm) <= residual_tol) {
                        lo = hi = mid;
                        break;
                    }
                    if ((wlo < 0.0) == (wm < 0.0)) {
                        lo = mid;
                        wlo = wm;
                    } else {
                        hi = mid;
                    }
                }
                const double t_star = 0.5 * (lo + hi);
                const Vec2 y_star = ev.dense->eval(t_star);
                const double along = y_star.u * d.u + y_star.v * d.v;
                const Vec2 fs = eval_vector_field(s, y_star);
                const double dir_star = fs.u * n.u + fs.v * n.v;
                if (along > 0.0 && dir_star * dir0 > 0.0) {
                    found = true;
                    result = {along, t_star};
                    return true;
                }
            }
            w_prev = wj;
            prev_armed = std::abs(wj) > arm_tol;
            t_prev = tj;
        }
        return false;
    };

    bool stopped = false;
    const Trajectory traj = drive(s, x0, o, observer, &stopped);
    if (found) return result;
    throw no_return_error(
        "orbit did not return to the section (termination: " + to_string(traj.termination) + ")",
        traj.termination);
}

LimitCycleReport find_limit_cycles(const ParameterScheme& s, Section section,
                                   const CycleSearchOptions& search,
                                   const IntegratorOptions& opts) {
    if (!(search.c_min > 0.0) || !(search.c_max > search.c_min) || search.n_seeds < 2)
        throw std::invalid_argument("invalid cycle search range");
    {
        const double det =
            (s.a1 - s.a2) * (s.b3 - s.b4) - (s.a3 - s.a4) * (s.b1 - s.b2);
        if (!(det > 0.0))
            throw std::domain_error("limit-cycle search requires det J > 0 at the origin");
    }

    LimitCycleReport report;

    struct Eval {
        double c, disp, period;
    };
    std::vector<Eval> grid;
    auto displacement = [&](double c) -> Eval {
        const SectionCrossing cr = poincare_return(s, section, c, opts);
        return {c, cr.coordinate - c, cr.return_time};
    };

    for (int i = 0; i < search.n_seeds; ++i) {
        const double c =
            search.c_min + (search.c_max - search.c_min) * i / double(search.n_seeds - 1);
        try {
            grid.push_back(displacement(c));
        } catch (const no_return_error& e) {
            report.skipped_seeds.emplace_back(c, e.what());
        } catch (const std::domain_error& e) {
            report.skipped_seeds.emplace_back(c, e.what());
        } catch (const integration_error& e) {
            report.skipped_seeds.emplace_back(c, e.what());
        }
    }
    if (grid.size() < 2) return report;

    bool all_tiny = true;
    for (const Eval& g : grid)
        if (std::abs(g.disp) > search.continuum_tol) all_tiny = false;
    if (all_tiny) {
        report.continuum = true;
        return report;
    }

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const Eval lo0 = grid[i], hi0 = grid[i + 1];
        if (!(lo0.disp * hi0.disp < 0.0)) continue;

        double lo = lo0.c, hi = hi0.c, dlo = lo0.disp;
        double period = lo0.period;
        while (hi - lo > search.root_tol) {
            const double mid = 0.5 * (lo + hi);
            Eval em;
            try {
                em = displacement(mid);
            } catch (const no_return_error& e) {
                report.skipped_seeds.emplace_back(mid, e.what());
                break;
            } catch (const integration_error& e) {
                report.skipped_seeds.emplace_back(mid, e.what());
                break;
            }
            period = em.period;
            if ((em.disp < 0.0) == (dlo < 0.0)) {
                lo = mid;
                dlo = em.disp;
            } else {
                hi = mid;
            }
        }
        if (hi - lo > search.root_tol) continue;  // refinement aborted

        const double root = 0.5 * (lo + hi);
        const CycleStability st =
            lo0.disp > 0.0 ? CycleStability::stable : CycleStability::unstable;
        if (!report.cycles.empty() &&
            std::abs(report.cycles.back().coordinate - root) < search.dedup_tol)
            continue;
        report.cycles.push_back({root, st, period});
    }
    return report;
}

bool orbit_closed(const ParameterScheme& s, Vec2 x0, const IntegratorOptions& opts,
                  double tol_close) {
    const double c0 = x0.norm();
    if (!(c0 > 0.0)) throw std::invalid_argument("orbit_closed requires x0 != 0");
    if (tol_close < 0.0) tol_close = 1e-6 * c0;
    const Section section{std::atan2(x0.v, x0.u)};
    try {
        const SectionCrossing cr = poincare_return(s, section, c0, opts);
        return std::abs(cr.coordinate - c0) <= tol_close;
    } catch (const no_return_error&) {
        return false;
    }
}

}  // namespace ssys
