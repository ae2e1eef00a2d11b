#include "ssys/bautin.hpp"

#include "ssys/classify.hpp"

#include <cmath>
#include <string>

namespace ssys {

ParameterScheme bautin_base_scheme() {
    return {0.0, -1.0, -1.0, 4.0, 0.0, -2.0, -1.0, 0.0};
}

BautinSearchOptions default_bautin_options() {
    BautinSearchOptions o;
    o.integrator.rel_tol = 1e-12;
    o.integrator.abs_tol = 1e-14;
    o.integrator.max_time = 400.0;
    o.integrator.escape_radius = 50.0;
    o.integrator.keep_samples = false;
    o.cycle_search.c_min = 0.02;
    o.cycle_search.c_max = 1.1;
    o.cycle_search.n_seeds = 32;
    o.cycle_search.root_tol = 1e-9;
    return o;
}

namespace {

ParameterScheme stage1_scheme(double eps1) {
    ParameterScheme s = bautin_base_scheme();
    s.a2 = -1.0 - eps1;
    s.b3 = -1.0 - eps1;  // keeps b3 = a2 and hence tr J = 0
    return s;
}

}  // namespace

BautinDemoResult run_bautin_demo(const BautinSearchOptions& opts) {
    BautinDemoResult out;
    out.base = bautin_base_scheme();
    {
        const FocalValues fv = focal_values(out.base);
        out.base_L1 = fv.L1;
        out.base_L2 = fv.l2_or_zero();
    }

    std::string log;

    // Stage 1: lower a2 = b3 together; the trace stays 0 while L1 becomes
    // positive, and the negative L2 bounds a stable cycle.
    bool stage1_done = false;
    for (double eps1 : opts.stage1_candidates) {
        const ParameterScheme s1 = stage1_scheme(eps1);
        const FocalValues fv = focal_values(s1);
        if (!(fv.L1 > 0.0)) {
            log += "stage1 eps=" + std::to_string(eps1) + ": L1 <= 0\n";
            continue;
        }
        const LimitCycleReport rep =
            find_limit_cycles(s1, opts.section, opts.cycle_search, opts.integrator);
        if (rep.cycles.size() == 1 && rep.cycles[0].stability == CycleStability::stable &&
            !rep.continuum) {
            out.stage1 = {eps1, fv.L1, s1, rep.cycles[0]};
            stage1_done = true;
            break;
        }
        log += "stage1 eps=" + std::to_string(eps1) + ": found " +
               std::to_string(rep.cycles.size()) + " cycle(s)\n";
    }
    if (!stage1_done)
        throw bautin_search_error("stage 1 search exhausted without a single stable cycle\n" + log);

    // Stage 2: raise a2 alone; tr J = -eps2 < 0 creates a small unstable
    // cycle inside the stable one.
    const double eps1 = out.stage1.epsilon;
    for (double factor : opts.stage2_factors) {
        const double eps2 = factor * eps1 * eps1;
        ParameterScheme s2 = out.stage1.scheme;
        s2.a2 += eps2;
        const double trace = jacobian(s2).trace();
        const LimitCycleReport rep =
            find_limit_cycles(s2, opts.section, opts.cycle_search, opts.integrator);
        if (rep.cycles.size() == 2 && rep.cycles[0].stability == CycleStability::unstable &&
            rep.cycles[1].stability == CycleStability::stable && !rep.continuum) {
            out.stage2 = {eps2, trace, s2, rep.cycles};
            return out;
        }
        log += "stage2 eps=" + std::to_string(eps2) + ": found " +
               std::to_string(rep.cycles.size()) + " cycle(s)\n";
    }
    throw bautin_search_error("stage 2 search exhausted without the two-cycle configuration\n" +
                              log);
}

}  // namespace ssys
