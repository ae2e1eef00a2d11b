#include <doctest.h>

#include "ssys/bautin.hpp"
#include "ssys/classify.hpp"
#include "ssys/dynamics.hpp"
#include "ssys/integrals.hpp"
#include "support/generators.hpp"

#include <cmath>

using namespace ssys;
using testgen::Rng;

namespace {

IntegratorOptions tight() {
    IntegratorOptions o;
    o.rel_tol = 1e-11;
    o.abs_tol = 1e-13;
    o.max_time = 500.0;
    return o;
}

const ParameterScheme kSinh{0, 0, -1, 1, 1, -1, 0, 0};

}  // namespace

TEST_CASE("zero field gives a constant trajectory ending on the time limit") {
    IntegratorOptions o;
    o.max_time = 5.0;
    const Trajectory tr = integrate({0, 0, 0, 0, 0, 0, 0, 0}, {0.7, -0.3}, o);
    CHECK(tr.termination == Termination::time_limit);
    CHECK(tr.final().u == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(tr.final().v == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(tr.final().t == doctest::Approx(5.0));
}

TEST_CASE("trajectory samples have strictly increasing time") {
    const Trajectory tr = integrate(kSinh, {1.0, 0.0}, tight());
    REQUIRE(tr.samples.size() > 10);
    for (std::size_t i = 1; i < tr.samples.size(); ++i)
        CHECK(tr.samples[i].t > tr.samples[i - 1].t);
}

TEST_CASE("global center orbit returns to the start") {
    IntegratorOptions o = tight();
    const SectionCrossing cr = poincare_return(kSinh, Section{0.0}, 1.0, o);
    CHECK(std::abs(cr.coordinate - 1.0) < 1e-7);
    CHECK(cr.return_time > 0.0);
}

TEST_CASE("globally stable scheme converges from a grid") {
    const ParameterScheme s = exponential_scheme({{{0.0, 0.0}, {0.0, 0.0}}},
                                                 {{{1.0, 0.0}, {0.0, 1.0}}});
    // G - H = -identity: branch (a)
    IntegratorOptions o;
    o.rel_tol = 1e-8;
    o.abs_tol = 1e-8;
    o.max_time = 400.0;
    o.keep_samples = false;
    for (double u = -4.0; u <= 4.01; u += 2.0)
        for (double v = -4.0; v <= 4.01; v += 2.0) {
            CHECK(converges_to_origin(s, {u, v}, o) == ConvergenceAnswer::yes);
        }
}

TEST_CASE("time reversal of a stable system repels") {
    const ParameterScheme stable = exponential_scheme({{{0.0, 0.3}, {-0.2, 0.0}}},
                                                      {{{1.0, 0.0}, {0.0, 1.0}}});
    IntegratorOptions o;
    o.rel_tol = 1e-9;
    o.abs_tol = 1e-11;
    o.max_time = 200.0;
    o.escape_radius = 5.0;
    o.keep_samples = false;
    REQUIRE(converges_to_origin(stable, {0.05, 0.03}, o) == ConvergenceAnswer::yes);
    const Trajectory tr = integrate(time_reverse(stable), {0.05, 0.03}, o);
    CHECK(tr.termination == Termination::escaped);
}

TEST_CASE("orbit seeded in the invariant wedge of a violated (+,+;-,-) pattern escapes") {
    // sign (+,+;-,-) with a1 > a4: the wedge {u >= u0, gamma*u <= v <= gamma*u0}
    // with small negative gamma and large u0 is forward invariant and all its
    // orbits are unbounded
    ParameterScheme s;
    s.a1 = 0.3; s.a2 = 0.0;    // j11 = +0.3
    s.b1 = 0.4; s.b2 = -0.2;   // j12 = +0.6
    s.a3 = -0.4; s.a4 = 0.1;   // j21 = -0.5, a1 > a4
    s.b3 = -0.1; s.b4 = 0.3;   // j22 = -0.4, det = -0.12 + 0.3 > 0
    REQUIRE(jacobian(s).det() > 0.0);
    REQUIRE(boundedness_status(s).kind == BoundednessStatus::Kind::unbounded);

    IntegratorOptions o;
    o.rel_tol = 1e-8;
    o.abs_tol = 1e-10;
    o.max_time = 1e4;
    o.escape_radius = 25.0;
    o.keep_samples = false;
    const double gamma = -0.1, u0 = 8.0;
    const Vec2 wedge_seed{u0 + 2.0, gamma * (u0 + 1.0)};
    CHECK(converges_to_origin(s, wedge_seed, o) == ConvergenceAnswer::no_escaped);
}

TEST_CASE("center orbits never converge: undecided on the time limit") {
    IntegratorOptions o;
    o.rel_tol = 1e-9;
    o.abs_tol = 1e-11;
    o.max_time = 30.0;
    o.keep_samples = false;
    CHECK(converges_to_origin(kSinh, {0.5, 0.0}, o) == ConvergenceAnswer::undecided);
}

TEST_CASE("unbounded wedge orbit escapes") {
    // sign (0,+;-,-) with a1 = a2 > a4: unbounded solutions above the
    // separatrix curve
    ParameterScheme s;
    s.a1 = s.a2 = 1.0;
    s.a4 = -0.5;
    s.a3 = -1.5;
    s.b1 = 1.2;
    s.b2 = -0.8;
    s.b3 = -1.0;
    s.b4 = 0.0;
    IntegratorOptions o;
    o.rel_tol = 1e-8;
    o.abs_tol = 1e-10;
    o.max_time = 200.0;
    // a1 > 0 gives finite-time blow-up in u; a modest escape radius keeps
    // the step size representable all the way to the detection
    o.escape_radius = 15.0;
    o.keep_samples = false;
    const double v0 = 0.5;
    const double u0 = separatrix_u_of_v(s, v0) + 1.0;
    CHECK(converges_to_origin(s, {u0, v0}, o) == ConvergenceAnswer::no_escaped);
}

TEST_CASE("overflow guard terminates the run") {
    const ParameterScheme s{30, -30, -30, 30, 30, -30, -30, 30};
    IntegratorOptions o;
    o.escape_radius = 1e6;
    o.overflow_guard = 700.0;
    o.max_time = 100.0;
    const Trajectory tr = integrate(s, {20.0, 5.0}, o);
    CHECK(tr.termination == Termination::overflow);
}

TEST_CASE("poincare return contracts for a stable weak focus and expands reversed") {
    // ell1 > 0 example: repelling weak focus
    const ParameterScheme repelling{0, 1, 2, -1, 0, 1, 1, 0};
    REQUIRE(hopf_ell1(repelling) > 0.0);
    IntegratorOptions o = tight();
    const double c0 = 0.15;
    const SectionCrossing out = poincare_return(repelling, Section{0.0}, c0, o);
    CHECK(out.coordinate > c0);

    // its time reversal is an attracting weak focus (ell1 < 0)
    const ParameterScheme attracting = time_reverse(repelling);
    REQUIRE(hopf_ell1(attracting) < 0.0);
    const SectionCrossing in = poincare_return(attracting, Section{0.0}, c0, o);
    CHECK(in.coordinate < c0);
}

TEST_CASE("poincare rejects a non-transversal section") {
    // on the u-axis the field of this scheme is radial: du = 0 forces
    // tangency... use a scheme with f parallel to the section direction.
    // For the sinh scheme at (c,0): f = (0, -2 sinh c): normal component
    // n.f = -2 sinh c != 0, transversal. Build tangency with a4 = a3:
    const ParameterScheme s{0, 0, 1, 1, 1, -1, 1, 1};  // dv = 0 identically on v=0
    CHECK_THROWS_AS(poincare_return(s, Section{0.0}, 1.0, tight()), std::domain_error);
}

TEST_CASE("poincare reports no return for escaping orbits") {
    ParameterScheme s;
    s.a1 = s.a2 = 1.0;
    s.a4 = -0.5;
    s.a3 = -1.5;
    s.b1 = 1.2;
    s.b2 = -0.8;
    s.b3 = -1.0;
    s.b4 = 0.0;
    IntegratorOptions o;
    o.max_time = 60.0;
    o.escape_radius = 15.0;
    // seed above the separatrix: the orbit leaves monotonically and never
    // re-crosses its own ray
    const double v0 = 0.4;
    const double u0 = separatrix_u_of_v(s, v0) + 2.0;
    const Section ray{std::atan2(v0, u0)};
    const double c0 = std::hypot(u0, v0);
    CHECK_THROWS_AS(poincare_return(s, ray, c0, o), no_return_error);
}

TEST_CASE("orbit_closed on centers and on converging spirals") {
    IntegratorOptions o = tight();
    CHECK(orbit_closed(kSinh, {3.0, 0.0}, o));
    CHECK(orbit_closed(kSinh, {0.4, 0.2}, o));

    // attracting weak focus: orbits spiral inward, never close
    const ParameterScheme attracting = time_reverse({0, 1, 2, -1, 0, 1, 1, 0});
    CHECK(!orbit_closed(attracting, {0.2, 0.0}, o));

    // R1 center with the global chain: closed far out
    const double a1 = 0.5, a2 = -0.5, a3 = -1.0, a4 = 1.0;
    const ParameterScheme r1{a1, a2, a3, a4, a4, a3, a2, a1};
    CHECK(orbit_closed(r1, {2.5, 0.0}, o));

    CHECK_THROWS_AS(orbit_closed(kSinh, {0.0, 0.0}, o), std::invalid_argument);
}

TEST_CASE("energy drift along center orbits stays tiny") {
    Rng rng(80);
    IntegratorOptions o = tight();
    o.max_time = 1e6;
    const ParameterScheme s = testgen::global_center_scheme(CenterCaseTag::I1, rng);
    const FirstIntegral fi = make_first_integral(s, FirstIntegralCase::I1);
    const Vec2 x0{0.9, 0.0};
    const double H0 = fi.value(x0);

    // ten consecutive returns, checking the integral at each
    double c = 0.9;
    double drift = 0.0;
    for (int rev = 0; rev < 10; ++rev) {
        const SectionCrossing cr = poincare_return(s, Section{0.0}, c, o);
        c = cr.coordinate;
        drift = std::max(drift, std::abs(fi.value({c, 0.0}) - H0));
    }
    CHECK(drift <= 1e-8 * std::max(1.0, std::abs(H0)));
}

TEST_CASE("winding sense matches the orientation classifier") {
    Rng rng(81);
    for (int trial = 0; trial < 6; ++trial) {
        const ParameterScheme s =
            testgen::scheme_in_case(testgen::kAllCases[trial % 7], rng);
        IntegratorOptions o;
        o.rel_tol = 1e-9;
        o.abs_tol = 1e-11;
        o.max_time = 100.0;
        o.keep_samples = false;
        const Trajectory tr = integrate(s, {0.2, 0.0}, o);
        const Orientation sense = orientation(s);
        if (std::abs(tr.winding) > 1.0) {
            CHECK((sense == Orientation::clockwise) == (tr.winding < 0.0));
        }
    }
}

TEST_CASE("reversibility of R1 schemes as a field identity") {
    Rng rng(82);
    const ParameterScheme s = testgen::scheme_in_case(CenterCaseTag::R1, rng);
    const SymmetryElement& refl = symmetry(SymmetryTag::s1);
    for (int i = 0; i < 30; ++i) {
        const Vec2 x{testgen::uni(rng, -1.5, 1.5), testgen::uni(rng, -1.5, 1.5)};
        const Vec2 fx = eval_vector_field(s, x);
        const Vec2 f_rx = eval_vector_field(s, refl.apply(x));
        const Vec2 minus_r_fx = {-(refl.m[0][0] * fx.u + refl.m[0][1] * fx.v),
                                 -(refl.m[1][0] * fx.u + refl.m[1][1] * fx.v)};
        // f(Rx) = lambda * (-R f(x)) with lambda > 0
        const double lu = f_rx.u / minus_r_fx.u;
        const double lv = f_rx.v / minus_r_fx.v;
        CHECK(lu > 0.0);
        CHECK(lu == doctest::Approx(lv).epsilon(1e-9));
    }
}

TEST_CASE("global-center proof sign region: sign(du+dv) = sign(v-u) in case (i)") {
    // R1-only-a form with a3 <= a2 < a1 <= a4
    const double a1 = 0.6, a2 = -0.6, a3 = -1.2, a4 = 1.2;
    const ParameterScheme s{a1, a2, a3, a4, a4, a3, a2, a1};
    Rng rng(83);
    for (int i = 0; i < 100; ++i) {
        const Vec2 x{testgen::uni(rng, -2, 2), testgen::uni(rng, -2, 2)};
        if (std::abs(x.v - x.u) < 1e-9) continue;
        const Vec2 f = eval_vector_field(s, x);
        CHECK((f.u + f.v > 0.0) == (x.v - x.u > 0.0));
    }
}

TEST_CASE("negative-divergence schemes have no limit cycles") {
    // a1 < a2, b3 < b4, det J > 0: Bendixson-Dulac excludes periodic orbits
    ParameterScheme s;
    s.a1 = -0.5; s.a2 = 0.5;
    s.b3 = -0.4; s.b4 = 0.6;
    s.b1 = 0.8; s.b2 = -0.7;
    s.a3 = -1.0; s.a4 = 0.9;
    REQUIRE(jacobian(s).det() > 0.0);
    IntegratorOptions o;
    o.rel_tol = 1e-9;
    o.abs_tol = 1e-11;
    o.max_time = 200.0;
    CycleSearchOptions cs;
    cs.c_min = 0.1;
    cs.c_max = 1.6;
    cs.n_seeds = 8;
    const LimitCycleReport rep = find_limit_cycles(s, Section{0.0}, cs, o);
    CHECK(rep.cycles.empty());
    CHECK(!rep.continuum);  // displacements are negative (spiraling in), not zero
}

TEST_CASE("find_limit_cycles flags a center as a continuum") {
    IntegratorOptions o = tight();
    CycleSearchOptions cs;
    cs.c_min = 0.2;
    cs.c_max = 1.4;
    cs.n_seeds = 7;
    const LimitCycleReport rep = find_limit_cycles(kSinh, Section{0.0}, cs, o);
    CHECK(rep.continuum);
    CHECK(rep.cycles.empty());
}

TEST_CASE("stage-1 perturbation of the degenerate focus has one stable cycle") {
    ParameterScheme s = bautin_base_scheme();
    const double eps1 = 0.05;
    s.a2 = -1.0 - eps1;
    s.b3 = -1.0 - eps1;
    REQUIRE(jacobian(s).trace() == 0.0);
    REQUIRE(focal_values(s).L1 > 0.0);

    IntegratorOptions o;
    o.rel_tol = 1e-11;
    o.abs_tol = 1e-13;
    o.max_time = 300.0;
    CycleSearchOptions cs;
    cs.c_min = 0.05;
    cs.c_max = 1.1;
    cs.n_seeds = 16;
    const LimitCycleReport rep = find_limit_cycles(s, Section{0.0}, cs, o);
    REQUIRE(rep.cycles.size() == 1);
    CHECK(rep.cycles[0].stability == CycleStability::stable);
    CHECK(rep.cycles[0].coordinate > 0.2);
    CHECK(rep.cycles[0].coordinate < 0.9);
    CHECK(rep.cycles[0].period > 0.0);
}

TEST_CASE("fifth-order convergence on a smooth orbit") {
    // fixed steps via max_step with a relative tolerance too loose to ever
    // reject (abs_tol stays tiny so the convergence ball is inert)
    auto endpoint = [&](double h) {
        IntegratorOptions o;
        o.rel_tol = 10.0;
        o.abs_tol = 1e-6;  // convergence ball 1e-5, far below the orbit
        o.max_step = h;
        o.max_time = 2.0;
        o.keep_samples = false;
        const Trajectory tr = integrate(kSinh, {1.0, 0.0}, o);
        return Vec2{tr.final().u, tr.final().v};
    };
    const Vec2 ref = [&] {
        IntegratorOptions o = tight();
        o.rel_tol = 1e-13;
        o.abs_tol = 1e-15;
        o.max_time = 2.0;
        o.keep_samples = false;
        const Trajectory tr = integrate(kSinh, {1.0, 0.0}, o);
        return Vec2{tr.final().u, tr.final().v};
    }();
    auto err = [&](double h) {
        const Vec2 e = endpoint(h);
        return std::hypot(e.u - ref.u, e.v - ref.v);
    };
    const double e1 = err(0.02);
    const double e2 = err(0.01);
    const double order = std::log2(e1 / e2);
    CHECK(order > 4.4);
    CHECK(order < 5.8);
}

TEST_CASE("integrating the time-reversed field runs the orbit backwards") {
    IntegratorOptions o = tight();
    o.max_time = 1.3;
    o.keep_samples = false;
    const Vec2 x0{0.8, -0.4};
    const Trajectory fwd = integrate(kSinh, x0, o);
    const Vec2 x1{fwd.final().u, fwd.final().v};
    const Trajectory bwd = integrate(time_reverse(kSinh), x1, o);
    CHECK(bwd.final().u == doctest::Approx(x0.u).epsilon(1e-8));
    CHECK(bwd.final().v == doctest::Approx(x0.v).epsilon(1e-8));
}

TEST_CASE("sign of L2 matches the return-map displacement at a degenerate focus") {
    // independent oracle for the closed-form second focal value: when
    // L1 = 0, the displacement of small orbits has the sign of L2
    Rng rng(85);
    IntegratorOptions o;
    o.rel_tol = 1e-12;
    o.abs_tol = 1e-14;
    o.max_time = 200.0;
    o.keep_samples = false;

    int checked_b = 0, checked_c2 = 0;
    while (checked_b < 3 || checked_c2 < 3) {
        const bool want_c2 = checked_b >= 3;
        double a3 = testgen::mag(rng, 0.4, 1.4), a4 = testgen::mag(rng, 0.4, 1.4);
        double b3 = testgen::mag(rng, 0.4, 1.4), b4 = testgen::mag(rng, 0.4, 1.4);
        if (want_c2) {
            b3 = 0.0;
            a4 = -b4;  // the branch where b3 = 0 and a4 + b4 = 0
        }
        double b2;
        if (want_c2) {
            b2 = testgen::mag(rng, 0.4, 1.4);  // L1 = 0 for free: D = 0 and b3 b4 = 0
        } else {
            const double D = a3 * a4 + a3 * b4 - a4 * b3;
            if (std::abs(D) < 0.1) continue;
            b2 = (a3 - a4) * b3 * b4 / D;  // forces L1 = 0
            if (std::abs(b2) < 0.1) continue;
        }
        const double a2 = b3 - b4;  // tr J = 0
        const ParameterScheme s{0, a2, a3, a4, 0, b2, b3, b4};
        if (jacobian(s).det() < 0.3) continue;

        const FocalValues fv = focal_values(s);
        if (!fv.l2_defined() || fv.l2_kind != FocalValues::L2Kind::value) continue;
        if (fv.l2_branch != (want_c2 ? "c2" : "b")) continue;
        if (std::abs(fv.L2) < 0.05) continue;
        REQUIRE(std::abs(fv.L1) < 1e-10);

        const double c = 0.12;
        const SectionCrossing cr = poincare_return(s, Section{0.0}, c, o);
        const double disp = cr.coordinate - c;
        CHECK(std::abs(disp) > 1e-9);
        CHECK(std::signbit(disp) == std::signbit(fv.L2));
        (want_c2 ? checked_c2 : checked_b) += 1;
    }

    // the built-in degenerate focus: branch c4 with L2 < 0
    const ParameterScheme base{0, -1, -1, 4, 0, -2, -1, 0};
    const SectionCrossing cr = poincare_return(base, Section{0.0}, 0.12, o);
    CHECK(cr.coordinate < 0.12);
}

TEST_CASE("integrator option validation") {
    IntegratorOptions o;
    o.rel_tol = -1.0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
    IntegratorOptions o2;
    o2.max_time = 0.0;
    CHECK_THROWS_AS(o2.validate(), std::invalid_argument);
}
