#include <benchmark/benchmark.h>

#include "ssys/bautin.hpp"
#include "ssys/classify.hpp"
#include "ssys/dynamics.hpp"
#include "ssys/forms.hpp"

namespace {

const ssys::ParameterScheme kCenter{0, 0, -1, 1, 1, -1, 0, 0};
const ssys::ParameterScheme kFocus = ssys::bautin_base_scheme();

void BM_eval_vector_field(benchmark::State& state) {
    double u = 0.4, v = -0.3;
    for (auto _ : state) {
        const ssys::Vec2 f = ssys::eval_vector_field(kCenter, {u, v});
        benchmark::DoNotOptimize(f);
        u = -u;
    }
}
BENCHMARK(BM_eval_vector_field);

void BM_focal_values(benchmark::State& state) {
    for (auto _ : state) {
        const ssys::FocalValues fv = ssys::focal_values(kFocus);
        benchmark::DoNotOptimize(fv);
    }
}
BENCHMARK(BM_focal_values);

void BM_classify_center(benchmark::State& state) {
    for (auto _ : state) {
        const ssys::CenterDecision cd = ssys::is_center(kCenter);
        benchmark::DoNotOptimize(cd);
    }
}
BENCHMARK(BM_classify_center);

void BM_integrate_revolution(benchmark::State& state) {
    ssys::IntegratorOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-12;
    opts.max_time = 3.0;  // roughly one revolution of the center
    opts.keep_samples = false;
    for (auto _ : state) {
        const ssys::Trajectory tr = ssys::integrate(kCenter, {1.0, 0.0}, opts);
        benchmark::DoNotOptimize(tr);
    }
}
BENCHMARK(BM_integrate_revolution);

void BM_poincare_return(benchmark::State& state) {
    ssys::IntegratorOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-12;
    opts.max_time = 50.0;
    opts.keep_samples = false;
    for (auto _ : state) {
        const ssys::SectionCrossing cr =
            ssys::poincare_return(kCenter, ssys::Section{0.0}, 1.0, opts);
        benchmark::DoNotOptimize(cr);
    }
}
BENCHMARK(BM_poincare_return);

}  // namespace

BENCHMARK_MAIN();
