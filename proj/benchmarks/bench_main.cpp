#include <benchmark/benchmark.h>

#include "kleincm/pipeline.hpp"
#include "kleincm/recognition.hpp"
#include "kleincm/theta.hpp"

using namespace kleincm;

namespace {

HilbertPoint sample_point(mpfr_prec_t prec) {
    return {CBall::of(make_rat(1, 4), make_rat(11, 10), prec),
            CBall::of(make_rat(-1, 3), make_rat(13, 10), prec)};
}

void bm_theta_const(benchmark::State& state) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(state.range(0));
    HilbertPoint z = sample_point(prec);
    PeriodMatrix om = mu5(z.z1, z.z2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(theta_const(om, char_table()[0], prec));
    }
}
BENCHMARK(bm_theta_const)->Arg(128)->Arg(256)->Arg(512);

void bm_eval_forms(benchmark::State& state) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(state.range(0));
    HilbertPoint z = sample_point(prec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_forms(z, prec));
    }
}
BENCHMARK(bm_eval_forms)->Arg(128)->Arg(256);

void bm_symplectic_reduce(benchmark::State& state) {
    CMFieldSpec spec{-37, 2, 1, 5};
    IntSkewMatrix4 gram = riemann_gram(integral_basis(spec), zeta_principal(spec));
    for (auto _ : state) {
        benchmark::DoNotOptimize(symplectic_reduce(gram));
    }
}
BENCHMARK(bm_symplectic_reduce);

void bm_recognize_quadratic(benchmark::State& state) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(state.range(0));
    RBall five = RBall::of(Rat(5), prec);
    RBall golden = (five.sqrt_pos() + RBall::of(1L, prec)) * RBall::of(make_rat(1, 2), prec);
    RecognitionRequest req;
    req.value = CBall::real(golden);
    req.expect_real = true;
    req.max_degree = 4;
    req.prec = prec;
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_poly(req));
    }
}
BENCHMARK(bm_recognize_quadratic)->Arg(128)->Arg(512);

void bm_pipeline_no_recognition(benchmark::State& state) {
    CMFieldSpec spec{-1, 1, 2, 5};
    PipelineConfig cfg;
    cfg.precision = 128;
    cfg.run_recognition = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_pipeline(spec, cfg));
    }
}
BENCHMARK(bm_pipeline_no_recognition);

}  // namespace

BENCHMARK_MAIN();
