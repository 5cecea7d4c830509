#include <benchmark/benchmark.h>

#include "fibdiff/canonical.hpp"
#include "fibdiff/corpus.hpp"
#include "fibdiff/parser.hpp"
#include "fibdiff/pipeline.hpp"
#include "fibdiff/simplify.hpp"
#include "fibdiff/verify.hpp"

using namespace fibdiff;

namespace {

void BM_TermAt(benchmark::State& state) {
  Context ctx = Context::default_table(Rational(3), Rational(-2));
  SequenceSpec w = ctx.spec("W");
  for (auto _ : state) {
    TermTable t(w);
    benchmark::DoNotOptimize(t.at(state.range(0)));
    benchmark::DoNotOptimize(t.at(-state.range(0)));
  }
}
BENCHMARK(BM_TermAt)->Arg(64)->Arg(512);

void BM_ProveDoubleAngle(benchmark::State& state) {
  Identity id = parse_identity("F[2k] = L[k]*F[k]");
  for (auto _ : state) benchmark::DoNotOptimize(prove_identity(id));
}
BENCHMARK(BM_ProveDoubleAngle);

void BM_ProveThreeIndexGibonacci(benchmark::State& state) {
  Identity id = parse_identity("F[s]*G[k+r] + (-1)^(r-1)*F[s-r]*G[k] = F[r]*G[k+s]");
  for (auto _ : state) benchmark::DoNotOptimize(prove_identity(id));
}
BENCHMARK(BM_ProveThreeIndexGibonacci);

void BM_Simplify(benchmark::State& state) {
  Identity id = parse_identity("2*F[k+1]*(F[k+2] + F[k]) + L[m]*F[n] + L[n]*F[m] = 2*F[k]^3*L[k] - (L[k+1] + L[k-1])");
  for (auto _ : state) benchmark::DoNotOptimize(simplify(id));
}
BENCHMARK(BM_Simplify);

void BM_DeriveCombine(benchmark::State& state) {
  Identity id = parse_identity("F[k+1]^2 + F[k]^2 = F[2k+1]");
  DeriveConfig cfg;
  cfg.wrt = "k";
  cfg.component = Component::Imag;
  cfg.shift = "s";
  cfg.combine = "G";
  for (auto _ : state) benchmark::DoNotOptimize(run_derive(id, cfg));
}
BENCHMARK(BM_DeriveCombine);

void BM_VerifyHoggatt(benchmark::State& state) {
  Identity id = parse_identity("sum(j,0,4n+1, (-1)^(j-1)*binom(4n+1,j)*F[j+k]^4) = 25^n*(F[k+2n+1]^4 - F[k+2n]^4)");
  VerifyOptions o;
  o.grid = parse_grid("n=0..2,k=-3..3");
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(verify_instances(id, o));
}
BENCHMARK(BM_VerifyHoggatt)->Unit(benchmark::kMillisecond);

void BM_Corpus(benchmark::State& state) {
  auto all = load_corpus(default_corpus_dir());
  for (auto _ : state) benchmark::DoNotOptimize(run_corpus(all, all, 1));
}
BENCHMARK(BM_Corpus)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
