#include <benchmark/benchmark.h>

#include <complex>

#include "heinzlab/certifier.hpp"
#include "heinzlab/convex_gate.hpp"
#include "heinzlab/hermitian_eigen.hpp"
#include "heinzlab/norms.hpp"
#include "heinzlab/psd_matrix.hpp"
#include "heinzlab/scalar_kernel.hpp"
#include "heinzlab/trial_rng.hpp"

using namespace heinzlab;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  TrialRng rng(seed, 0);
  ComplexMatrix h(n, n);
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double re, im;
    rng.gaussian_pair(k, re, im);
    k += 2;
    h(i, i) = {re, 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      rng.gaussian_pair(k, re, im);
      k += 2;
      h(i, j) = {re, im};
      h(j, i) = {re, -im};
    }
  }
  return h;
}

ComplexMatrix random_dense(std::size_t n, std::uint64_t seed) {
  TrialRng rng(seed, 1);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double re, im;
      rng.gaussian_pair(2 * (i * n + j), re, im);
      m(i, j) = {re, im};
    }
  return m;
}

void BM_YoungSandwich(benchmark::State& state) {
  PositivePair pair(523.7, 0.031);
  WeightSplit w(0.37);
  for (auto _ : state) benchmark::DoNotOptimize(young_sandwich(pair, w));
}
BENCHMARK(BM_YoungSandwich);

void BM_PowerPSandwich(benchmark::State& state) {
  PositivePair pair(523.7, 0.031);
  WeightSplit w(0.37);
  ExponentP p(3.7);
  for (auto _ : state) benchmark::DoNotOptimize(power_p_sandwich(pair, w, p));
}
BENCHMARK(BM_PowerPSandwich);

void BM_PhiHeinzSandwich(benchmark::State& state) {
  PositivePair pair(523.7, 0.031);
  WeightSplit w(0.37);
  ConvexFunctionSpec phi = ConvexFunctionSpec::power(2.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(phi_heinz_sandwich(phi, pair, w, HeinzVariant::Full));
}
BENCHMARK(BM_PhiHeinzSandwich);

void BM_HermitianEigen(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  ComplexMatrix h = random_hermitian(n, 99);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigendecomposition(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermitianEigen)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Complexity();

void BM_SchattenNorm(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  ComplexMatrix m = random_dense(n, 17);
  for (auto _ : state) benchmark::DoNotOptimize(schatten_norm(m, 3.0));
}
BENCHMARK(BM_SchattenNorm)->Arg(8)->Arg(32)->Arg(64);

void BM_FractionalPower(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  ComplexMatrix g = random_dense(n, 23);
  ComplexMatrix base = matmul(adjoint(g), g);
  for (std::size_t i = 0; i < n; ++i) base(i, i) += 1e-8;
  PsdMatrix psd(base);
  for (auto _ : state) benchmark::DoNotOptimize(psd.fractional_power(0.37));
}
BENCHMARK(BM_FractionalPower)->Arg(8)->Arg(32)->Arg(64);

void BM_CertifyScalar(benchmark::State& state) {
  TrialConfig cfg;
  cfg.seed = 42;
  cfg.trials = static_cast<std::uint64_t>(state.range(0));
  CertifyOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(certify(cfg, Suite::Scalar, opts));
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}
BENCHMARK(BM_CertifyScalar)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_CertifyMatrix(benchmark::State& state) {
  TrialConfig cfg;
  cfg.seed = 7;
  cfg.trials = static_cast<std::uint64_t>(state.range(0));
  cfg.dim_max = 6;
  CertifyOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(certify(cfg, Suite::Matrix, opts));
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}
BENCHMARK(BM_CertifyMatrix)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
