#include <benchmark/benchmark.h>

#include "dgsw/gca.hpp"

using namespace dgsw;

static CdgaPtr bench_algebra() {
  auto A = Cdga::make();
  int x = A->add_generator("x", 0);
  int y = A->add_generator("y", 0);
  int xi = A->add_generator("xi", -1);
  int eta = A->add_generator("eta", -1);
  A->set_diff(xi, A->var(x) * A->var(x));
  A->set_diff(eta, A->var(x) * A->var(y));
  return A;
}

static Poly dense_poly(const Cdga* A, int deg) {
  Poly p(A);
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j) {
      Monomial m;
      if (i > 0) m.factors.emplace_back(0, i);
      if (j > 0) m.factors.emplace_back(1, j);
      p.add_term(m, Rational(i + j + 1, 3));
    }
  return p;
}

static void BM_PolyMul(benchmark::State& state) {
  auto A = bench_algebra();
  Poly p = dense_poly(A.get(), static_cast<int>(state.range(0)));
  Poly q = p * A->var("xi") + p;
  for (auto _ : state) {
    Poly r = p * q;
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_PolyMul)->Arg(4)->Arg(8)->Arg(12);

static void BM_Differential(benchmark::State& state) {
  auto A = bench_algebra();
  Poly p = dense_poly(A.get(), static_cast<int>(state.range(0)));
  Poly q = p * A->var("xi") * A->var("eta") + p * A->var("xi");
  for (auto _ : state) {
    Poly r = A->d(q);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Differential)->Arg(6)->Arg(12);

BENCHMARK_MAIN();
