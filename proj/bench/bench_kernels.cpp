// Serial reference kernels against their OpenMP variants.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "phodge/calculus.hpp"

using namespace phodge;

namespace {

std::vector<double> field(std::size_t n, double phase) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(0.001 * static_cast<double>(i) + phase);
  return v;
}

template <Backend B>
void BM_derivative(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PeriodicGrid g(GridSpec::torus(3, n));
  const Stencil st = Stencil::central(8);
  const std::vector<double> in = field(g.size(), 0.3);
  std::vector<double> out(g.size(), 0.0);
  for (auto _ : state) {
    for (int axis = 0; axis < 3; ++axis) {
      if constexpr (B == Backend::serial)
        serial::add_derivative(g.shape(), axis, st, 1.0 / g.step(axis), in, out);
      else
        omp::add_derivative(g.shape(), axis, st, 1.0 / g.step(axis), in, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()) * 3);
}

template <Backend B>
void BM_weighted_dot(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> w = field(n, 0.1), a = field(n, 0.2), b = field(n, 0.7);
  for (auto _ : state) {
    double r;
    if constexpr (B == Backend::serial)
      r = serial::weighted_dot(w, a, b);
    else
      r = omp::weighted_dot(w, a, b);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <Backend B>
void BM_laplacian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PeriodicGrid g(GridSpec::torus(3, n));
  Calculus calc(g);
  DiscreteForm f(g, 1);
  for (std::size_t k = 0; k < f.num_components(); ++k) {
    const std::vector<double> v = field(g.size(), 0.5 * k);
    std::copy(v.begin(), v.end(), f.component(k).begin());
  }
  const Backend saved = backend();
  set_backend(B);
  for (auto _ : state) {
    DiscreteForm out = calc.laplacian(f);
    benchmark::DoNotOptimize(out.component(0).data());
  }
  set_backend(saved);
}

}  // namespace

BENCHMARK(BM_derivative<Backend::serial>)->Arg(32)->Arg(64);
BENCHMARK(BM_derivative<Backend::openmp>)->Arg(32)->Arg(64);
BENCHMARK(BM_weighted_dot<Backend::serial>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_weighted_dot<Backend::openmp>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_laplacian<Backend::serial>)->Arg(24)->Arg(48);
BENCHMARK(BM_laplacian<Backend::openmp>)->Arg(24)->Arg(48);

BENCHMARK_MAIN();
