#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "phodge/calculus.hpp"
#include "support.hpp"

using namespace phodge;

namespace {

double derivative_error(int order, int n) {
  GridSpec spec = GridSpec::torus(1, n);
  PeriodicGrid g(spec);
  std::vector<double> f(n), df(n, 0.0);
  for (int i = 0; i < n; ++i) f[i] = std::exp(std::sin(g.coordinate(0, i)));
  serial::add_derivative(g.shape(), 0, Stencil::central(order), 1.0 / g.step(0), f, df);
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = g.coordinate(0, i);
    err = std::max(err, std::abs(df[i] - std::cos(x) * std::exp(std::sin(x))));
  }
  return err;
}

struct BackendGuard {
  Backend saved = backend();
  ~BackendGuard() { set_backend(saved); }
};

}  // namespace

TEST_CASE("stencil convergence order") {
  for (int order : {2, 4, 6, 8}) {
    const double e1 = derivative_error(order, 32);
    const double e2 = derivative_error(order, 64);
    const double rate = std::log2(e1 / e2);
    CAPTURE(order);
    CAPTURE(rate);
    CHECK(rate > order - 0.6);
  }
  CHECK_THROWS_AS(Stencil::central(3), std::invalid_argument);
}

TEST_CASE("stencil symbol matches the action on plane waves") {
  const int n = 32;
  PeriodicGrid g(GridSpec::torus(1, n));
  const Stencil st = Stencil::central(8);
  for (int k = 0; k < n / 2; ++k) {
    std::vector<double> f(n), df(n, 0.0);
    for (int i = 0; i < n; ++i) f[i] = std::sin(k * g.coordinate(0, i));
    serial::add_derivative(g.shape(), 0, st, 1.0 / g.step(0), f, df);
    const double sigma = st.symbol(k * g.step(0), g.step(0));
    for (int i = 0; i < n; ++i)
      CHECK(df[i] == doctest::Approx(sigma * std::cos(k * g.coordinate(0, i))).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("serial and openmp kernels agree bitwise") {
  testing::Gen gen(3);
  PeriodicGrid g(GridSpec::torus(3, 24));
  const std::size_t N = g.size();
  std::vector<double> a(N), b(N), w(N);
  for (std::size_t i = 0; i < N; ++i) {
    a[i] = gen.uniform(-1, 1);
    b[i] = gen.uniform(-1, 1);
    w[i] = gen.uniform(0.5, 2);
  }
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> s(N, 0.5), o(N, 0.5);
    serial::add_derivative(g.shape(), axis, Stencil::central(8), 0.7, a, s);
    omp::add_derivative(g.shape(), axis, Stencil::central(8), 0.7, a, o);
    CHECK(s == o);
  }
  CHECK(serial::dot(a, b) == omp::dot(a, b));
  CHECK(serial::weighted_dot(w, a, b) == omp::weighted_dot(w, a, b));
  CHECK(serial::sum(a) == omp::sum(a));
  CHECK(serial::max_abs(a) == omp::max_abs(a));
  std::vector<double> s1(N), o1(N);
  serial::scale_pointwise(w, 1.5, a, s1);
  omp::scale_pointwise(w, 1.5, a, o1);
  CHECK(s1 == o1);
  std::vector<double> s2 = b, o2 = b;
  serial::axpy(0.3, a, s2);
  omp::axpy(0.3, a, o2);
  CHECK(s2 == o2);
}

TEST_CASE("library operators are backend independent") {
  BackendGuard guard;
  testing::Gen gen(21);
  PeriodicGrid g(GridSpec::embedded_torus(32, 2.0, 1.0));
  Calculus calc(g);
  const auto f = testing::trig_form(g, 1, gen);
  set_backend(Backend::serial);
  const DiscreteForm ls = calc.laplacian(f);
  const double ps = calc.pairing(f, ls);
  set_backend(Backend::openmp);
  const DiscreteForm lo = calc.laplacian(f);
  const double po = calc.pairing(f, lo);
  CHECK(testing::sup_diff(ls, lo) == 0.0);
  CHECK(ps == po);
}

TEST_CASE("reductions are exact on integer data") {
  std::vector<double> a(10000);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<double>(i % 7) - 3.0;
  double expect = 0.0;
  for (double v : a) expect += v;
  CHECK(serial::sum(a) == expect);
  CHECK(omp::sum(a) == expect);
  CHECK(serial::max_abs(a) == 3.0);
}
