#include <doctest.h>

#include <cmath>
#include <numbers>

#include "phodge/green.hpp"
#include "support.hpp"

using namespace phodge;

namespace {

DiscreteForm coordinate_form(const PeriodicGrid& g, int p, AxisMask m) {
  DiscreteForm f(g, p);
  for (double& v : f[m]) v = 1.0;
  return f;
}

double component_at(const DiscreteForm& f, AxisMask m) { return f[m][0]; }

}  // namespace

TEST_CASE("sign exponents") {
  for (int n = 1; n <= 4; ++n)
    for (int s = 0; s <= n; ++s)
      for (int p = 0; p <= n; ++p) {
        CHECK(sign_D(p, n, s) == (p * (n - p) + s) % 2);
        CHECK(sign_D(p, n, s) == sign_D(n - p, n, s));
        CHECK(sign_C(p, n, s) == (n * p + n + 1 + s) % 2);
        const auto e = sign_exponents(p, n, s);
        CHECK(e.D_of_p == sign_D(p, n, s));
        CHECK(e.C_of_p == sign_C(p, n, s));
      }
}

TEST_CASE("hand star table on the flat 2-torus") {
  PeriodicGrid g(GridSpec::torus(2, 8));
  Calculus calc(g);
  const auto dx = coordinate_form(g, 1, 1u), dy = coordinate_form(g, 1, 2u);
  CHECK(component_at(calc.star(dx), 2u) == doctest::Approx(1.0));
  CHECK(component_at(calc.star(dx), 1u) == 0.0);
  CHECK(component_at(calc.star(dy), 1u) == doctest::Approx(-1.0));
  CHECK(component_at(calc.star(coordinate_form(g, 0, 0u)), 3u) == doctest::Approx(1.0));
  CHECK(component_at(calc.star(coordinate_form(g, 2, 3u)), 0u) == doctest::Approx(1.0));
}

TEST_CASE("hand star table on the Minkowski 4-torus") {
  PeriodicGrid g(GridSpec::torus(4, 4, 1));
  Calculus calc(g);
  auto star2 = [&](AxisMask m) { return calc.star(coordinate_form(g, 2, m)); };
  // *(dt^dx) = -dy^dz, *(dy^dz) = dt^dx, *(dt^dy) = dx^dz, *(dx^dz) = -dt^dy
  CHECK(component_at(star2(0b0011), 0b1100) == doctest::Approx(-1.0));
  CHECK(component_at(star2(0b1100), 0b0011) == doctest::Approx(1.0));
  CHECK(component_at(star2(0b0101), 0b1010) == doctest::Approx(1.0));
  CHECK(component_at(star2(0b1010), 0b0101) == doctest::Approx(-1.0));
  CHECK(component_at(star2(0b1001), 0b0110) == doctest::Approx(-1.0));
  CHECK(component_at(star2(0b0110), 0b1001) == doctest::Approx(1.0));
  // *1 = dt^dx^dy^dz and *dt = -dx^dy^dz
  CHECK(component_at(calc.star(coordinate_form(g, 0, 0u)), 0b1111) == doctest::Approx(1.0));
  CHECK(component_at(calc.star(coordinate_form(g, 1, 1u)), 0b1110) == doctest::Approx(-1.0));
  CHECK(component_at(calc.star(coordinate_form(g, 1, 2u)), 0b1101) == doctest::Approx(-1.0));
}

TEST_CASE("star on the embedded torus") {
  PeriodicGrid g(GridSpec::embedded_torus(16, 2.0, 1.0));
  Calculus calc(g);
  const auto du = coordinate_form(g, 1, 1u);
  const auto s = calc.star(du);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = g.coordinate(1, g.multi_index(i)[1]);
    CHECK(s[2u][i] == doctest::Approx(1.0 / (2.0 + std::cos(v))));
  }
}

TEST_CASE("property: star squares to (-1)^D") {
  testing::Gen gen(1);
  for (int n = 1; n <= 4; ++n)
    for (int s = 0; s <= std::min(n, 2); ++s) {
      PeriodicGrid g(GridSpec::torus(n, n == 4 ? 4 : 8, s));
      Calculus calc(g);
      for (int p = 0; p <= n; ++p) {
        const auto f = testing::trig_form(g, p, gen);
        DiscreteForm ss = calc.star(calc.star(f));
        ss *= (sign_D(p, n, s) ? -1.0 : 1.0);
        CHECK(testing::sup_diff(ss, f) <= 1e-13 * f.max_abs());
      }
    }
  PeriodicGrid g(GridSpec::embedded_torus(16, 3.0, 1.5));
  Calculus calc(g);
  const auto f = testing::trig_form(g, 1, gen);
  DiscreteForm ss = calc.star(calc.star(f));
  ss *= -1.0;
  CHECK(testing::sup_diff(ss, f) <= 1e-13 * f.max_abs());
}

TEST_CASE("property: d and delta are adjoint over 100 random pairs") {
  testing::Gen gen(42);
  PeriodicGrid g2(GridSpec::embedded_torus(16, 2.0, 1.0));
  PeriodicGrid g3(GridSpec::torus(3, 8, 1));
  PeriodicGrid g4(GridSpec::torus(4, 6, 1));
  const PeriodicGrid* grids[] = {&g2, &g3, &g4};
  for (int trial = 0; trial < 100; ++trial) {
    const PeriodicGrid& g = *grids[trial % 3];
    Calculus calc(g);
    const int p = gen.integer(0, g.dim() - 1);
    const auto a = testing::trig_form(g, p, gen);
    const auto b = testing::trig_form(g, p + 1, gen);
    const double lhs = calc.pairing(calc.d(a), b);
    const double rhs = calc.pairing(a, calc.delta(b));
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(lhs)) * calc.volume());
  }
}

TEST_CASE("property: d d = 0 and pairing symmetry") {
  testing::Gen gen(7);
  PeriodicGrid g(GridSpec::torus(4, 6, 1));
  Calculus calc(g);
  for (int p = 0; p <= 2; ++p) {
    const auto f = testing::trig_form(g, p, gen);
    CHECK(calc.d(calc.d(f)).max_abs() <= 1e-11 * f.max_abs());
  }
  for (int p = 2; p <= 4; ++p) {
    const auto f = testing::trig_form(g, p, gen);
    CHECK(calc.delta(calc.delta(f)).max_abs() <= 1e-11 * f.max_abs());
  }
  const auto a = testing::trig_form(g, 2, gen), b = testing::trig_form(g, 2, gen);
  CHECK(calc.pairing(a, b) == calc.pairing(b, a));
}

TEST_CASE("operator domain errors") {
  PeriodicGrid g(GridSpec::torus(2, 8));
  Calculus calc(g);
  CHECK_THROWS_AS(calc.d(DiscreteForm(g, 2)), std::invalid_argument);
  CHECK_THROWS_AS(calc.delta(DiscreteForm(g, 0)), std::invalid_argument);
  CHECK_THROWS_AS(calc.pairing(DiscreteForm(g, 1), DiscreteForm(g, 2)), std::invalid_argument);
}

TEST_CASE("laplacian of plane waves against the analytic symbol") {
  // flat Riemannian: Laplacian(cos(kx + ly)) = (sk^2 + sl^2) cos(...), sk the stencil symbol
  PeriodicGrid g(GridSpec::torus(2, 16));
  Calculus calc(g);
  const Stencil st = Stencil::central(8);
  const int k = 3, l = 2;
  DiscreteForm f(g, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.multi_index(i);
    f.component(0)[i] = std::cos(k * g.coordinate(0, idx[0]) + l * g.coordinate(1, idx[1]));
  }
  const double sk = st.symbol(k * g.step(0), g.step(0)), sl = st.symbol(l * g.step(1), g.step(1));
  const DiscreteForm lf = calc.laplacian(f);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(lf.component(0)[i] == doctest::Approx((sk * sk + sl * sl) * f.component(0)[i]).scale(1.0));
  // Minkowski: the time direction enters with the opposite sign
  PeriodicGrid m(GridSpec::torus(2, 16, 1));
  Calculus mc(m);
  DiscreteForm h(m, 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto idx = m.multi_index(i);
    h.component(0)[i] = std::cos(k * m.coordinate(0, idx[0]) + l * m.coordinate(1, idx[1]));
  }
  const DiscreteForm lh = mc.laplacian(h);
  for (std::size_t i = 0; i < m.size(); ++i)
    CHECK(lh.component(0)[i] == doctest::Approx((-sk * sk + sl * sl) * h.component(0)[i]).scale(1.0));
}

TEST_CASE("volume form") {
  PeriodicGrid g(GridSpec::embedded_torus(32, 2.0, 1.0));
  Calculus calc(g);
  const double area = 4 * std::numbers::pi * std::numbers::pi * 2.0 * 1.0;
  CHECK(calc.volume() == doctest::Approx(area).epsilon(1e-12));
  CHECK(integrate_manifold(calc.unit_form()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(testing::sup_diff(calc.volume_form(), calc.star(coordinate_form(g, 0, 0u))) <= 1e-14);
}

TEST_CASE("green round trip on a flat torus") {
  testing::Gen gen(13);
  PeriodicGrid g(GridSpec::torus(3, 16));
  Calculus calc(g);
  for (int p = 0; p <= 3; ++p) {
    const auto theta = testing::trig_form(g, p, gen);
    const DiscreteForm src = calc.laplacian(theta);
    const GreenResult r = green_solve(calc, src);
    CHECK(r.report.relative_residual <= 1e-10);
    CHECK(testing::sup_diff(calc.laplacian(r.solution), src) <= 1e-9 * src.max_abs());
  }
}

TEST_CASE("green solve of a pure-kernel source returns zero") {
  PeriodicGrid g(GridSpec::torus(2, 16));
  Calculus calc(g);
  const double c[] = {1.0, -2.0};
  const GreenResult r = green_solve(calc, constant_form(g, 1, c));
  CHECK(r.solution.max_abs() <= 1e-14);
  CHECK(r.report.deflated_dims >= 2);
  CHECK(r.report.deflated_fraction == doctest::Approx(1.0));
}

TEST_CASE("green solve on Minkowski with an off-light-cone source") {
  PeriodicGrid g(GridSpec::torus(2, 32, 1));
  Calculus calc(g);
  DiscreteForm src(g, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.multi_index(i);
    const double t = g.coordinate(0, idx[0]), x = g.coordinate(1, idx[1]);
    src.component(0)[i] = std::sin(t + 2 * x) + 0.5 * std::cos(3 * t);
  }
  const GreenResult r = green_solve(calc, src);
  CHECK(r.report.relative_residual <= 1e-10);
  CHECK(testing::sup_diff(calc.laplacian(r.solution), src) <= 1e-9 * src.max_abs());
  // a light-cone mode is kernel: it is deflated and the solution ignores it
  DiscreteForm cone(g, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.multi_index(i);
    cone.component(0)[i] = std::cos(g.coordinate(0, idx[0]) - g.coordinate(1, idx[1]));
  }
  const GreenResult rc = green_solve(calc, cone);
  CHECK(rc.solution.max_abs() <= 1e-12);
  CHECK(rc.report.deflated_fraction == doctest::Approx(1.0));
}

TEST_CASE("green round trip on the embedded torus") {
  testing::Gen gen(17);
  PeriodicGrid g(GridSpec::embedded_torus(64, 2.0, 1.0));
  Calculus calc(g);
  for (int p = 0; p <= 2; ++p) {
    const auto theta = testing::trig_form(g, p, gen);
    const DiscreteForm src = calc.laplacian(theta);
    const GreenResult r = green_solve(calc, src);
    CHECK(r.report.relative_residual <= 1e-10);
    CHECK(testing::sup_diff(calc.laplacian(r.solution), src) <= 1e-8 * src.max_abs());
  }
}

TEST_CASE("green solver reports failure through SolveError") {
  PeriodicGrid g(GridSpec::embedded_torus(32, 2.0, 1.0));
  Calculus calc(g);
  testing::Gen gen(2);
  GreenOptions opts;
  opts.max_iter = 2;
  opts.tol = 1e-14;
  const DiscreteForm src = calc.laplacian(testing::trig_form(g, 1, gen, 3, 3));
  CHECK_THROWS_AS(green_solve(calc, src, opts), SolveError);
}

TEST_CASE("project_out removes kernel directions") {
  PeriodicGrid g(GridSpec::torus(2, 16));
  Calculus calc(g);
  testing::Gen gen(4);
  const auto f = testing::trig_form(g, 1, gen);
  const double c1[] = {1.0, 0.0}, c2[] = {0.0, 1.0};
  const std::vector<DiscreteForm> ker = {constant_form(g, 1, c1), constant_form(g, 1, c2)};
  const DiscreteForm pf = project_out(calc, f, ker);
  for (const auto& k : ker) CHECK(std::abs(calc.pairing(pf, k)) <= 1e-12 * calc.volume());
}
