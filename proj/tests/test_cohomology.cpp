#include <doctest.h>

#include <cmath>
#include <numbers>

#include "phodge/cohomology.hpp"
#include "support.hpp"

using namespace phodge;

namespace {

constexpr double kPi = std::numbers::pi;

/// (1/2pi) * integral over [0, 2pi] of dv / (R + r cos v), by Simpson.
double mean_inverse(double R, double r) {
  return testing::simpson([&](double v) { return 1.0 / (R + r * std::cos(v)); }, 0.0, 2 * kPi,
                          20000) /
         (2 * kPi);
}

}  // namespace

TEST_CASE("quadrature oracle agrees with the closed form") {
  CHECK(mean_inverse(2.0, 1.0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(mean_inverse(5.0, 3.0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("flat 2-torus matrices") {
  PeriodicGrid g(GridSpec::torus(2, 32));
  Calculus calc(g);
  CohomologySystem sys(calc);
  const CohomologyBasis& b = sys.basis(1);
  CHECK(b.betti == 2);
  CHECK(b.normalization_residual <= 1e-12);
  CHECK(b.coclosure_residual <= 1e-12);
  const MatrixTriple& t = sys.triple(1);
  Eigen::Matrix2d J;
  J << 0, 1, -1, 0;
  CHECK((t.E - J).norm() <= 1e-12);
  CHECK((t.T - J).norm() <= 1e-12);
  CHECK((t.Lambda - Eigen::Matrix2d::Identity()).norm() <= 1e-12);
  CHECK(t.P == std::vector<int>{1, 0});
  const TripleCheck chk = verify_triple(t, t);
  CHECK(chk.max_identity_residual() <= 1e-12);
  CHECK(chk.det_T == doctest::Approx(1.0));
  CHECK(chk.real_admissible);
  // degree 0 and 2 are one-dimensional
  CHECK(sys.basis(0).betti == 1);
  CHECK(sys.basis(2).betti == 1);
  CHECK(sys.triple(0).E(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("embedded torus matrices against the quadrature oracle") {
  const double R = 2.0, r = 1.0;
  PeriodicGrid g(GridSpec::embedded_torus(128, R, r));
  Calculus calc(g);
  CohomologySystem sys(calc, {1});
  const MatrixTriple& t = sys.triple(1);
  const double tau = r * mean_inverse(R, r);
  CHECK(t.T(0, 1) == doctest::Approx(tau).epsilon(1e-8));
  CHECK(t.T(1, 0) == doctest::Approx(-1.0 / tau).epsilon(1e-8));
  CHECK(std::abs(t.T(0, 0)) <= 1e-8);
  CHECK(t.Lambda(0, 0) == doctest::Approx(tau).epsilon(1e-8));
  CHECK(t.Lambda(1, 1) == doctest::Approx(1.0 / tau).epsilon(1e-8));
  CHECK(std::abs(t.Lambda(0, 1)) <= 1e-8);
  CHECK(verify_triple(t, t).max_identity_residual() <= 1e-8);
  const CohomologyBasis& b = sys.basis(1);
  CHECK(b.coclosure_residual <= 1e-10);
  CHECK(b.closure_residual <= 1e-12);
  CHECK(b.projection_sweeps >= 1);
  // the harmonic representative of [dv] is proportional to dv / (R + r cos v)
  const DiscreteForm& g2 = b.gammas[1];
  for (std::size_t i = 0; i < g.size(); i += 37) {
    const double v = g.coordinate(1, g.multi_index(i)[1]);
    CHECK(g2[2u][i] == doctest::Approx(std::sqrt(R * R - r * r) / (2 * kPi * (R + r * std::cos(v))))
                           .epsilon(1e-8));
    CHECK(std::abs(g2[1u][i]) <= 1e-10);
  }
}

TEST_CASE("other radii follow r / sqrt(R^2 - r^2)") {
  PeriodicGrid g(GridSpec::embedded_torus(128, 5.0, 3.0));
  Calculus calc(g);
  CohomologySystem sys(calc, {1});
  CHECK(sys.triple(1).T(0, 1) == doctest::Approx(3.0 * mean_inverse(5.0, 3.0)).epsilon(1e-7));
}

TEST_CASE("identity battery on higher tori") {
  for (int n : {3, 4})
    for (int s = 0; s <= 1; ++s) {
      PeriodicGrid g(GridSpec::torus(n, 6, s));
      Calculus calc(g);
      CohomologySystem sys(calc);
      for (int p = 0; p <= n; ++p) {
        CAPTURE(n);
        CAPTURE(s);
        CAPTURE(p);
        CHECK(sys.basis(p).betti == static_cast<int>(binomial(n, p)));
        const TripleCheck chk = verify_triple(sys.triple(p), sys.triple(n - p));
        const double tol = 1e-12 * (1.0 + sys.triple(p).Lambda.cwiseAbs().maxCoeff() +
                                    sys.triple(n - p).Lambda.cwiseAbs().maxCoeff());
        CHECK(chk.product_residual <= tol);
        CHECK(chk.gram_residual <= tol);
        CHECK(chk.constraint_residual <= tol);
        CHECK(chk.duality_residual <= tol);
        CHECK(chk.lambda_symmetry <= tol);
        CHECK(expansion_residual(calc, sys.basis(p), sys.basis(n - p), sys.triple(p).T) <= 1e-12);
      }
    }
}

TEST_CASE("Minkowski 4-torus degree-2 matrices") {
  PeriodicGrid g(GridSpec::torus(4, 4, 1));
  Calculus calc(g);
  CohomologySystem sys(calc, {2});
  const MatrixTriple& t = sys.triple(2);
  const auto& masks = sys.basis(2).masks;
  auto at = [&](const char* label) {
    for (std::size_t a = 0; a < masks.size(); ++a)
      if (mask_label(masks[a]) == label) return static_cast<int>(a);
    return -1;
  };
  const int i01 = at("01"), i23 = at("23"), i12 = at("12");
  CHECK(t.E(i01, i23) == doctest::Approx(1.0));
  CHECK(t.T(i01, i23) == doctest::Approx(-1.0));
  CHECK(t.Lambda(i01, i01) == doctest::Approx(-1.0));
  CHECK(t.Lambda(i12, i12) == doctest::Approx(1.0));
  const TripleCheck chk = verify_triple(t, t);
  CHECK(chk.D_parity == 1);
  CHECK(chk.real_admissible);
  CHECK(chk.max_identity_residual() <= 1e-12);
  CHECK((t.E - t.E.transpose()).norm() <= 1e-14);
}

TEST_CASE("class coefficients annihilate exact forms and read harmonic ones") {
  testing::Gen gen(8);
  PeriodicGrid g(GridSpec::embedded_torus(64, 2.0, 1.0));
  Calculus calc(g);
  CohomologySystem sys(calc, {1});
  Eigen::Vector2d u(1.5, -0.5);
  DiscreteForm phi = sys.harmonic_part(1, u);
  phi += calc.d(testing::trig_form(g, 0, gen));
  const Eigen::VectorXd got = sys.class_coefficients(phi);
  CHECK((got - u).norm() <= 1e-10);
  CHECK((sys.cycle_integrals(phi) - u).norm() <= 1e-10);
}

TEST_CASE("verify_triple rejects singular E") {
  Eigen::Matrix2d E = Eigen::Matrix2d::Zero(), T = Eigen::Matrix2d::Identity();
  CHECK_THROWS(verify_triple(E, T, T, 1));
}

TEST_CASE("matrix json is row-major") {
  Eigen::Matrix2d m;
  m << 1, 2, 3, 4;
  CHECK(matrix_json(m).dump() == "[[1.0,2.0],[3.0,4.0]]");
}
