// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "phodge/decompose.hpp"
#include "phodge/em.hpp"
#include "phodge/taxonomy.hpp"
#include "support.hpp"
#include "taxonomy_draws.hpp"

using namespace phodge;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void bound(double value, double tol, const std::string& what) {
    require(std::isfinite(value) && value <= tol, what + "=" + fmt(value));
  }
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }
};

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double triple_worst(const TripleCheck& c) {
  return std::max({c.product_residual, c.gram_residual, c.constraint_residual, c.duality_residual});
}

Outcome flat_torus2() {
  Outcome o;
  PeriodicGrid g(GridSpec::torus(2, 128));
  Calculus calc(g);
  CohomologySystem sys(calc, {1});
  const MatrixTriple& t = sys.triple(1);
  Eigen::Matrix2d J, I = Eigen::Matrix2d::Identity();
  J << 0, 1, -1, 0;
  o.bound(max_abs(t.E - J), 1e-10, "E");
  o.bound(max_abs(t.T - J), 1e-10, "T");
  o.bound(max_abs(t.Lambda - I), 1e-10, "Lambda");
  o.bound(max_abs(t.T * t.T + I), 1e-10, "TT+I");
  o.bound(max_abs(t.E * t.T.transpose() - I), 1e-10, "ET^T-I");
  o.bound(triple_worst(verify_triple(t, t)), 1e-10, "identities");
  o.require(classify_triple(t.E, t.Lambda, 1, 0) == Group::S2_1_3, "group");
  return o;
}

Outcome embedded_torus2() {
  Outcome o;
  const double R = 2.0, r = 1.0;
  const double mean = testing::simpson([&](double v) { return 1.0 / (R + r * std::cos(v)); }, 0.0,
                                       2 * kPi, 20000) /
                      (2 * kPi);
  const double tau = r * mean;
  PeriodicGrid g(GridSpec::embedded_torus(256, R, r));
  Calculus calc(g);
  CohomologySystem sys(calc, {1});
  const MatrixTriple& t = sys.triple(1);
  o.bound(std::abs(t.T(0, 1) - tau), 1e-5, "tau12");
  o.bound(std::abs(t.T(1, 0) + 1.0 / tau), 1e-5, "tau21");
  o.bound(std::abs(t.T(0, 0)) + std::abs(t.T(1, 1)), 1e-5, "T diagonal");
  Eigen::Matrix2d L;
  L << tau, 0, 0, 1.0 / tau;
  o.bound(max_abs(t.Lambda - L), 1e-5, "Lambda");
  o.bound(triple_worst(verify_triple(t, t)), 1e-5, "identities");
  return o;
}

Outcome decomposition_roundtrip() {
  Outcome o;
  PeriodicGrid g(GridSpec::torus(2, 64));
  Calculus calc(g);
  CohomologySystem sys(calc, {1});
  testing::Gen gen(2024);
  double rec = 0, gauge = 0, cyc = 0;
  for (int k = 0; k < 50; ++k) {
    const DiscreteForm phi = testing::trig_form(g, 1, gen, 3, 3);
    const Decomposition dec = hodge_decompose(sys, phi);
    rec = std::max(rec, dec.reconstruction_error);
    gauge = std::max({gauge, dec.gauge_alpha, dec.gauge_beta});
    if (dec.exact_part) cyc = std::max(cyc, max_abs(sys.cycle_integrals(*dec.exact_part)));
    if (dec.coexact_part) cyc = std::max(cyc, max_abs(sys.class_coefficients(*dec.coexact_part)));
  }
  o.bound(rec, 1e-8, "reconstruction");
  o.bound(gauge, 1e-8, "gauge");
  o.bound(cyc, 1e-10, "cycle integrals");
  return o;
}

Outcome quantized_norm() {
  Outcome o;
  PeriodicGrid g(GridSpec::torus(2, 64));
  Calculus calc(g);
  CohomologySystem sys(calc, {1});
  const MatrixTriple& t = sys.triple(1);
  Eigen::VectorXd u(2);
  u << 3.0, 4.0;
  const DiscreteForm phi = sys.harmonic_part(1, u);
  const Decomposition dec = hodge_decompose(sys, phi);
  const NormBreakdown nb = norm_decompose(calc, phi, dec, dual_decompose(sys, phi), t.E, t.P);
  o.bound(std::abs(nb.topological_term - 25.0), 1e-10, "topological");
  o.bound(std::abs(nb.direct_norm - 25.0), 1e-10, "direct");
  testing::Gen gen(77);
  double budget = 0;
  for (int k = 0; k < 50; ++k) {
    Eigen::VectorXd c(2);
    c << gen.uniform(-3, 3), gen.uniform(-3, 3);
    DiscreteForm f = sys.harmonic_part(1, c);
    f += testing::trig_form(g, 1, gen, 3, 3);
    const Decomposition d = hodge_decompose(sys, f);
    const NormBreakdown b = norm_decompose(calc, f, d, dual_decompose(sys, f), t.E, t.P);
    budget = std::max(budget, b.budget_error());
  }
  o.bound(budget, 1e-8, "budget");
  return o;
}

Outcome identity_battery() {
  Outcome o;
  auto run = [&](const GridSpec& spec, std::vector<int> degrees, double tol, const std::string& tag) {
    PeriodicGrid g(spec);
    Calculus calc(g);
    CohomologySystem sys(calc);
    for (int p : degrees)
      o.bound(triple_worst(verify_triple(sys.triple(p), sys.triple(g.dim() - p))), tol,
              tag + " p=" + std::to_string(p));
  };
  run(GridSpec::torus(2, 32), {1}, 1e-10, "T2");
  run(GridSpec::embedded_torus(256, 2.0, 1.0), {1}, 1e-5, "embedded T2");
  run(GridSpec::torus(3, 8), {1}, 1e-10, "T3");
  run(GridSpec::torus(4, 6), {1, 2}, 1e-10, "T4");
  run(GridSpec::torus(4, 6, 1), {1, 2}, 1e-10, "Minkowski T4");
  return o;
}

Outcome taxonomy_conformance() {
  Outcome o;
  testing::Gen gen(6);
  const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
  double worst = 0;
  int solved = 0;
  for (int m : {1, 2})
    for (int s : {0, 1})
      for (Group grp : admissible_groups(m, s))
        for (int k = 0; k < 100; ++k) {
          const TaxonomySolution sol = solve_group(grp, m, s, testing::random_params(grp, s, gen));
          const double sD = sol.D_parity ? -1.0 : 1.0;
          const double sc = std::max({1.0, max_abs(sol.E), max_abs(sol.Lambda)});
          const double r = std::max({max_abs(sol.T * sol.T - sD * I),
                                     max_abs(sol.E * sol.T.transpose() - sol.Lambda),
                                     max_abs(sol.Lambda * sol.E.inverse() * sol.Lambda - sD * sol.E)});
          worst = std::max({worst, r / (sc * sc), sol.constraints_residual});
          const std::vector<int> dets = expected_det(grp, s);
          bool det_ok = false;
          for (int d : dets) det_ok |= std::abs(sol.T.determinant() - d) <= 1e-12;
          o.require(det_ok && sol.det_matches_table,
                    std::string("det T ") + group_label(grp));
          ++solved;
        }
  o.bound(worst, 1e-12, "identities");
  o.require(solved == 800, "draw count");
  auto rejects = [](Group grp, int m, int s) {
    try {
      solve_group(grp, m, s, {});
    } catch (const std::invalid_argument&) {
      return true;
    }
    return false;
  };
  o.require(rejects(Group::S2_2_1, 2, 1), "S2.2.1 odd s accepted");
  o.require(rejects(Group::S2_1_2, 2, 1), "S2.1.2 odd s accepted");
  o.require(rejects(Group::S2_1_3, 2, 0), "S2.1.3 even m accepted");
  o.require(rejects(Group::S2_1_1, 1, 0), "S2.1.1 odd m accepted");
  return o;
}

Outcome em_demo() {
  Outcome o;
  PeriodicGrid g(GridSpec::torus(4, 12, 1));
  Calculus calc(g);
  CohomologySystem sys(calc, {2});
  const EmUnits u{1.0, 1.0};
  const auto masks = degree_masks(4, 2);
  auto slot = [&](const char* label) {
    for (std::size_t a = 0; a < masks.size(); ++a)
      if (mask_label(masks[a]) == label) return static_cast<int>(a);
    return -1;
  };
  Eigen::VectorXd e01 = Eigen::VectorXd::Zero(6), e23 = Eigen::VectorXd::Zero(6);
  e01(slot("01")) = 1.0;
  e23(slot("23")) = 1.0;
  const int beta = sys.basis(2).betti;
  o.require(beta == 6, "beta2=" + std::to_string(beta));
  o.require(beta % 2 == 0 && reality_rule(beta, sign_D(2, 4, 1)) == Field::real, "reality rule");

  const MatrixTriple& t = sys.triple(2);
  const DiscreteForm F = em_preset_field(sys, EmPreset::topological, e01, u);
  const ChargeSet q = charges(sys, F, u);
  o.bound(max_abs(q.qM - e01), 1e-8, "qM");
  o.bound(max_abs(q.qE + e23), 1e-8, "qE");
  const ChargeRelations cr = charge_relations(q.qM, q.qE, t.T);
  o.bound(cr.quadrature, 1e-8, "quadrature");
  const Currents J = currents(calc, F, u);
  const Potentials p = potentials(sys, F, u);
  const ActionBreakdown a = action(calc, F, p.AE, p.AM, J.JE, J.JM, q, t.E, t.P, u);
  o.bound(std::abs(a.quantized_term - u.mu0 * u.c), 1e-7, "S_d");
  const MaxwellResiduals mx = maxwell_residuals(calc, F, J, u);
  o.bound(std::max(mx.electric, mx.magnetic), 1e-7, "Maxwell");
  return o;
}

Outcome monopole_dipole_identity() {
  Outcome o;
  testing::Gen gen(211);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const double eps = gen.uniform(0.5, 3) * (gen.integer(0, 1) ? 1 : -1);
    const double l1 = gen.uniform(0.2, 4) * (gen.integer(0, 1) ? 1 : -1);
    const double l2 = -eps * eps / l1;
    const Eigen::Vector2d qE(gen.uniform(-5, 5), gen.uniform(-5, 5));
    const Eigen::Vector2d qM = s211_magnetic_charges(qE, l1, l2, eps);
    const double mM = qM(0) + qM(1), dM = qM(0) - qM(1), mE = qE(0) + qE(1), dE = qE(0) - qE(1);
    const double direct = mM * mM - dM * dM + mE * mE - dE * dE;
    const MonopoleDipole md = monopole_dipole(qM, qE);
    worst = std::max({worst, std::abs(md.residual), std::abs(direct)});
  }
  o.bound(worst, 1e-12, "residual");
  return o;
}

Outcome lambda_arithmetic() {
  Outcome o;
  const double h = 6.62607015e-34, e = 1.602176634e-19, mu0 = 1.25663706212e-6, c = 2.99792458e8;
  const double direct = h / (mu0 * c * e * e);
  const double got = lambda_scale(h, e, mu0, c);
  o.bound(std::abs(got - direct) / direct, 1e-12, "vs direct");
  o.bound(std::abs(got - 68.518) / 68.518, 1e-3, "vs 68.518");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"flat 2-torus matrices and group S2.1.3", 5, flat_torus2},
      {"embedded torus matrices vs quadrature oracle", 30, embedded_torus2},
      {"Hodge decomposition round trip (50 forms)", 60, decomposition_roundtrip},
      {"quantized norm and budget", 0, quantized_norm},
      {"matrix identity battery", 0, identity_battery},
      {"taxonomy conformance", 5, taxonomy_conformance},
      {"EM on Minkowski 4-torus", 120, em_demo},
      {"monopole-dipole identity", 0, monopole_dipole_identity},
      {"lambda scale arithmetic", 0, lambda_arithmetic},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.require(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s)
      o.require(false, "runtime " + Outcome::fmt(secs) + " s over " + Outcome::fmt(c.budget_s) + " s");
    if (!o.pass) ++failures;
    std::printf("%s [%zu] %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
