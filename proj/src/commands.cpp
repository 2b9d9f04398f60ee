#include "phodge/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phodge/samples.hpp"
#include "phodge/taxonomy.hpp"

namespace phodge {

namespace {

int pick(int v, int fallback) { return v > 0 ? v : fallback; }

GreenOptions green_for(const CommandOptions& o) {
  GreenOptions g = decomposition_green_options();
  if (o.tol > 0.0) g.tol = o.tol;
  return g;
}

bool embedded_metric(const std::string& metric) {
  if (metric == "flat") return false;
  if (metric == "embedded-torus" || metric == "embedded") return true;
  throw UsageError("unknown metric '" + metric + "' (flat, embedded-torus)");
}

std::string idx(const std::string& tag, int p, const std::string& what) {
  return tag + ".p" + std::to_string(p) + "." + what;
}

/// sum over components of |(f_I, f_I)|, a positive norm squared for any signature.
double abs_norm2(const Calculus& calc, const DiscreteForm& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.num_components(); ++k)
    s += std::abs(kern::weighted_dot(calc.pairing_weight(f.mask(k)), f.component(k), f.component(k)));
  return s;
}

double rel_pair(const Calculus& calc, double value, const DiscreteForm& a, const DiscreteForm& b) {
  const double scale = std::sqrt(abs_norm2(calc, a) * abs_norm2(calc, b));
  return scale > 0.0 ? std::abs(value) / scale : std::abs(value);
}

double sup_rel(const DiscreteForm& diff, double scale) {
  return diff.max_abs() / std::max(scale, 1e-300);
}

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

/// Quadrature oracle: (1/2pi) integral over v of 1/(R + r cos v), midpoint rule.
double mean_inverse_radius(double R, double r) {
  const int n = 1 << 14;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = 2.0 * std::numbers::pi * (i + 0.5) / n;
    s += 1.0 / (R + r * std::cos(v));
  }
  return s / n;
}

// ---------------------------------------------------------------- cohomology

void cohomology_case(Report& rep, const std::string& tag, const CohomologySystem& sys,
                     double identity_tol, double harmonic_tol) {
  const Calculus& calc = sys.calculus();
  const int n = calc.dim();
  for (int p = 1; 2 * p <= n; ++p) {
    const CohomologyBasis& b = sys.basis(p);
    const MatrixTriple& tp = sys.triple(p);
    const MatrixTriple& tq = sys.triple(n - p);
    const TripleCheck chk = verify_triple(tp, tq);
    rep.require(idx(tag, p, "betti"), b.betti == static_cast<int>(binomial(n, p)));
    rep.check(idx(tag, p, "normalization"), b.normalization_residual, 1e-10);
    rep.check(idx(tag, p, "closure"), b.closure_residual, harmonic_tol);
    rep.check(idx(tag, p, "coclosure"), b.coclosure_residual, harmonic_tol);
    rep.check(idx(tag, p, "star_expansion"),
              expansion_residual(calc, b, sys.basis(n - p), tp.T), harmonic_tol);
    rep.check(idx(tag, p, "T_product"), chk.product_residual, identity_tol);
    rep.check(idx(tag, p, "E_Tt_Lambda"), chk.gram_residual, identity_tol);
    rep.check(idx(tag, p, "Lambda_constraint"), chk.constraint_residual, identity_tol);
    rep.check(idx(tag, p, "E_duality"), chk.duality_residual, identity_tol);
    rep.check(idx(tag, p, "Lambda_symmetry"), chk.lambda_symmetry, identity_tol);
    if (2 * p == n) {
      rep.check(idx(tag, p, "reality"), chk.reality_residual, identity_tol);
      rep.require(idx(tag, p, "reality_rule"),
                  chk.real_admissible ==
                      (reality_rule(b.betti, chk.D_parity) == Field::real));
    }
    rep.matrix(idx(tag, p, "E"), tp.E);
    rep.matrix(idx(tag, p, "T"), tp.T);
    rep.matrix(idx(tag, p, "Lambda"), tp.Lambda);
    rep.permutation(idx(tag, p, "P"), tp.P);
    rep.results()[tag]["p" + std::to_string(p)] = {{"betti", b.betti},
                                                   {"D_parity", chk.D_parity},
                                                   {"det_T", chk.det_T},
                                                   {"projection_sweeps", b.projection_sweeps}};
  }
}

struct EmbeddedOracle {
  double tau12, tau21, lambda11, lambda22;
};

EmbeddedOracle embedded_oracle(double R, double r) {
  const double tau = r * mean_inverse_radius(R, r);
  return {tau, -1.0 / tau, tau, 1.0 / tau};
}

void embedded_checks(Report& rep, const std::string& tag, const MatrixTriple& t, double R,
                     double r) {
  const EmbeddedOracle o = embedded_oracle(R, r);
  rep.check(tag + ".tau12", std::abs(t.T(0, 1) - o.tau12), 1e-5);
  rep.check(tag + ".tau21", std::abs(t.T(1, 0) - o.tau21), 1e-5);
  rep.check(tag + ".tau_diagonal", std::max(std::abs(t.T(0, 0)), std::abs(t.T(1, 1))), 1e-5);
  rep.check(tag + ".Lambda11", std::abs(t.Lambda(0, 0) - o.lambda11), 1e-5);
  rep.check(tag + ".Lambda22", std::abs(t.Lambda(1, 1) - o.lambda22), 1e-5);
  rep.check(tag + ".Lambda12", std::abs(t.Lambda(0, 1)), 1e-5);
  rep.results()[tag]["oracle"] = {{"tau12", o.tau12},
                                  {"tau21", o.tau21},
                                  {"Lambda11", o.lambda11},
                                  {"Lambda22", o.lambda22}};
  rep.results()[tag]["computed"] = {{"tau12", t.T(0, 1)},
                                    {"tau21", t.T(1, 0)},
                                    {"Lambda11", t.Lambda(0, 0)},
                                    {"Lambda22", t.Lambda(1, 1)}};
}

// ---------------------------------------------------------------- core

struct CoreStats {
  double star_star = 0, dd = 0, dtdt = 0, adjoint = 0, laplacian_symmetry = 0, pairing_symmetry = 0,
         wedge = 0, stokes = 0, offset = 0;
};

void core_case(Report& rep, const std::string& tag, const Calculus& calc, SampleRng& rng,
               int samples) {
  const PeriodicGrid& g = calc.grid();
  const int n = calc.dim();
  const int s = calc.negatives();
  CoreStats st;
  for (int k = 0; k < samples; ++k) {
    for (int p = 0; p <= n; ++p) {
      const DiscreteForm f = random_trig_form(g, p, rng);
      const double fs = f.max_abs();
      DiscreteForm ss = calc.star(calc.star(f));
      ss.add_scaled(-parity_sign(sign_D(p, n, s)), f);
      st.star_star = std::max(st.star_star, sup_rel(ss, fs));

      const DiscreteForm h = random_trig_form(g, p, rng);
      const double ab = calc.pairing(f, h), ba = calc.pairing(h, f);
      st.pairing_symmetry = std::max(st.pairing_symmetry, rel_pair(calc, ab - ba, f, h));

      if (p + 2 <= n) st.dd = std::max(st.dd, sup_rel(calc.d(calc.d(f)), fs));
      if (p >= 2) st.dtdt = std::max(st.dtdt, sup_rel(calc.delta(calc.delta(f)), fs));
      if (p < n) {
        const DiscreteForm b = random_trig_form(g, p + 1, rng);
        const DiscreteForm df = calc.d(f);
        const double lhs = calc.pairing(df, b);
        const double rhs = calc.pairing(f, calc.delta(b));
        st.adjoint = std::max(st.adjoint, rel_pair(calc, lhs - rhs, df, b));
      }
      const DiscreteForm lf = calc.laplacian(f), lh = calc.laplacian(h);
      st.laplacian_symmetry = std::max(
          st.laplacian_symmetry, rel_pair(calc, calc.pairing(lf, h) - calc.pairing(f, lh), lf, h));
      for (int q = 0; p + q <= n; ++q) {
        const DiscreteForm b = random_trig_form(g, q, rng);
        DiscreteForm diff = wedge(f, b);
        diff.add_scaled(-parity_sign(p * q), wedge(b, f));
        st.wedge = std::max(st.wedge, sup_rel(diff, fs * b.max_abs()));
      }
    }
    const DiscreteForm theta = random_trig_form(g, n - 1, rng);
    const double total = integrate_manifold(calc.d(theta));
    const double scale = theta.max_abs() * calc.volume();
    st.stokes = std::max(st.stokes, std::abs(total) / std::max(scale, 1e-300));

    // closed 1-form: constant part plus an exact part, integrated on shifted loops
    std::vector<double> coeff(n);
    for (double& c : coeff) c = rng.uniform(-1.0, 1.0);
    DiscreteForm closed = constant_form(g, 1, coeff);
    closed += calc.d(random_trig_form(g, 0, rng));
    for (int a = 0; a < n; ++a) {
      CycleSpec z0{{a}, std::vector<int>(n, 0)};
      CycleSpec z1{{a}, std::vector<int>(n, 0)};
      for (int b = 0; b < n; ++b) z1.offset[b] = rng.integer(0, g.points(b) - 1);
      const double i0 = integrate_cycle(closed, z0), i1 = integrate_cycle(closed, z1);
      st.offset = std::max(st.offset, std::abs(i0 - i1) / std::max(1.0, std::abs(i0)));
    }
  }
  rep.check(tag + ".star_star", st.star_star, 1e-12);
  rep.check(tag + ".pairing_symmetry", st.pairing_symmetry, 1e-14);
  rep.check(tag + ".dd", st.dd, 1e-10);
  rep.check(tag + ".delta_delta", st.dtdt, 1e-10);
  rep.check(tag + ".adjointness", st.adjoint, 1e-11);
  rep.check(tag + ".laplacian_symmetry", st.laplacian_symmetry, 1e-11);
  rep.check(tag + ".wedge_graded", st.wedge, 1e-13);
  rep.check(tag + ".stokes", st.stokes, 1e-12);
  rep.check(tag + ".cycle_offset", st.offset, 1e-10);
}

// ---------------------------------------------------------------- decomposition

struct DecompStats {
  double reconstruction = 0, gauge = 0, class_exact = 0, class_coexact = 0, orthogonality = 0,
         budget = 0, forward = 0, reciprocal = 0, quadrature = 0, compact = 0, residue_class = 0,
         middle_sign = 0;
  int count = 0;

  void merge(const DecompStats& o) {
    reconstruction = std::max(reconstruction, o.reconstruction);
    gauge = std::max(gauge, o.gauge);
    class_exact = std::max(class_exact, o.class_exact);
    class_coexact = std::max(class_coexact, o.class_coexact);
    orthogonality = std::max(orthogonality, o.orthogonality);
    budget = std::max(budget, o.budget);
    forward = std::max(forward, o.forward);
    reciprocal = std::max(reciprocal, o.reciprocal);
    quadrature = std::max(quadrature, o.quadrature);
    compact = std::max(compact, o.compact);
    residue_class = std::max(residue_class, o.residue_class);
    middle_sign = std::max(middle_sign, o.middle_sign);
    count += o.count;
  }
};

nlohmann::json decomposition_json(const Decomposition& d, const Eigen::VectorXd& v,
                                  const NormBreakdown& nb, const CrossRelation& cr) {
  nlohmann::json j;
  j["degree"] = d.degree;
  j["u"] = vector_json(d.u);
  j["u_cycle"] = vector_json(d.u_cycle);
  j["v"] = vector_json(v);
  j["reconstruction_error"] = d.reconstruction_error;
  j["gauge_alpha"] = d.gauge_alpha;
  j["gauge_beta"] = d.gauge_beta;
  j["residue_sup"] = d.residue ? d.residue->max_abs() : 0.0;
  j["residue_closure"] = d.residue_closure;
  j["residue_coclosure"] = d.residue_coclosure;
  j["residue_class"] = d.residue_class;
  j["alpha_report"] = d.alpha_report;
  j["beta_report"] = d.beta_report;
  j["norm"] = {{"exact_term", nb.exact_term},
               {"coexact_term", nb.coexact_term},
               {"coexact_standard", nb.coexact_standard},
               {"middle_variant", nb.middle_variant},
               {"topological_term", nb.topological_term},
               {"residue_term", nb.residue_term},
               {"total", nb.total},
               {"direct_norm", nb.direct_norm},
               {"budget_error", nb.budget_error()}};
  j["cross_relation"] = {{"forward", cr.forward}, {"reciprocal", cr.reciprocal}};
  if (cr.quadrature) j["cross_relation"]["quadrature"] = *cr.quadrature;
  return j;
}

DecompStats decompose_one(const CohomologySystem& sys, const DiscreteForm& phi,
                          const GreenOptions& green, nlohmann::json* detail) {
  const Calculus& calc = sys.calculus();
  const int n = calc.dim(), p = phi.degree(), s = calc.negatives();
  const double scale = phi.max_abs();
  const Decomposition dec = hodge_decompose(sys, phi, green);
  const Eigen::VectorXd v = dual_decompose(sys, phi);
  const MatrixTriple& tp = sys.triple(p);
  const MatrixTriple& tq = sys.triple(n - p);
  const bool middle = 2 * p == n;
  const CrossRelation cr = cross_relation_check(dec.u, v, tp.T, tq.T, sign_D(p, n, s), middle);
  const NormBreakdown nb = norm_decompose(calc, phi, dec, v, tp.E, tp.P);

  DecompStats st;
  st.count = 1;
  st.reconstruction = dec.reconstruction_error;
  st.gauge = std::max(dec.gauge_alpha, dec.gauge_beta);
  st.residue_class = dec.residue_class;
  st.budget = nb.budget_error();
  st.forward = cr.forward;
  st.reciprocal = cr.reciprocal;
  st.quadrature = cr.quadrature.value_or(0.0);

  std::vector<const DiscreteForm*> parts;
  if (dec.exact_part) {
    st.class_exact = max_abs(sys.class_coefficients(*dec.exact_part));
    parts.push_back(&*dec.exact_part);
  }
  if (dec.coexact_part) {
    st.class_coexact = max_abs(sys.class_coefficients(*dec.coexact_part));
    parts.push_back(&*dec.coexact_part);
  }
  const CohomologyBasis& b = sys.basis(p);
  for (const DiscreteForm& gmm : b.gammas) parts.push_back(&gmm);
  const std::size_t first_gamma = parts.size() - b.gammas.size();
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (i >= first_gamma) break;
      st.orthogonality = std::max(
          st.orthogonality, rel_pair(calc, calc.pairing(*parts[i], *parts[j]), *parts[i], *parts[j]));
    }

  if (middle && dec.alpha && dec.beta) {
    const DiscreteForm bp = compact_potential(calc, *dec.beta);
    const CompactPair pair = compact_assemble(sys, *dec.alpha, bp, dec.u, v);
    const DiscreteForm smooth = phi - *dec.residue;
    st.compact = std::max({pair.star_residual, sup_rel(pair.first - smooth, scale),
                           sup_rel(pair.second - calc.star(smooth), scale)});
    st.middle_sign = std::abs(nb.coexact_term - nb.coexact_standard) /
                     std::max(1.0, std::abs(nb.coexact_standard));
  }
  if (detail) *detail = decomposition_json(dec, v, nb, cr);
  return st;
}

void decomposition_checks(Report& rep, const std::string& tag, const DecompStats& st,
                          bool middle) {
  rep.check(tag + ".reconstruction", st.reconstruction, 1e-8);
  rep.check(tag + ".gauge", st.gauge, 1e-8);
  rep.check(tag + ".class_of_exact", st.class_exact, 1e-10);
  rep.check(tag + ".class_of_coexact", st.class_coexact, 1e-10);
  rep.check(tag + ".residue_class", st.residue_class, 1e-8);
  rep.check(tag + ".orthogonality", st.orthogonality, 1e-8);
  rep.check(tag + ".norm_budget", st.budget, 1e-8);
  rep.check(tag + ".cross_forward", st.forward, 1e-8);
  rep.check(tag + ".cross_reciprocal", st.reciprocal, 1e-8);
  if (middle) {
    rep.check(tag + ".quadrature", st.quadrature, 1e-8);
    rep.check(tag + ".compact_form", st.compact, 1e-8);
    rep.check(tag + ".middle_coexact_term", st.middle_sign, 1e-8);
  }
  rep.results()[tag + ".samples"] = st.count;
}

DecompStats random_batch(const CohomologySystem& sys, int degree, int count, SampleRng& rng,
                         const GreenOptions& green) {
  DecompStats all;
  for (int k = 0; k < count; ++k) {
    const DiscreteForm phi = random_trig_form(sys.calculus().grid(), degree, rng);
    all.merge(decompose_one(sys, phi, green, nullptr));
  }
  return all;
}

/// 3 gamma_1 + 4 gamma_2, optionally with exact and coexact parts.
DiscreteForm t2_preset(const CohomologySystem& sys, bool mixed) {
  const Calculus& calc = sys.calculus();
  const PeriodicGrid& g = calc.grid();
  Eigen::VectorXd u(2);
  u << 3.0, 4.0;
  DiscreteForm phi = sys.harmonic_part(1, u);
  if (mixed) {
    DiscreteForm f(g, 0), w(g, 2);
    const int k1[] = {1, 2}, k2[] = {2, -1};
    add_plane_wave(g, f.component(0), k1, 0.7, -0.4);
    add_plane_wave(g, w.component(0), k2, 0.5, 0.3);
    phi += calc.d(f);
    phi += calc.delta(w);
  }
  return phi;
}

void harmonic_preset_checks(Report& rep, const std::string& tag, const CohomologySystem& sys,
                            const DiscreteForm& phi, const GreenOptions& green) {
  nlohmann::json detail;
  const DecompStats st = decompose_one(sys, phi, green, &detail);
  decomposition_checks(rep, tag, st, true);
  const Decomposition dec = hodge_decompose(sys, phi, green);
  const double u_err = std::max(std::abs(dec.u(0) - 3.0), std::abs(dec.u(1) - 4.0));
  rep.check(tag + ".u", u_err, 1e-10);
  const double topo = detail["norm"]["topological_term"].get<double>();
  rep.check(tag + ".topological_term", std::abs(topo - 25.0), 1e-10);
  rep.results()[tag] = detail;
}

// ---------------------------------------------------------------- electromagnetism

void em_battery(Report& rep, const std::string& tag, const CohomologySystem& sys, EmPreset preset,
                const Eigen::VectorXd& qin, const EmUnits& units) {
  const Calculus& calc = sys.calculus();
  const PeriodicGrid& g = calc.grid();
  const double muc = units.mu0 * units.c;
  const MatrixTriple& t2 = sys.triple(2);
  const CohomologyBasis& b2 = sys.basis(2);

  DiscreteForm F = em_preset_field(sys, preset, qin, units);
  const double Fs = F.max_abs();

  rep.require(tag + ".betti2_is_6", b2.betti == 6);
  rep.require(tag + ".betti2_even_real",
              b2.betti % 2 == 0 &&
                  reality_rule(b2.betti, sign_D(2, 4, calc.negatives())) == Field::real);

  std::array<std::vector<double>, 3> E, B;
  split_F(F, units, E, B);
  std::array<std::vector<double>, 3> E2, B2;
  for (int i = 0; i < 3; ++i) {
    E2[i].resize(g.size());
    B2[i].resize(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
      E2[i][x] = -units.c * B[i][x];
      B2[i][x] = E[i][x] / units.c;
    }
  }
  const DiscreteForm starF =
      assemble_F(g, {std::span<const double>(E2[0]), E2[1], E2[2]},
                 {std::span<const double>(B2[0]), B2[1], B2[2]}, units);
  rep.check(tag + ".star_layout", sup_rel(calc.star(F) - starF, std::max(Fs, 1e-300)), 1e-10);

  const ChargeSet q = charges(sys, F, units);
  const Currents J = currents(calc, F, units);
  const Potentials pot = potentials(sys, F, units);
  const ChargeRelations cr = charge_relations(q.qM, q.qE, t2.T);
  const MaxwellResiduals mx = maxwell_residuals(calc, F, J, units);
  const ActionBreakdown act =
      action(calc, F, pot.AE, pot.AM, J.JE, J.JM, q, t2.E, t2.P, units);

  if (preset != EmPreset::exact) rep.check(tag + ".qM_matches_input", max_abs(q.qM - qin), 1e-8);
  else rep.check(tag + ".charges_vanish", std::max(max_abs(q.qM), max_abs(q.qE)), 1e-8);
  rep.check(tag + ".qM_cycle_integrals", max_abs(q.qM - q.qM_cycle), 1e-8);
  if (preset == EmPreset::topological)
    rep.check(tag + ".qE_cycle_integrals", max_abs(q.qE - q.qE_cycle), 1e-8);
  rep.check(tag + ".charge_relation_magnetic", cr.magnetic, 1e-8);
  rep.check(tag + ".charge_relation_electric", cr.electric, 1e-8);
  rep.check(tag + ".charge_quadrature", cr.quadrature, 1e-8);
  rep.check(tag + ".continuity_E", J.continuity_E, 1e-8);
  rep.check(tag + ".continuity_M", J.continuity_M, 1e-8);
  rep.check(tag + ".potential_reconstruction", pot.reconstruction_error, 1e-7);
  rep.check(tag + ".gauge_AE", pot.gauge_AE, 1e-8);
  rep.check(tag + ".gauge_AM", pot.gauge_AM, 1e-8);
  rep.check(tag + ".maxwell_electric", mx.electric, 1e-7);
  rep.check(tag + ".maxwell_magnetic", mx.magnetic, 1e-7);
  rep.check(tag + ".action_budget", act.budget_error(), 1e-7);
  rep.check(tag + ".quantized_consistency", act.quantized_consistency / muc, 1e-8);

  // S_d from the input charges and the star table alone
  const Eigen::VectorXd qE_expected = t2.T.transpose() * qin;
  double topo = 0.0;
  if (preset != EmPreset::exact)
    for (int a = 0; a < b2.betti; ++a) topo += t2.E(a, t2.P[a]) * qin(a) * qE_expected(t2.P[a]);
  const double sd_expected = -muc * topo;
  rep.check(tag + ".quantized_term", std::abs(act.quantized_term - sd_expected) / muc, 1e-7);

  // opposite magnetic sign convention, reported for comparison only
  Currents flipped = J;
  flipped.JM *= -1.0;
  const MaxwellResiduals mx_flip = maxwell_residuals(calc, F, flipped, units);

  nlohmann::json& res = rep.results()[tag];
  std::vector<std::string> labels;
  for (AxisMask m : b2.masks) labels.push_back(mask_label(m));
  res["classes"] = labels;
  res["charges"] = {{"qM", vector_json(q.qM)},
                    {"qE", vector_json(q.qE)},
                    {"qM_cycle", vector_json(q.qM_cycle)},
                    {"qE_cycle", vector_json(q.qE_cycle)}};
  res["action"] = {{"electric_term", act.electric_term},
                   {"magnetic_term", act.magnetic_term},
                   {"quantized_term", act.quantized_term},
                   {"total", act.total},
                   {"lagrangian_total", act.lagrangian_total},
                   {"quantized_expected", sd_expected},
                   {"mu0_c", muc}};
  res["currents"] = {{"JE_sup", J.JE.max_abs()},
                     {"JM_sup", J.JM.max_abs()},
                     {"magnetic_sign", -1},
                     {"maxwell_magnetic_opposite_sign", mx_flip.magnetic}};
  res["potentials"] = {{"AE_sup", pot.AE.max_abs()},
                       {"AM_sup", pot.AM.max_abs()},
                       {"reconstruction_error", pot.reconstruction_error},
                       {"alpha_report", pot.decomposition.alpha_report},
                       {"beta_report", pot.decomposition.beta_report}};
  res["maxwell"] = {{"electric", mx.electric}, {"magnetic", mx.magnetic}};
  rep.matrix(tag + ".E2", t2.E);
  rep.matrix(tag + ".T2", t2.T);
  rep.matrix(tag + ".Lambda2", t2.Lambda);
  rep.permutation(tag + ".P2", t2.P);
}

void monopole_dipole_checks(Report& rep, SampleRng& rng, int draws) {
  double identity = 0.0, relation = 0.0;
  for (int k = 0; k < draws; ++k) {
    GroupParams prm;
    prm.E12 = Rational(rng.integer(1, 9), rng.integer(1, 5)) * Rational(rng.sign());
    prm.l11 = Rational(rng.integer(1, 9), rng.integer(1, 5)) * Rational(rng.sign());
    const TaxonomySolution sol = solve_group(Group::S2_1_1, 2, 1, prm);
    const Eigen::Vector2d qE(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
    const Eigen::Vector2d qM =
        s211_magnetic_charges(qE, sol.Lambda(0, 0), sol.Lambda(1, 1), sol.E(0, 1));
    const MonopoleDipole md = monopole_dipole(qM, qE);
    const double scale = std::max(1.0, qM.squaredNorm() + qE.squaredNorm());
    identity = std::max(identity, std::abs(md.residual) / scale);
    const ChargeRelations cr = charge_relations(qM, qE, sol.T);
    relation = std::max(relation, std::max(cr.magnetic, cr.electric));
  }
  rep.check("em.monopole_dipole_identity", identity, 1e-12);
  rep.check("em.monopole_dipole_relation", relation, 1e-12);
  rep.results()["monopole_dipole_draws"] = draws;
}

void lambda_checks(Report& rep) {
  using K = CodataConstants;
  const double lam = lambda_scale(K::h, K::e, K::mu0, K::c);
  const double alpha = K::e * K::e * K::mu0 * K::c / (2.0 * K::h);
  rep.check("em.lambda_scale", std::abs(lam - 68.518) / 68.518, 1e-3);
  rep.check("em.lambda_inverse_two_alpha", std::abs(lam * 2.0 * alpha - 1.0), 1e-12);
  rep.results()["lambda_scale"] = lam;
  rep.results()["fine_structure"] = alpha;
}

}  // namespace

nlohmann::json options_json(const CommandOptions& o) {
  return nlohmann::json{{"grid", o.grid},   {"seed", o.seed}, {"tol", o.tol},
                        {"metric", o.metric}, {"R", o.R},       {"r", o.r},
                        {"mu0", o.mu0},     {"c", o.c},       {"samples", o.samples}};
}

Report cmd_verify(const std::string& suite, const CommandOptions& o) {
  Report rep("verify " + suite);
  rep.inputs() = options_json(o);
  rep.inputs()["suite"] = suite;
  SampleRng rng(o.seed);

  if (suite == "core") {
    const int n2 = pick(o.grid, 64);
    const int samples = pick(o.samples, 4);
    {
      PhaseTimer t(rep, "t2");
      PeriodicGrid g(embedded_metric(o.metric) ? GridSpec::embedded_torus(n2, o.R, o.r)
                                               : GridSpec::torus(2, n2));
      Calculus calc(g);
      core_case(rep, "t2", calc, rng, samples);
    }
    {
      PhaseTimer t(rep, "t3");
      PeriodicGrid g(GridSpec::torus(3, std::min(n2, 16)));
      Calculus calc(g);
      core_case(rep, "t3", calc, rng, samples);
    }
    {
      PhaseTimer t(rep, "t4");
      PeriodicGrid g(GridSpec::torus(4, std::min(n2, 8), 1));
      Calculus calc(g);
      core_case(rep, "t4.minkowski", calc, rng, samples);
    }
    return rep;
  }

  if (suite == "cohomology") {
    const bool emb = embedded_metric(o.metric);
    const int n2 = pick(o.grid, emb ? 256 : 64);
    {
      PhaseTimer t(rep, "t2");
      PeriodicGrid g(emb ? GridSpec::embedded_torus(n2, o.R, o.r) : GridSpec::torus(2, n2));
      Calculus calc(g);
      CohomologySystem sys(calc);
      const std::string tag = emb ? "t2.embedded" : "t2.flat";
      cohomology_case(rep, tag, sys, emb ? 1e-5 : 1e-10, emb ? 1e-8 : 1e-10);
      if (emb) embedded_checks(rep, tag, sys.triple(1), o.R, o.r);
    }
    {
      PhaseTimer t(rep, "t3");
      PeriodicGrid g(GridSpec::torus(3, std::min(n2, 16)));
      Calculus calc(g);
      CohomologySystem sys(calc);
      cohomology_case(rep, "t3.flat", sys, 1e-10, 1e-10);
    }
    for (int s : {0, 1}) {
      PhaseTimer t(rep, "t4");
      PeriodicGrid g(GridSpec::torus(4, std::min(n2, 8), s));
      Calculus calc(g);
      CohomologySystem sys(calc);
      cohomology_case(rep, s ? "t4.minkowski" : "t4.flat", sys, 1e-10, 1e-10);
    }
    return rep;
  }

  if (suite == "decompose") {
    const GreenOptions green = green_for(o);
    const int samples = pick(o.samples, 50);
    {
      PhaseTimer t(rep, "t2");
      PeriodicGrid g(GridSpec::torus(2, pick(o.grid, 64)));
      Calculus calc(g);
      CohomologySystem sys(calc);
      decomposition_checks(rep, "t2.random", random_batch(sys, 1, samples, rng, green), true);
      harmonic_preset_checks(rep, "t2.harmonic", sys, t2_preset(sys, false), green);
      harmonic_preset_checks(rep, "t2.mixed", sys, t2_preset(sys, true), green);
    }
    {
      PhaseTimer t(rep, "t4");
      for (int s : {0, 1}) {
        PeriodicGrid g(GridSpec::torus(4, 8, s));
        Calculus calc(g);
        CohomologySystem sys(calc, {1, 2});
        const std::string tag = s ? "t4.minkowski" : "t4.riemannian";
        DecompStats st = random_batch(sys, 2, 3, rng, green);
        st.merge(random_batch(sys, 1, 2, rng, green));
        decomposition_checks(rep, tag, st, true);
      }
    }
    return rep;
  }

  if (suite == "em") {
    const EmUnits units{o.mu0, o.c};
    PeriodicGrid g(GridSpec::torus(4, pick(o.grid, 12), 1));
    Calculus calc(g);
    {
      PhaseTimer t(rep, "field");
      CohomologySystem sys(calc, {2});
      em_battery(rep, "em.topological", sys, EmPreset::topological, parse_charge_list("1@01"),
                 units);
      em_battery(rep, "em.mixed", sys, EmPreset::mixed, parse_charge_list("1@01,2@23,-1@13"),
                 units);
    }
    monopole_dipole_checks(rep, rng, pick(o.samples, 100));
    lambda_checks(rep);
    return rep;
  }

  throw UsageError("unknown verify suite '" + suite + "' (core, cohomology, decompose, em)");
}

Report cmd_torus2(const std::string& mode, const CommandOptions& o) {
  Report rep("torus2 " + mode);
  rep.inputs() = options_json(o);
  rep.inputs()["mode"] = mode;
  if (mode != "flat" && mode != "embedded")
    throw UsageError("unknown torus2 mode '" + mode + "' (flat, embedded)");
  const bool emb = mode == "embedded";
  const int n = pick(o.grid, emb ? 256 : 128);
  const double tol = emb ? 1e-5 : 1e-10;

  auto run = [&](const std::string& tag, const GridSpec& spec) {
    PhaseTimer t(rep, tag);
    PeriodicGrid g(spec);
    Calculus calc(g);
    CohomologySystem sys(calc);
    const MatrixTriple& tr = sys.triple(1);
    cohomology_case(rep, tag, sys, tol, emb ? 1e-8 : 1e-10);
    const Group grp = classify_triple(tr.E, tr.Lambda, 1, 0);
    rep.results()[tag]["group"] = group_label(grp);
    rep.require(tag + ".group_S2.1.3", grp == Group::S2_1_3);
    Eigen::Matrix2d J;
    J << 0.0, 1.0, -1.0, 0.0;
    rep.check(tag + ".E_expected", (tr.E - J).cwiseAbs().maxCoeff(), tol);
    return tr;
  };

  if (!emb) {
    const MatrixTriple tr = run("t2.flat", GridSpec::torus(2, n));
    Eigen::Matrix2d J;
    J << 0.0, 1.0, -1.0, 0.0;
    rep.check("t2.flat.T_expected", (tr.T - J).cwiseAbs().maxCoeff(), 1e-10);
    rep.check("t2.flat.Lambda_identity",
              (tr.Lambda - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
    return rep;
  }
  GridSpec spec = GridSpec::embedded_torus(n, o.R, o.r);
  spec.validate();
  const MatrixTriple tr = run("t2.embedded", spec);
  embedded_checks(rep, "t2.embedded", tr, o.R, o.r);
  run("t2.flat", GridSpec::torus(2, n));
  return rep;
}

Report cmd_taxonomy(int m, int s, const std::optional<std::string>& group,
                    const std::string& params) {
  Report rep("taxonomy");
  rep.inputs() = {{"m", m}, {"s", s}, {"group", group.value_or("")}, {"params", params}};
  if (m < 1) throw UsageError("taxonomy: --m must be a positive integer");
  if (s < 0) throw UsageError("taxonomy: --s must be non-negative");
  const GroupParams prm = parse_group_params(params);
  std::vector<Group> groups;
  const std::vector<Group> ok = admissible_groups(m & 1, s & 1);
  if (group) groups.push_back(parse_group(*group));
  else groups = ok;

  nlohmann::json labels = nlohmann::json::array();
  for (Group g : ok) labels.push_back(group_label(g));
  rep.results()["admissible"] = labels;
  rep.results()["D_parity"] = (m * m + s) & 1;
  rep.results()["reality"] = field_name(reality_rule(2, (m * m + s) & 1));

  nlohmann::json sols = nlohmann::json::array();
  for (Group g : groups) {
    const TaxonomySolution sol = solve_group(g, m, s, prm);
    const std::string tag = group_label(g);
    rep.check(tag + ".constraints", sol.constraints_residual, 1e-12);
    rep.check(tag + ".closed_form", sol.closed_form_residual, 1e-12);
    rep.check(tag + ".symmetry", sol.symmetry_residual, 1e-12);
    rep.require(tag + ".det_matches_table", sol.det_matches_table);
    sols.push_back(sol);
  }
  rep.results()["solutions"] = sols;
  return rep;
}

Report cmd_decompose(const std::string& preset, const CommandOptions& o) {
  Report rep("decompose " + preset);
  rep.inputs() = options_json(o);
  rep.inputs()["preset"] = preset;
  const GreenOptions green = green_for(o);
  SampleRng rng(o.seed);

  if (preset == "harmonic-t2" || preset == "mixed-t2" || preset == "random-t2") {
    PeriodicGrid g(GridSpec::torus(2, pick(o.grid, 64)));
    Calculus calc(g);
    CohomologySystem sys(calc);
    PhaseTimer t(rep, "decompose");
    if (preset == "random-t2") {
      nlohmann::json detail;
      const DiscreteForm phi = random_trig_form(g, 1, rng);
      decomposition_checks(rep, "t2", decompose_one(sys, phi, green, &detail), true);
      rep.results()["t2"] = detail;
    } else {
      harmonic_preset_checks(rep, "t2", sys, t2_preset(sys, preset == "mixed-t2"), green);
    }
    rep.matrix("E", sys.triple(1).E);
    rep.matrix("T", sys.triple(1).T);
    rep.matrix("Lambda", sys.triple(1).Lambda);
    rep.permutation("P", sys.triple(1).P);
    return rep;
  }
  if (preset == "embedded-t2") {
    PeriodicGrid g(GridSpec::embedded_torus(pick(o.grid, 128), o.R, o.r));
    Calculus calc(g);
    CohomologySystem sys(calc);
    PhaseTimer t(rep, "decompose");
    nlohmann::json detail;
    TrigOptions topt;
    topt.max_wave = 2;
    const DiscreteForm phi = random_trig_form(g, 1, rng, topt);
    decomposition_checks(rep, "t2.embedded", decompose_one(sys, phi, green, &detail), true);
    rep.results()["t2.embedded"] = detail;
    rep.matrix("E", sys.triple(1).E);
    rep.matrix("T", sys.triple(1).T);
    rep.matrix("Lambda", sys.triple(1).Lambda);
    rep.permutation("P", sys.triple(1).P);
    return rep;
  }
  if (preset == "middle-t4") {
    PeriodicGrid g(GridSpec::torus(4, pick(o.grid, 8)));
    Calculus calc(g);
    CohomologySystem sys(calc, {2});
    PhaseTimer t(rep, "decompose");
    nlohmann::json detail;
    const DiscreteForm phi = random_trig_form(g, 2, rng);
    decomposition_checks(rep, "t4", decompose_one(sys, phi, green, &detail), true);
    rep.results()["t4"] = detail;
    rep.matrix("E", sys.triple(2).E);
    rep.matrix("T", sys.triple(2).T);
    rep.matrix("Lambda", sys.triple(2).Lambda);
    rep.permutation("P", sys.triple(2).P);
    return rep;
  }
  throw UsageError("unknown decompose preset '" + preset +
                   "' (harmonic-t2, mixed-t2, random-t2, embedded-t2, middle-t4)");
}

Report cmd_em(const std::string& preset, const std::string& charges_text, const CommandOptions& o) {
  Report rep("em " + preset);
  rep.inputs() = options_json(o);
  rep.inputs()["preset"] = preset;
  rep.inputs()["charges"] = charges_text;
  const EmPreset pr = parse_em_preset(preset);
  const Eigen::VectorXd qin = parse_charge_list(charges_text);
  if (!(o.mu0 > 0.0) || !(o.c > 0.0)) throw UsageError("em: --mu0 and --c must be positive");
  const EmUnits units{o.mu0, o.c};
  PeriodicGrid g(GridSpec::torus(4, pick(o.grid, 12), 1));
  Calculus calc(g);
  CohomologySystem sys(calc, {2});
  PhaseTimer t(rep, "em");
  em_battery(rep, "em", sys, pr, pr == EmPreset::exact ? Eigen::VectorXd::Zero(6) : qin, units);
  return rep;
}

}  // namespace phodge
