#include "phodge/decompose.hpp"

#include <cmath>
#include <stdexcept>

namespace phodge {

GreenOptions decomposition_green_options() {
  GreenOptions g;
  g.tol = 1e-12;
  return g;
}

namespace {

double rel_sup(const DiscreteForm& f, double scale) {
  return f.max_abs() / (scale > 0.0 ? scale : 1.0);
}

}  // namespace

Decomposition hodge_decompose(const CohomologySystem& sys, const DiscreteForm& phi,
                              const GreenOptions& green) {
  const Calculus& calc = sys.calculus();
  const int n = calc.dim();
  const int p = phi.degree();
  const double scale = phi.max_abs();
  Decomposition dec;
  dec.degree = p;

  DiscreteForm rebuilt(calc.grid(), p);
  if (p > 0) {
    GreenResult a = green_solve(calc, calc.delta(phi), green);
    dec.alpha_report = a.report;
    dec.exact_part = calc.d(a.solution);
    if (p > 1) dec.gauge_alpha = rel_sup(calc.delta(a.solution), scale);
    dec.alpha = std::move(a.solution);
    rebuilt += *dec.exact_part;
  }
  if (p < n) {
    GreenResult b = green_solve(calc, calc.d(phi), green);
    dec.beta_report = b.report;
    dec.coexact_part = calc.delta(b.solution);
    if (p + 1 < n) dec.gauge_beta = rel_sup(calc.d(b.solution), scale);
    dec.beta = std::move(b.solution);
    rebuilt += *dec.coexact_part;
  }
  dec.u = sys.class_coefficients(phi);
  dec.u_cycle = sys.cycle_integrals(phi);
  dec.harmonic_part = sys.harmonic_part(p, dec.u);
  rebuilt += *dec.harmonic_part;

  dec.residue = phi - rebuilt;
  rebuilt += *dec.residue;
  dec.reconstruction_error = rel_sup(phi - rebuilt, scale);

  const DiscreteForm& r = *dec.residue;
  if (p < n) dec.residue_closure = rel_sup(calc.d(r), scale);
  if (p > 0) dec.residue_coclosure = rel_sup(calc.delta(r), scale);
  const Eigen::VectorXd rc = sys.class_coefficients(r);
  dec.residue_class = rc.size() ? rc.cwiseAbs().maxCoeff() : 0.0;
  return dec;
}

Eigen::VectorXd dual_decompose(const CohomologySystem& sys, const DiscreteForm& phi) {
  return sys.class_coefficients(sys.calculus().star(phi));
}

CrossRelation cross_relation_check(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                                   const Eigen::MatrixXd& T, const Eigen::MatrixXd& T_dual,
                                   int D_parity, bool middle_degree) {
  if (u.size() != v.size() || T.rows() != u.size() || T_dual.rows() != v.size())
    throw std::invalid_argument("cross_relation_check: size mismatch");
  CrossRelation out;
  const double sD = parity_sign(D_parity);
  if (u.size() == 0) return out;
  out.forward = (u - sD * T_dual.transpose() * v).cwiseAbs().maxCoeff();
  out.reciprocal = (v - T.transpose() * u).cwiseAbs().maxCoeff();
  if (middle_degree) {
    const Eigen::VectorXcd w = u.cast<std::complex<double>>() +
                               std::complex<double>(0.0, 1.0) * v.cast<std::complex<double>>();
    const Eigen::VectorXcd rhs =
        std::complex<double>(0.0, 1.0) * (T.transpose().cast<std::complex<double>>() * w);
    out.quadrature = (w - rhs).cwiseAbs().maxCoeff();
  }
  return out;
}

double NormBreakdown::budget_error() const {
  return std::abs(total - direct_norm) / std::max(1.0, std::abs(direct_norm));
}

DiscreteForm compact_potential(const Calculus& calc, const DiscreteForm& beta) {
  DiscreteForm out = calc.star(beta);
  out *= -parity_sign(sign_C(beta.degree(), calc.dim(), calc.negatives()));
  return out;
}

NormBreakdown norm_decompose(const Calculus& calc, const DiscreteForm& phi,
                             const Decomposition& dec, const Eigen::VectorXd& v,
                             const Eigen::MatrixXd& E, const std::vector<int>& P) {
  const int n = calc.dim();
  const int p = phi.degree();
  const int s = calc.negatives();
  NormBreakdown nb;
  if (dec.alpha) nb.exact_term = calc.pairing(*dec.alpha, calc.delta(phi));
  if (dec.beta) {
    nb.coexact_standard = calc.pairing(*dec.beta, calc.d(phi));
    nb.coexact_term = nb.coexact_standard;
    if (n % 2 == 0 && 2 * p == n) {
      nb.middle_variant = true;
      const DiscreteForm bp = compact_potential(calc, *dec.beta);
      const double sign = parity_sign(s + sign_D(p, n, s) + 1);
      nb.coexact_term = sign * calc.pairing(bp, calc.delta(calc.star(phi)));
    }
  }
  for (Eigen::Index a = 0; a < dec.u.size(); ++a)
    nb.topological_term += E(a, P[a]) * dec.u(a) * v(P[a]);
  if (dec.residue) nb.residue_term = calc.pairing(*dec.residue, *dec.residue);
  nb.total = nb.exact_term + nb.coexact_term + nb.topological_term + nb.residue_term;
  nb.direct_norm = calc.pairing(phi, phi);
  return nb;
}

Eigen::Matrix2d sigma1(int D_parity) {
  Eigen::Matrix2d m;
  m << 1.0, 0.0, 0.0, parity_sign(D_parity + 1);
  return m;
}

Eigen::Matrix2d sigma2() {
  Eigen::Matrix2d m;
  m << 0.0, -1.0, 1.0, 0.0;
  return m;
}

Eigen::Matrix2d sigma_rotation(int D_parity, double xi) {
  return sigma1(D_parity) * std::cos(xi) + sigma2() * std::sin(xi);
}

CompactPair compact_assemble(const CohomologySystem& sys, const DiscreteForm& alpha,
                             const DiscreteForm& beta_prime, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& v) {
  const Calculus& calc = sys.calculus();
  const int n = calc.dim();
  if (n % 2 != 0) throw std::invalid_argument("compact_assemble: needs an even-dimensional grid");
  const int m = n / 2;
  if (alpha.degree() != m - 1 || beta_prime.degree() != m - 1)
    throw std::invalid_argument("compact_assemble: potentials must have degree m-1");
  const int D = sign_D(m, n, calc.negatives());
  const Eigen::Matrix2d s1 = sigma1(D);
  const Eigen::Matrix2d s2 = sigma2();

  const DiscreteForm d_a = calc.d(alpha);
  const DiscreteForm d_b = calc.d(beta_prime);
  const DiscreteForm sd_a = calc.star(d_a);
  const DiscreteForm sd_b = calc.star(d_b);

  auto slot = [&](int row, const Eigen::VectorXd& coeff) {
    DiscreteForm out = sys.harmonic_part(m, coeff);
    out.add_scaled(s1(row, 0), d_a).add_scaled(s1(row, 1), d_b);
    out.add_scaled(s2(row, 0), sd_a).add_scaled(s2(row, 1), sd_b);
    return out;
  };
  CompactPair pair{slot(0, u), slot(1, v), 0.0};
  pair.star_residual =
      (pair.second - calc.star(pair.first)).max_abs() / std::max(1.0, pair.first.max_abs());
  return pair;
}

}  // namespace phodge
