#pragma once

#include <Eigen/Dense>
#include <optional>

#include "phodge/cohomology.hpp"

namespace phodge {

/// phi = d(alpha) + delta(beta) + sum_a u_a gamma_a + residue
struct Decomposition {
  int degree = 0;
  std::optional<DiscreteForm> alpha;
  std::optional<DiscreteForm> beta;
  Eigen::VectorXd u;
  /// Literal integrals of phi over the basis cycles (equal to u when phi is closed).
  Eigen::VectorXd u_cycle;
  std::optional<DiscreteForm> residue;
  std::optional<DiscreteForm> exact_part;
  std::optional<DiscreteForm> coexact_part;
  std::optional<DiscreteForm> harmonic_part;

  double reconstruction_error = 0.0;
  /// sup|delta alpha| / sup|phi| and sup|d beta| / sup|phi|.
  double gauge_alpha = 0.0;
  double gauge_beta = 0.0;
  /// sup|d residue|, sup|delta residue| relative to sup|phi|, and max |class coefficient| of the residue.
  double residue_closure = 0.0;
  double residue_coclosure = 0.0;
  double residue_class = 0.0;
  SolveReport alpha_report;
  SolveReport beta_report;
};

GreenOptions decomposition_green_options();

Decomposition hodge_decompose(const CohomologySystem& sys, const DiscreteForm& phi,
                              const GreenOptions& green = decomposition_green_options());

/// v_a: class coefficients of star(phi) in the complementary basis.
Eigen::VectorXd dual_decompose(const CohomologySystem& sys, const DiscreteForm& phi);

struct CrossRelation {
  /// max_a |u_a - (-1)^D sum_b T^(n-p)_ba v_b|
  double forward = 0.0;
  /// max_b |v_b - sum_a T^(p)_ab u_a|
  double reciprocal = 0.0;
  /// Middle degree only: max |w - i T^T w| with w = u + i v.
  std::optional<double> quadrature;
};

/// `T` is the degree-p transfer matrix, `T_dual` the degree-(n-p) one (the same
/// matrix in the middle degree).
CrossRelation cross_relation_check(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                                   const Eigen::MatrixXd& T, const Eigen::MatrixXd& T_dual,
                                   int D_parity, bool middle_degree);

struct NormBreakdown {
  double exact_term = 0.0;
  double coexact_term = 0.0;
  double topological_term = 0.0;
  double residue_term = 0.0;
  double total = 0.0;
  double direct_norm = 0.0;
  /// (beta, d phi); equals coexact_term up to discretization.
  double coexact_standard = 0.0;
  bool middle_variant = false;

  double budget_error() const;
};

/// Norm budget of phi. In the middle degree of an even-dimensional torus the
/// coexact term is evaluated through beta' = -(-1)^C(m+1) star(beta).
NormBreakdown norm_decompose(const Calculus& calc, const DiscreteForm& phi,
                             const Decomposition& dec, const Eigen::VectorXd& v,
                             const Eigen::MatrixXd& E, const std::vector<int>& P);

/// beta' = -(-1)^C(m+1) star(beta), the (m-1)-form of the compact representation.
DiscreteForm compact_potential(const Calculus& calc, const DiscreteForm& beta);

Eigen::Matrix2d sigma1(int D_parity);
Eigen::Matrix2d sigma2();
/// sigma1 cos(xi) + sigma2 sin(xi)
Eigen::Matrix2d sigma_rotation(int D_parity, double xi);

struct CompactPair {
  DiscreteForm first;
  DiscreteForm second;
  /// sup|second - star(first)| / max(1, sup|first|)
  double star_residual = 0.0;
};

/// [phi; star phi] = (sigma1 d + sigma2 star d)[alpha; beta'] + sum_a [u_a; v_a] gamma_a.
/// Requires an even-dimensional grid and middle-degree basis.
CompactPair compact_assemble(const CohomologySystem& sys, const DiscreteForm& alpha,
                             const DiscreteForm& beta_prime, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& v);

}  // namespace phodge
