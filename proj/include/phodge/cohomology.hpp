#pragma once

#include <Eigen/Dense>
#include <vector>

#include "phodge/green.hpp"

namespace phodge {

struct CohomologyBasis {
  int degree = 0;
  int betti = 0;
  std::vector<DiscreteForm> gammas;
  std::vector<CycleSpec> cycles;
  /// Component mask of the seed dx^I behind gammas[a] and cycles[a].
  std::vector<AxisMask> masks;
  /// max |integral over z_b of gamma_a - delta_ab|
  double normalization_residual = 0.0;
  /// max over a of sup|d gamma_a| / sup|gamma_a| (0 for top degree).
  double closure_residual = 0.0;
  /// max over a of sup|delta gamma_a| / sup|gamma_a| (0 for degree 0).
  double coclosure_residual = 0.0;
  int projection_sweeps = 0;
};

struct BasisOptions {
  /// Target for sup|delta gamma| / sup|gamma| during harmonic projection.
  double coclosure_tol = 1e-10;
  int max_sweeps = 3;
  GreenOptions green = tight_green();

  static GreenOptions tight_green() {
    GreenOptions g;
    g.tol = 1e-12;
    return g;
  }
};

/// Normalized strong-harmonic representatives of H^p on the torus, paired with
/// coordinate cycles so that the integral of gamma_a over z_b is delta_ab.
CohomologyBasis build_basis(const Calculus& calc, int p, const BasisOptions& opts = {});

struct PairingMatrix {
  Eigen::MatrixXd E;
  /// P[a] is the unique column of row a holding a non-null entry.
  std::vector<int> P;
};

inline constexpr double kPairTol = 1e-8;

/// E_ab = integral of gamma^p_a ^ gamma^(n-p)_b with its duality permutation.
PairingMatrix matrix_E(const CohomologyBasis& bp, const CohomologyBasis& bq,
                       double pair_tol = kPairTol);
/// T_ab = integral over z^(n-p)_b of star(gamma^p_a).
Eigen::MatrixXd matrix_T(const Calculus& calc, const CohomologyBasis& bp,
                         const CohomologyBasis& bq);
/// Lambda_ab = (gamma_a, gamma_b).
Eigen::MatrixXd matrix_Lambda(const Calculus& calc, const CohomologyBasis& bp);

/// Max sup-norm residual of star(gamma^p_a) - sum_b T_ab gamma^(n-p)_b over a,
/// relative to sup|star(gamma^p_a)|.
double expansion_residual(const Calculus& calc, const CohomologyBasis& bp,
                          const CohomologyBasis& bq, const Eigen::MatrixXd& T);

struct MatrixTriple {
  int degree = 0;
  int dim = 0;
  int negatives = 0;
  Eigen::MatrixXd E;
  Eigen::MatrixXd T;
  Eigen::MatrixXd Lambda;
  std::vector<int> P;
};

struct TripleCheck {
  /// T^(n-p) T^(p) - (-1)^D I
  double product_residual = 0.0;
  /// E T^T - Lambda
  double gram_residual = 0.0;
  /// Lambda^(p) (E^(n-p))^-1 Lambda^(n-p) - (-1)^D E^(p)
  double constraint_residual = 0.0;
  /// E^(p) - (-1)^(p(n-p)) (E^(n-p))^T
  double duality_residual = 0.0;
  double lambda_symmetry = 0.0;
  double det_T = 0.0;
  /// det(T)^2 - (-1)^(beta D): nonzero exactly when a real T cannot exist.
  double reality_residual = 0.0;
  /// beta * D even.
  bool real_admissible = true;
  int D_parity = 0;

  double max_identity_residual() const;
};

/// Checks every identity linking the degree-p triple with its complementary
/// triple (pass the same triple twice in the middle degree). Throws if E is singular.
TripleCheck verify_triple(const MatrixTriple& tp, const MatrixTriple& tq);

/// The three identities for a middle-degree triple given as bare matrices.
TripleCheck verify_triple(const Eigen::MatrixXd& E, const Eigen::MatrixXd& T,
                          const Eigen::MatrixXd& Lambda, int D_parity);

/// Bases for every degree of a torus grid with their E, T, Lambda matrices.
class CohomologySystem {
 public:
  /// Builds the degrees listed and their complements; an empty list means all.
  explicit CohomologySystem(const Calculus& calc, std::vector<int> degrees = {},
                            const BasisOptions& opts = {});

  const Calculus& calculus() const { return *calc_; }
  bool has(int p) const { return built_[p]; }
  const CohomologyBasis& basis(int p) const;
  const MatrixTriple& triple(int p) const;

  /// Class coefficients u_a of a p-form through Poincare duality:
  /// u = E^-T w with w_c = integral of phi ^ gamma^(n-p)_c. Agrees with the
  /// cycle integrals for closed forms and annihilates exact and coexact forms.
  Eigen::VectorXd class_coefficients(const DiscreteForm& phi) const;
  /// Literal cycle integrals over the basis cycles of degree p.
  Eigen::VectorXd cycle_integrals(const DiscreteForm& phi) const;
  /// sum_a u_a gamma^p_a
  DiscreteForm harmonic_part(int p, const Eigen::VectorXd& u) const;

 private:
  void build(const std::vector<int>& degrees, const BasisOptions& opts);

  const Calculus* calc_;
  std::vector<bool> built_;
  std::vector<CohomologyBasis> bases_;
  std::vector<MatrixTriple> triples_;
};

nlohmann::json matrix_json(const Eigen::MatrixXd& m);

}  // namespace phodge
