#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "phodge/decompose.hpp"

namespace phodge {

struct EmUnits {
  double mu0 = 1.0;
  double c = 1.0;

  static EmUnits natural() { return {}; }
  static EmUnits codata() { return {1.25663706212e-6, 2.99792458e8}; }
};

/// Throws unless `grid` is a flat 4-torus with signature (-1, 1, 1, 1).
void require_minkowski(const PeriodicGrid& grid);

/// Sorted-component layout of F with axis 0 as time:
///   F_01 = -E1/c, F_02 = -E2/c, F_03 = -E3/c, F_23 = B1, F_13 = -B2, F_12 = B3.
DiscreteForm assemble_F(const PeriodicGrid& grid, const std::array<std::span<const double>, 3>& E,
                        const std::array<std::span<const double>, 3>& B,
                        const EmUnits& units = {});

/// Inverse of assemble_F: recovers the electric and magnetic components.
void split_F(const DiscreteForm& F, const EmUnits& units, std::array<std::vector<double>, 3>& E,
             std::array<std::vector<double>, 3>& B);

struct ChargeSet {
  /// mu0 c qM_a and mu0 c qE_a are the class coefficients of F and star F.
  Eigen::VectorXd qM;
  Eigen::VectorXd qE;
  /// Literal cycle integrals divided by mu0 c (equal to qM, qE for closed F, star F).
  Eigen::VectorXd qM_cycle;
  Eigen::VectorXd qE_cycle;
};

ChargeSet charges(const CohomologySystem& sys, const DiscreteForm& F, const EmUnits& units = {});

struct Currents {
  /// delta F / mu0
  DiscreteForm JE;
  /// -delta(star F) / mu0 (the sign that makes boundary charges positive).
  DiscreteForm JM;
  /// sup|delta JE|, sup|delta JM| relative to max(1, sup|J|).
  double continuity_E = 0.0;
  double continuity_M = 0.0;
};

Currents currents(const Calculus& calc, const DiscreteForm& F, const EmUnits& units = {});

struct Potentials {
  /// G(delta F), with delta AE = 0.
  DiscreteForm AE;
  /// -(-1)^C(3) star(G(d F)).
  DiscreteForm AM;
  Decomposition decomposition;
  /// sup|F - (d AE - star d AM + mu0 c sum qM_a gamma_a)| / max(1, sup|F|)
  double reconstruction_error = 0.0;
  double gauge_AE = 0.0;
  double gauge_AM = 0.0;
};

Potentials potentials(const CohomologySystem& sys, const DiscreteForm& F, const EmUnits& units = {});

struct ChargeRelations {
  /// max_a |qM_a + sum_b T_ba qE_b|
  double magnetic = 0.0;
  /// max_a |qE_a - sum_b T_ba qM_b|
  double electric = 0.0;
  /// max_a |q_a - i sum_b T_ba q_b| with q = qM + i qE
  double quadrature = 0.0;
};

ChargeRelations charge_relations(const Eigen::VectorXd& qM, const Eigen::VectorXd& qE,
                                 const Eigen::MatrixXd& T2);

struct ActionBreakdown {
  double electric_term = 0.0;
  double magnetic_term = 0.0;
  double quantized_term = 0.0;
  double total = 0.0;
  /// -(1/mu0 c)(F, F) - (1/c)(AE, JE) - (1/c)(AM, JM)
  double lagrangian_total = 0.0;
  /// |S_d + (1/mu0 c) * topological part of (F, F)|
  double quantized_consistency = 0.0;

  double budget_error() const;
};

ActionBreakdown action(const Calculus& calc, const DiscreteForm& F, const DiscreteForm& AE,
                       const DiscreteForm& AM, const DiscreteForm& JE, const DiscreteForm& JM,
                       const ChargeSet& q, const Eigen::MatrixXd& E2, const std::vector<int>& P,
                       const EmUnits& units = {});

struct MaxwellResiduals {
  /// sup|d star F - mu0 star JE| and sup|d F - mu0 star JM|, normalized.
  double electric = 0.0;
  double magnetic = 0.0;
};

MaxwellResiduals maxwell_residuals(const Calculus& calc, const DiscreteForm& F,
                                   const Currents& J, const EmUnits& units = {});

struct MonopoleDipole {
  double mM = 0.0, dM = 0.0, mE = 0.0, dE = 0.0;
  /// mM^2 - dM^2 + mE^2 - dE^2
  double residual = 0.0;
};

MonopoleDipole monopole_dipole(const Eigen::Vector2d& qM, const Eigen::Vector2d& qE);

/// qM = -(1/eps12) antidiag(l2, l1) qE, the charge relation of an S2.1.1 pair.
Eigen::Vector2d s211_magnetic_charges(const Eigen::Vector2d& qE, double l1, double l2, double eps12);

/// h / (mu0 c e^2)
double lambda_scale(double action_quantum, double elementary_charge, double mu0, double c);

struct CodataConstants {
  static constexpr double h = 6.62607015e-34;
  static constexpr double e = 1.602176634e-19;
  static constexpr double mu0 = 1.25663706212e-6;
  static constexpr double c = 2.99792458e8;
};

/// "1@01,2@23" -> coefficient per degree-2 class in sorted-mask order.
Eigen::VectorXd parse_charge_list(const std::string& text, int dim = 4);

enum class EmPreset { topological, exact, mixed };
EmPreset parse_em_preset(const std::string& name);

/// Smooth potential used by the exact and mixed presets.
DiscreteForm em_reference_potential(const PeriodicGrid& grid);

/// topological: mu0 c sum q_a gamma_a; exact: d(reference potential);
/// mixed: both.
DiscreteForm em_preset_field(const CohomologySystem& sys, EmPreset preset,
                             const Eigen::VectorXd& magnetic_charges, const EmUnits& units = {});

}  // namespace phodge
