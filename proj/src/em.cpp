#include "phodge/em.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace phodge {

namespace {

constexpr AxisMask bit(int a) { return AxisMask{1} << a; }

struct Slot {
  AxisMask mask;
  double sign;
  bool electric;
  int axis;
};

// F components in sorted-mask form with the sign and field they carry.
constexpr Slot kSlots[6] = {
    {bit(0) | bit(1), -1.0, true, 0},  {bit(0) | bit(2), -1.0, true, 1},
    {bit(0) | bit(3), -1.0, true, 2},  {bit(2) | bit(3), 1.0, false, 0},
    {bit(1) | bit(3), -1.0, false, 1}, {bit(1) | bit(2), 1.0, false, 2},
};

double sup_ratio(double num, double scale) { return num / std::max(1.0, scale); }

}  // namespace

void require_minkowski(const PeriodicGrid& grid) {
  if (grid.dim() != 4) throw std::invalid_argument("electromagnetism needs a 4-torus");
  if (grid.signature(0) != -1 || grid.signature(1) != 1 || grid.signature(2) != 1 ||
      grid.signature(3) != 1)
    throw std::invalid_argument("electromagnetism needs signature (-1, 1, 1, 1)");
  if (grid.spec().metric.kind != MetricKind::flat)
    throw std::invalid_argument("electromagnetism needs a flat metric");
}

DiscreteForm assemble_F(const PeriodicGrid& grid, const std::array<std::span<const double>, 3>& E,
                        const std::array<std::span<const double>, 3>& B, const EmUnits& units) {
  require_minkowski(grid);
  DiscreteForm F(grid, 2);
  for (const Slot& s : kSlots) {
    std::span<const double> src = s.electric ? E[s.axis] : B[s.axis];
    if (src.size() != grid.size()) throw std::invalid_argument("assemble_F: field size mismatch");
    const double k = s.electric ? s.sign / units.c : s.sign;
    std::span<double> out = F[s.mask];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = k * src[i];
  }
  return F;
}

void split_F(const DiscreteForm& F, const EmUnits& units, std::array<std::vector<double>, 3>& E,
             std::array<std::vector<double>, 3>& B) {
  require_minkowski(F.grid());
  if (F.degree() != 2) throw std::invalid_argument("split_F: F must be a 2-form");
  for (const Slot& s : kSlots) {
    std::span<const double> src = F[s.mask];
    std::vector<double>& out = s.electric ? E[s.axis] : B[s.axis];
    out.resize(src.size());
    const double k = s.electric ? s.sign * units.c : s.sign;
    for (std::size_t i = 0; i < src.size(); ++i) out[i] = k * src[i];
  }
}

ChargeSet charges(const CohomologySystem& sys, const DiscreteForm& F, const EmUnits& units) {
  const Calculus& calc = sys.calculus();
  require_minkowski(calc.grid());
  const double k = 1.0 / (units.mu0 * units.c);
  const DiscreteForm sF = calc.star(F);
  ChargeSet q;
  q.qM = k * sys.class_coefficients(F);
  q.qE = k * sys.class_coefficients(sF);
  q.qM_cycle = k * sys.cycle_integrals(F);
  q.qE_cycle = k * sys.cycle_integrals(sF);
  return q;
}

Currents currents(const Calculus& calc, const DiscreteForm& F, const EmUnits& units) {
  require_minkowski(calc.grid());
  Currents J{calc.delta(F), calc.delta(calc.star(F))};
  J.JE *= 1.0 / units.mu0;
  J.JM *= -1.0 / units.mu0;
  J.continuity_E = sup_ratio(calc.delta(J.JE).max_abs(), J.JE.max_abs());
  J.continuity_M = sup_ratio(calc.delta(J.JM).max_abs(), J.JM.max_abs());
  return J;
}

Potentials potentials(const CohomologySystem& sys, const DiscreteForm& F, const EmUnits& units) {
  const Calculus& calc = sys.calculus();
  require_minkowski(calc.grid());
  Decomposition dec = hodge_decompose(sys, F);
  Potentials pot{*dec.alpha, compact_potential(calc, *dec.beta), std::move(dec)};

  DiscreteForm rebuilt = calc.d(pot.AE);
  rebuilt -= calc.star(calc.d(pot.AM));
  rebuilt += sys.harmonic_part(2, pot.decomposition.u);
  const double scale = F.max_abs();
  pot.reconstruction_error = sup_ratio((F - rebuilt).max_abs(), scale);
  pot.gauge_AE = sup_ratio(calc.delta(pot.AE).max_abs(), scale);
  pot.gauge_AM = sup_ratio(calc.delta(pot.AM).max_abs(), scale);
  (void)units;
  return pot;
}

ChargeRelations charge_relations(const Eigen::VectorXd& qM, const Eigen::VectorXd& qE,
                                 const Eigen::MatrixXd& T2) {
  if (qM.size() != qE.size() || T2.rows() != qM.size() || T2.cols() != qM.size())
    throw std::invalid_argument("charge_relations: size mismatch");
  ChargeRelations r;
  if (qM.size() == 0) return r;
  const Eigen::MatrixXd Tt = T2.transpose();
  r.magnetic = (qM + Tt * qE).cwiseAbs().maxCoeff();
  r.electric = (qE - Tt * qM).cwiseAbs().maxCoeff();
  const std::complex<double> i(0.0, 1.0);
  const Eigen::VectorXcd q = qM.cast<std::complex<double>>() + i * qE.cast<std::complex<double>>();
  r.quadrature = (q - i * (Tt.cast<std::complex<double>>() * q)).cwiseAbs().maxCoeff();
  return r;
}

double ActionBreakdown::budget_error() const {
  return std::abs(total - lagrangian_total) / std::max(1.0, std::abs(total));
}

ActionBreakdown action(const Calculus& calc, const DiscreteForm& F, const DiscreteForm& AE,
                       const DiscreteForm& AM, const DiscreteForm& JE, const DiscreteForm& JM,
                       const ChargeSet& q, const Eigen::MatrixXd& E2, const std::vector<int>& P,
                       const EmUnits& units) {
  require_minkowski(calc.grid());
  const double mu0 = units.mu0;
  const double c = units.c;
  ActionBreakdown a;
  const double ae = calc.pairing(AE, JE);
  const double am = calc.pairing(AM, JM);
  a.electric_term = -(2.0 / c) * ae;
  a.magnetic_term = -(2.0 / c) * am;
  double topo = 0.0;
  for (Eigen::Index k = 0; k < q.qM.size(); ++k) topo += E2(k, P[k]) * q.qM(k) * q.qE(P[k]);
  a.quantized_term = -mu0 * c * topo;
  a.total = a.electric_term + a.magnetic_term + a.quantized_term;
  a.lagrangian_total = -calc.pairing(F, F) / (mu0 * c) - ae / c - am / c;
  // Topological part of (F, F) is sum E u v with u = mu0 c qM and v = mu0 c qE.
  const double ff_topo = mu0 * c * mu0 * c * topo;
  a.quantized_consistency = std::abs(a.quantized_term + ff_topo / (mu0 * c));
  return a;
}

MaxwellResiduals maxwell_residuals(const Calculus& calc, const DiscreteForm& F, const Currents& J,
                                   const EmUnits& units) {
  require_minkowski(calc.grid());
  const DiscreteForm lhs_e = calc.d(calc.star(F));
  const DiscreteForm rhs_e = units.mu0 * calc.star(J.JE);
  const DiscreteForm lhs_m = calc.d(F);
  const DiscreteForm rhs_m = units.mu0 * calc.star(J.JM);
  MaxwellResiduals r;
  r.electric = sup_ratio((lhs_e - rhs_e).max_abs(), std::max(lhs_e.max_abs(), F.max_abs()));
  r.magnetic = sup_ratio((lhs_m - rhs_m).max_abs(), std::max(lhs_m.max_abs(), F.max_abs()));
  return r;
}

MonopoleDipole monopole_dipole(const Eigen::Vector2d& qM, const Eigen::Vector2d& qE) {
  MonopoleDipole md;
  md.mM = qM(0) + qM(1);
  md.dM = qM(0) - qM(1);
  md.mE = qE(0) + qE(1);
  md.dE = qE(0) - qE(1);
  md.residual = md.mM * md.mM - md.dM * md.dM + md.mE * md.mE - md.dE * md.dE;
  return md;
}

Eigen::Vector2d s211_magnetic_charges(const Eigen::Vector2d& qE, double l1, double l2,
                                      double eps12) {
  if (eps12 == 0.0) throw std::invalid_argument("s211_magnetic_charges: eps12 must be nonzero");
  return Eigen::Vector2d(-l2 * qE(1) / eps12, -l1 * qE(0) / eps12);
}

double lambda_scale(double action_quantum, double elementary_charge, double mu0, double c) {
  if (!(action_quantum > 0.0) || !(elementary_charge > 0.0) || !(mu0 > 0.0) || !(c > 0.0))
    throw std::invalid_argument("lambda_scale: constants must be positive");
  return action_quantum / (mu0 * c * elementary_charge * elementary_charge);
}

Eigen::VectorXd parse_charge_list(const std::string& text, int dim) {
  const std::vector<AxisMask> masks = degree_masks(dim, 2);
  Eigen::VectorXd q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(masks.size()));
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto at = item.find('@');
    if (at == std::string::npos) throw std::invalid_argument("charge '" + item + "': expected value@axes");
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(0, at), &used);
      if (used != at) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("charge '" + item + "': bad value");
    }
    const std::string label = item.substr(at + 1);
    if (label.size() != 2) throw std::invalid_argument("charge '" + item + "': expected two axes");
    std::vector<int> axes;
    for (char ch : label) {
      if (ch < '0' || ch >= '0' + dim) throw std::invalid_argument("charge '" + item + "': bad axis");
      axes.push_back(ch - '0');
    }
    if (axes[0] == axes[1]) throw std::invalid_argument("charge '" + item + "': repeated axis");
    const double sign = axes[0] < axes[1] ? 1.0 : -1.0;
    const AxisMask m = axes_mask(axes);
    const auto it = std::find(masks.begin(), masks.end(), m);
    q(it - masks.begin()) += sign * value;
  }
  return q;
}

EmPreset parse_em_preset(const std::string& name) {
  if (name == "topological") return EmPreset::topological;
  if (name == "exact") return EmPreset::exact;
  if (name == "mixed") return EmPreset::mixed;
  throw std::invalid_argument("unknown em preset '" + name + "' (topological, exact, mixed)");
}

DiscreteForm em_reference_potential(const PeriodicGrid& grid) {
  require_minkowski(grid);
  DiscreteForm A(grid, 1);
  std::span<double> a0 = A[bit(0)], a1 = A[bit(1)], a2 = A[bit(2)], a3 = A[bit(3)];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto idx = grid.multi_index(i);
    const double t = grid.coordinate(0, idx[0]);
    const double x = grid.coordinate(1, idx[1]);
    const double y = grid.coordinate(2, idx[2]);
    const double z = grid.coordinate(3, idx[3]);
    a0[i] = std::sin(x) * std::cos(y);
    a1[i] = 0.5 * std::sin(t) * std::cos(2.0 * z);
    a2[i] = std::cos(x + z);
    a3[i] = 0.25 * std::sin(2.0 * t + x);
  }
  return A;
}

DiscreteForm em_preset_field(const CohomologySystem& sys, EmPreset preset,
                             const Eigen::VectorXd& magnetic_charges, const EmUnits& units) {
  const Calculus& calc = sys.calculus();
  require_minkowski(calc.grid());
  DiscreteForm F(calc.grid(), 2);
  if (preset != EmPreset::topological) F += calc.d(em_reference_potential(calc.grid()));
  if (preset != EmPreset::exact) {
    const CohomologyBasis& b = sys.basis(2);
    const std::vector<AxisMask> masks = degree_masks(4, 2);
    if (magnetic_charges.size() != static_cast<Eigen::Index>(masks.size()))
      throw std::invalid_argument("em_preset_field: expected six charges");
    Eigen::VectorXd u = Eigen::VectorXd::Zero(b.betti);
    for (int a = 0; a < b.betti; ++a) {
      const auto it = std::find(masks.begin(), masks.end(), b.masks[a]);
      u(a) = units.mu0 * units.c * magnetic_charges(it - masks.begin());
    }
    F += sys.harmonic_part(2, u);
  }
  return F;
}

}  // namespace phodge
