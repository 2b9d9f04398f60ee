#include "phodge/cohomology.hpp"

#include <cmath>
#include <stdexcept>

namespace phodge {

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

double sup_ratio(const DiscreteForm& num, const DiscreteForm& den) {
  const double d = den.max_abs();
  return d > 0.0 ? num.max_abs() / d : num.max_abs();
}

void measure(const Calculus& calc, CohomologyBasis& b) {
  const int n = calc.dim();
  b.closure_residual = 0.0;
  b.coclosure_residual = 0.0;
  b.normalization_residual = 0.0;
  for (std::size_t a = 0; a < b.gammas.size(); ++a) {
    const auto& g = b.gammas[a];
    if (b.degree < n) b.closure_residual = std::max(b.closure_residual, sup_ratio(calc.d(g), g));
    if (b.degree > 0)
      b.coclosure_residual = std::max(b.coclosure_residual, sup_ratio(calc.delta(g), g));
    for (std::size_t c = 0; c < b.cycles.size(); ++c) {
      const double target = (a == c) ? 1.0 : 0.0;
      b.normalization_residual =
          std::max(b.normalization_residual, std::abs(integrate_cycle(g, b.cycles[c]) - target));
    }
  }
}

}  // namespace

CohomologyBasis build_basis(const Calculus& calc, int p, const BasisOptions& opts) {
  const auto& grid = calc.grid();
  const int n = grid.dim();
  if (p < 0 || p > n) throw std::invalid_argument("build_basis: degree outside 0..n");
  CohomologyBasis b;
  b.degree = p;
  b.masks = degree_masks(n, p);
  b.betti = static_cast<int>(b.masks.size());

  for (std::size_t k = 0; k < b.masks.size(); ++k) {
    DiscreteForm seed(grid, p);
    double period = 1.0;
    for (int a : mask_axes(b.masks[k])) period *= grid.spec().period[a];
    auto comp = seed.component(k);
    std::fill(comp.begin(), comp.end(), 1.0 / period);

    if (!grid.constant_metric() && p > 0) {
      for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        const DiscreteForm src = calc.delta(seed);
        if (src.max_abs() <= opts.coclosure_tol * seed.max_abs()) break;
        const GreenResult alpha = green_solve(calc, src, opts.green);
        seed -= calc.d(alpha.solution);
        b.projection_sweeps = std::max(b.projection_sweeps, sweep + 1);
      }
    }
    b.gammas.push_back(std::move(seed));
    b.cycles.push_back(coordinate_cycle(grid, b.masks[k]));
  }

  const auto beta = static_cast<Eigen::Index>(b.betti);
  Eigen::MatrixXd cyc(beta, beta);
  for (Eigen::Index a = 0; a < beta; ++a)
    for (Eigen::Index c = 0; c < beta; ++c) cyc(a, c) = integrate_cycle(b.gammas[a], b.cycles[c]);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(cyc);
  if (!lu.isInvertible())
    throw std::runtime_error("build_basis: cycle-integral matrix is singular (seed forms are not independent)");
  const Eigen::MatrixXd inv = lu.inverse();
  if (!inv.isIdentity(0.0)) {
    std::vector<DiscreteForm> renormed;
    for (Eigen::Index a = 0; a < beta; ++a) {
      DiscreteForm g(grid, p);
      for (Eigen::Index c = 0; c < beta; ++c)
        if (inv(a, c) != 0.0) g.add_scaled(inv(a, c), b.gammas[c]);
      renormed.push_back(std::move(g));
    }
    b.gammas = std::move(renormed);
  }
  measure(calc, b);
  return b;
}

PairingMatrix matrix_E(const CohomologyBasis& bp, const CohomologyBasis& bq, double pair_tol) {
  if (bp.gammas.empty() || bq.gammas.empty()) throw std::invalid_argument("matrix_E: empty basis");
  const int n = bp.gammas.front().dim();
  if (bp.degree + bq.degree != n) throw std::invalid_argument("matrix_E: degrees are not complementary");
  if (bp.betti != bq.betti) throw std::invalid_argument("matrix_E: Betti numbers differ");
  const auto beta = static_cast<Eigen::Index>(bp.betti);
  PairingMatrix out;
  out.E.resize(beta, beta);
  for (Eigen::Index a = 0; a < beta; ++a)
    for (Eigen::Index b = 0; b < beta; ++b)
      out.E(a, b) = integrate_manifold(wedge(bp.gammas[a], bq.gammas[b]));
  out.P.assign(beta, -1);
  for (Eigen::Index a = 0; a < beta; ++a) {
    const double big = out.E.row(a).cwiseAbs().maxCoeff();
    int hits = 0;
    for (Eigen::Index b = 0; b < beta; ++b) {
      if (std::abs(out.E(a, b)) > pair_tol * big) {
        ++hits;
        out.P[a] = static_cast<int>(b);
      }
    }
    if (big == 0.0 || hits != 1)
      throw std::runtime_error("matrix_E: duality not resolved at this resolution (row " +
                               std::to_string(a) + ")");
  }
  return out;
}

Eigen::MatrixXd matrix_T(const Calculus& calc, const CohomologyBasis& bp, const CohomologyBasis& bq) {
  if (bp.degree + bq.degree != calc.dim())
    throw std::invalid_argument("matrix_T: degrees are not complementary");
  Eigen::MatrixXd T(bp.betti, bq.betti);
  for (int a = 0; a < bp.betti; ++a) {
    const DiscreteForm s = calc.star(bp.gammas[a]);
    for (int b = 0; b < bq.betti; ++b) T(a, b) = integrate_cycle(s, bq.cycles[b]);
  }
  return T;
}

Eigen::MatrixXd matrix_Lambda(const Calculus& calc, const CohomologyBasis& bp) {
  Eigen::MatrixXd L(bp.betti, bp.betti);
  for (int a = 0; a < bp.betti; ++a)
    for (int b = 0; b <= a; ++b) L(a, b) = L(b, a) = calc.pairing(bp.gammas[a], bp.gammas[b]);
  return L;
}

double expansion_residual(const Calculus& calc, const CohomologyBasis& bp,
                          const CohomologyBasis& bq, const Eigen::MatrixXd& T) {
  double worst = 0.0;
  for (int a = 0; a < bp.betti; ++a) {
    const DiscreteForm s = calc.star(bp.gammas[a]);
    DiscreteForm diff = s;
    for (int b = 0; b < bq.betti; ++b) diff.add_scaled(-T(a, b), bq.gammas[b]);
    worst = std::max(worst, sup_ratio(diff, s));
  }
  return worst;
}

double TripleCheck::max_identity_residual() const {
  return std::max({product_residual, gram_residual, constraint_residual, duality_residual,
                   lambda_symmetry});
}

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TripleCheck verify_triple(const MatrixTriple& tp, const MatrixTriple& tq) {
  const int n = tp.dim;
  const int p = tp.degree;
  if (tq.degree != n - p) throw std::invalid_argument("verify_triple: triples are not complementary");
  const auto beta = tp.E.rows();
  if (tp.E.cols() != beta || tp.T.rows() != beta || tp.Lambda.rows() != beta || tq.E.rows() != beta)
    throw std::invalid_argument("verify_triple: matrix sizes differ");
  TripleCheck c;
  c.D_parity = sign_D(p, n, tp.negatives);
  const double sD = parity_sign(c.D_parity);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(beta, beta);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(tq.E);
  if (!lu.isInvertible()) throw std::runtime_error("verify_triple: E is singular");

  c.product_residual = max_abs(tq.T * tp.T - sD * I);
  c.gram_residual = max_abs(tp.E * tp.T.transpose() - tp.Lambda);
  c.constraint_residual = max_abs(tp.Lambda * lu.inverse() * tq.Lambda - sD * tp.E);
  c.duality_residual = max_abs(tp.E - parity_sign(p * (n - p)) * tq.E.transpose());
  c.lambda_symmetry = max_abs(tp.Lambda - tp.Lambda.transpose());
  c.det_T = tp.T.determinant();
  c.real_admissible = ((beta * c.D_parity) % 2) == 0;
  c.reality_residual = std::abs(c.det_T * c.det_T - parity_sign(static_cast<int>(beta) * c.D_parity));
  return c;
}

TripleCheck verify_triple(const Eigen::MatrixXd& E, const Eigen::MatrixXd& T,
                          const Eigen::MatrixXd& Lambda, int D_parity) {
  const auto beta = E.rows();
  if (E.cols() != beta || T.rows() != beta || T.cols() != beta || Lambda.rows() != beta ||
      Lambda.cols() != beta)
    throw std::invalid_argument("verify_triple: matrix sizes differ");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(E);
  if (!lu.isInvertible()) throw std::runtime_error("verify_triple: E is singular");
  TripleCheck c;
  c.D_parity = D_parity & 1;
  const double sD = parity_sign(c.D_parity);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(beta, beta);
  c.product_residual = max_abs(T * T - sD * I);
  c.gram_residual = max_abs(E * T.transpose() - Lambda);
  c.constraint_residual = max_abs(Lambda * lu.inverse() * Lambda - sD * E);
  c.lambda_symmetry = max_abs(Lambda - Lambda.transpose());
  c.det_T = T.determinant();
  c.real_admissible = ((beta * c.D_parity) % 2) == 0;
  c.reality_residual = std::abs(c.det_T * c.det_T - parity_sign(static_cast<int>(beta) * c.D_parity));
  return c;
}

CohomologySystem::CohomologySystem(const Calculus& calc, std::vector<int> degrees,
                                   const BasisOptions& opts)
    : calc_(&calc) {
  if (degrees.empty())
    for (int p = 0; p <= calc.dim(); ++p) degrees.push_back(p);
  build(degrees, opts);
}

void CohomologySystem::build(const std::vector<int>& degrees, const BasisOptions& opts) {
  const int n = calc_->dim();
  built_.assign(n + 1, false);
  for (int p : degrees) {
    if (p < 0 || p > n) throw std::invalid_argument("CohomologySystem: degree outside 0..n");
    built_[p] = built_[n - p] = true;
  }
  bases_.resize(n + 1);
  triples_.resize(n + 1);
  for (int p = 0; p <= n; ++p)
    if (built_[p]) bases_[p] = build_basis(*calc_, p, opts);
  for (int p = 0; p <= n; ++p) {
    if (!built_[p]) continue;
    const auto& bp = bases_[p];
    const auto& bq = bases_[n - p];
    auto& t = triples_[p];
    t.degree = p;
    t.dim = n;
    t.negatives = calc_->negatives();
    PairingMatrix pm = matrix_E(bp, bq);
    t.E = std::move(pm.E);
    t.P = std::move(pm.P);
    t.T = matrix_T(*calc_, bp, bq);
    t.Lambda = matrix_Lambda(*calc_, bp);
  }
}

const CohomologyBasis& CohomologySystem::basis(int p) const {
  if (p < 0 || p >= static_cast<int>(built_.size()) || !built_[p])
    throw std::out_of_range("CohomologySystem: degree " + std::to_string(p) + " not built");
  return bases_[p];
}

const MatrixTriple& CohomologySystem::triple(int p) const {
  basis(p);
  return triples_[p];
}

Eigen::VectorXd CohomologySystem::class_coefficients(const DiscreteForm& phi) const {
  const int p = phi.degree();
  const auto& bq = basis(calc_->dim() - p);
  const auto& t = triple(p);
  Eigen::VectorXd w(bq.betti);
  for (int c = 0; c < bq.betti; ++c) w(c) = integrate_manifold(wedge(phi, bq.gammas[c]));
  return t.E.transpose().fullPivLu().solve(w);
}

Eigen::VectorXd CohomologySystem::cycle_integrals(const DiscreteForm& phi) const {
  const auto& bp = basis(phi.degree());
  Eigen::VectorXd u(bp.betti);
  for (int a = 0; a < bp.betti; ++a) u(a) = integrate_cycle(phi, bp.cycles[a]);
  return u;
}

DiscreteForm CohomologySystem::harmonic_part(int p, const Eigen::VectorXd& u) const {
  const auto& bp = basis(p);
  DiscreteForm h(calc_->grid(), p);
  for (int a = 0; a < bp.betti; ++a)
    if (u(a) != 0.0) h.add_scaled(u(a), bp.gammas[a]);
  return h;
}

}  // namespace phodge
