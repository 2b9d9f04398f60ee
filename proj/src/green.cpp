#include "phodge/green.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "spectral.hpp"

namespace phodge {

void to_json(nlohmann::json& j, const SolveReport& r) {
  j = nlohmann::json{{"iterations", r.iterations},
                     {"relative_residual", r.relative_residual},
                     {"deflated_dims", r.deflated_dims},
                     {"deflated_fraction", r.deflated_fraction}};
}

DiscreteForm project_out(const Calculus& calc, const DiscreteForm& f,
                         const std::vector<DiscreteForm>& kernel) {
  DiscreteForm out = f;
  if (kernel.empty()) return out;
  const auto k = static_cast<Eigen::Index>(kernel.size());
  Eigen::MatrixXd gram(k, k);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    rhs(i) = calc.pairing(kernel[i], f);
    for (Eigen::Index j = 0; j <= i; ++j) gram(i, j) = gram(j, i) = calc.pairing(kernel[i], kernel[j]);
  }
  const Eigen::VectorXd c = gram.completeOrthogonalDecomposition().solve(rhs);
  for (Eigen::Index i = 0; i < k; ++i) out.add_scaled(-c(i), kernel[i]);
  return out;
}

namespace {

using Vec = std::vector<double>;

double norm2(const Vec& v) { return std::sqrt(kern::dot(v, v)); }

/// Discrete symbol of the flat-model Laplacian at every half-spectrum position,
/// using per-axis mean inverse metrics.
class SymbolTable {
 public:
  SymbolTable(const Calculus& calc, const detail::RealFft& fft) {
    const auto& grid = calc.grid();
    const int n = grid.dim();
    std::array<double, kMaxDim> ginv{};
    for (int a = 0; a < n; ++a) {
      const auto gi = grid.inverse_metric(a);
      ginv[a] = kern::sum(gi) / static_cast<double>(gi.size()) * grid.signature(a);
    }
    values_.resize(fft.spectrum_size());
    for (std::size_t k = 0; k < values_.size(); ++k) {
      const auto idx = fft.wave_index(k);
      double s = 0.0;
      for (int a = 0; a < n; ++a) {
        const double theta = 2.0 * std::numbers::pi * idx[a] / grid.points(a);
        const double sa = calc.stencil().symbol(theta, grid.step(a));
        s += ginv[a] * sa * sa;
      }
      values_[k] = std::abs(s);
      max_ = std::max(max_, values_[k]);
    }
    // Count kernel modes over the full lattice, where the half spectrum stands
    // for its conjugate partner as well.
    const int last = n - 1;
    const int nl = grid.points(last);
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (!is_kernel(k, 1e-10)) continue;
      const int kl = fft.wave_index(k)[last];
      kernel_modes_ += (kl == 0 || 2 * kl == nl) ? 1 : 2;
    }
  }

  bool is_kernel(std::size_t k, double cutoff) const { return values_[k] < cutoff * max_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double max() const { return max_; }
  int kernel_modes() const { return kernel_modes_; }

 private:
  std::vector<double> values_;
  double max_ = 0.0;
  int kernel_modes_ = 0;
};

class Solver {
 public:
  Solver(const Calculus& calc, int degree, const GreenOptions& opts)
      : calc_(calc),
        grid_(calc.grid()),
        degree_(degree),
        opts_(opts),
        fft_(grid_.shape()),
        symbols_(calc, fft_),
        masks_(degree_masks(grid_.dim(), degree)) {
    const std::size_t np = grid_.size();
    mean_weight_.resize(masks_.size());
    for (std::size_t c = 0; c < masks_.size(); ++c) {
      const auto w = calc.pairing_weight(masks_[c]);
      double acc = 0.0;
      for (double v : w) acc += std::abs(v);
      mean_weight_[c] = acc / static_cast<double>(np);
    }
    if (!grid_.constant_metric()) build_kernel_basis();
  }

  int deflated_dims() const {
    if (grid_.constant_metric()) return symbols_.kernel_modes() * static_cast<int>(masks_.size());
    return static_cast<int>(kernel_.size());
  }

  DiscreteForm project(const DiscreteForm& f) const {
    if (!grid_.constant_metric()) return project_out(calc_, f, kernel_);
    DiscreteForm out = f;
    std::vector<std::complex<double>> spec;
    for (std::size_t c = 0; c < out.num_components(); ++c) {
      fft_.forward(out.component(c), spec);
      for (std::size_t k = 0; k < spec.size(); ++k)
        if (symbols_.is_kernel(k, opts_.symbol_cutoff)) spec[k] = 0.0;
      fft_.backward(spec, out.component(c));
    }
    return out;
  }

  void apply(const Vec& x, Vec& y) const {
    DiscreteForm f(grid_, degree_);
    std::copy(x.begin(), x.end(), f.data().begin());
    const DiscreteForm lf = calc_.laplacian(f);
    y.resize(x.size());
    const std::size_t np = grid_.size();
    for (std::size_t c = 0; c < masks_.size(); ++c) {
      const auto w = calc_.pairing_weight(masks_[c]);
      const auto src = lf.component(c);
      kern::scale_pointwise(w, 1.0, src, std::span<double>(y).subspan(c * np, np));
    }
  }

  void precondition(const Vec& r, Vec& z) const {
    z.resize(r.size());
    const std::size_t np = grid_.size();
    std::vector<std::complex<double>> spec;
    for (std::size_t c = 0; c < masks_.size(); ++c) {
      fft_.forward(std::span<const double>(r).subspan(c * np, np), spec);
      for (std::size_t k = 0; k < spec.size(); ++k) {
        const double s = symbols_.is_kernel(k, opts_.symbol_cutoff) ? symbols_.max() : symbols_[k];
        spec[k] /= s * mean_weight_[c];
      }
      fft_.backward(spec, std::span<double>(z).subspan(c * np, np));
    }
  }

  /// Preconditioned MINRES (Paige-Saunders) for the symmetric system M x = b,
  /// continuing from x. Returns iterations used.
  int minres(const Vec& b, Vec& x, double rtol, int max_iter) const {
    const std::size_t n = b.size();
    Vec ax;
    apply(x, ax);
    Vec r1(n);
    for (std::size_t i = 0; i < n; ++i) r1[i] = b[i] - ax[i];
    Vec y;
    precondition(r1, y);
    double beta1 = kern::dot(r1, y);
    if (!(beta1 > 0.0)) return 0;
    beta1 = std::sqrt(beta1);

    Vec r2 = r1, v(n), w(n, 0.0), w1(n), w2(n, 0.0);
    double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
    double cs = -1.0, sn = 0.0;
    int itn = 0;
    while (itn < max_iter) {
      ++itn;
      const double s = 1.0 / beta;
      for (std::size_t i = 0; i < n; ++i) v[i] = s * y[i];
      apply(v, y);
      if (itn >= 2) kern::axpy(-beta / oldb, r1, y);
      const double alfa = kern::dot(v, y);
      kern::axpy(-alfa / beta, r2, y);
      r1.swap(r2);
      r2 = y;
      precondition(r2, y);
      oldb = beta;
      const double bb = kern::dot(r2, y);
      if (bb < 0.0) break;
      beta = std::sqrt(bb);

      const double oldeps = epsln;
      const double delta = cs * dbar + sn * alfa;
      const double gbar = sn * dbar - cs * alfa;
      epsln = sn * beta;
      dbar = -cs * beta;
      const double gamma = std::max(std::hypot(gbar, beta), std::numeric_limits<double>::min());
      cs = gbar / gamma;
      sn = beta / gamma;
      const double phi = cs * phibar;
      phibar = sn * phibar;

      w1.swap(w2);
      w2.swap(w);
      const double denom = 1.0 / gamma;
      for (std::size_t i = 0; i < n; ++i) w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) * denom;
      kern::axpy(phi, w, x);

      if (phibar <= rtol * beta1 || beta == 0.0) break;
    }
    return itn;
  }

  const std::vector<DiscreteForm>& kernel() const { return kernel_; }

 private:
  void build_kernel_basis() {
    const int n = grid_.dim();
    if (degree_ == 0 || degree_ == n) {
      const auto root = grid_.sqrt_abs_g();
      for (unsigned pattern = 0; pattern < (1u << n); ++pattern) {
        DiscreteForm k(grid_, degree_);
        auto comp = k.component(0);
        for (std::size_t x = 0; x < grid_.size(); ++x) {
          const auto idx = grid_.multi_index(x);
          int parity = 0;
          for (int a = 0; a < n; ++a)
            if (pattern & (1u << a)) parity += idx[a];
          const double sgn = (parity & 1) ? -1.0 : 1.0;
          comp[x] = degree_ == 0 ? sgn : sgn * root[x];
        }
        kernel_.push_back(std::move(k));
      }
    }
    for (const auto& h : opts_.hints)
      if (h.degree() == degree_) kernel_.push_back(h);
  }

  const Calculus& calc_;
  const PeriodicGrid& grid_;
  int degree_;
  const GreenOptions& opts_;
  detail::RealFft fft_;
  SymbolTable symbols_;
  std::vector<AxisMask> masks_;
  std::vector<double> mean_weight_;
  std::vector<DiscreteForm> kernel_;
};

}  // namespace

GreenResult green_solve(const Calculus& calc, const DiscreteForm& source, const GreenOptions& opts) {
  const auto& grid = calc.grid();
  const int p = source.degree();
  Solver solver(calc, p, opts);
  SolveReport report;
  report.deflated_dims = solver.deflated_dims();

  const double src_norm = norm2(Vec(source.data().begin(), source.data().end()));
  DiscreteForm target = solver.project(source);
  DiscreteForm solution(grid, p);
  if (src_norm == 0.0) return {std::move(solution), report};
  {
    DiscreteForm removed = source - target;
    const Vec rv(removed.data().begin(), removed.data().end());
    report.deflated_fraction = norm2(rv) / src_norm;
  }
  const Vec tv(target.data().begin(), target.data().end());
  if (norm2(tv) <= opts.tol * src_norm) return {std::move(solution), report};

  const std::size_t np = grid.size();
  auto weighted = [&](const DiscreteForm& f) {
    Vec b(f.data().size());
    for (std::size_t c = 0; c < f.num_components(); ++c)
      kern::scale_pointwise(calc.pairing_weight(f.mask(c)), 1.0, f.component(c),
                            std::span<double>(b).subspan(c * np, np));
    return b;
  };

  // Each sweep solves for a correction against the projected current residual,
  // which keeps roundoff from accumulating along the discrete kernel.
  DiscreteForm residual = target;
  double best = std::numeric_limits<double>::infinity();
  Vec best_x(solution.data().begin(), solution.data().end());
  double rel = norm2(tv) / src_norm;
  for (int sweep = 0; sweep < 12 && report.iterations < opts.max_iter; ++sweep) {
    const Vec b = weighted(solver.project(residual));
    const double inner_tol = std::max(0.5 * opts.tol / rel, 1e-8);
    Vec dx(b.size(), 0.0);
    report.iterations +=
        solver.minres(b, dx, inner_tol, std::min(opts.max_iter - report.iterations, 1000));
    kern::axpy(1.0, dx, solution.data());
    solution = solver.project(solution);
    residual = target - calc.laplacian(solution);
    rel = norm2(Vec(residual.data().begin(), residual.data().end())) / src_norm;
    if (rel < best) {
      best = rel;
      best_x.assign(solution.data().begin(), solution.data().end());
    } else {
      break;
    }
    if (rel <= opts.tol) break;
  }
  report.relative_residual = best;
  std::copy(best_x.begin(), best_x.end(), solution.data().begin());
  if (!(best <= opts.tol))
  {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "green_solve: no convergence (relative residual %.3e after %d iterations)", best,
                  report.iterations);
    throw SolveError(msg, report);
  }
  return {std::move(solution), report};
}

}  // namespace phodge
