#include "phodge/calculus.hpp"

#include <stdexcept>

namespace phodge {

int sign_D(int p, int n, int s) {
  if (p < 0 || p > n) throw std::invalid_argument("sign_D: degree outside 0..n");
  return (p * (n - p) + s) & 1;
}

int sign_C(int p, int n, int s) {
  if (p < 0 || p > n) throw std::invalid_argument("sign_C: degree outside 0..n");
  return (n * p + n + 1 + s) & 1;
}

SignExponents sign_exponents(int p, int n, int s) { return {sign_D(p, n, s), sign_C(p, n, s)}; }

Calculus::Calculus(const PeriodicGrid& grid, int stencil_order)
    : grid_(&grid), stencil_(Stencil::central(stencil_order)) {
  const int n = grid.dim();
  const AxisMask full = (1u << n) - 1u;
  const std::size_t np = grid.size();
  star_coef_.resize(std::size_t{1} << n);
  weight_.resize(std::size_t{1} << n);
  const auto root = grid.sqrt_abs_g();
  for (AxisMask m = 0; m <= full; ++m) {
    const int perm = merge_sign(m, full & ~m);
    double eta = 1.0;
    for (int a : mask_axes(m)) eta *= grid.signature(a);
    auto& coef = star_coef_[m];
    auto& w = weight_[m];
    coef.resize(np);
    w.resize(np);
    for (std::size_t x = 0; x < np; ++x) {
      double c = root[x] * eta;
      for (int a : mask_axes(m)) c *= grid.inverse_metric(a)[x];
      coef[x] = perm * c;
      w[x] = c * grid.cell_volume();
    }
  }
}

DiscreteForm Calculus::star(const DiscreteForm& f) const {
  const int n = dim();
  const AxisMask full = (1u << n) - 1u;
  DiscreteForm out(*grid_, n - f.degree());
  for (std::size_t k = 0; k < f.num_components(); ++k) {
    const AxisMask m = f.mask(k);
    kern::scale_pointwise(star_coef_[m], 1.0, f.component(k), out[full & ~m]);
  }
  return out;
}

DiscreteForm Calculus::d(const DiscreteForm& f) const {
  const int n = dim();
  if (f.degree() >= n)
    throw std::invalid_argument("d: cannot differentiate a degree-" + std::to_string(f.degree()) +
                                " form on a " + std::to_string(n) + "-manifold");
  DiscreteForm out(*grid_, f.degree() + 1);
  for (std::size_t k = 0; k < f.num_components(); ++k) {
    const AxisMask m = f.mask(k);
    for (int a = 0; a < n; ++a) {
      const AxisMask leg = 1u << a;
      if (m & leg) continue;
      const double scale = merge_sign(leg, m) / grid_->step(a);
      kern::add_derivative(grid_->shape(), a, stencil_, scale, f.component(k), out[m | leg]);
    }
  }
  return out;
}

DiscreteForm Calculus::delta(const DiscreteForm& f) const {
  const int p = f.degree();
  if (p == 0) throw std::invalid_argument("delta: coderivative of a 0-form is undefined");
  DiscreteForm out = star(d(star(f)));
  out *= parity_sign(sign_C(p, dim(), negatives()));
  return out;
}

DiscreteForm Calculus::laplacian(const DiscreteForm& f) const {
  const int p = f.degree();
  DiscreteForm out(*grid_, p);
  if (p < dim()) out += delta(d(f));
  if (p > 0) out += d(delta(f));
  return out;
}

double Calculus::pairing(const DiscreteForm& a, const DiscreteForm& b) const {
  if (a.degree() != b.degree())
    throw std::invalid_argument("pairing: degree mismatch (" + std::to_string(a.degree()) +
                                " vs " + std::to_string(b.degree()) + ")");
  if (&a.grid() != grid_ || &b.grid() != grid_)
    throw std::invalid_argument("pairing: form lives on a different grid");
  double total = 0.0;
  for (std::size_t k = 0; k < a.num_components(); ++k)
    total += kern::weighted_dot(weight_[a.mask(k)], a.component(k), b.component(k));
  return total;
}

DiscreteForm Calculus::volume_form() const {
  DiscreteForm out(*grid_, dim());
  const auto root = grid_->sqrt_abs_g();
  std::copy(root.begin(), root.end(), out.component(0).begin());
  return out;
}

double Calculus::volume() const { return integrate_manifold(volume_form()); }

DiscreteForm Calculus::unit_form() const {
  DiscreteForm out = volume_form();
  out *= 1.0 / volume();
  return out;
}

}  // namespace phodge
