#include "phodge/form.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "phodge/kernels.hpp"

namespace phodge {

int mask_degree(AxisMask m) { return std::popcount(m); }

std::vector<int> mask_axes(AxisMask m) {
  std::vector<int> axes;
  for (int a = 0; m >> a; ++a)
    if (m & (1u << a)) axes.push_back(a);
  return axes;
}

AxisMask axes_mask(std::span<const int> axes) {
  AxisMask m = 0;
  for (int a : axes) m |= 1u << a;
  return m;
}

std::string mask_label(AxisMask m) {
  std::string s;
  for (int a : mask_axes(m)) s += std::to_string(a);
  return s;
}

namespace {

void combos(int n, int p, int start, AxisMask acc, std::vector<AxisMask>& out) {
  if (p == 0) {
    out.push_back(acc);
    return;
  }
  for (int a = start; a <= n - p; ++a) combos(n, p - 1, a + 1, acc | (1u << a), out);
}

}  // namespace

std::vector<AxisMask> degree_masks(int n, int p) {
  std::vector<AxisMask> out;
  if (p < 0 || p > n) return out;
  combos(n, p, 0, 0u, out);
  return out;
}

int merge_sign(AxisMask a, AxisMask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int i : mask_axes(a)) inversions += std::popcount(b & ((1u << i) - 1u));
  return (inversions % 2) ? -1 : 1;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / i;
  return r;
}

DiscreteForm::DiscreteForm(const PeriodicGrid& grid, int degree)
    : grid_(&grid), degree_(degree), masks_(degree_masks(grid.dim(), degree)) {
  if (degree < 0 || degree > grid.dim())
    throw std::invalid_argument("DiscreteForm: degree " + std::to_string(degree) +
                                " outside 0.." + std::to_string(grid.dim()));
  values_.assign(masks_.size() * grid.size(), 0.0);
}

std::size_t DiscreteForm::index_of(AxisMask m) const {
  auto it = std::find(masks_.begin(), masks_.end(), m);
  if (it == masks_.end())
    throw std::out_of_range("DiscreteForm: no component dx^" + mask_label(m));
  return static_cast<std::size_t>(it - masks_.begin());
}

std::span<double> DiscreteForm::component(std::size_t k) {
  return std::span<double>(values_).subspan(k * points(), points());
}

std::span<const double> DiscreteForm::component(std::size_t k) const {
  return std::span<const double>(values_).subspan(k * points(), points());
}

void DiscreteForm::require_compatible(const DiscreteForm& o) const {
  if (o.grid_ != grid_) throw std::invalid_argument("DiscreteForm: forms live on different grids");
  if (o.degree_ != degree_) throw std::invalid_argument("DiscreteForm: degree mismatch");
}

DiscreteForm& DiscreteForm::operator+=(const DiscreteForm& o) { return add_scaled(1.0, o); }
DiscreteForm& DiscreteForm::operator-=(const DiscreteForm& o) { return add_scaled(-1.0, o); }

DiscreteForm& DiscreteForm::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

DiscreteForm& DiscreteForm::add_scaled(double s, const DiscreteForm& o) {
  require_compatible(o);
  kern::axpy(s, o.values_, values_);
  return *this;
}

void DiscreteForm::set_zero() { std::fill(values_.begin(), values_.end(), 0.0); }

double DiscreteForm::max_abs() const { return kern::max_abs(values_); }

DiscreteForm operator+(DiscreteForm a, const DiscreteForm& b) { return a += b; }
DiscreteForm operator-(DiscreteForm a, const DiscreteForm& b) { return a -= b; }
DiscreteForm operator*(double s, DiscreteForm a) { return a *= s; }

DiscreteForm constant_form(const PeriodicGrid& grid, int degree, std::span<const double> coeff) {
  DiscreteForm f(grid, degree);
  if (coeff.size() != f.num_components())
    throw std::invalid_argument("constant_form: expected one coefficient per component");
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    auto c = f.component(k);
    std::fill(c.begin(), c.end(), coeff[k]);
  }
  return f;
}

DiscreteForm wedge(const DiscreteForm& a, const DiscreteForm& b) {
  if (&a.grid() != &b.grid()) throw std::invalid_argument("wedge: forms live on different grids");
  const int q = a.degree() + b.degree();
  if (q > a.dim())
    throw std::invalid_argument("wedge: degree " + std::to_string(q) + " exceeds dimension " +
                                std::to_string(a.dim()));
  DiscreteForm out(a.grid(), q);
  const std::size_t np = a.points();
  for (std::size_t i = 0; i < a.num_components(); ++i) {
    for (std::size_t j = 0; j < b.num_components(); ++j) {
      const int sgn = merge_sign(a.mask(i), b.mask(j));
      if (sgn == 0) continue;
      auto dst = out[a.mask(i) | b.mask(j)];
      auto x = a.component(i);
      auto y = b.component(j);
      for (std::size_t t = 0; t < np; ++t) dst[t] += sgn * x[t] * y[t];
    }
  }
  return out;
}

double integrate_manifold(const DiscreteForm& f) {
  if (f.degree() != f.dim())
    throw std::invalid_argument("integrate_manifold: expected a top-degree form, got degree " +
                                std::to_string(f.degree()));
  return kern::sum(f.component(0)) * f.grid().cell_volume();
}

AxisMask CycleSpec::mask() const { return axes_mask(axes); }

void CycleSpec::validate(const PeriodicGrid& grid) const {
  if (static_cast<int>(offset.size()) != grid.dim())
    throw std::invalid_argument("CycleSpec: offset needs one entry per axis");
  for (std::size_t k = 0; k < axes.size(); ++k) {
    if (axes[k] < 0 || axes[k] >= grid.dim())
      throw std::invalid_argument("CycleSpec: axis out of range");
    if (k > 0 && axes[k] <= axes[k - 1])
      throw std::invalid_argument("CycleSpec: axes must be strictly increasing");
  }
  for (int a = 0; a < grid.dim(); ++a)
    if (offset[a] < 0 || offset[a] >= grid.points(a))
      throw std::invalid_argument("CycleSpec: offset out of range");
}

CycleSpec coordinate_cycle(const PeriodicGrid& grid, AxisMask m) {
  CycleSpec z;
  z.axes = mask_axes(m);
  z.offset.assign(grid.dim(), 0);
  return z;
}

double integrate_cycle(const DiscreteForm& f, const CycleSpec& z) {
  const auto& grid = f.grid();
  z.validate(grid);
  if (static_cast<int>(z.axes.size()) != f.degree())
    throw std::invalid_argument("integrate_cycle: cycle dimension " +
                                std::to_string(z.axes.size()) + " does not match degree " +
                                std::to_string(f.degree()));
  const AxisMask m = z.mask();
  const auto comp = f[m];

  std::size_t base = 0;
  for (int a = 0; a < grid.dim(); ++a)
    if (!(m & (1u << a))) base += static_cast<std::size_t>(z.offset[a]) * grid.stride(a);

  std::size_t count = 1;
  double measure = 1.0;
  for (int a : z.axes) {
    count *= static_cast<std::size_t>(grid.points(a));
    measure *= grid.step(a);
  }

  double total = 0.0;
  std::array<int, kMaxDim> idx{};
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t x = base;
    for (std::size_t k = 0; k < z.axes.size(); ++k) x += idx[k] * grid.stride(z.axes[k]);
    total += comp[x];
    for (std::size_t k = z.axes.size(); k-- > 0;) {
      if (++idx[k] < grid.points(z.axes[k])) break;
      idx[k] = 0;
    }
  }
  return total * measure;
}

}  // namespace phodge
