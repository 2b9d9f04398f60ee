#pragma once

#include <vector>

#include "phodge/form.hpp"
#include "phodge/kernels.hpp"

namespace phodge {

/// D(p) = p(n-p) + s, reduced mod 2. The star squares to (-1)^D(p) on p-forms.
int sign_D(int p, int n, int s);
/// C(p) = np + n + 1 + s, reduced mod 2. delta = (-1)^C(p) * star d star.
int sign_C(int p, int n, int s);

inline double parity_sign(int parity) { return (parity & 1) ? -1.0 : 1.0; }

struct SignExponents {
  int D_of_p = 0;
  int C_of_p = 0;
};
SignExponents sign_exponents(int p, int n, int s);

/// Exterior calculus on a PeriodicGrid with a diagonal metric. Holds the
/// pointwise star coefficients for every component mask.
class Calculus {
 public:
  explicit Calculus(const PeriodicGrid& grid, int stencil_order = 8);

  const PeriodicGrid& grid() const { return *grid_; }
  const Stencil& stencil() const { return stencil_; }
  int dim() const { return grid_->dim(); }
  int negatives() const { return grid_->negatives(); }

  DiscreteForm star(const DiscreteForm& f) const;
  DiscreteForm d(const DiscreteForm& f) const;
  DiscreteForm delta(const DiscreteForm& f) const;
  DiscreteForm laplacian(const DiscreteForm& f) const;

  /// (a, b) = integral of a ^ star(b).
  double pairing(const DiscreteForm& a, const DiscreteForm& b) const;

  /// Pointwise weight w_I(x) with (a, b) = sum_I sum_x w_I(x) a_I(x) b_I(x).
  /// Its sign is constant per component: the product of the signature entries in I.
  std::span<const double> pairing_weight(AxisMask m) const { return weight_[m]; }
  /// sign(I, Ic) sqrt|g| prod_{i in I} eta_i / g_ii, the coefficient mapping dx^I to dx^Ic.
  std::span<const double> star_coefficient(AxisMask m) const { return star_coef_[m]; }

  /// sqrt|g| dx^0 ^ ... ^ dx^{n-1}; equal to star(1).
  DiscreteForm volume_form() const;
  double volume() const;
  /// volume_form() / volume(), integrating to 1.
  DiscreteForm unit_form() const;

 private:
  const PeriodicGrid* grid_;
  Stencil stencil_;
  std::vector<std::vector<double>> star_coef_;
  std::vector<std::vector<double>> weight_;
};

}  // namespace phodge
