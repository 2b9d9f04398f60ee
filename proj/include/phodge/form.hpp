#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "phodge/grid.hpp"

namespace phodge {

/// Bitmask of coordinate axes; bit a set means dx^a is present.
using AxisMask = unsigned;

int mask_degree(AxisMask m);
std::vector<int> mask_axes(AxisMask m);
AxisMask axes_mask(std::span<const int> axes);
std::string mask_label(AxisMask m);

/// Masks of degree p in lexicographic order of their sorted index tuples.
std::vector<AxisMask> degree_masks(int n, int p);

/// Sign of the permutation that sorts the concatenation (a, b); 0 if they overlap.
int merge_sign(AxisMask a, AxisMask b);

std::size_t binomial(int n, int k);

/// Degree-p form sampled at grid nodes. Components follow degree_masks order and
/// are stored contiguously; the grid must outlive the form.
class DiscreteForm {
 public:
  DiscreteForm(const PeriodicGrid& grid, int degree);

  const PeriodicGrid& grid() const { return *grid_; }
  int degree() const { return degree_; }
  int dim() const { return grid_->dim(); }
  std::size_t points() const { return grid_->size(); }
  std::size_t num_components() const { return masks_.size(); }
  const std::vector<AxisMask>& masks() const { return masks_; }
  AxisMask mask(std::size_t k) const { return masks_[k]; }

  /// Position of `m` in masks(); throws std::out_of_range if absent.
  std::size_t index_of(AxisMask m) const;

  std::span<double> component(std::size_t k);
  std::span<const double> component(std::size_t k) const;
  std::span<double> operator[](AxisMask m) { return component(index_of(m)); }
  std::span<const double> operator[](AxisMask m) const { return component(index_of(m)); }

  std::span<double> data() { return values_; }
  std::span<const double> data() const { return values_; }

  DiscreteForm& operator+=(const DiscreteForm& o);
  DiscreteForm& operator-=(const DiscreteForm& o);
  DiscreteForm& operator*=(double s);
  /// this += s * o
  DiscreteForm& add_scaled(double s, const DiscreteForm& o);
  void set_zero();

  double max_abs() const;

 private:
  void require_compatible(const DiscreteForm& o) const;

  const PeriodicGrid* grid_;
  int degree_;
  std::vector<AxisMask> masks_;
  std::vector<double> values_;
};

DiscreteForm operator+(DiscreteForm a, const DiscreteForm& b);
DiscreteForm operator-(DiscreteForm a, const DiscreteForm& b);
DiscreteForm operator*(double s, DiscreteForm a);

/// Constant-coefficient form sum_k coeff[k] dx^{mask_k}.
DiscreteForm constant_form(const PeriodicGrid& grid, int degree, std::span<const double> coeff);

DiscreteForm wedge(const DiscreteForm& a, const DiscreteForm& b);

/// Rectangle-rule integral of a top-degree form.
double integrate_manifold(const DiscreteForm& f);

struct CycleSpec {
  std::vector<int> axes;
  /// Grid index along every axis; entries for spanned axes are ignored.
  std::vector<int> offset;

  AxisMask mask() const;
  void validate(const PeriodicGrid& grid) const;
};

/// Coordinate sub-torus spanned by `m`, anchored at index 0 on the other axes.
CycleSpec coordinate_cycle(const PeriodicGrid& grid, AxisMask m);

/// Rectangle-rule integral of the pullback of f to the sub-torus z.
double integrate_cycle(const DiscreteForm& f, const CycleSpec& z);

}  // namespace phodge
