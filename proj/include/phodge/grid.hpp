#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace phodge {

inline constexpr int kMaxDim = 4;

enum class MetricKind { flat, embedded_torus, custom };

/// Positive scale factor g_aa for `axis` at the physical coordinates `coords`.
using ScaleFunction = std::function<double(int axis, std::span<const double> coords)>;

/// Diagonal metric profile. The sign of each g_aa lives in GridSpec::signature;
/// the profile only supplies the positive magnitude.
struct MetricProfile {
  MetricKind kind = MetricKind::flat;
  double major_radius = 0.0;
  double minor_radius = 0.0;
  ScaleFunction scale;

  static MetricProfile flat() { return {}; }
  static MetricProfile embedded_torus(double major, double minor);
  static MetricProfile custom(ScaleFunction f);
};

struct GridSpec {
  int dim = 2;
  std::vector<int> points;
  std::vector<double> period;
  std::vector<int> signature;
  MetricProfile metric;

  /// n-torus with `n` points and period 2*pi on every axis. A signature entry
  /// of -1 is placed on the first `negatives` axes (time-first convention).
  static GridSpec torus(int dim, int n, int negatives = 0);
  static GridSpec embedded_torus(int n, double major, double minor);

  int negatives() const;
  /// Throws std::invalid_argument naming the violated invariant.
  void validate() const;
};

void to_json(nlohmann::json& j, const GridSpec& spec);
void from_json(const nlohmann::json& j, GridSpec& spec);

/// Row-major periodic lattice: the last axis is contiguous.
struct GridShape {
  int dim = 0;
  std::array<int, kMaxDim> extent{};
  std::array<std::size_t, kMaxDim> stride{};
  std::size_t size = 0;
};

class PeriodicGrid {
 public:
  explicit PeriodicGrid(GridSpec spec);

  const GridSpec& spec() const { return spec_; }
  const GridShape& shape() const { return shape_; }
  int dim() const { return spec_.dim; }
  std::size_t size() const { return shape_.size; }
  int points(int axis) const { return spec_.points[axis]; }
  double step(int axis) const { return step_[axis]; }
  std::size_t stride(int axis) const { return shape_.stride[axis]; }
  int signature(int axis) const { return spec_.signature[axis]; }
  int negatives() const { return negatives_; }
  double cell_volume() const { return cell_volume_; }

  std::span<const double> metric(int axis) const { return metric_[axis]; }
  std::span<const double> inverse_metric(int axis) const { return inverse_metric_[axis]; }
  std::span<const double> sqrt_abs_g() const { return sqrt_abs_g_; }

  /// True when every g_aa is constant over the lattice.
  bool constant_metric() const { return constant_metric_; }

  std::array<int, kMaxDim> multi_index(std::size_t linear) const;
  std::size_t linear_index(std::span<const int> index) const;
  double coordinate(int axis, int i) const { return step_[axis] * i; }

 private:
  GridSpec spec_;
  GridShape shape_;
  std::array<double, kMaxDim> step_{};
  double cell_volume_ = 1.0;
  int negatives_ = 0;
  bool constant_metric_ = true;
  std::array<std::vector<double>, kMaxDim> metric_;
  std::array<std::vector<double>, kMaxDim> inverse_metric_;
  std::vector<double> sqrt_abs_g_;
};

inline PeriodicGrid build_grid(GridSpec spec) { return PeriodicGrid(std::move(spec)); }

}  // namespace phodge
