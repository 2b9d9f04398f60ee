#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "phodge/grid.hpp"

namespace phodge {

/// Antisymmetric periodic central-difference stencil:
///   (D f)_i = (1/h) sum_j w_j (f_{i+j} - f_{i-j}),  j = 1..radius.
struct Stencil {
  int order = 8;
  int radius = 4;
  std::array<double, 4> weights{};

  /// Supported orders: 2, 4, 6, 8.
  static Stencil central(int order);

  /// Eigenvalue of D on exp(i k x) divided by i, for theta = k h.
  double symbol(double theta, double h) const;
};

enum class Backend { serial, openmp };

/// Reductions are summed in fixed blocks of kReduceBlock elements and the block
/// partials are added in order, so serial and OpenMP results agree bitwise.
inline constexpr std::size_t kReduceBlock = 4096;

namespace serial {

/// out += scale * sum_j w_j (in_{i+j} - in_{i-j}) along axis; scale carries 1/h.
void add_derivative(const GridShape& shape, int axis, const Stencil& st, double scale,
                    std::span<const double> in, std::span<double> out);
/// out = s * coef * in
void scale_pointwise(std::span<const double> coef, double s, std::span<const double> in,
                     std::span<double> out);
void axpy(double a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> a, std::span<const double> b);
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);
double sum(std::span<const double> a);
double max_abs(std::span<const double> a);

}  // namespace serial

namespace omp {

void add_derivative(const GridShape& shape, int axis, const Stencil& st, double scale,
                    std::span<const double> in, std::span<double> out);
void scale_pointwise(std::span<const double> coef, double s, std::span<const double> in,
                     std::span<double> out);
void axpy(double a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> a, std::span<const double> b);
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);
double sum(std::span<const double> a);
double max_abs(std::span<const double> a);

int max_threads();

}  // namespace omp

/// Process-wide backend used by the library operators (default: openmp when built with it).
void set_backend(Backend b);
Backend backend();

namespace kern {

void add_derivative(const GridShape& shape, int axis, const Stencil& st, double scale,
                    std::span<const double> in, std::span<double> out);
void scale_pointwise(std::span<const double> coef, double s, std::span<const double> in,
                     std::span<double> out);
void axpy(double a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> a, std::span<const double> b);
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);
double sum(std::span<const double> a);
double max_abs(std::span<const double> a);

}  // namespace kern

}  // namespace phodge
