#include <algorithm>
#include <cmath>
#include <vector>

#include "phodge/kernels.hpp"

#ifdef PHODGE_HAVE_OPENMP
#include <omp.h>
#endif

namespace phodge::omp {

namespace {

std::size_t num_blocks(std::size_t n) { return (n + kReduceBlock - 1) / kReduceBlock; }

template <class F>
double blocked_sum(std::size_t n, F&& block) {
  const auto nb = static_cast<std::ptrdiff_t>(num_blocks(n));
  std::vector<double> partial(static_cast<std::size_t>(nb), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
    const std::size_t hi = std::min(n, lo + kReduceBlock);
    partial[static_cast<std::size_t>(b)] = block(lo, hi);
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

void add_derivative(const GridShape& shape, int axis, const Stencil& st, double scale,
                    std::span<const double> in, std::span<double> out) {
  const std::size_t n = static_cast<std::size_t>(shape.extent[axis]);
  const std::size_t inner = shape.stride[axis];
  const std::size_t outer = shape.size / (n * inner);
  const auto rows = static_cast<std::ptrdiff_t>(outer * n);
  const double* src = in.data();
  double* out_ptr = out.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const std::size_t o = static_cast<std::size_t>(r) / n;
    const std::size_t i = static_cast<std::size_t>(r) % n;
    const std::size_t base = o * n * inner;
    double* dst = out_ptr + base + i * inner;
    for (int j = 1; j <= st.radius; ++j) {
      const double w = scale * st.weights[j - 1];
      const double* up = src + base + ((i + j) % n) * inner;
      const double* dn = src + base + ((i + n - j) % n) * inner;
#pragma omp simd
      for (std::size_t t = 0; t < inner; ++t) dst[t] += w * (up[t] - dn[t]);
    }
  }
}

void scale_pointwise(std::span<const double> coef, double s, std::span<const double> in,
                     std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for simd schedule(static)
  for (std::ptrdiff_t x = 0; x < n; ++x) out[x] = s * coef[x] * in[x];
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for simd schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(std::span<const double> a, std::span<const double> b) {
  return blocked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
    double part = 0.0;
    for (std::size_t i = lo; i < hi; ++i) part += a[i] * b[i];
    return part;
  });
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  return blocked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
    double part = 0.0;
    for (std::size_t i = lo; i < hi; ++i) part += w[i] * (a[i] * b[i]);
    return part;
  });
}

double sum(std::span<const double> a) {
  return blocked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
    double part = 0.0;
    for (std::size_t i = lo; i < hi; ++i) part += a[i];
    return part;
  });
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for reduction(max : m) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

int max_threads() {
#ifdef PHODGE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace phodge::omp
