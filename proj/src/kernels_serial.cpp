#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "phodge/kernels.hpp"

namespace phodge {

Stencil Stencil::central(int order) {
  Stencil s;
  s.order = order;
  switch (order) {
    case 2:
      s.radius = 1;
      s.weights = {0.5, 0.0, 0.0, 0.0};
      break;
    case 4:
      s.radius = 2;
      s.weights = {2.0 / 3.0, -1.0 / 12.0, 0.0, 0.0};
      break;
    case 6:
      s.radius = 3;
      s.weights = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0, 0.0};
      break;
    case 8:
      s.radius = 4;
      s.weights = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
      break;
    default:
      throw std::invalid_argument("Stencil: order must be 2, 4, 6 or 8");
  }
  return s;
}

double Stencil::symbol(double theta, double h) const {
  double acc = 0.0;
  for (int j = 1; j <= radius; ++j) acc += weights[j - 1] * std::sin(j * theta);
  return 2.0 * acc / h;
}

namespace {

std::atomic<Backend> g_backend{
#ifdef PHODGE_HAVE_OPENMP
    Backend::openmp
#else
    Backend::serial
#endif
};

}  // namespace

void set_backend(Backend b) { g_backend.store(b, std::memory_order_relaxed); }
Backend backend() { return g_backend.load(std::memory_order_relaxed); }

namespace serial {

void add_derivative(const GridShape& shape, int axis, const Stencil& st, double scale,
                    std::span<const double> in, std::span<double> out) {
  const std::size_t n = static_cast<std::size_t>(shape.extent[axis]);
  const std::size_t inner = shape.stride[axis];
  const std::size_t outer = shape.size / (n * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * n * inner;
    for (std::size_t i = 0; i < n; ++i) {
      double* dst = out.data() + base + i * inner;
      for (int j = 1; j <= st.radius; ++j) {
        const double w = scale * st.weights[j - 1];
        const double* up = in.data() + base + ((i + j) % n) * inner;
        const double* dn = in.data() + base + ((i + n - j) % n) * inner;
        for (std::size_t t = 0; t < inner; ++t) dst[t] += w * (up[t] - dn[t]);
      }
    }
  }
}

void scale_pointwise(std::span<const double> coef, double s, std::span<const double> in,
                     std::span<double> out) {
  for (std::size_t x = 0; x < in.size(); ++x) out[x] = s * coef[x] * in[x];
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

double dot(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t lo = 0; lo < a.size(); lo += kReduceBlock) {
    const std::size_t hi = std::min(a.size(), lo + kReduceBlock);
    double part = 0.0;
    for (std::size_t i = lo; i < hi; ++i) part += a[i] * b[i];
    total += part;
  }
  return total;
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  double total = 0.0;
  for (std::size_t lo = 0; lo < a.size(); lo += kReduceBlock) {
    const std::size_t hi = std::min(a.size(), lo + kReduceBlock);
    double part = 0.0;
    for (std::size_t i = lo; i < hi; ++i) part += w[i] * (a[i] * b[i]);
    total += part;
  }
  return total;
}

double sum(std::span<const double> a) {
  double total = 0.0;
  for (std::size_t lo = 0; lo < a.size(); lo += kReduceBlock) {
    const std::size_t hi = std::min(a.size(), lo + kReduceBlock);
    double part = 0.0;
    for (std::size_t i = lo; i < hi; ++i) part += a[i];
    total += part;
  }
  return total;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace serial

namespace kern {

#define PHODGE_DISPATCH(call) \
  return backend() == Backend::openmp ? omp::call : serial::call

void add_derivative(const GridShape& shape, int axis, const Stencil& st, double scale,
                    std::span<const double> in, std::span<double> out) {
  PHODGE_DISPATCH(add_derivative(shape, axis, st, scale, in, out));
}
void scale_pointwise(std::span<const double> coef, double s, std::span<const double> in,
                     std::span<double> out) {
  PHODGE_DISPATCH(scale_pointwise(coef, s, in, out));
}
void axpy(double a, std::span<const double> x, std::span<double> y) {
  PHODGE_DISPATCH(axpy(a, x, y));
}
double dot(std::span<const double> a, std::span<const double> b) { PHODGE_DISPATCH(dot(a, b)); }
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  PHODGE_DISPATCH(weighted_dot(w, a, b));
}
double sum(std::span<const double> a) { PHODGE_DISPATCH(sum(a)); }
double max_abs(std::span<const double> a) { PHODGE_DISPATCH(max_abs(a)); }

#undef PHODGE_DISPATCH

}  // namespace kern

}  // namespace phodge
