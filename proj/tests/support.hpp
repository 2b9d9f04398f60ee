#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "phodge/form.hpp"

namespace testing {

/// splitmix64; independent of the library sample generator.
struct Gen {
  std::uint64_t state;
  explicit Gen(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
};

/// Random trigonometric polynomial form with integer wave numbers, evaluated
/// from the node coordinates directly.
inline phodge::DiscreteForm trig_form(const phodge::PeriodicGrid& g, int p, Gen& gen,
                                      int waves = 2, int terms = 2) {
  const int n = g.dim();
  phodge::DiscreteForm f(g, p);
  for (std::size_t c = 0; c < f.num_components(); ++c) {
    auto comp = f.component(c);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> k(n);
      for (int a = 0; a < n; ++a) k[a] = gen.integer(-waves, waves);
      const double amp_c = gen.uniform(-1, 1), amp_s = gen.uniform(-1, 1);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const auto idx = g.multi_index(i);
        double ph = 0.0;
        for (int a = 0; a < n; ++a)
          ph += 2.0 * std::numbers::pi * k[a] * g.coordinate(a, idx[a]) / g.spec().period[a];
        comp[i] += amp_c * std::cos(ph) + amp_s * std::sin(ph);
      }
    }
  }
  return f;
}

inline double sup_diff(const phodge::DiscreteForm& a, const phodge::DiscreteForm& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

/// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace testing
