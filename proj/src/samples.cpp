#include "phodge/samples.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phodge {

void add_plane_wave(const PeriodicGrid& grid, std::span<double> out, std::span<const int> k,
                    double a, double b) {
  const int n = grid.dim();
  if (static_cast<int>(k.size()) != n) throw std::invalid_argument("add_plane_wave: wave vector size");
  if (out.size() != grid.size()) throw std::invalid_argument("add_plane_wave: output size");
  std::array<double, kMaxDim> omega{};
  for (int a_ = 0; a_ < n; ++a_) omega[a_] = 2.0 * std::numbers::pi * k[a_] / grid.spec().period[a_];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto idx = grid.multi_index(i);
    double phase = 0.0;
    for (int a_ = 0; a_ < n; ++a_) phase += omega[a_] * grid.coordinate(a_, idx[a_]);
    out[i] += a * std::cos(phase) + b * std::sin(phase);
  }
}

DiscreteForm random_trig_form(const PeriodicGrid& grid, int degree, SampleRng& rng,
                              const TrigOptions& opts) {
  const int n = grid.dim();
  DiscreteForm f(grid, degree);
  std::vector<int> k(n);
  for (std::size_t c = 0; c < f.num_components(); ++c) {
    for (int t = 0; t < opts.terms; ++t) {
      bool zero = true;
      do {
        zero = true;
        for (int a = 0; a < n; ++a) {
          k[a] = rng.integer(-opts.max_wave, opts.max_wave);
          zero = zero && k[a] == 0;
        }
      } while (opts.zero_mean && zero);
      const double a = rng.uniform(-1.0, 1.0);
      const double b = rng.uniform(-1.0, 1.0);
      add_plane_wave(grid, f.component(c), k, a, b);
    }
  }
  return f;
}

}  // namespace phodge
