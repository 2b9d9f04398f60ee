#pragma once

#include <cstdint>
#include <random>

#include "phodge/form.hpp"

namespace phodge {

/// Platform-independent draws from a 64-bit Mersenne Twister.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  int sign() { return (engine_() >> 63) ? -1 : 1; }

 private:
  std::mt19937_64 engine_;
};

struct TrigOptions {
  int terms = 3;
  int max_wave = 3;
  /// Skip the zero wave vector, so the form has no constant part.
  bool zero_mean = false;
};

/// Sum over components of random trigonometric polynomials with integer wave
/// numbers per period (smooth and exactly periodic).
DiscreteForm random_trig_form(const PeriodicGrid& grid, int degree, SampleRng& rng,
                              const TrigOptions& opts = {});

/// f(x) = a cos(k.x) + b sin(k.x) for a fixed wave vector `k` (entries per period).
void add_plane_wave(const PeriodicGrid& grid, std::span<double> out, std::span<const int> k,
                    double a, double b);

}  // namespace phodge
