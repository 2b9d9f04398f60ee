#pragma once

#include <complex>
#include <span>
#include <vector>

#include "phodge/grid.hpp"

namespace phodge::detail {

/// Real-to-complex n-D transform on a periodic lattice (FFTW). The half
/// spectrum keeps extent/2+1 entries along the last axis.
class RealFft {
 public:
  explicit RealFft(const GridShape& shape);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t spectrum_size() const { return spectrum_size_; }
  /// Wavenumber index along `axis` for spectral position `k`.
  std::array<int, kMaxDim> wave_index(std::size_t k) const;

  void forward(std::span<const double> in, std::vector<std::complex<double>>& out) const;
  /// Normalized inverse: backward(forward(f)) == f.
  void backward(std::vector<std::complex<double>>& in, std::span<double> out) const;

 private:
  GridShape shape_;
  std::array<int, kMaxDim> spec_extent_{};
  std::size_t spectrum_size_ = 0;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

}  // namespace phodge::detail
