#include "spectral.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace phodge::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFft::RealFft(const GridShape& shape) : shape_(shape) {
  std::array<int, kMaxDim> dims{};
  spectrum_size_ = 1;
  for (int a = 0; a < shape.dim; ++a) {
    dims[a] = shape.extent[a];
    spec_extent_[a] = (a == shape.dim - 1) ? shape.extent[a] / 2 + 1 : shape.extent[a];
    spectrum_size_ *= static_cast<std::size_t>(spec_extent_[a]);
  }
  std::vector<double> real(shape.size);
  std::vector<fftw_complex> cplx(spectrum_size_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c(shape.dim, dims.data(), real.data(), cplx.data(),
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  backward_plan_ = fftw_plan_dft_c2r(shape.dim, dims.data(), cplx.data(), real.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!forward_plan_ || !backward_plan_) throw std::runtime_error("RealFft: FFTW planning failed");
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

std::array<int, kMaxDim> RealFft::wave_index(std::size_t k) const {
  std::array<int, kMaxDim> idx{};
  for (int a = shape_.dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(k % static_cast<std::size_t>(spec_extent_[a]));
    k /= static_cast<std::size_t>(spec_extent_[a]);
  }
  return idx;
}

void RealFft::forward(std::span<const double> in, std::vector<std::complex<double>>& out) const {
  out.resize(spectrum_size_);
  std::vector<double> scratch(in.begin(), in.end());
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), scratch.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void RealFft::backward(std::vector<std::complex<double>>& in, std::span<double> out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_plan_),
                       reinterpret_cast<fftw_complex*>(in.data()), out.data());
  const double norm = 1.0 / static_cast<double>(shape_.size);
  for (double& v : out) v *= norm;
}

}  // namespace phodge::detail
