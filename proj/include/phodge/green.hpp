#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "phodge/calculus.hpp"

namespace phodge {

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  /// Near-kernel directions removed from the source before solving.
  int deflated_dims = 0;
  /// Fraction of the source norm that lay in the deflated directions.
  double deflated_fraction = 0.0;
};

void to_json(nlohmann::json& j, const SolveReport& r);

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, SolveReport best)
      : std::runtime_error(what), best_(best) {}
  const SolveReport& best() const { return best_; }

 private:
  SolveReport best_;
};

struct GreenOptions {
  double tol = 1e-10;
  int max_iter = 4000;
  /// Known kernel elements (for example harmonic representatives) to deflate
  /// on grids whose metric is not constant.
  std::vector<DiscreteForm> hints;
  /// Relative threshold below which a Fourier mode counts as kernel (constant metrics).
  double symbol_cutoff = 1e-10;
};

struct GreenResult {
  DiscreteForm solution;
  SolveReport report;
};

/// Minimum-norm solution of laplacian(theta) = source after the source is
/// projected off the discrete kernel. Throws SolveError on non-convergence.
GreenResult green_solve(const Calculus& calc, const DiscreteForm& source,
                        const GreenOptions& opts = {});

/// Pairing-orthogonal projection of f off span(kernel).
DiscreteForm project_out(const Calculus& calc, const DiscreteForm& f,
                         const std::vector<DiscreteForm>& kernel);

}  // namespace phodge
