#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "phodge/em.hpp"
#include "phodge/report.hpp"

namespace phodge {

/// Invalid command input; the CLI maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CommandOptions {
  /// Points per axis; 0 selects the command default.
  int grid = 0;
  std::uint64_t seed = 1;
  /// Green solver tolerance; 0 selects the default.
  double tol = 0.0;
  std::string metric = "flat";
  double R = 2.0;
  double r = 1.0;
  double mu0 = EmUnits::codata().mu0;
  double c = EmUnits::codata().c;
  /// Random draws per battery; 0 selects the command default.
  int samples = 0;
};

nlohmann::json options_json(const CommandOptions& o);

/// suite: core | cohomology | decompose | em
Report cmd_verify(const std::string& suite, const CommandOptions& o);
/// mode: flat | embedded
Report cmd_torus2(const std::string& mode, const CommandOptions& o);
/// Lists and solves every admissible group when `group` is empty.
Report cmd_taxonomy(int m, int s, const std::optional<std::string>& group,
                    const std::string& params);
/// preset: harmonic-t2 | mixed-t2 | random-t2 | embedded-t2 | middle-t4
Report cmd_decompose(const std::string& preset, const CommandOptions& o);
/// preset: topological | exact | mixed; charges like "1@01,2@23".
Report cmd_em(const std::string& preset, const std::string& charges, const CommandOptions& o);

}  // namespace phodge
