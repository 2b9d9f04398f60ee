#pragma once

#include <Eigen/Dense>
#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"

namespace phodge {

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

void to_json(nlohmann::json& j, const Check& c);

/// JSON report of one CLI command. A check passes iff residual <= tolerance
/// (NaN never passes).
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  const std::string& command() const { return command_; }
  nlohmann::json& inputs() { return inputs_; }
  nlohmann::json& results() { return results_; }
  const nlohmann::json& results() const { return results_; }

  void matrix(const std::string& name, const Eigen::MatrixXd& m);
  void permutation(const std::string& name, const std::vector<int>& P);
  const Check& check(const std::string& name, double residual, double tolerance);
  /// Records a boolean condition as a check with residual 0 or 1 and tolerance 0.
  const Check& require(const std::string& name, bool condition);
  void timing(const std::string& phase, double ms) { timings_.emplace_back(phase, ms); }

  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const;
  bool all_pass() const;
  int exit_code() const { return all_pass() ? 0 : 1; }

  nlohmann::json to_json(bool with_timings = false) const;
  /// Two-space indented JSON followed by a newline.
  std::string dump(bool with_timings = false) const;

 private:
  std::string command_;
  nlohmann::json inputs_ = nlohmann::json::object();
  nlohmann::json matrices_ = nlohmann::json::object();
  nlohmann::json results_ = nlohmann::json::object();
  std::vector<Check> checks_;
  std::vector<std::pair<std::string, double>> timings_;
};

/// Adds the elapsed wall time to the report when it goes out of scope.
class PhaseTimer {
 public:
  PhaseTimer(Report& r, std::string phase)
      : report_(r), phase_(std::move(phase)), start_(std::chrono::steady_clock::now()) {}
  ~PhaseTimer() {
    const auto dt = std::chrono::steady_clock::now() - start_;
    report_.timing(phase_, std::chrono::duration<double, std::milli>(dt).count());
  }
  PhaseTimer(const PhaseTimer&) = delete;
  PhaseTimer& operator=(const PhaseTimer&) = delete;

 private:
  Report& report_;
  std::string phase_;
  std::chrono::steady_clock::time_point start_;
};

nlohmann::json vector_json(const Eigen::VectorXd& v);

}  // namespace phodge
