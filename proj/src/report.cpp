#include "phodge/report.hpp"

#include <cmath>

#include "phodge/cohomology.hpp"

namespace phodge {

void to_json(nlohmann::json& j, const Check& c) {
  j = nlohmann::json{{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance},
                     {"pass", c.pass}};
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

void Report::matrix(const std::string& name, const Eigen::MatrixXd& m) {
  matrices_[name] = matrix_json(m);
}

void Report::permutation(const std::string& name, const std::vector<int>& P) {
  matrices_[name] = P;
}

const Check& Report::check(const std::string& name, double residual, double tolerance) {
  const bool pass = std::isfinite(residual) && residual <= tolerance;
  checks_.push_back({name, residual, tolerance, pass});
  return checks_.back();
}

const Check& Report::require(const std::string& name, bool condition) {
  return check(name, condition ? 0.0 : 1.0, 0.0);
}

const Check* Report::find(const std::string& name) const {
  for (const Check& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

bool Report::all_pass() const {
  for (const Check& c : checks_)
    if (!c.pass) return false;
  return true;
}

nlohmann::json Report::to_json(bool with_timings) const {
  nlohmann::json j;
  j["command"] = command_;
  j["inputs"] = inputs_;
  j["matrices"] = matrices_;
  j["results"] = results_;
  j["checks"] = checks_;
  j["pass"] = all_pass();
  if (with_timings) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [phase, ms] : timings_) t[phase] = t.value(phase, 0.0) + ms;
    j["timings_ms"] = t;
  }
  return j;
}

std::string Report::dump(bool with_timings) const { return to_json(with_timings).dump(2) + "\n"; }

}  // namespace phodge
