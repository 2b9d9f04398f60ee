#include "phodge/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phodge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("GridSpec: " + what);
}

}  // namespace

MetricProfile MetricProfile::embedded_torus(double major, double minor) {
  MetricProfile m;
  m.kind = MetricKind::embedded_torus;
  m.major_radius = major;
  m.minor_radius = minor;
  return m;
}

MetricProfile MetricProfile::custom(ScaleFunction f) {
  MetricProfile m;
  m.kind = MetricKind::custom;
  m.scale = std::move(f);
  return m;
}

GridSpec GridSpec::torus(int dim, int n, int negatives) {
  GridSpec s;
  s.dim = dim;
  s.points.assign(dim, n);
  s.period.assign(dim, kTwoPi);
  s.signature.assign(dim, 1);
  for (int a = 0; a < negatives && a < dim; ++a) s.signature[a] = -1;
  return s;
}

GridSpec GridSpec::embedded_torus(int n, double major, double minor) {
  GridSpec s = torus(2, n);
  s.metric = MetricProfile::embedded_torus(major, minor);
  return s;
}

int GridSpec::negatives() const {
  int s = 0;
  for (int v : signature) s += (v < 0);
  return s;
}

void GridSpec::validate() const {
  require(dim >= 1 && dim <= kMaxDim, "dim must be in 1..4");
  require(static_cast<int>(points.size()) == dim, "points needs one entry per axis");
  require(static_cast<int>(period.size()) == dim, "period needs one entry per axis");
  require(static_cast<int>(signature.size()) == dim, "signature needs one entry per axis");
  for (int a = 0; a < dim; ++a) {
    require(points[a] >= 4, "points per axis must be at least 4");
    require(points[a] % 2 == 0, "points per axis must be even");
    require(period[a] > 0.0 && std::isfinite(period[a]), "periods must be strictly positive");
    require(signature[a] == 1 || signature[a] == -1, "signature entries must be +1 or -1");
  }
  switch (metric.kind) {
    case MetricKind::flat:
      break;
    case MetricKind::embedded_torus:
      require(dim == 2, "embedded-torus metric needs dim 2");
      require(metric.minor_radius > 0.0, "embedded-torus needs r > 0");
      require(metric.major_radius > metric.minor_radius,
              "embedded-torus needs R > r (metric degenerates for r >= R)");
      for (int a = 0; a < 2; ++a)
        require(std::abs(period[a] - kTwoPi) < 1e-9, "embedded-torus coordinates have period 2*pi");
      require(signature[0] == 1 && signature[1] == 1, "embedded-torus metric is Riemannian");
      break;
    case MetricKind::custom:
      require(static_cast<bool>(metric.scale), "custom metric needs a scale function");
      break;
  }
}

void to_json(nlohmann::json& j, const GridSpec& spec) {
  j = nlohmann::json{{"dim", spec.dim},
                     {"n", spec.points},
                     {"period", spec.period},
                     {"signature", spec.signature}};
  switch (spec.metric.kind) {
    case MetricKind::flat:
      j["metric"] = "flat";
      break;
    case MetricKind::embedded_torus:
      j["metric"] = "embedded-torus";
      j["R"] = spec.metric.major_radius;
      j["r"] = spec.metric.minor_radius;
      break;
    case MetricKind::custom:
      j["metric"] = "custom";
      break;
  }
}

void from_json(const nlohmann::json& j, GridSpec& spec) {
  spec.dim = j.at("dim").get<int>();
  spec.points = j.at("n").get<std::vector<int>>();
  spec.period = j.contains("period") ? j.at("period").get<std::vector<double>>()
                                     : std::vector<double>(spec.dim, kTwoPi);
  spec.signature = j.contains("signature") ? j.at("signature").get<std::vector<int>>()
                                           : std::vector<int>(spec.dim, 1);
  const std::string metric = j.value("metric", std::string("flat"));
  if (metric == "flat") {
    spec.metric = MetricProfile::flat();
  } else if (metric == "embedded-torus") {
    spec.metric = MetricProfile::embedded_torus(j.at("R").get<double>(), j.at("r").get<double>());
  } else {
    throw std::invalid_argument("GridSpec: unknown metric preset '" + metric + "'");
  }
}

PeriodicGrid::PeriodicGrid(GridSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  const int n = spec_.dim;
  shape_.dim = n;
  std::size_t stride = 1;
  for (int a = n - 1; a >= 0; --a) {
    shape_.extent[a] = spec_.points[a];
    shape_.stride[a] = stride;
    stride *= static_cast<std::size_t>(spec_.points[a]);
  }
  shape_.size = stride;
  negatives_ = spec_.negatives();
  for (int a = 0; a < n; ++a) {
    step_[a] = spec_.period[a] / spec_.points[a];
    cell_volume_ *= step_[a];
  }

  for (int a = 0; a < n; ++a) {
    metric_[a].assign(shape_.size, 1.0);
    inverse_metric_[a].assign(shape_.size, 1.0);
  }
  sqrt_abs_g_.assign(shape_.size, 1.0);
  if (spec_.metric.kind == MetricKind::flat) return;

  std::array<double, kMaxDim> coords{};
  for (std::size_t x = 0; x < shape_.size; ++x) {
    const auto idx = multi_index(x);
    for (int a = 0; a < n; ++a) coords[a] = coordinate(a, idx[a]);
    for (int a = 0; a < n; ++a) {
      double g = 1.0;
      if (spec_.metric.kind == MetricKind::embedded_torus) {
        const double big = spec_.metric.major_radius;
        const double small = spec_.metric.minor_radius;
        const double ring = big + small * std::cos(coords[1]);
        g = (a == 0) ? ring * ring : small * small;
      } else {
        g = spec_.metric.scale(a, std::span<const double>(coords.data(), n));
      }
      if (!(g > 0.0) || !std::isfinite(g))
        throw std::invalid_argument("PeriodicGrid: metric must be strictly positive everywhere");
      metric_[a][x] = g;
    }
  }
  for (std::size_t x = 0; x < shape_.size; ++x) {
    double det = 1.0;
    for (int a = 0; a < n; ++a) {
      det *= metric_[a][x];
      inverse_metric_[a][x] = 1.0 / metric_[a][x];
    }
    sqrt_abs_g_[x] = std::sqrt(det);
  }
  for (int a = 0; a < n && constant_metric_; ++a) {
    for (std::size_t x = 1; x < shape_.size; ++x) {
      if (metric_[a][x] != metric_[a][0]) {
        constant_metric_ = false;
        break;
      }
    }
  }
}

std::array<int, kMaxDim> PeriodicGrid::multi_index(std::size_t linear) const {
  std::array<int, kMaxDim> idx{};
  for (int a = 0; a < shape_.dim; ++a) {
    idx[a] = static_cast<int>(linear / shape_.stride[a]);
    linear %= shape_.stride[a];
  }
  return idx;
}

std::size_t PeriodicGrid::linear_index(std::span<const int> index) const {
  std::size_t x = 0;
  for (int a = 0; a < shape_.dim; ++a) {
    const int n = shape_.extent[a];
    const int i = ((index[a] % n) + n) % n;
    x += static_cast<std::size_t>(i) * shape_.stride[a];
  }
  return x;
}

}  // namespace phodge
