#include "phodge/taxonomy.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace phodge {

namespace {

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }
double to_double(double v) { return v; }

template <class T>
Eigen::Matrix2d eigen_of(const Mat2<T>& m) {
  Eigen::Matrix2d out;
  out << to_double(m.a), to_double(m.b), to_double(m.c), to_double(m.d);
  return out;
}

int sign_of(int parity) { return (parity & 1) ? -1 : 1; }

std::optional<long long> exact_isqrt(long long v) {
  if (v < 0) return std::nullopt;
  auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(v))));
  for (long long c = std::max(0LL, r - 1); c <= r + 1; ++c)
    if (c * c == v) return c;
  return std::nullopt;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  const auto n = exact_isqrt(q.numerator());
  const auto d = exact_isqrt(q.denominator());
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

[[noreturn]] void infeasible(Group g, const std::string& why) {
  throw std::invalid_argument(group_label(g) + " infeasible: " + why);
}

Rational need(const std::optional<Rational>& v, Rational fallback) { return v ? *v : fallback; }

template <class T>
TaxonomySolution finish(Group g, int m, int s, const Mat2<T>& E, const Mat2<T>& L,
                        const Mat2<T>& T_closed) {
  TaxonomySolution out;
  out.group = g;
  out.m = m;
  out.s = s;
  out.D_parity = (m * m + s) & 1;
  const T sD = T(sign_of(out.D_parity));
  const Mat2<T> Tm = L.transpose() * E.inverse().transpose();
  const Mat2<T> I = Mat2<T>::identity();
  const double r1 = max_abs_entry(Tm * Tm - I * sD);
  const double r2 = max_abs_entry(E * Tm.transpose() - L);
  const double r3 = max_abs_entry(L * E.inverse() * L - E * sD);
  out.constraints_residual = std::max({r1, r2, r3});
  out.closed_form_residual = max_abs_entry(Tm - T_closed);
  const T parity_m = T(sign_of(m));
  out.symmetry_residual =
      std::max(max_abs_entry(E.transpose() - E * parity_m), max_abs_entry(L.transpose() - L));
  out.E = eigen_of(E);
  out.T = eigen_of(Tm);
  out.Lambda = eigen_of(L);
  out.det_T = to_double(Tm.det());
  out.exact = std::is_same_v<T, Rational>;
  const auto allowed = expected_det(g, s);
  for (int v : allowed)
    if (std::abs(out.det_T - v) <= 1e-12) out.det_matches_table = true;
  return out;
}

}  // namespace

Eigen::Matrix2d to_eigen(const Mat2<double>& m) { return eigen_of(m); }
Eigen::Matrix2d to_eigen(const Mat2<Rational>& m) { return eigen_of(m); }

std::string group_label(Group g) {
  switch (g) {
    case Group::S2_1_1: return "S2.1.1";
    case Group::S2_1_2: return "S2.1.2";
    case Group::S2_1_3: return "S2.1.3";
    case Group::S2_2_1: return "S2.2.1";
    case Group::S2_2_2: return "S2.2.2";
  }
  return "?";
}

Group parse_group(const std::string& label) {
  for (Group g : all_groups())
    if (group_label(g) == label) return g;
  throw std::invalid_argument("unknown taxonomy group '" + label + "' (expected S2.1.1 .. S2.2.2)");
}

std::vector<Group> all_groups() {
  return {Group::S2_1_1, Group::S2_1_2, Group::S2_1_3, Group::S2_2_1, Group::S2_2_2};
}

std::vector<Group> admissible_groups(int m_parity, int s_parity) {
  if (m_parity & 1) return {Group::S2_1_3};
  if (s_parity & 1) return {Group::S2_1_1, Group::S2_2_2};
  return {Group::S2_1_1, Group::S2_1_2, Group::S2_2_1, Group::S2_2_2};
}

std::vector<int> expected_det(Group g, int s_parity) {
  const int s = sign_of(s_parity);
  switch (g) {
    case Group::S2_1_1: return {-s};
    case Group::S2_1_2: return {1};
    case Group::S2_1_3: return {s};
    case Group::S2_2_1: return {1, -1};
    case Group::S2_2_2: return {-s};
  }
  return {};
}

GroupParams parse_group_params(const std::string& text) {
  GroupParams p;
  std::stringstream ss(text);
  std::string item;
  static const std::regex kv(R"(\s*([A-Za-zλ]+)_?(\d*)\s*=\s*([-+]?\d+)(?:/(\d+))?\s*)");
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::smatch mt;
    if (!std::regex_match(item, mt, kv))
      throw std::invalid_argument("cannot parse taxonomy parameter '" + item + "'");
    std::string key = mt[1].str() + mt[2].str();
    const long long num = std::stoll(mt[3].str());
    const long long den = mt[4].matched ? std::stoll(mt[4].str()) : 1;
    if (den == 0) throw std::invalid_argument("zero denominator in '" + item + "'");
    const Rational value(num, den);
    for (const std::string prefix : {"lambda", "λ", "L"})
      if (key.rfind(prefix, 0) == 0) key = "l" + key.substr(prefix.size());
    if (key == "E11") p.E11 = value;
    else if (key == "E12") p.E12 = value;
    else if (key == "E22") p.E22 = value;
    else if (key == "l11") p.l11 = value;
    else if (key == "l12") p.l12 = value;
    else if (key == "l22") p.l22 = value;
    else if (key == "sign" || key == "sign1") p.sign = num < 0 ? -1 : 1;
    else if (key == "sign2") p.sign2 = num < 0 ? -1 : 1;
    else throw std::invalid_argument("unknown taxonomy parameter '" + key + "'");
  }
  return p;
}

void to_json(nlohmann::json& j, const TaxonomySolution& s) {
  auto mat = [](const Eigen::Matrix2d& m) {
    return nlohmann::json::array({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}});
  };
  j = nlohmann::json{{"group", group_label(s.group)},
                     {"m", s.m},
                     {"s", s.s},
                     {"D_parity", s.D_parity},
                     {"E", mat(s.E)},
                     {"T", mat(s.T)},
                     {"Lambda", mat(s.Lambda)},
                     {"det_T", s.det_T},
                     {"det_expected", expected_det(s.group, s.s)},
                     {"det_matches_table", s.det_matches_table},
                     {"constraints_residual", s.constraints_residual},
                     {"closed_form_residual", s.closed_form_residual},
                     {"symmetry_residual", s.symmetry_residual},
                     {"exact", s.exact}};
}

TaxonomySolution solve_group(Group g, int m, int s, const GroupParams& prm) {
  if (m < 1) throw std::invalid_argument("solve_group: m must be positive");
  if (s < 0) throw std::invalid_argument("solve_group: s must be non-negative");
  {
    const auto ok = admissible_groups(m & 1, s & 1);
    if (std::find(ok.begin(), ok.end(), g) == ok.end()) {
      std::string why;
      if (g == Group::S2_1_3) why = "requires odd m";
      else if (m & 1) why = "requires even m";
      else why = "requires even s (a real T with T^2 = (-1)^s I and this shape needs (-1)^s = +1)";
      infeasible(g, why);
    }
  }
  const Rational sgn_s(sign_of(s));
  const Rational zero(0);
  using M = Mat2<Rational>;

  auto nonzero = [&](const Rational& v, const char* name) {
    if (v == zero) infeasible(g, std::string(name) + " must be non-zero");
  };
  auto consistent = [&](const std::optional<Rational>& given, const Rational& forced,
                        const char* rule) {
    if (given && *given != forced) infeasible(g, rule);
  };

  switch (g) {
    case Group::S2_1_1: {
      const Rational e = need(prm.E12, 1), l11 = need(prm.l11, 1);
      nonzero(e, "E12");
      nonzero(l11, "l11");
      const Rational l22 = sgn_s * e * e / l11;
      consistent(prm.l12, zero, "l12 must be 0");
      consistent(prm.l22, l22, "l11 l22 must equal (-1)^s E12^2");
      const M E{zero, e, e, zero};
      const M L{l11, zero, zero, l22};
      return finish(g, m, s, E, L, M{zero, l11 / e, l22 / e, zero});
    }
    case Group::S2_1_2: {
      const Rational e = need(prm.E12, 1);
      nonzero(e, "E12");
      const Rational l12 = e * Rational(prm.sign);
      consistent(prm.l11, zero, "l11 must be 0");
      consistent(prm.l22, zero, "l22 must be 0");
      if (prm.l12 && *prm.l12 != e && *prm.l12 != -e) infeasible(g, "l12^2 must equal E12^2");
      const Rational l = prm.l12 ? *prm.l12 : l12;
      const M E{zero, e, e, zero};
      const M L{zero, l, l, zero};
      return finish(g, m, s, E, L, M{l / e, zero, zero, l / e});
    }
    case Group::S2_1_3: {
      const Rational e = need(prm.E12, 1), l11 = need(prm.l11, 1), l12 = need(prm.l12, 0);
      nonzero(e, "E12");
      nonzero(l11, "l11");
      const Rational l22 = (l12 * l12 + sgn_s * e * e) / l11;
      consistent(prm.l22, l22, "l12^2 - l11 l22 must equal (-1)^(s+1) E12^2");
      const M E{zero, e, -e, zero};
      const M L{l11, l12, l12, l22};
      return finish(g, m, s, E, L, M{-l12 / e, l11 / e, -l22 / e, l12 / e});
    }
    case Group::S2_2_1: {
      const Rational e11 = need(prm.E11, 1), e22 = need(prm.E22, 1);
      nonzero(e11, "E11");
      nonzero(e22, "E22");
      Rational l11 = e11 * Rational(prm.sign), l22 = e22 * Rational(prm.sign2);
      if (prm.l11) {
        if (*prm.l11 != e11 && *prm.l11 != -e11) infeasible(g, "(l11/E11)^2 must equal 1");
        l11 = *prm.l11;
      }
      if (prm.l22) {
        if (*prm.l22 != e22 && *prm.l22 != -e22) infeasible(g, "(l22/E22)^2 must equal 1");
        l22 = *prm.l22;
      }
      consistent(prm.l12, zero, "l12 must be 0");
      const M E{e11, zero, zero, e22};
      const M L{l11, zero, zero, l22};
      return finish(g, m, s, E, L, M{l11 / e11, zero, zero, l22 / e22});
    }
    case Group::S2_2_2: {
      const bool odd = s & 1;
      const Rational e11 = need(prm.E11, 1), e22 = need(prm.E22, odd ? -1 : 1);
      const Rational l12 = need(prm.l12, odd ? Rational(5, 4) : Rational(0));
      nonzero(e11, "E11");
      nonzero(e22, "E22");
      const Rational a2 = sgn_s - l12 * l12 / (e11 * e22);
      if (a2 < zero)
        infeasible(g, "(l11/E11)^2 = (-1)^s - l12^2/(E11 E22) must be >= 0 (for odd s, E11 and "
                      "E22 must have different signs)");
      if (const auto a = exact_sqrt(a2)) {
        const Rational A = *a * Rational(prm.sign);
        const Rational l11 = A * e11, l22 = -A * e22;
        consistent(prm.l11, l11, "l11/E11 must equal sign * sqrt((-1)^s - l12^2/(E11 E22))");
        consistent(prm.l22, l22, "l11/E11 + l22/E22 must vanish");
        const M E{e11, zero, zero, e22};
        const M L{l11, l12, l12, l22};
        return finish(g, m, s, E, L, M{l11 / e11, l12 / e22, l12 / e11, -l11 / e11});
      }
      using D = Mat2<double>;
      const double A = prm.sign * std::sqrt(to_double(a2));
      const double E11 = to_double(e11), E22 = to_double(e22), L12 = to_double(l12);
      const double L11 = A * E11, L22 = -A * E22;
      if (prm.l11 && std::abs(to_double(*prm.l11) - L11) > 1e-12 * std::max(1.0, std::abs(L11)))
        infeasible(g, "l11/E11 must equal sign * sqrt((-1)^s - l12^2/(E11 E22))");
      const D E{E11, 0.0, 0.0, E22};
      const D L{L11, L12, L12, L22};
      return finish(g, m, s, E, L, D{L11 / E11, L12 / E22, L12 / E11, -L11 / E11});
    }
  }
  throw std::invalid_argument("solve_group: unknown group");
}

Group classify_triple(const Eigen::MatrixXd& E, const Eigen::MatrixXd& Lambda, int m, int s,
                      double tol) {
  if (E.rows() != 2 || E.cols() != 2 || Lambda.rows() != 2 || Lambda.cols() != 2)
    throw std::invalid_argument("classify_triple: only beta = 2 is classified (got beta = " +
                                std::to_string(E.rows()) + ")");
  auto zero = [&](double v) { return std::abs(v) <= tol; };
  const bool pair = zero(E(0, 0)) && zero(E(1, 1)) && !zero(E(0, 1));
  const bool self = zero(E(0, 1)) && zero(E(1, 0)) && !zero(E(0, 0)) && !zero(E(1, 1));
  const auto ok = admissible_groups(m & 1, s & 1);
  auto allowed = [&](Group g) { return std::find(ok.begin(), ok.end(), g) != ok.end(); };
  if (pair) {
    if (allowed(Group::S2_1_3)) return Group::S2_1_3;
    if (zero(Lambda(0, 1)) && allowed(Group::S2_1_1)) return Group::S2_1_1;
    if (zero(Lambda(0, 0)) && zero(Lambda(1, 1)) && allowed(Group::S2_1_2)) return Group::S2_1_2;
  }
  if (self) {
    if (zero(Lambda(0, 1)) && allowed(Group::S2_2_1)) return Group::S2_2_1;
    if (allowed(Group::S2_2_2)) return Group::S2_2_2;
  }
  throw std::invalid_argument("classify_triple: no beta = 2 group matches the matrices");
}

Mat2<double> family_T(double u, double v) {
  if (v == 0.0) throw std::invalid_argument("family_T: v must be non-zero");
  return {u, v, -(1.0 + u * u) / v, -u};
}

Mat2<Rational> family_T(const Rational& u, const Rational& v) {
  if (v == Rational(0)) throw std::invalid_argument("family_T: v must be non-zero");
  return {u, v, -(Rational(1) + u * u) / v, -u};
}

Field reality_rule(int beta, int D_parity) {
  if (beta < 1) throw std::invalid_argument("reality_rule: beta must be at least 1");
  return ((beta * (D_parity & 1)) % 2 == 0) ? Field::real : Field::complex;
}

std::string field_name(Field f) { return f == Field::real ? "real" : "complex"; }

}  // namespace phodge
