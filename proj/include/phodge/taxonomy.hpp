#pragma once

#include <Eigen/Dense>
#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace phodge {

using Rational = boost::rational<long long>;

/// Dense 2x2 matrix over any field-like scalar ([[a, b], [c, d]]).
template <class T>
struct Mat2 {
  T a{}, b{}, c{}, d{};

  static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
  Mat2 transpose() const { return {a, c, b, d}; }
  T det() const { return a * d - b * c; }
  Mat2 inverse() const {
    const T k = det();
    return {d / k, -b / k, -c / k, a / k};
  }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 operator*(const T& s) const { return {a * s, b * s, c * s, d * s}; }
  bool operator==(const Mat2& o) const = default;
};

template <class T>
double max_abs_entry(const Mat2<T>& m) {
  auto f = [](const T& v) {
    if constexpr (std::is_same_v<T, Rational>) return std::abs(boost::rational_cast<double>(v));
    else return std::abs(static_cast<double>(v));
  };
  return std::max({f(m.a), f(m.b), f(m.c), f(m.d)});
}

Eigen::Matrix2d to_eigen(const Mat2<double>& m);
Eigen::Matrix2d to_eigen(const Mat2<Rational>& m);

enum class Group { S2_1_1, S2_1_2, S2_1_3, S2_2_1, S2_2_2 };

std::string group_label(Group g);
/// Accepts "S2.1.1" style labels; throws std::invalid_argument otherwise.
Group parse_group(const std::string& label);
std::vector<Group> all_groups();

/// Table rows compatible with the parities of the middle dimension m and of s.
std::vector<Group> admissible_groups(int m_parity, int s_parity);

/// det T values allowed by the table column for `g`.
std::vector<int> expected_det(Group g, int s_parity);

/// Free entries of a group. Unused entries are ignored; entries a group forces
/// are checked for consistency when supplied.
///   S2.1.1: E12, l11            (l22 = (-1)^s E12^2 / l11, l12 = 0)
///   S2.1.2: E12, sign           (l12 = sign E12, l11 = l22 = 0; s even)
///   S2.1.3: E12, l11, l12       (l22 = (l12^2 + (-1)^s E12^2) / l11)
///   S2.2.1: E11, E22, sign, sign2 (l11 = sign E11, l22 = sign2 E22; s even)
///   S2.2.2: E11, E22, l12, sign (l11 = sign A E11, l22 = -sign A E22,
///                                A^2 = (-1)^s - l12^2/(E11 E22) >= 0)
/// Missing entries default to E = 1, l11 = 1, l12 = 0, except S2.2.2 with odd s,
/// which defaults to E11 = 1, E22 = -1, l12 = 5/4 (A = 3/4).
struct GroupParams {
  std::optional<Rational> E11, E12, E22, l11, l12, l22;
  int sign = 1;
  int sign2 = 1;
};

/// Parses "E12=1,l11=1/2,sign=-1" (also accepts lambda11 / λ11 spellings).
GroupParams parse_group_params(const std::string& text);

struct TaxonomySolution {
  Group group = Group::S2_1_1;
  int m = 0;
  int s = 0;
  int D_parity = 0;
  Eigen::Matrix2d E;
  Eigen::Matrix2d T;
  Eigen::Matrix2d Lambda;
  double det_T = 0.0;
  /// max residual over T T = (-1)^D I, E T^T = Lambda, Lambda E^-1 Lambda = (-1)^D E.
  double constraints_residual = 0.0;
  /// T from the generic rule T = Lambda^T E^-T against the closed form of the group.
  double closed_form_residual = 0.0;
  double symmetry_residual = 0.0;
  /// Every entry and residual was computed in exact rational arithmetic.
  bool exact = false;
  bool det_matches_table = false;
};

void to_json(nlohmann::json& j, const TaxonomySolution& s);

/// Throws std::invalid_argument naming the violated condition when the group
/// is not admissible for (m, s) or the parameters are infeasible.
TaxonomySolution solve_group(Group g, int m, int s, const GroupParams& params);

/// Group whose shape (E pattern, vanishing Lambda entries) and parity rules fit a
/// computed beta = 2 triple. Throws std::invalid_argument for other Betti numbers
/// or when no group fits.
Group classify_triple(const Eigen::MatrixXd& E, const Eigen::MatrixXd& Lambda, int m, int s,
                      double tol = 1e-8);

/// [[u, v], [-(1 + u^2)/v, -u]], squaring to -I.
Mat2<double> family_T(double u, double v);
Mat2<Rational> family_T(const Rational& u, const Rational& v);

enum class Field { real, complex };
/// Real T exists iff beta * D is even.
Field reality_rule(int beta, int D_parity);
std::string field_name(Field f);

}  // namespace phodge
