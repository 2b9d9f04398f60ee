#pragma once

#include "phodge/taxonomy.hpp"
#include "support.hpp"

namespace testing {

using phodge::Group;
using phodge::GroupParams;
using phodge::Rational;

inline Rational draw(testing::Gen& gen, int lo = 1, int hi = 9) {
  const int sign = gen.integer(0, 1) ? 1 : -1;
  return Rational(sign * gen.integer(lo, hi), gen.integer(1, 6));
}

inline GroupParams random_params(Group g, int s, testing::Gen& gen) {
  GroupParams p;
  p.sign = gen.integer(0, 1) ? 1 : -1;
  p.sign2 = gen.integer(0, 1) ? 1 : -1;
  switch (g) {
    case Group::S2_1_1:
      p.E12 = draw(gen);
      p.l11 = draw(gen);
      break;
    case Group::S2_1_2:
      p.E12 = draw(gen);
      break;
    case Group::S2_1_3:
      p.E12 = draw(gen);
      p.l11 = draw(gen);
      p.l12 = draw(gen, 0, 9);
      break;
    case Group::S2_2_1:
      p.E11 = draw(gen);
      p.E22 = draw(gen);
      break;
    case Group::S2_2_2: {
      // E22 = +-E11 w^2 keeps sqrt|E11 E22| rational; l12 is chosen so that A is rational.
      const Rational e = draw(gen), w = draw(gen);
      p.E11 = e;
      if (s % 2 == 0) {
        p.E22 = e * w * w;
        const long long a = gen.integer(0, 6), b = gen.integer(a + 1, 9);
        p.l12 = e * w * Rational(2 * a * b, a * a + b * b);  // A = (b^2 - a^2)/(a^2 + b^2)
      } else {
        p.E22 = -e * w * w;
        const long long c = gen.integer(1, 9);
        p.l12 = e * w * Rational(c * c + 1, 2 * c);  // A = (c^2 - 1)/(2c)
      }
      break;
    }
  }
  return p;
}

}  // namespace testing
