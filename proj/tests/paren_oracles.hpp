#pragma once

// The two routes from (((A B) C) D) to the flat four-fold composite.

#include <string>
#include <vector>

#include "coopkit/compose.hpp"

namespace oracle {

// Both routes over sets of size <= upto; returns the first set where they
// differ, or -1.
inline int four_factor_mismatch(const std::vector<coopkit::SymSeq>& s, int max_set, int upto) {
  using namespace coopkit;
  Nested abc_d(s, Expr::parse("(((1 2) 3) 4)"), max_set);
  // route 1: ((AB)C) -> (ABC) inside, then (ABC)D -> ABCD
  Nested ab_c({s[0], s[1], s[2]}, Expr::parse("((1 2) 3)"), max_set);
  const int inner = abc_d.inner_arity();
  SymSeq abc = materialize({s[0], s[1], s[2]}, inner);
  Nested abc_then_d({s[0], s[1], s[2], s[3]}, Expr::parse("((1 2 3) 4)"), max_set);
  // route 2: ((AB) C D) -> (A B C D)
  Nested ab_c_d(s, Expr::parse("((1 2) 3 4)"), max_set);
  SymSeq ab = materialize({s[0], s[1]}, inner);
  Nested x_c_d({ab, s[2], s[3]}, Expr::parse("((1 2) 3)"), max_set);
  SeqMorphism inner_map;
  for (int k = 0; k <= inner; ++k) {
    Nested local({s[0], s[1], s[2]}, Expr::parse("((1 2) 3)"), std::max(k, 1));
    inner_map.components.push_back(k <= max_set ? ab_c.paren(FinSet::standard(k)) : local.paren(FinSet::standard(k)));
  }
  SeqMorphism id_d;
  for (int k = 0; k <= s[3].max_arity(); ++k) id_d.components.push_back(LinMap::identity(s[3].rank(k)));
  for (int m = 0; m <= upto; ++m) {
    FinSet set = FinSet::standard(m);
    KanModule start = abc_d.outer(set);
    KanModule mid1({abc, s[3]}, set);
    LinMap r1 = abc_then_d.paren(set) * kan_functorial(start, mid1, {inner_map, id_d});
    // route 2: treat (AB) as a single slot first
    LinMap r2 = ab_c_d.paren(set) * x_c_d.paren(set);
    if (!(r1 == r2)) return m;
  }
  return -1;
}

}  // namespace oracle
