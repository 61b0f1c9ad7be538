#include <doctest.h>

#include <random>

#include "chain_oracles.hpp"
#include "coop_fixtures.hpp"
#include "coopkit/cooperad.hpp"
#include "coopkit/errors.hpp"
#include "coopkit/json_io.hpp"

using namespace coopkit;

namespace {

// Bell numbers by the triangle recurrence.
int bell(int n) {
  std::vector<int> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<int> next{row.back()};
    for (int x : row) next.push_back(next.back() + x);
    row = next;
  }
  return row.front();
}

Chain two_chain(int m, const std::vector<int>& g) {
  return Chain({FinSet::standard(m), FinSet::standard(static_cast<int>(g.size()))}, {g});
}

void check_passes(const Report& r) {
  INFO(r.to_text());
  CHECK(r.passed());
  CHECK(r.count(Status::Pass) > 0);
}

}  // namespace

TEST_CASE("the first coface of a 2-chain is the cocomposition") {
  auto op = fixture::associative(3);
  Cosimplicial x(op);
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 3; ++m)
      oracle::for_each_map(k, m, [&](const std::vector<int>& g) {
        Chain c = two_chain(m, g);
        CHECK(x.tilde_delta(2, 1, c) == op.cocomp_at(c));
      });
}

TEST_CASE("trivial cooperad: every structure map is the unit identification") {
  auto op = trivial_cooperad(4);
  Cosimplicial x(op);
  for (int k = 0; k <= 3; ++k) {
    FinSet s = FinSet::standard(k);
    for (int n = 1; n <= 4; ++n) CHECK(x.term(n, s).rank() == (k == 1 ? 1 : 0));
    for (int n = 2; n <= 4; ++n)
      for (int i = 1; i < n; ++i) {
        LinMap d = x.coface(n, i, s);
        CHECK(d.rows() == (k == 1 ? 1 : 0));
        if (k == 1) CHECK(d.is_identity());
      }
    for (int n = 0; n <= 3; ++n)
      for (int j = 0; j <= n; ++j) {
        LinMap e = x.codegeneracy(n, j, s);
        if (k == 1) CHECK(e.is_identity());
        else CHECK(e.rows() * e.cols() == 0);
      }
  }
  check_passes(verify_cooperad(op, 3));
  check_passes(verify_cosimplicial(op, 3, 2));
  check_passes(verify_paren_compat(op, 2));
}

TEST_CASE("commutative cooperad: Δ sends the generator to every partition") {
  auto op = fixture::commutative(4);
  Cosimplicial x(op);
  for (int k = 1; k <= 4; ++k) {
    LinMap d = x.coface(2, 1, FinSet::standard(k));
    CHECK(d.rows() == bell(k));
    CHECK(d.cols() == 1);
    for (int r = 0; r < d.rows(); ++r) CHECK(d.get(r, 0) == 1);
  }
  // ε⁰₀ is the counit in arity one and zero elsewhere
  CHECK(x.codegeneracy(0, 0, FinSet::standard(1)) == LinMap::from_dense({{1}}));
  CHECK(x.codegeneracy(0, 0, FinSet::standard(2)).rows() == 0);
}

TEST_CASE("hand-written cooperads satisfy the axioms") {
  check_passes(verify_cooperad(fixture::commutative(4), 4));
  check_passes(verify_cooperad(fixture::associative(3), 3));
}

TEST_CASE("cosimplicial identities") {
  check_passes(verify_cosimplicial(fixture::commutative(3), 3, 3));
  check_passes(verify_cosimplicial(fixture::associative(3), 2, 3));
}

TEST_CASE("cofaces commute with projections at relabeled chains") {
  auto op = fixture::associative(3);
  Cosimplicial x(op);
  std::mt19937 rng(5);
  FinSet s(std::vector<Atom>{Atom("p"), Atom("q"), Atom("r")});
  for (int trial = 0; trial < 30; ++trial) {
    // a random 3-chain over {p, q, r}
    std::uniform_int_distribution<int> size(1, 3);
    const int s1 = size(rng), s2 = std::max(s1, size(rng));
    std::vector<int> f1(s2), f2(3);
    for (int j = 0; j < s2; ++j) f1[j] = j < s1 ? j : std::uniform_int_distribution<int>(0, s1 - 1)(rng);
    for (int j = 0; j < 3; ++j) f2[j] = j < s2 ? j : std::uniform_int_distribution<int>(0, s2 - 1)(rng);
    std::shuffle(f1.begin(), f1.end(), rng);
    std::shuffle(f2.begin(), f2.end(), rng);
    std::vector<Atom> l1, l2;
    for (int j = 0; j < s1; ++j) l1.emplace_back("a" + std::to_string(j));
    for (int j = 0; j < s2; ++j) l2.emplace_back("b" + std::to_string(j));
    Chain c({FinSet(l1), FinSet(l2), s}, {f1, f2});
    for (int i = 1; i <= 2; ++i) {
      LinMap lhs = x.term(3, s).project(c) * x.coface(3, i, s);
      LinMap rhs = x.tilde_delta(3, i, c) * x.term(2, s).project(face(c, i));
      CAPTURE(encode(c));
      CHECK(lhs == rhs);
    }
    for (int j = 0; j <= 2; ++j) {
      Chain d = face(c, 1);
      LinMap lhs = x.term(2, s).project(d) * x.codegeneracy(2, j, s);
      LinMap rhs = x.tilde_eps(2, j, d) * x.term(3, s).project(degeneracy(d, j));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("tables reproduce a cooperad and corruptions are detected") {
  auto com = fixture::commutative(3);
  std::map<std::string, LinMap> table;
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 3; ++m)
      oracle::for_each_map(k, m, [&](const std::vector<int>& g) {
        auto cc = canonical_chain(two_chain(m, g));
        table[encode(cc.chain)] = com.cocomp_at(cc.chain);
      });
  auto tab = table_cooperad("table", com.seq, table, com.counit);
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 3; ++m)
      oracle::for_each_map(k, m, [&](const std::vector<int>& g) {
        Chain c = two_chain(m, g);
        CHECK(tab.cocomp_at(c) == com.cocomp_at(c));
      });
  check_passes(verify_cooperad(tab, 3));

  // one sign flipped on the chain {1} <- {1, 2}
  auto key = encode(canonical_chain(two_chain(1, {0, 0})).chain);
  auto bad = table;
  bad[key] = -bad[key];
  Report r = verify_cooperad(table_cooperad("flipped", com.seq, bad, com.counit), 3);
  CHECK_FALSE(r.passed());
  CHECK(r.count("coassociativity", Status::Fail) > 0);
  REQUIRE(r.first_failure() != nullptr);
  CHECK_FALSE(r.first_failure()->witness.empty());

  auto wrong_counit = com;
  wrong_counit.counit = LinMap::from_dense({{2}});
  Report rc = verify_cooperad(wrong_counit, 3);
  CHECK(rc.count("counit-left", Status::Fail) > 0);
  CHECK(rc.count("counit-right", Status::Fail) > 0);
  CHECK(rc.count("coassociativity", Status::Fail) == 0);
  Report rs = verify_cosimplicial(wrong_counit, 2, 2);
  CHECK(rs.count("codegeneracy-coface", Status::Fail) > 0);

  // a table entry that is not invariant under the automorphisms of its chain
  auto asym = fixture::associative(2);
  std::map<std::string, LinMap> at;
  Chain pair = canonical_chain(two_chain(1, {0, 0})).chain;
  LinMap v(2, 2);
  v.set(0, 0, 1);
  at[encode(pair)] = v;
  Report rn = verify_cooperad(table_cooperad("asym", asym.seq, at, asym.counit), 2);
  CHECK(rn.count("naturality", Status::Fail) > 0);
}

TEST_CASE("parenthesization is compatible with the cofaces") {
  check_passes(verify_paren_compat(fixture::commutative(3), 3));
  check_passes(verify_paren_compat(fixture::associative(3), 2));
}

TEST_CASE("comodules: a cooperad over itself") {
  auto op = std::make_shared<Cooperad>(fixture::associative(3));
  Comodule m{"self", op, op->seq, op->cocomp};
  check_passes(verify_comodule(m, 3));
  Cosimplicial x(m);
  for (int k = 1; k <= 3; ++k) {
    FinSet s = FinSet::standard(k);
    for (int n = 1; n <= 3; ++n) CHECK_NOTHROW(comodule_delta_n(x, n, s));
    // the comodule cofaces agree with those of the cooperad
    Cosimplicial y(*op);
    CHECK(x.coface(3, 2, s) == y.coface(3, 2, s));
  }
}

TEST_CASE("coalgebras: path independence and the first coaction") {
  auto op = std::make_shared<Cooperad>(fixture::commutative(3));
  auto scaled = [&](std::vector<Int> a) {
    Coalgebra c;
    c.name = "line";
    c.op = op;
    c.carrier.basis = {"x"};
    c.cocomp = [a](int m) {
      LinMap v(m >= 1 && m <= 3 ? 1 : 0, 1);
      if (v.rows()) v.set(0, 0, a[m]);
      return v;
    };
    return c;
  };
  // x -> y ⊗ y in arity two, y -> 0; words are row-major with x = 0, y = 1
  Coalgebra good;
  good.name = "nilpotent";
  good.op = op;
  good.carrier.basis = {"x", "y"};
  good.cocomp = [](int m) {
    LinMap v(m >= 1 && m <= 3 ? 1 << m : 0, 2);
    if (m == 1) v = LinMap::identity(2);
    if (m == 2) v.set(3, 0, 1);
    return v;
  };
  Report gr = verify_comodule(good.as_comodule(), 3);
  check_passes(gr);
  // nothing is undefined here, so nothing may be excluded
  CHECK(gr.count(Status::Excluded) == 0);
  Cosimplicial x(good.as_comodule());
  LinMap d2 = coalgebra_delta_n(good, 2);
  // projection onto ([m] <- ∅) recovers the coaction in arity m
  for (int m = 1; m <= 3; ++m) {
    Chain c({FinSet::standard(m), FinSet()}, {{}});
    CHECK(x.term(2, FinSet()).project(c) * d2 == good.cocomp(m));
  }
  CHECK(coalgebra_delta_n(good, 1).is_identity());
  CHECK_NOTHROW(coalgebra_delta_n(good, 3));

  // x -> 1 ⊗ x^m is not coassociative once the cooperad is truncated
  Coalgebra bad = scaled({0, 1, 1, 1});
  CHECK_FALSE(verify_comodule(bad.as_comodule(), 3).passed());
  CHECK_THROWS_AS(coalgebra_delta_n(bad, 3), StructuralError);

  // over the trivial cooperad every Δ^[n] is the unit identification
  auto unit = std::make_shared<Cooperad>(trivial_cooperad(3));
  Coalgebra one;
  one.name = "unit";
  one.op = unit;
  one.carrier.basis = {"x"};
  one.cocomp = [](int m) {
    LinMap v(m == 1 ? 1 : 0, 1);
    if (m == 1) v.set(0, 0, 1);
    return v;
  };
  for (int n = 1; n <= 4; ++n) CHECK(coalgebra_delta_n(one, n).is_identity());
}

TEST_CASE("cooperads round-trip through JSON") {
  auto com = fixture::commutative(3);
  auto j = cooperad_to_json(com, 3);
  auto back = cooperad_from_json(j);
  CHECK(cooperad_to_json(back, 3).dump() == j.dump());
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 3; ++m)
      oracle::for_each_map(k, m, [&](const std::vector<int>& g) {
        Chain c = two_chain(m, g);
        CHECK(back.cocomp_at(c) == com.cocomp_at(c));
      });
  auto broken = j;
  // a 2 x 2 block where Com has 1 x 1
  broken["cocomp"]["[1 | 1>1]"] = linmap_to_json(LinMap::identity(2));
  CHECK_THROWS_AS(cooperad_from_json(broken), ArgumentError);
  auto no_counit = j;
  no_counit.erase("counit");
  CHECK_THROWS_AS(cooperad_from_json(no_counit), ArgumentError);
}
