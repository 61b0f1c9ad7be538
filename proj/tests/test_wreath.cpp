#include <doctest.h>

#include <map>
#include <set>

#include "chain_oracles.hpp"
#include "coopkit/errors.hpp"
#include "coopkit/wreath.hpp"

using namespace coopkit;

namespace {

FinSet set_of(std::initializer_list<const char*> xs) {
  std::vector<Atom> v;
  for (auto x : xs) v.emplace_back(x);
  return FinSet(v);
}

}  // namespace

TEST_CASE("atoms order numerically before text") {
  CHECK(Atom(2) < Atom(10));
  CHECK(Atom("10") < Atom("a"));
  CHECK(Atom("a") < Atom("b"));
  CHECK(FinSet::standard(3)[2] == Atom("3"));
  CHECK_THROWS_AS(FinSet({Atom("a"), Atom("a")}), ArgumentError);
}

TEST_CASE("faces") {
  Chain c = parse_chain("[x | a>x,b>x | p>a,q>a,r>b]");
  CHECK(encode(face(c, 2)) == "[x | p>x,q>x,r>x]");
  CHECK(encode(face(c, 1)) == "[a,b | p>a,q>a,r>b]");
  CHECK(encode(face(parse_chain("[a,b | p>a,q>b]"), 1)) == "[p,q]");
  CHECK_THROWS_AS(face(c, 0), ArgumentError);
  CHECK_THROWS_AS(face(c, 3), ArgumentError);
  CHECK_THROWS_AS(face(parse_chain("[a]"), 1), ArgumentError);
}

TEST_CASE("degeneracies") {
  Chain s = parse_chain("[i,j,k]");
  Chain s0 = degeneracy(s, 0);
  CHECK(s0.level(0) == FinSet({star_atom()}));
  CHECK(s0.map(0) == std::vector<int>{0, 0, 0});
  CHECK(encode(degeneracy(s, 1)) == "[i,j,k | i>i,j>j,k>k]");
  CHECK(encode(degeneracy(parse_chain("[x | a>x,b>x]"), 1)) == "[x | x>x | a>x,b>x]");
  CHECK_THROWS_AS(degeneracy(s, 2), ArgumentError);
  CHECK_THROWS_AS(parse_chain("[" + kStarLabel + ",a]"), ArgumentError);
}

TEST_CASE("leaf functor and leafless chains") {
  Chain c = parse_chain("[i1,i2,i3 | j1>i1,j2>i1,j3>i1,k1>i3,k2>i3]");
  CHECK(encode(gamma(c)) == "j1,j2,j3,k1,k2");
  CHECK(gamma(parse_chain("[a,b]")) == set_of({"a", "b"}));
  Chain b = parse_chain("[x | a>x,b>x | ]");
  CHECK(is_bar_chain(b));
  CHECK(gamma(b).empty());
  CHECK(encode(bar_face(b, 2)) == "[x | ]");
  CHECK(encode(bar_face(parse_chain("[s,t | ]"), 1)) == "[]");
  CHECK(encode(bar_degeneracy(parse_chain("[s,t | ]"), 2)) == "[s,t |  | ]");
  CHECK_THROWS_AS(bar_face(parse_chain("[a | b>a]"), 1), ArgumentError);
}

TEST_CASE("encoding round trips") {
  for (const char* t : {"[x | a>x,b>x | p>a,q>a,r>b]", "[]", "[a,b | ]", "[1,2 | 3>1,4>1 | ]", "[z]"}) {
    CHECK(encode(parse_chain(t)) == t);
  }
  oracle::for_each_chain_bounded(3, 2, [](const Chain& c) { CHECK(parse_chain(encode(c)) == c); });
  CHECK_THROWS_AS(parse_chain("x | y"), ArgumentError);
  CHECK_THROWS_AS(parse_chain("[a | b]"), ArgumentError);
  CHECK_THROWS_AS(parse_chain("[a | b>c]"), ArgumentError);
  CHECK_THROWS_AS(parse_chain("[a,a]"), ArgumentError);
}

TEST_CASE("chain isos check naturality") {
  Chain c = parse_chain("[a,b | p>a,q>b]");
  CHECK_NOTHROW(ChainIso(c, c, {{1, 0}, {1, 0}}));
  CHECK_THROWS_AS(ChainIso(c, c, {{1, 0}, {0, 1}}), ArgumentError);
  ChainIso g(c, c, {{1, 0}, {1, 0}});
  CHECK(g.after(g).perm == ChainIso::identity(c).perm);
  CHECK(g.inverse().perm == g.perm);
}

TEST_CASE("simplicial identities hold on all small chains") {
  long checked = 0;
  for (int n = 1; n <= 4; ++n) {
    oracle::for_each_chain_bounded(n, n == 4 ? 2 : 3, [&](const Chain& c) {
      for (int j = 1; j <= n - 1; ++j)
        for (int i = 1; i < j; ++i) CHECK(face(face(c, j), i) == face(face(c, i), j - 1));
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i) CHECK(degeneracy(degeneracy(c, j), i) == degeneracy(degeneracy(c, i), j + 1));
      for (int j = 0; j <= n; ++j) {
        Chain s = degeneracy(c, j);
        for (int i = 1; i <= n; ++i) {
          Chain lhs = face(s, i);
          if (i == j || i == j + 1) CHECK(lhs == c);
          else if (i < j) CHECK(lhs == degeneracy(face(c, i), j - 1));
          else CHECK(lhs == degeneracy(face(c, i - 1), j));
          ++checked;
        }
        if (j <= n - 1) CHECK(gamma(s) == gamma(c));
        else CHECK(gamma(s).size() == gamma(c).size());
      }
      for (int i = 1; i <= n - 1; ++i) CHECK(gamma(face(c, i)) == gamma(c));
    });
  }
  CHECK(checked > 1000);
}

TEST_CASE("levels of size 3 with n = 4") {
  // the full range, only for the face-face identity which is the cheapest
  oracle::for_each_chain({3, 3, 3, 3}, [](const Chain& c) {
    for (int j = 2; j <= 3; ++j)
      for (int i = 1; i < j; ++i) CHECK(face(face(c, j), i) == face(face(c, i), j - 1));
  });
}

TEST_CASE("canonical forms agree with exhaustive isomorphism search") {
  for (bool over_top : {false, true}) {
    std::vector<Chain> all;
    oracle::for_each_chain_bounded(3, 2, [&](const Chain& c) { all.push_back(c); });
    oracle::for_each_chain({3, 3}, [&](const Chain& c) { all.push_back(c); });
    std::map<std::string, std::vector<std::size_t>> by_key;
    for (std::size_t k = 0; k < all.size(); ++k) {
      auto cc = over_top ? canonical_over_top(all[k]) : canonical_chain(all[k]);
      CHECK(cc.witness.source == all[k]);
      CHECK(cc.witness.target == cc.chain);
      auto again = over_top ? canonical_over_top(cc.chain) : canonical_chain(cc.chain);
      CHECK(again.chain == cc.chain);
      CHECK(again.key == cc.key);
      if (over_top) CHECK(cc.witness.top_is_identity());
      by_key[cc.key].push_back(k);
    }
    std::vector<std::size_t> reps;
    for (auto& [key, members] : by_key) {
      for (std::size_t m : members) CHECK(oracle::isomorphic(all[members[0]], all[m], over_top));
      reps.push_back(members[0]);
    }
    for (std::size_t a = 0; a < reps.size(); ++a)
      for (std::size_t b = a + 1; b < reps.size(); ++b) CHECK_FALSE(oracle::isomorphic(all[reps[a]], all[reps[b]], over_top));
  }
}

TEST_CASE("relabeled chain canonicalizes on standard atoms") {
  Chain c = parse_chain("[b,a | q>b,p>a]");
  auto cc = canonical_chain(c);
  CHECK(cc.chain.level(0) == FinSet::standard(2));
  CHECK(cc.chain.level(1) == FinSet::standard(2));
  CHECK(canonical_chain(parse_chain("[b,a | q>a,p>b]")).chain == cc.chain);
}

TEST_CASE("fiber enumeration on two leaves") {
  FinSet s = FinSet::standard(2);
  auto two = enumerate_fiber(s, 2, FiberBounds::level_sizes(2, {2}));
  CHECK(two.size() == 3);
  for (const auto& fc : two) CHECK(fc.automorphisms().size() == 1);
  auto three = enumerate_fiber(s, 2, FiberBounds::level_sizes(2, {3}));
  REQUIRE(three.size() == 5);
  std::multiset<std::size_t> orders;
  for (const auto& fc : three) orders.insert(fc.automorphisms().size());
  CHECK(orders == std::multiset<std::size_t>{1, 1, 1, 1, 2});
  auto empty = enumerate_fiber(FinSet(), 2, FiberBounds::level_sizes(2, {1}));
  CHECK(empty.size() == 2);
}

TEST_CASE("fiber enumeration matches brute force") {
  // raw enumeration of all chains with top [m] modulo isos fixing the top
  for (int n = 2; n <= 3; ++n) {
    for (int m = 0; m <= 3; ++m) {
      const int bound = (n == 2) ? 3 : 2;
      std::vector<Chain> reps;
      std::vector<int> sizes(n, 0);
      sizes[n - 1] = m;
      std::function<void(int)> rec = [&](int l) {
        if (l == n - 1) {
          oracle::for_each_chain(sizes, [&](const Chain& c) {
            for (const auto& r : reps)
              if (oracle::isomorphic(r, c, true)) return;
            reps.push_back(c);
          });
          return;
        }
        for (int k = 0; k <= bound; ++k) {
          sizes[l] = k;
          rec(l + 1);
        }
      };
      rec(0);
      std::vector<int> bounds(n, bound);
      auto classes = enumerate_fiber(FinSet::standard(m), n, FiberBounds::level_sizes(n, bounds));
      CAPTURE(n);
      CAPTURE(m);
      CHECK(classes.size() == reps.size());
      std::set<std::string> keys;
      for (const auto& fc : classes) {
        keys.insert(fc.key);
        CHECK(canonical_over_top(fc.representative).chain == fc.representative);
        CHECK(fc.automorphisms().size() == static_cast<std::size_t>(oracle::count_automorphisms(fc.representative)));
      }
      CHECK(keys.size() == classes.size());
      for (const auto& r : reps) CHECK(keys.count(canonical_over_top(r).key) == 1);
    }
  }
}
