#include <doctest.h>

#include "coopkit/errors.hpp"
#include "coopkit/json_io.hpp"
#include "coopkit/symseq.hpp"
#include "seq_fixtures.hpp"

using namespace coopkit;

TEST_CASE("counit sequence") {
  SymSeq one = counit_seq(4);
  CHECK(one.rank(1) == 1);
  CHECK(one.rank(0) == 0);
  CHECK(one.rank(4) == 0);
  CHECK(one.rank(9) == 0);
  CHECK(check_action(one).passed());
  CHECK(one.transport({0}).is_identity());
}

TEST_CASE("adjacent words reproduce the permutation") {
  for (int n = 0; n <= 5; ++n) {
    for (const auto& p : all_perms(n)) {
      Perm x(n);
      for (int i = 0; i < n; ++i) x[i] = i;
      for (int j : adjacent_word(p)) x = compose_perm(fixture::transposition(n, j), x);
      CHECK(x == p);
    }
  }
}

TEST_CASE("transport along bijections") {
  SymSeq sgn = fixture::line(3, {2}, true);
  CHECK(sgn.transport({1, 0}).to_dense() == std::vector<std::vector<Int>>{{-1}});
  CHECK(sgn.transport({0, 1}).is_identity());
  CHECK(sgn.evaluate(FinSet({Atom("a"), Atom("b")})).rank() == 1);
  CHECK(sgn.evaluate(FinSet::standard(3)).rank() == 0);
}

TEST_CASE("transport is functorial") {
  for (bool twisted : {false, true}) {
    SymSeq reg = fixture::regular(4, twisted);
    CHECK(check_action(reg).passed());
    for (int n = 0; n <= 4; ++n) {
      auto perms = all_perms(n);
      for (const auto& a : perms) {
        // rho agrees with the defining action on every element, not just generators
        auto r = reg.rho(a);
        for (int b = 0; b < reg.rank(n); ++b) {
          Perm q = compose_perm(a, all_perms(n)[b]);
          CHECK(r.to[b] == std::find(perms.begin(), perms.end(), q) - perms.begin());
          CHECK(r.sign[b] == (twisted ? fixture::perm_sign(a) : 1));
        }
        for (const auto& b : perms) CHECK(reg.transport(compose_perm(a, b)) == reg.transport(a) * reg.transport(b));
      }
      Perm id(n);
      for (int i = 0; i < n; ++i) id[i] = i;
      CHECK(reg.transport(id).is_identity());
    }
  }
}

TEST_CASE("corrupted action is caught") {
  SymSeq reg = fixture::regular(3, false);
  auto gens = reg.generators(3);
  gens[0].sign[0] = -1;
  reg.set_arity(3, reg.value(3), gens);
  Report r = check_action(reg);
  CHECK_FALSE(r.passed());
  CHECK(r.count("involution", Status::Fail) >= 1);
  CHECK(r.to_text().find("involution") != std::string::npos);
}

TEST_CASE("set_arity validates shapes") {
  SymSeq a(2);
  CHECK_THROWS_AS(a.set_arity(2, FreeMod{{"x"}}, {}), ArgumentError);
  CHECK_THROWS_AS(a.set_arity(2, FreeMod{{"x"}}, {SignedPerm{{0}, {2}}}), ArgumentError);
  CHECK_THROWS_AS(a.set_arity(3, FreeMod{}, {}), ArgumentError);
}

TEST_CASE("equivariance checker") {
  SymSeq reg = fixture::regular(3, false);
  SymSeq triv = fixture::line(3, {0, 1, 2, 3});
  // augmentation Z[S_n] -> Z is equivariant; a single coordinate is not
  SeqMorphism aug, bad;
  for (int n = 0; n <= 3; ++n) {
    LinMap m(1, reg.rank(n)), x(1, reg.rank(n));
    for (int b = 0; b < reg.rank(n); ++b) m.set(0, b, 1);
    x.set(0, 0, 1);
    aug.components.push_back(m);
    bad.components.push_back(x);
  }
  CHECK(check_equivariance(reg, triv, aug).passed());
  CHECK_FALSE(check_equivariance(reg, triv, bad).passed());
}

TEST_CASE("json round trip") {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    SymSeq a = fixture::random_seq(rng, 4, 3, "r");
    auto j = symseq_to_json(a);
    SymSeq b = symseq_from_json(nlohmann::json::parse(j.dump()));
    CHECK(symseq_to_json(b).dump() == j.dump());
    CHECK(check_action(a).passed());
  }
  CHECK_THROWS_AS(symseq_from_json(nlohmann::json::parse(R"({"max_arity": 2})")), ArgumentError);
  CHECK_THROWS_AS(symseq_from_json(nlohmann::json::parse(R"({"max_arity": 2, "arity": {"7": {}}})")), ArgumentError);
  LinMap m = LinMap::from_dense({{1, 0}, {0, -3}});
  CHECK(linmap_from_json(linmap_to_json(m)) == m);
}
