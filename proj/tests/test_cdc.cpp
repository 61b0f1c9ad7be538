#include <doctest.h>

#include <map>

#include "cdc_oracles.hpp"
#include "chain_oracles.hpp"
#include "seq_fixtures.hpp"
#include "coopkit/cdc.hpp"
#include "coopkit/errors.hpp"
#include "coopkit/json_io.hpp"
#include "coopkit/graphco.hpp"

using namespace coopkit;

namespace {

FinSet abc() { return FinSet(std::vector<Atom>{Atom("a"), Atom("b"), Atom("c")}); }

Complex simplex() { return Complex{abc(), {{0, 1}, {1, 2}, {0, 2}}, {{0, 1, 2}}}; }

std::map<std::vector<std::pair<int, int>>, int> tree_positions(int n) {
  std::map<std::vector<std::pair<int, int>>, int> out;
  auto trees = enumerate_trees(FinSet::standard(n));
  for (std::size_t i = 0; i < trees.size(); ++i) out[trees[i].edges] = static_cast<int>(i);
  return out;
}

}  // namespace

TEST_CASE("collapsibility and homology of small complexes") {
  CHECK(collapsible(simplex()));
  CHECK(classify(simplex()) == Contractibility::Contractible);

  Complex cycle{abc(), {{0, 1}, {1, 2}, {0, 2}}, {}};
  CHECK_FALSE(collapsible(cycle));
  CHECK(reduced_homology(cycle)[1] == std::vector<Int>{0});
  CHECK(classify(cycle) == Contractibility::NotContractible);

  Complex sphere{abc(), {{0, 1}, {1, 2}, {0, 2}}, {{0, 1, 2}, {0, 1, 2}}};
  CHECK_FALSE(collapsible(sphere));
  CHECK(reduced_homology(sphere)[2] == std::vector<Int>{0});
  CHECK(reduced_homology(sphere)[1].empty());

  // two disks sharing two edges form a disk
  Complex pair{abc(), {{0, 1}, {0, 1}, {1, 2}, {0, 2}}, {{0, 2, 3}, {1, 2, 3}}};
  CHECK(collapsible(pair));

  Complex loop{abc(), {{1, 1}}, {}};
  CHECK_THROWS_AS(validate(loop), UnsupportedError);
  Complex bad{abc(), {{0, 1}, {1, 2}, {0, 1}}, {{0, 1, 2}}};
  CHECK_THROWS(validate(bad));
}

TEST_CASE("contraction of a 2-simplex") {
  FinSet xy(std::vector<Atom>{Atom("x"), Atom("y")});
  auto c = contract_complex(simplex(), SetMap(abc(), xy, {0, 0, 1}));
  CHECK(c.outcome == ContractOutcome::NotDeltaComplex);

  FinSet pqr(std::vector<Atom>{Atom("p"), Atom("q"), Atom("r")});
  auto id = contract_complex(simplex(), SetMap(abc(), pqr, {2, 0, 1}));
  REQUIRE(id.outcome == ContractOutcome::Ok);
  CHECK(id.quotient.triangles.size() == 1);
  CHECK(id.quotient.edges.size() == 3);
  for (const auto& b : id.blocks) CHECK(b.vertices.size() == 1);

  auto whole = contract_complex(simplex(), SetMap(abc(), FinSet(std::vector<Atom>{Atom("x")}), {0, 0, 0}));
  REQUIRE(whole.outcome == ContractOutcome::Ok);
  CHECK(whole.blocks[0] == simplex());
  CHECK(whole.quotient.edges.empty());

  // a path a-c-b with f(a) = f(b): the fiber {a, b} has no edge
  Complex path{abc(), {{0, 2}, {1, 2}}, {}};
  CHECK(contract_complex(path, SetMap(abc(), xy, {0, 0, 1})).outcome == ContractOutcome::NotContractible);
}

TEST_CASE("basis counts") {
  // by hand: the point; one edge; three paths, the simplex, and three
  // pairs of disks sharing two edges
  CHECK(enumerate_complexes(1, 2).size() == 1);
  CHECK(enumerate_complexes(2, 2).size() == 1);
  CHECK(enumerate_complexes(3, 0).size() == 3);
  CHECK(enumerate_complexes(3, 1).size() == 4);
  CHECK(enumerate_complexes(3, 2).size() == 7);
  CHECK(enumerate_complexes(0, 2).empty());
}

TEST_CASE("admitted complexes have vanishing homology") {
  for (int n = 1; n <= 4; ++n) {
    std::vector<Complex> indeterminate;
    auto basis = enumerate_complexes(n, 2, &indeterminate);
    CHECK(indeterminate.empty());
    for (const auto& x : basis) {
      CAPTURE(encode_complex(x));
      CHECK(acyclic(x));
      CHECK(oracle::reduced_betti(x, 2) == std::vector<int>{0, 0, 0});
      CHECK(oracle::reduced_betti(x, 3) == std::vector<int>{0, 0, 0});
    }
  }
}

TEST_CASE("the one-dimensional part is the tree cooperad") {
  const int top = 4;
  auto cdc = cdc_cooperad(top, 0);
  auto gr = graph_cooperad(top, false);
  CHECK(check_action(cdc.seq, "cdc").passed());
  // P[n] sends the graph basis to the complex basis
  std::vector<LinMap> p(top + 1);
  for (int n = 0; n <= top; ++n) {
    auto trees = tree_positions(n);
    auto basis = enumerate_complexes(n, 0);
    REQUIRE(basis.size() == trees.size());
    p[n] = LinMap(static_cast<int>(basis.size()), static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(basis[i].triangles.empty());
      p[n].set(static_cast<int>(i), trees.at(basis[i].edges), 1);
    }
    for (int j = 0; j + 1 < n; ++j) {
      Perm t = fixture::transposition(n, j);
      CHECK(p[n] * gr.seq.transport(t) == cdc.seq.transport(t) * p[n]);
    }
  }
  for (int k = 0; k <= top; ++k)
    for (int m = 0; m <= top; ++m)
      oracle::for_each_map(k, m, [&](const std::vector<int>& g) {
        std::vector<LinMap> factors{p[m]};
        std::vector<int> sizes(m, 0);
        for (int t : g) ++sizes[t];
        for (int s : sizes) factors.push_back(p[s]);
        CAPTURE(m);
        CHECK(cdc.cocomp(m, g) * p[k] == kron_all(factors) * gr.cocomp(m, g));
        for (char u : cdc.undefined(m, g)) CHECK(u == 0);
      });
}

TEST_CASE("cdc satisfies the axioms where defined") {
  auto cdc = cdc_cooperad(3, 2);
  Report r = verify_cooperad(cdc, 3);
  INFO(r.to_text());
  CHECK(r.passed());
  CHECK(r.count("coassociativity", Status::Pass) > 0);
  CHECK(r.count("naturality", Status::Pass) > 0);
  // the simplex over two points is undefined, and says so
  CHECK(cdc.cocomp(1, {0, 0, 0}).is_identity());
  CHECK(cdc.cocomp(3, {0, 1, 2}).is_identity());
  bool some = false;
  for (char u : cdc.undefined(2, {0, 0, 1})) some = some || u;
  CHECK(some);
}

TEST_CASE("complexes round-trip through the cell list") {
  const auto j = complex_to_json(simplex());
  CHECK(j.dump() == R"({"edges":[[0,"a","b"],[1,"b","c"],[2,"a","c"]],"triangles":[[0,0,1,2]],"vertices":["a","b","c"]})");
  CHECK(complex_from_json(j) == simplex());
  auto reversed = nlohmann::json::parse(R"({"vertices": ["a","b","c"], "edges": [[7,"b","a"],[3,"c","b"],[5,"a","c"]], "triangles": [[0,3,5,7]]})");
  CHECK(canonical(complex_from_json(reversed)) == canonical(simplex()));
  auto solid = j;
  solid["tetrahedra"] = nlohmann::json::array();
  CHECK_THROWS_AS(complex_from_json(solid), UnsupportedError);
  auto unknown = j;
  unknown["triangles"][0][1] = 9;
  CHECK_THROWS_AS(complex_from_json(unknown), ArgumentError);
}
