#pragma once

// The graph cooperad: labeled trees with contraction as cocomposition, and
// its directed variant where reversing an edge multiplies by -1.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coopkit/cooperad.hpp"
#include "coopkit/wreath.hpp"

namespace coopkit {

/// A graph on a finite set; edges are pairs of vertex positions. Undirected
/// edges are stored with first < second; directed ones as (tail, head).
struct Graph {
  FinSet vertices;
  std::vector<std::pair<int, int>> edges;
  int sign = 1;  // directed graphs: the coefficient in front

  bool operator==(const Graph&) const = default;
};

/// `1,2,3; 1-2 2-3` (undirected) or `1,2,3; 1>2 3>2` (directed, with a
/// leading '-' when the sign is negative).
std::string encode_graph(const Graph& g, bool directed);

/// Connected and acyclic (a labeled tree).
bool is_tree(const Graph& g);

/// Every labeled tree on s, ordered by their sorted edge lists; empty for
/// the empty set.
std::vector<Graph> enumerate_trees(const FinSet& s);

/// Labeled trees decoded from Prüfer sequences (an independent count).
std::vector<Graph> trees_from_pruefer(const FinSet& s);

struct Contraction {
  Graph quotient;             // on f.cod
  std::vector<Graph> blocks;  // blocks[t] on the fiber over f.cod[t], in fiber order
};

/// The contraction of g along f when every fiber induces a tree; nullopt
/// otherwise (including empty fibers). Directed edges keep their direction.
std::optional<Contraction> contract(const Graph& g, const SetMap& f);

/// Orients every edge from the smaller to the larger vertex, flipping the
/// sign once per reversal, and sorts the edges.
Graph canonical_dir(const Graph& g);

/// gr as a symmetric sequence; the directed action carries reversal signs.
SymSeq graph_seq(int max_arity, bool directed);

/// Positional cocomposition ([m] <- [k], g).
LinMap delta_graph(int max_arity, int m, const std::vector<int>& g, bool directed);
/// The one-vertex graph to 1.
LinMap counit_graph();

/// Δ̃ of an arbitrarily oriented tree on [k] as a sparse column in the
/// canonical target basis, by contracting first and canonicalizing after.
LinMap::Column delta_oriented(int max_arity, const Graph& g, int m, const std::vector<int>& f);

enum class Corruption { None, Sign, ZeroCase, Counit };
Corruption parse_corruption(const std::string& name);
std::string to_string(Corruption c);

/// The (directed) graph cooperad truncated above max_arity. Corruptions for
/// negative controls: Sign flips one seeded nonzero entry of one chain;
/// ZeroCase sends failed contractions to the sum of all target words
/// instead of 0; Counit doubles the counit.
Cooperad graph_cooperad(int max_arity, bool directed, Corruption corrupt = Corruption::None, unsigned seed = 0);

/// A rank-2 coalgebra {x, y} over the graph cooperad: x, y coact by the
/// one-vertex graph in arity one; x -> (1-2) ⊗ y ⊗ y in arity two.
Coalgebra graph_coalgebra_example(std::shared_ptr<const Cooperad> gr);

}  // namespace coopkit
