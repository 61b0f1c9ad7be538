#pragma once

// Contractible Δ-complexes of dimension at most two on a labeled vertex set,
// with contraction along set maps as cocomposition.
//
// The fragment handled here: edges join distinct vertices (parallel edges
// allowed), every triangle has three distinct vertices, and cells carry no
// orientation. Its one-dimensional part is the tree cooperad.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coopkit/cooperad.hpp"
#include "coopkit/wreath.hpp"

namespace coopkit {

struct Complex {
  FinSet vertices;
  std::vector<std::pair<int, int>> edges;  // vertex positions, first < second
  std::vector<std::array<int, 3>> triangles;  // edge ids

  bool operator==(const Complex&) const = default;
};

/// Checks that edges join distinct vertices and that every triangle bounds
/// three distinct vertices through three of its edges.
void validate(const Complex& x);

/// Sorted edges and triangles, parallel edges numbered to make the triangle
/// list lexicographically least. Equal iff isomorphic fixing the vertices.
Complex canonical(const Complex& x);

/// `a,b,c; a-b b-c a-c; 0 1 2` (vertices; edges by id; triangles).
std::string encode_complex(const Complex& x);

/// Reduced integral homology in degrees 0, 1, 2 as invariant factor lists
/// (a zero entry stands for a free summand).
std::array<std::vector<Int>, 3> reduced_homology(const Complex& x);
bool acyclic(const Complex& x);

/// Greedy elementary collapses down to a point.
bool collapsible(const Complex& x);

enum class Contractibility { Contractible, NotContractible, Indeterminate };
/// Collapsible means contractible; nonvanishing homology means not; an
/// acyclic complex that does not collapse is indeterminate.
Contractibility classify(const Complex& x);
std::string to_string(Contractibility c);

/// The maximal subcomplex supported on the given vertex positions, relabeled
/// onto them in order.
Complex closure(const Complex& x, const std::vector<int>& support);

enum class ContractOutcome { Ok, NotContractible, NotDeltaComplex, Indeterminate };
std::string to_string(ContractOutcome c);

struct ComplexContraction {
  ContractOutcome outcome = ContractOutcome::Ok;
  std::string reason;
  Complex quotient;             // on f.cod
  std::vector<Complex> blocks;  // closures of the fibers, in fiber order
};

/// Every fiber closure must be contractible (otherwise NotContractible), and
/// every other cell may meet each block in at most one vertex (otherwise the
/// quotient is not a Δ-complex).
ComplexContraction contract_complex(const Complex& x, const SetMap& f);

/// Canonical contractible complexes on [n] with at most max_triangles
/// triangles. Acyclic complexes that do not collapse are left out and
/// returned through `indeterminate` when given.
std::vector<Complex> enumerate_complexes(int n, int max_triangles, std::vector<Complex>* indeterminate = nullptr);

/// The sequence of those bases for arities up to max_arity.
SymSeq cdc_seq(int max_arity, int max_triangles);

/// The cooperad on cdc_seq. Columns whose contraction is not a Δ-complex
/// (or is indeterminate) are reported through Cooperad::undefined and are
/// zero in the matrices.
Cooperad cdc_cooperad(int max_arity, int max_triangles);

}  // namespace coopkit
