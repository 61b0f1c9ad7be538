#pragma once

// The level-tree tensor product A1 ⊙ ... ⊙ An evaluated at a chain, its right
// Kan extension along the leaf functor (the composition product), the closed
// form for two sequences, coefficients, and parenthesization maps.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "coopkit/symseq.hpp"
#include "coopkit/wreath.hpp"
#include "coopkit/zmodule.hpp"

namespace coopkit {

/// Factor layout of (A1 ⊙ ... ⊙ An)(c). Vertices are the root and the
/// elements of S1..S_{n-1}, ordered by level and then by atom order; the
/// vertex at height h carries A_{h+1}(fiber). Words are row-major.
class TensorShape {
 public:
  TensorShape(const std::vector<SymSeq>& seqs, const Chain& c);

  const Chain& chain() const { return chain_; }
  int vertex_count() const { return static_cast<int>(heights_.size()); }
  /// Vertex id of position p at height h (h == 0 is the root, p == 0).
  int vertex(int h, int p) const { return level_offset_[h] + p; }
  int height(int v) const { return heights_[v]; }
  int position(int v) const { return positions_[v]; }
  int arity(int v) const { return arity_[v]; }
  int factor_rank(int v) const { return factor_rank_[v]; }
  long long rank() const { return rank_; }
  std::vector<int> digits(long long index) const;
  long long index(const std::vector<int>& digits) const;
  FreeMod module(const std::vector<SymSeq>& seqs) const;

 private:
  Chain chain_;
  std::vector<int> level_offset_;
  std::vector<int> heights_, positions_, arity_, factor_rank_;
  std::vector<long long> stride_;
  long long rank_ = 1;
};

/// The map (A1 ⊙ ... ⊙ An)(source) -> (...)(target) induced by a chain iso:
/// each factor is transported along the fiber bijection and the factors are
/// permuted (no Koszul signs in this ambient category).
SignedPerm transport_tensor(const std::vector<SymSeq>& seqs, const ChainIso& iso);

struct KanClass {
  FiberClass fiber;
  TensorShape shape;
  Invariants invariants;
  int offset = 0;  // first basis index in the product
};

/// (A1 ∘̂ ... ∘̂ An)(S) as the product over fiber classes of the invariants
/// of the tensor value under the class automorphisms.
class KanModule {
 public:
  KanModule(std::vector<SymSeq> seqs, FinSet s);

  const FinSet& base() const { return base_; }
  const std::vector<SymSeq>& seqs() const { return seqs_; }
  int length() const { return static_cast<int>(seqs_.size()); }
  int rank() const { return rank_; }
  FreeMod module() const;
  const std::vector<KanClass>& classes() const { return classes_; }
  /// Index of the class with this over-S key, or -1.
  int class_index(const std::string& key) const;

  /// The cone projection at any chain d with top level S:
  /// rank(T(d)) x rank().
  LinMap project(const Chain& d) const;
  /// Builds the map X -> K whose projection at each class representative
  /// is component(class); throws StructuralError if a component is not
  /// invariant under the class automorphisms.
  LinMap assemble(int domain_rank, const std::function<LinMap(const KanClass&)>& component) const;

 private:
  std::vector<SymSeq> seqs_;
  FinSet base_;
  std::vector<KanClass> classes_;
  std::map<std::string, int> by_key_;
  int rank_ = 0;
};

/// Bounds for enumerate_fiber derived from the supports of the sequences.
FiberBounds support_bounds(const std::vector<SymSeq>& seqs);

/// Replaces the top level of c by t along the bijection beta (beta[i] is the
/// position in t of the image of top[i]); returns the iso c -> relabeled.
ChainIso relabel_top(const Chain& c, const FinSet& t, const Perm& beta);

/// K(beta): K(S) -> K(T) for a bijection S -> T given by positions.
LinMap kan_transport(const KanModule& src, const KanModule& tgt, const Perm& beta);

/// The composite as a symmetric sequence on [0..max_arity]; the action of
/// each adjacent transposition is a signed permutation of the class bases.
SymSeq materialize(const std::vector<SymSeq>& seqs, int max_arity, const std::string& tag_prefix = "");

/// Per-arity morphisms g_i: A_i -> B_i induce K(A...)(S) -> K(B...)(S).
LinMap kan_functorial(const KanModule& src, const KanModule& tgt, const std::vector<SeqMorphism>& maps);

// --- the closed form for two sequences ------------------------------------------------

/// ∏_k (∏_{f:[n]->[k]} A(k) ⊗ B(f^{-1}(1)) ⊗ ... ⊗ B(f^{-1}(k)))^{Σ_k}, computed
/// directly from the action of Σ_k on (map, word) pairs.
struct ClosedForm {
  int arity = 0;
  struct Summand {
    int k;
    std::vector<int> f;  // f[j] in [0, k)
    int offset;          // into the ambient direct sum
    int rank;
  };
  std::vector<Summand> summands;
  int ambient_rank = 0;
  LinMap inclusion;  // ambient -> invariants basis (columns)
  Invariants invariants;
  int rank() const { return invariants.rank(); }
};
ClosedForm closed_form_compose(const SymSeq& a, const SymSeq& b, int n);

/// Projection-compatible comparison maps K([a, b], [n]) <-> closed form.
LinMap closed_from_kan(const ClosedForm& cf, const KanModule& k);
LinMap kan_from_closed(const ClosedForm& cf, const KanModule& k);

/// (A1 ∘̂ ... ∘̂ An ∘̂ a): the coefficient module sits over empty fibers.
SymSeq coefficient_seq(const FreeMod& a);
KanModule compose_with_coefficient(const std::vector<SymSeq>& seqs, const FreeMod& a);

// --- nested composites and parenthesization ------------------------------------------------

/// A parenthesization: leaves are slot indices 0..n-1 in order.
struct Expr {
  int leaf = -1;
  std::vector<Expr> kids;

  bool is_leaf() const { return leaf >= 0; }
  int leaf_count() const;
  /// "((1 2) 3)": 1-based slots, in order, separated by spaces.
  static Expr parse(const std::string& text);
  std::string to_string() const;
  static Expr flat(int n);
};

/// A nested composite over flat slot sequences. Inner nodes are materialized
/// as symmetric sequences up to an arity large enough for every chain that
/// contributes over sets of size <= max_set.
class Nested {
 public:
  Nested(std::vector<SymSeq> slots, Expr shape, int max_set);

  const Expr& shape() const { return shape_; }
  /// The sequence of the whole expression (materialized unless a leaf).
  const SymSeq& seq() const { return root_->seq; }
  /// The outermost composite at S: K([seq(E_1), ..., seq(E_m)], S).
  KanModule outer(const FinSet& s) const;
  /// The parenthesization map outer(S) -> K(slots, S).
  LinMap paren(const FinSet& s) const;
  /// paren at [k], as a morphism seq() -> materialized flat composite.
  SeqMorphism paren_morphism(int max_arity) const;
  int inner_arity() const { return arity_; }

 private:
  struct Node {
    Expr expr;
    int first = 0, last = 0;  // slot range [first, last]
    SymSeq seq;
    std::vector<std::shared_ptr<Node>> kids;
    std::vector<SymSeq> kid_seqs() const;
  };
  std::shared_ptr<Node> build(const Expr& e, int& next) const;
  LinMap phi(const Node& node, const KanModule& k, const Chain& c) const;
  const KanModule& kan_at(const Node& node, int k) const;

  std::vector<SymSeq> slots_;
  Expr shape_;
  int arity_ = 0;
  std::shared_ptr<Node> root_;
  struct Cache {
    std::mutex mu;
    std::map<std::pair<const Node*, int>, std::shared_ptr<KanModule>> kan;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Largest level size among nonzero chains of K(slots, [m]) for m <= max_set.
int max_level_size(const std::vector<SymSeq>& slots, int max_set);

}  // namespace coopkit
