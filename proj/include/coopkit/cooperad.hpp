#pragma once

// Cooperads (cocomposition and counit), comodules and coalgebras over them,
// the induced coface and codegeneracy maps of the cosimplicial object
// O^{∘̂n}, and the axiom checks.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "coopkit/compose.hpp"
#include "coopkit/report.hpp"
#include "coopkit/symseq.hpp"
#include "coopkit/wreath.hpp"
#include "coopkit/zmodule.hpp"

namespace coopkit {

/// Cocomposition at the 2-chain ([m] <- [k], g), g[j] in [0, m):
/// A(k) -> O(m) ⊗ A(g^{-1}(0)) ⊗ ... ⊗ A(g^{-1}(m-1)), each fiber relabeled
/// in order. Rows follow TensorShape of the chain.
using PositionalCocomp = std::function<LinMap(int m, const std::vector<int>& g)>;

struct Cooperad {
  std::string name;
  SymSeq seq;
  PositionalCocomp cocomp;
  LinMap counit;  // 1 x rank O(1)
  /// Optional: columns (basis elements of O(k)) where the cocomposition is
  /// undefined. Checks exclude them instead of comparing them.
  std::function<std::vector<char>(int m, const std::vector<int>& g)> undefined;

  /// Δ̃ at a 2-chain (S1 <- S2).
  LinMap cocomp_at(const Chain& c) const;
};

/// The unit sequence with its unique structure.
Cooperad trivial_cooperad(int max_arity);

/// A cooperad given by its values on canonical 2-chains (keyed by encode of
/// canonical_chain); other chains are reached by transport. Missing keys
/// are zero maps.
Cooperad table_cooperad(std::string name, SymSeq seq, std::map<std::string, LinMap> table, LinMap counit);

/// Left comodule: M(k) -> O(m) ⊗ M(fibers).
struct Comodule {
  std::string name;
  std::shared_ptr<const Cooperad> op;
  SymSeq seq;
  PositionalCocomp cocomp;
};

/// Coalgebra: c -> O(m) ⊗ c^{⊗m} for each m.
struct Coalgebra {
  std::string name;
  std::shared_ptr<const Cooperad> op;
  FreeMod carrier;
  std::function<LinMap(int m)> cocomp;

  /// The comodule concentrated in arity 0.
  Comodule as_comodule() const;
};

/// The cosimplicial object of a cooperad (terms O^{∘̂n}) or of a comodule
/// (terms O^{∘̂(n-1)} ∘̂ M, n >= 1). Kan modules are cached per (n, S).
class Cosimplicial {
 public:
  explicit Cosimplicial(const Cooperad& op);
  explicit Cosimplicial(const Comodule& m);

  bool is_cooperad() const { return is_cooperad_; }
  const Cooperad& op() const { return op_; }
  std::vector<SymSeq> slots(int n) const;
  /// The n-th term at S (n >= 1).
  const KanModule& term(int n, const FinSet& s) const;
  /// Rank of the n-th term; the 0-th term of a cooperad is 𝟙(S).
  int term_rank(int n, const FinSet& s) const;

  /// Δ̃ⁿᵢ at an n-chain c: T(slots(n-1), ∂ᵢc) -> T(slots(n), c), 1 <= i <= n-1.
  LinMap tilde_delta(int n, int i, const Chain& c) const;
  /// Source words of Δ̃ⁿᵢ at c where some split factor is undefined; empty
  /// when everything is defined.
  std::vector<char> undefined_words(int n, int i, const Chain& c) const;
  /// ε̃ⁿⱼ at an n-chain c: T(slots(n+1), sⱼc) -> T(slots(n), c).
  LinMap tilde_eps(int n, int j, const Chain& c) const;

  /// Δⁿᵢ: term(n-1, S) -> term(n, S).
  LinMap coface(int n, int i, const FinSet& s) const;
  /// εⁿⱼ: term(n+1, S) -> term(n, S); 0 <= j <= n (j < n for comodules).
  LinMap codegeneracy(int n, int j, const FinSet& s) const;

 private:
  const PositionalCocomp& cocomp_for_slot(int slot, int n) const;

  Cooperad op_;
  SymSeq tail_;
  PositionalCocomp tail_cocomp_;
  bool is_cooperad_ = true;
  struct Cache {
    std::mutex mu;
    std::map<std::pair<int, std::string>, std::shared_ptr<KanModule>> terms;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Coassociativity on canonical 3-chains with |S3| <= max_set, counit
/// respect for |S| <= counit_max_set (defaults to max_set), and naturality
/// under every isomorphism of 2-chains with |S1|, |S2| <= max_set.
Report verify_cooperad(const Cooperad& op, int max_set, int counit_max_set = -1);

/// Cofaces of the comodule against those of the cooperad, counit on the
/// left slot, and naturality, with the same bounds.
Report verify_comodule(const Comodule& m, int max_set);

/// The cosimplicial identities on terms up to max_n + 1, |S| <= max_set.
Report verify_cosimplicial(const Cooperad& op, int max_n, int max_set);

/// Parenthesization against cofaces: (Δ∘̂Id) and (Id∘̂Δ) followed by
/// parenthesization give Δ³₁ and Δ³₂; the square through (Δ∘̂Id)∘̂Id gives
/// Δ⁴₁; and the four-factor parenthesizations of O agree.
Report verify_paren_compat(const Cooperad& op, int max_set);

/// Δ^{[n]}: M(S) -> O^{∘̂(n-1)} ∘̂ M(S), computed along every sequence of
/// cofaces; throws StructuralError naming two paths that disagree.
LinMap comodule_delta_n(const Cosimplicial& x, int n, const FinSet& s);
LinMap coalgebra_delta_n(const Coalgebra& c, int n);

/// Applies body(i) for i in [0, n) on COOPKIT_THREADS worker threads
/// (default: hardware concurrency); rethrows the first exception.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace coopkit
