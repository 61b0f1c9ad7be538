#pragma once

// Symmetric sequences stored on the standard sets [n], with the symmetric
// group actions given by signed permutations of a basis.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "coopkit/report.hpp"
#include "coopkit/wreath.hpp"
#include "coopkit/zmodule.hpp"

namespace coopkit {

/// A permutation of {0, ..., n-1}: perm[i] is the image of i.
using Perm = std::vector<int>;

Perm compose_perm(const Perm& a, const Perm& b);  // a after b
Perm inverse_perm(const Perm& a);
/// All permutations of {0, ..., n-1} in lexicographic order.
std::vector<Perm> all_perms(int n);
/// Word of adjacent transpositions t_j (swapping j and j+1) with
/// perm = t_{w[m-1]} ... t_{w[0]}.
std::vector<int> adjacent_word(const Perm& perm);

class SymSeq {
 public:
  explicit SymSeq(int max_arity = 0);

  int max_arity() const { return static_cast<int>(values_.size()) - 1; }
  /// Zero module above the max arity.
  const FreeMod& value(int n) const;
  int rank(int n) const { return value(n).rank(); }
  /// generators(n)[j] is the action of the transposition (j, j+1).
  const std::vector<SignedPerm>& generators(int n) const;
  /// Validates sizes; the relations are checked separately by check_action.
  void set_arity(int n, FreeMod value, std::vector<SignedPerm> generators);

  /// Action of a permutation of [n] (left action: rho(a b) = rho(a) rho(b)).
  SignedPerm rho(const Perm& perm) const;
  /// Transport along a bijection S -> T given by positions (beta[i] is the
  /// position in T of the image of S[i]).
  LinMap transport(const Perm& beta) const { return rho(beta).matrix(); }
  /// A(S): basis tags decorated by the elements of S.
  FreeMod evaluate(const FinSet& s) const;
  /// Largest arity with a nonzero value, or -1.
  int top_support() const;

 private:
  std::vector<FreeMod> values_;
  std::vector<std::vector<SignedPerm>> gens_;
  struct Cache {
    std::mutex mu;
    std::map<Perm, SignedPerm> rho;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// The counit sequence: rank one in arity 1, zero elsewhere.
SymSeq counit_seq(int max_arity);

/// Involution, braid and commutation relations of every arity.
Report check_action(const SymSeq& a, const std::string& name = "sequence");

/// Per-arity components A(n) -> B(n).
struct SeqMorphism {
  std::vector<LinMap> components;
};

/// Equivariance on generators, and on every permutation for n <= 4.
Report check_equivariance(const SymSeq& a, const SymSeq& b, const SeqMorphism& f);

}  // namespace coopkit
