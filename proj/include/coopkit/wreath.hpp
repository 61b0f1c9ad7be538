#pragma once

// Finite sets, towers of set maps S1 <- S2 <- ... <- Sn ("chains", i.e.
// labeled level trees), their isomorphisms, and the face / degeneracy /
// leaf functors acting on them.

#include <compare>
#include <functional>
#include <string>
#include <vector>

namespace coopkit {

/// An element of a finite set. Labels made only of digits compare
/// numerically and sort before all other labels; the rest compare bytewise.
class Atom {
 public:
  Atom() = default;
  explicit Atom(std::string label) : label_(std::move(label)) {}
  explicit Atom(int n) : label_(std::to_string(n)) {}

  const std::string& label() const { return label_; }

  std::strong_ordering operator<=>(const Atom& other) const;
  bool operator==(const Atom& other) const { return label_ == other.label_; }

 private:
  std::string label_;
};

/// Label of the distinguished one-point set used by the bottom degeneracy.
inline const std::string kStarLabel = "\xE2\x8B\x86";  // U+22C6
Atom star_atom();

/// Sorted, duplicate-free list of atoms.
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<Atom> elems);
  static FinSet standard(int n);  // {1, ..., n}

  int size() const { return static_cast<int>(elems_.size()); }
  bool empty() const { return elems_.empty(); }
  const Atom& operator[](int i) const { return elems_[i]; }
  const std::vector<Atom>& elems() const { return elems_; }
  /// Position of `a`, or -1.
  int index_of(const Atom& a) const;
  bool contains(const Atom& a) const { return index_of(a) >= 0; }

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  bool operator==(const FinSet&) const = default;

 private:
  std::vector<Atom> elems_;
};

/// A total function between finite sets, stored by positions.
struct SetMap {
  FinSet dom;
  FinSet cod;
  std::vector<int> image;  // image[i] = position in cod of f(dom[i])

  SetMap(FinSet d, FinSet c, std::vector<int> img);
  const Atom& operator()(int i) const { return cod[image[i]]; }
  /// Positions in dom of the preimage of cod[t], in dom order.
  std::vector<int> fiber(int t) const;
};

/// Object of the n-fold wreath category: S1 <- S2 <- ... <- Sn.
/// levels[l] is S_{l+1}; maps[l][j] is the position in levels[l] of the
/// image of levels[l+1][j].
class Chain {
 public:
  Chain(std::vector<FinSet> levels, std::vector<std::vector<int>> maps);
  explicit Chain(FinSet s);  // a 1-chain

  int length() const { return static_cast<int>(levels_.size()); }
  const FinSet& level(int l) const { return levels_[l]; }  // 0-based
  const std::vector<FinSet>& levels() const { return levels_; }
  const std::vector<int>& map(int l) const { return maps_[l]; }  // S_{l+2} -> S_{l+1}
  const std::vector<std::vector<int>>& maps() const { return maps_; }
  const FinSet& top() const { return levels_.back(); }

  /// Positions in level l of the elements mapping to position j of level l-1.
  /// With l == 0 the whole bottom level is returned (the fiber over the root).
  std::vector<int> fiber(int l, int j) const;

  bool operator==(const Chain&) const = default;

 private:
  std::vector<FinSet> levels_;
  std::vector<std::vector<int>> maps_;
};

/// Levelwise bijections commuting with the chain maps.
struct ChainIso {
  Chain source;
  Chain target;
  std::vector<std::vector<int>> perm;  // perm[l][j] = position in target level l

  ChainIso(Chain src, Chain tgt, std::vector<std::vector<int>> p);
  static ChainIso identity(const Chain& c);
  ChainIso inverse() const;
  /// (*this) after `first`: first.target must equal this->source.
  ChainIso after(const ChainIso& first) const;
  bool top_is_identity() const;
};

// --- face / degeneracy / leaf functors ------------------------------------

/// Removes level i (1 <= i <= n-1); i == 1 drops the bottom level, i >= 2
/// composes the two maps around S_i.
Chain face(const Chain& c, int i);
/// Doubles level i (0 <= i <= n) with an identity map; level 0 is the
/// distinguished one-point set.
Chain degeneracy(const Chain& c, int i);
/// The top (leaf) level.
FinSet gamma(const Chain& c);

/// Keeps only the given 1-based levels (strictly increasing, last == n),
/// composing maps in between.
Chain sample_levels(const Chain& c, const std::vector<int>& keep);

// Leafless chains: towers whose top level is empty.
bool is_bar_chain(const Chain& c);
Chain bar_face(const Chain& c, int i);
Chain bar_degeneracy(const Chain& c, int i);
FinSet bar_gamma(const Chain& c);

// --- text encoding ----------------------------------------------------------

/// `[x | a>x,b>x | p>a,q>a,r>b]`
std::string encode(const Chain& c);
std::string encode(const FinSet& s);
/// Parses a chain; rejects the reserved atom and malformed text.
Chain parse_chain(const std::string& text);
/// Atoms must be non-empty and avoid the delimiters of the text formats.
bool valid_atom_label(const std::string& label);

// --- canonical forms ----------------------------------------------------------

struct CanonicalChain {
  Chain chain;
  ChainIso witness;  // input -> chain
  std::string key;   // equal keys <=> isomorphic
};

/// Canonical representative of the isomorphism class of c (all levels
/// relabeled by standard atoms).
CanonicalChain canonical_chain(const Chain& c);
/// Canonical representative under isomorphisms fixing the top level
/// pointwise; the top level keeps its atoms.
CanonicalChain canonical_over_top(const Chain& c);

/// Isomorphism class of chains over a fixed top set S, with generators of
/// its automorphism group (isos restricting to the identity on S).
struct FiberClass {
  Chain representative;
  std::string key;
  std::vector<ChainIso> aut_generators;

  /// The whole group, by closure over the generators (identity first).
  std::vector<ChainIso> automorphisms() const;
};

/// Constraints for fiber enumeration. Vertices sit at heights 0 (the root
/// below S1) through n-1; a vertex at height h has children in S_{h+1}.
struct FiberBounds {
  /// allowed_children[h](k): may a height-h vertex have k children?
  std::vector<std::function<bool(int)>> allowed_children;
  /// max_children[h]: largest k worth trying at height h.
  std::vector<int> max_children;
  /// max_level_size[l]: bound on |S_{l+1}|; top entry is ignored.
  std::vector<int> max_level_size;

  /// Only level-size bounds (fiber sizes free up to those bounds).
  static FiberBounds level_sizes(int n, std::vector<int> sizes);
};

/// One class per isomorphism class (over S) of n-chains with top S within
/// the bounds, in canonical order.
std::vector<FiberClass> enumerate_fiber(const FinSet& s, int n, const FiberBounds& bounds);

}  // namespace coopkit
