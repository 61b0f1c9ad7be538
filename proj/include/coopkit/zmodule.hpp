#pragma once

// Exact linear algebra over the integers: free modules with tagged bases,
// sparse integer matrices, signed permutation actions and their invariants.

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace coopkit {

using Int = std::int64_t;

// Overflow-checked arithmetic; throws StructuralError on overflow.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);

/// A finitely generated free module, presented by an ordered list of
/// distinct basis tags. The empty basis is the zero (final) module.
struct FreeMod {
  std::vector<std::string> basis;

  int rank() const { return static_cast<int>(basis.size()); }
  static FreeMod zero() { return {}; }
  static FreeMod unit();  // rank one on the reserved unit tag
  bool operator==(const FreeMod&) const = default;
};

inline const std::string kUnitTag = "1";

/// Sparse integer matrix (rows = codomain rank, cols = domain rank). Columns
/// are kept sorted by row with no stored zeros.
class LinMap {
 public:
  using Column = std::vector<std::pair<int, Int>>;

  LinMap() = default;
  LinMap(int rows, int cols) : rows_(rows), cols_(cols), data_(cols) {}
  static LinMap identity(int n);
  static LinMap from_dense(const std::vector<std::vector<Int>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Column& column(int c) const { return data_[c]; }
  Int get(int r, int c) const;
  void set(int r, int c, Int v);
  void add(int r, int c, Int v);
  void add_column(int c, const Column& v, Int scale = 1);

  /// this after other (matrix product this * other).
  LinMap operator*(const LinMap& other) const;
  LinMap operator+(const LinMap& other) const;
  LinMap operator-(const LinMap& other) const;
  LinMap operator-() const;
  bool operator==(const LinMap& other) const;

  bool is_zero() const;
  bool is_identity() const;
  std::size_t nonzeros() const;
  LinMap transpose() const;
  std::vector<std::vector<Int>> to_dense() const;
  /// Columns [c0, c0 + n).
  LinMap column_slice(int c0, int n) const;
  /// Rows [r0, r0 + n).
  LinMap row_slice(int r0, int n) const;
  /// First (row, col) where the matrices differ, or (-1, -1).
  std::pair<int, int> first_difference(const LinMap& other) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Column> data_;
};

/// Kronecker product; row/column index of (i, j) is i * b.rows() + j.
LinMap kron(const LinMap& a, const LinMap& b);
/// Kronecker product of a list (unit 1x1 matrix for the empty list).
LinMap kron_all(const std::vector<LinMap>& factors);
/// Block diagonal sum.
LinMap direct_sum(const std::vector<LinMap>& blocks);
/// [a | b] and [a ; b].
LinMap hstack(const std::vector<LinMap>& blocks);
LinMap vstack(const std::vector<LinMap>& blocks);

// --- free module constructions --------------------------------------------------

std::string tensor_tag(const std::vector<std::string>& factors);
FreeMod tensor(const FreeMod& m, const FreeMod& n);
FreeMod tensor_all(const std::vector<FreeMod>& factors);

struct Product {
  FreeMod module;
  std::vector<int> offsets;        // offsets[i] = first basis index of factor i
  std::vector<LinMap> projections;  // module -> factor i
  std::vector<LinMap> injections;   // factor i -> module
};
/// Finite product (= direct sum); basis tags are prefixed by the factor index.
Product finite_product(const std::vector<FreeMod>& factors);

// --- signed permutations ----------------------------------------------------------

/// Basis element b goes to sign[b] * e_{to[b]}.
struct SignedPerm {
  std::vector<int> to;
  std::vector<int> sign;

  int size() const { return static_cast<int>(to.size()); }
  static SignedPerm identity(int n);
  /// Plain permutation with all signs +1.
  static SignedPerm permutation(std::vector<int> to);
  bool is_identity() const;
  bool operator==(const SignedPerm&) const = default;
  bool operator<(const SignedPerm& o) const { return std::tie(to, sign) < std::tie(o.to, o.sign); }
  LinMap matrix() const;
  /// Throws ArgumentError unless `to` is a bijection and signs are +-1.
  void validate() const;
};

/// (p after q).
SignedPerm compose(const SignedPerm& p, const SignedPerm& q);
SignedPerm inverse(const SignedPerm& p);
/// Every element of the group generated by gens (identity first).
std::vector<SignedPerm> group_closure(const std::vector<SignedPerm>& gens, int n);

/// Invariant lattice of a signed permutation action: the columns of
/// `inclusion` form its basis in column Hermite normal form.
struct Invariants {
  LinMap inclusion;  // rank(M) x rank(fixed)
  int rank() const { return inclusion.cols(); }
  /// Coordinates of v (a vector of M) in the invariant basis; throws
  /// StructuralError if v is not invariant.
  std::vector<Int> coordinates(const LinMap::Column& v) const;
  /// Left inverse of the inclusion on the invariant lattice: picks each
  /// column's pivot row.
  LinMap retraction() const;
  std::vector<int> pivots;  // pivot row of each column (its first nonzero, = +1)
};

/// Fixed submodule of the action generated by gens on a rank-n module.
Invariants fixed_submodule(int n, const std::vector<SignedPerm>& gens);

// --- general integer lattices (used as oracles and for homology) -----------------------

/// Column Hermite normal form of the lattice spanned by the columns of m:
/// pivots (first nonzero rows) strictly increase, are positive, and every
/// other entry of a pivot row is reduced into [0, pivot) (zero to the right).
LinMap column_hnf(const LinMap& m);
/// Basis (in column HNF) of the integer kernel {x : m x = 0}.
LinMap integer_kernel(const LinMap& m);
/// Nonzero invariant factors of m (Smith normal form diagonal), ascending.
std::vector<Int> smith_invariants(const LinMap& m);
int integer_rank(const LinMap& m);

}  // namespace coopkit
