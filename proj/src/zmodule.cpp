#include "coopkit/zmodule.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>

#include "coopkit/errors.hpp"

namespace coopkit {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw StructuralError("integer overflow in addition");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw StructuralError("integer overflow in multiplication");
  return r;
}

FreeMod FreeMod::unit() { return FreeMod{{kUnitTag}}; }

// --- LinMap -------------------------------------------------------------------

LinMap LinMap::identity(int n) {
  LinMap m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, 1);
  return m;
}

LinMap LinMap::from_dense(const std::vector<std::vector<Int>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  LinMap m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw ArgumentError("ragged dense matrix");
    for (int j = 0; j < c; ++j)
      if (rows[i][j] != 0) m.data_[j].emplace_back(i, rows[i][j]);
  }
  return m;
}

Int LinMap::get(int r, int c) const {
  const auto& col = data_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(r, Int{0}),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  return (it != col.end() && it->first == r) ? it->second : 0;
}

void LinMap::set(int r, int c, Int v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw ArgumentError("matrix index out of range");
  auto& col = data_[c];
  auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(r, Int{0}),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it != col.end() && it->first == r) {
    if (v == 0) col.erase(it);
    else it->second = v;
  } else if (v != 0) {
    col.insert(it, {r, v});
  }
}

void LinMap::add(int r, int c, Int v) {
  if (v == 0) return;
  set(r, c, checked_add(get(r, c), v));
}

void LinMap::add_column(int c, const Column& v, Int scale) {
  if (scale == 0 || v.empty()) return;
  Column merged;
  const Column& a = data_.at(c);
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < v.size()) {
    if (j == v.size() || (i < a.size() && a[i].first < v[j].first)) {
      merged.push_back(a[i++]);
    } else if (i == a.size() || v[j].first < a[i].first) {
      if (v[j].first < 0 || v[j].first >= rows_) throw ArgumentError("column entry out of range");
      merged.emplace_back(v[j].first, checked_mul(scale, v[j].second));
      ++j;
    } else {
      Int s = checked_add(a[i].second, checked_mul(scale, v[j].second));
      if (s != 0) merged.emplace_back(a[i].first, s);
      ++i;
      ++j;
    }
  }
  data_[c] = std::move(merged);
}

LinMap LinMap::operator*(const LinMap& other) const {
  if (cols_ != other.rows_) throw ArgumentError("matrix product: inner dimensions differ");
  LinMap out(rows_, other.cols_);
  std::vector<Int> acc(rows_, 0);
  std::vector<int> touched;
  for (int c = 0; c < other.cols_; ++c) {
    touched.clear();
    for (const auto& [k, v] : other.data_[c]) {
      for (const auto& [r, w] : data_[k]) {
        if (acc[r] == 0) touched.push_back(r);
        acc[r] = checked_add(acc[r], checked_mul(v, w));
        if (acc[r] == 0) touched.push_back(r);  // may become nonzero again
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int r : touched) {
      if (acc[r] != 0) out.data_[c].emplace_back(r, acc[r]);
      acc[r] = 0;
    }
  }
  return out;
}

LinMap LinMap::operator+(const LinMap& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ArgumentError("matrix sum: dimensions differ");
  LinMap out = *this;
  for (int c = 0; c < cols_; ++c) out.add_column(c, other.data_[c]);
  return out;
}

LinMap LinMap::operator-(const LinMap& other) const { return *this + (-other); }

LinMap LinMap::operator-() const {
  LinMap out = *this;
  for (auto& col : out.data_)
    for (auto& e : col) e.second = checked_mul(e.second, -1);
  return out;
}

bool LinMap::operator==(const LinMap& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

bool LinMap::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Column& c) { return c.empty(); });
}

bool LinMap::is_identity() const { return *this == identity(rows_) && rows_ == cols_; }

std::size_t LinMap::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : data_) n += c.size();
  return n;
}

LinMap LinMap::transpose() const {
  LinMap out(cols_, rows_);
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : data_[c]) out.data_[r].emplace_back(c, v);
  return out;
}

std::vector<std::vector<Int>> LinMap::to_dense() const {
  std::vector<std::vector<Int>> d(rows_, std::vector<Int>(cols_, 0));
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : data_[c]) d[r][c] = v;
  return d;
}

LinMap LinMap::column_slice(int c0, int n) const {
  if (c0 < 0 || n < 0 || c0 + n > cols_) throw ArgumentError("column slice out of range");
  LinMap out(rows_, n);
  for (int c = 0; c < n; ++c) out.data_[c] = data_[c0 + c];
  return out;
}

LinMap LinMap::row_slice(int r0, int n) const {
  if (r0 < 0 || n < 0 || r0 + n > rows_) throw ArgumentError("row slice out of range");
  LinMap out(n, cols_);
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : data_[c])
      if (r >= r0 && r < r0 + n) out.data_[c].emplace_back(r - r0, v);
  return out;
}

std::pair<int, int> LinMap::first_difference(const LinMap& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return {0, 0};
  for (int c = 0; c < cols_; ++c) {
    if (data_[c] == other.data_[c]) continue;
    for (int r = 0; r < rows_; ++r)
      if (get(r, c) != other.get(r, c)) return {r, c};
  }
  return {-1, -1};
}

LinMap kron(const LinMap& a, const LinMap& b) {
  LinMap out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.cols(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      LinMap::Column col;
      for (const auto& [r, v] : a.column(i))
        for (const auto& [s, w] : b.column(j)) col.emplace_back(r * b.rows() + s, checked_mul(v, w));
      out.add_column(i * b.cols() + j, col);
    }
  }
  return out;
}

LinMap kron_all(const std::vector<LinMap>& factors) {
  LinMap out = LinMap::identity(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

LinMap direct_sum(const std::vector<LinMap>& blocks) {
  int r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  LinMap out(r, c);
  int r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (int j = 0; j < b.cols(); ++j) {
      LinMap::Column col;
      for (const auto& [i, v] : b.column(j)) col.emplace_back(i + r0, v);
      out.add_column(c0 + j, col);
    }
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

LinMap hstack(const std::vector<LinMap>& blocks) {
  if (blocks.empty()) return LinMap();
  int c = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks[0].rows()) throw ArgumentError("hstack: row counts differ");
    c += b.cols();
  }
  LinMap out(blocks[0].rows(), c);
  int c0 = 0;
  for (const auto& b : blocks) {
    for (int j = 0; j < b.cols(); ++j) out.add_column(c0 + j, b.column(j));
    c0 += b.cols();
  }
  return out;
}

LinMap vstack(const std::vector<LinMap>& blocks) {
  if (blocks.empty()) return LinMap();
  int r = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks[0].cols()) throw ArgumentError("vstack: column counts differ");
    r += b.rows();
  }
  LinMap out(r, blocks[0].cols());
  int r0 = 0;
  for (const auto& b : blocks) {
    for (int j = 0; j < b.cols(); ++j) {
      LinMap::Column col;
      for (const auto& [i, v] : b.column(j)) col.emplace_back(i + r0, v);
      out.add_column(j, col);
    }
    r0 += b.rows();
  }
  return out;
}

// --- free modules ------------------------------------------------------------------

std::string tensor_tag(const std::vector<std::string>& factors) {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "⊗";
    out += "(" + factors[i] + ")";
  }
  return factors.empty() ? kUnitTag : out;
}

FreeMod tensor(const FreeMod& m, const FreeMod& n) {
  FreeMod out;
  out.basis.reserve(m.basis.size() * n.basis.size());
  for (const auto& a : m.basis)
    for (const auto& b : n.basis) out.basis.push_back(tensor_tag({a, b}));
  return out;
}

FreeMod tensor_all(const std::vector<FreeMod>& factors) {
  std::vector<std::vector<std::string>> words{{}};
  for (const auto& f : factors) {
    std::vector<std::vector<std::string>> next;
    for (const auto& w : words) {
      for (const auto& b : f.basis) {
        auto x = w;
        x.push_back(b);
        next.push_back(std::move(x));
      }
    }
    words = std::move(next);
  }
  FreeMod out;
  for (const auto& w : words) out.basis.push_back(tensor_tag(w));
  return out;
}

Product finite_product(const std::vector<FreeMod>& factors) {
  Product p;
  int total = 0;
  for (const auto& f : factors) {
    p.offsets.push_back(total);
    total += f.rank();
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (const auto& t : factors[i].basis) p.module.basis.push_back(std::to_string(i) + ":" + t);
    const int r = factors[i].rank();
    LinMap proj(r, total), inj(total, r);
    for (int j = 0; j < r; ++j) {
      proj.set(j, p.offsets[i] + j, 1);
      inj.set(p.offsets[i] + j, j, 1);
    }
    p.projections.push_back(std::move(proj));
    p.injections.push_back(std::move(inj));
  }
  return p;
}

// --- signed permutations ----------------------------------------------------------------

SignedPerm SignedPerm::identity(int n) {
  SignedPerm p;
  p.to.resize(n);
  for (int i = 0; i < n; ++i) p.to[i] = i;
  p.sign.assign(n, 1);
  return p;
}

SignedPerm SignedPerm::permutation(std::vector<int> to) {
  SignedPerm p;
  p.sign.assign(to.size(), 1);
  p.to = std::move(to);
  return p;
}

bool SignedPerm::is_identity() const { return *this == identity(size()); }

LinMap SignedPerm::matrix() const {
  LinMap m(size(), size());
  for (int b = 0; b < size(); ++b) m.set(to[b], b, sign[b]);
  return m;
}

void SignedPerm::validate() const {
  if (sign.size() != to.size()) throw ArgumentError("signed permutation: sign list has wrong length");
  std::vector<char> seen(to.size(), 0);
  for (std::size_t b = 0; b < to.size(); ++b) {
    if (to[b] < 0 || to[b] >= size() || seen[to[b]]) throw ArgumentError("signed permutation: not a bijection");
    seen[to[b]] = 1;
    if (sign[b] != 1 && sign[b] != -1) throw ArgumentError("signed permutation: sign must be +1 or -1");
  }
}

SignedPerm compose(const SignedPerm& p, const SignedPerm& q) {
  if (p.size() != q.size()) throw ArgumentError("signed permutation composition: sizes differ");
  SignedPerm r;
  r.to.resize(q.size());
  r.sign.resize(q.size());
  for (int b = 0; b < q.size(); ++b) {
    r.to[b] = p.to[q.to[b]];
    r.sign[b] = q.sign[b] * p.sign[q.to[b]];
  }
  return r;
}

SignedPerm inverse(const SignedPerm& p) {
  SignedPerm r;
  r.to.resize(p.size());
  r.sign.resize(p.size());
  for (int b = 0; b < p.size(); ++b) {
    r.to[p.to[b]] = b;
    r.sign[p.to[b]] = p.sign[b];
  }
  return r;
}

std::vector<SignedPerm> group_closure(const std::vector<SignedPerm>& gens, int n) {
  std::vector<SignedPerm> group{SignedPerm::identity(n)};
  std::set<SignedPerm> seen{group.front()};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const auto& g : gens) {
      SignedPerm h = compose(g, group[i]);
      if (seen.insert(h).second) group.push_back(std::move(h));
    }
  }
  return group;
}

std::vector<Int> Invariants::coordinates(const LinMap::Column& v) const {
  std::vector<Int> x(rank(), 0);
  LinMap vec(inclusion.rows(), 1);
  vec.add_column(0, v);
  LinMap xs(rank(), 1);
  for (int c = 0; c < rank(); ++c) {
    x[c] = vec.get(pivots[c], 0);
    xs.set(c, 0, x[c]);
  }
  if (!(inclusion * xs == vec)) throw StructuralError("vector is not in the invariant lattice");
  return x;
}

LinMap Invariants::retraction() const {
  LinMap r(rank(), inclusion.rows());
  for (int c = 0; c < rank(); ++c) r.set(c, pivots[c], 1);
  return r;
}

Invariants fixed_submodule(int n, const std::vector<SignedPerm>& gens) {
  for (const auto& g : gens) {
    if (g.size() != n) throw ArgumentError("fixed_submodule: generator acts on the wrong rank");
  }
  // Orbit sums: an orbit with a consistent sign assignment contributes one
  // +-1 vector (leading +1); an inconsistent orbit contributes nothing.
  std::vector<int> sgn(n, 0);
  std::vector<LinMap::Column> cols;
  std::vector<int> pivots;
  for (int start = 0; start < n; ++start) {
    if (sgn[start] != 0) continue;
    std::vector<int> orbit{start};
    sgn[start] = 1;
    bool consistent = true;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      const int i = orbit[k];
      for (const auto& g : gens) {
        const int j = g.to[i];
        const int want = g.sign[i] * sgn[i];
        if (sgn[j] == 0) {
          sgn[j] = want;
          orbit.push_back(j);
        } else if (sgn[j] != want) {
          consistent = false;
        }
      }
    }
    if (!consistent) continue;
    std::sort(orbit.begin(), orbit.end());
    LinMap::Column col;
    for (int i : orbit) col.emplace_back(i, sgn[i]);
    cols.push_back(std::move(col));
    pivots.push_back(start);
  }
  Invariants inv;
  inv.inclusion = LinMap(n, static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) inv.inclusion.add_column(static_cast<int>(c), cols[c]);
  inv.pivots = std::move(pivots);
  return inv;
}

// --- integer lattices ----------------------------------------------------------------------

namespace {

using Dense = std::vector<std::vector<Int>>;  // list of columns

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void col_axpy(std::vector<Int>& dst, const std::vector<Int>& src, Int scale) {
  if (scale == 0) return;
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = checked_add(dst[i], checked_mul(scale, src[i]));
}

// Column echelon form on the first `rows` entries of each column (the
// remaining entries ride along). Returns the number of pivot columns, which
// come first; with reduce, pivot rows are made positive and reduced.
int column_echelon(Dense& cols, int rows, bool reduce, std::vector<int>* pivot_rows = nullptr) {
  int k = 0;
  const int n = static_cast<int>(cols.size());
  for (int r = 0; r < rows && k < n; ++r) {
    while (true) {
      int best = -1;
      for (int c = k; c < n; ++c)
        if (cols[c][r] != 0 && (best < 0 || std::llabs(cols[c][r]) < std::llabs(cols[best][r]))) best = c;
      if (best < 0) break;
      std::swap(cols[k], cols[best]);
      bool done = true;
      for (int c = k + 1; c < n; ++c) {
        if (cols[c][r] == 0) continue;
        col_axpy(cols[c], cols[k], -(cols[c][r] / cols[k][r]));
        if (cols[c][r] != 0) done = false;
      }
      if (done) break;
    }
    if (cols[k][r] == 0) continue;
    if (cols[k][r] < 0)
      for (auto& x : cols[k]) x = checked_mul(x, -1);
    if (reduce) {
      for (int c = 0; c < k; ++c) col_axpy(cols[c], cols[k], -floor_div(cols[c][r], cols[k][r]));
    }
    if (pivot_rows) pivot_rows->push_back(r);
    ++k;
  }
  return k;
}

Dense columns_of(const LinMap& m) {
  Dense d(m.cols(), std::vector<Int>(m.rows(), 0));
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c)) d[c][r] = v;
  return d;
}

LinMap from_columns(const Dense& d, int rows, int count) {
  LinMap out(rows, count);
  for (int c = 0; c < count; ++c)
    for (int r = 0; r < rows; ++r)
      if (d[c][r] != 0) out.set(r, c, d[c][r]);
  return out;
}

}  // namespace

LinMap column_hnf(const LinMap& m) {
  Dense d = columns_of(m);
  const int k = column_echelon(d, m.rows(), true);
  return from_columns(d, m.rows(), k);
}

LinMap integer_kernel(const LinMap& m) {
  const int rows = m.rows();
  const int n = m.cols();
  Dense d = columns_of(m);
  for (int c = 0; c < n; ++c) {
    d[c].resize(rows + n, 0);
    d[c][rows + c] = 1;
  }
  const int k = column_echelon(d, rows, false);
  LinMap basis(n, n - k);
  for (int c = k; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (d[c][rows + r] != 0) basis.set(r, c - k, d[c][rows + r]);
  return column_hnf(basis);
}

std::vector<Int> smith_invariants(const LinMap& m) {
  std::vector<std::vector<Int>> a = m.to_dense();
  const int rows = m.rows(), cols = m.cols();
  std::vector<Int> diag;
  int t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero entry in the remaining block
    int pr = -1, pc = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr < 0 || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const Int q = a[i][t] / a[t][t];
        for (int j = t; j < cols; ++j) a[i][j] = checked_add(a[i][j], checked_mul(-q, a[t][j]));
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const Int q = a[t][j] / a[t][t];
        for (int i = t; i < rows; ++i) a[i][j] = checked_add(a[i][j], checked_mul(-q, a[i][t]));
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // the pivot must divide the rest of the block
        for (int i = t + 1; i < rows && clean; ++i)
          for (int j = t + 1; j < cols; ++j)
            if (a[i][j] % a[t][t] != 0) {
              for (int jj = t; jj < cols; ++jj) a[t][jj] = checked_add(a[t][jj], a[i][jj]);
              clean = false;
              break;
            }
      }
    }
    diag.push_back(std::llabs(a[t][t]));
    ++t;
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

int integer_rank(const LinMap& m) {
  Dense d = columns_of(m);
  return column_echelon(d, m.rows(), false);
}

}  // namespace coopkit
