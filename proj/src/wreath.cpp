#include "coopkit/wreath.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string_view>
#include <unordered_map>

#include "coopkit/errors.hpp"

namespace coopkit {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

std::string strip_zeros(const std::string& s) {
  auto pos = s.find_first_not_of('0');
  return pos == std::string::npos ? std::string("0") : s.substr(pos);
}

}  // namespace

std::strong_ordering Atom::operator<=>(const Atom& other) const {
  const bool a = all_digits(label_);
  const bool b = all_digits(other.label_);
  if (a != b) return a ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a) {
    const std::string x = strip_zeros(label_);
    const std::string y = strip_zeros(other.label_);
    if (x.size() != y.size()) return x.size() <=> y.size();
    if (auto c = x.compare(y); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const int c = label_.compare(other.label_);
  if (c == 0) return std::strong_ordering::equal;
  return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

Atom star_atom() { return Atom(kStarLabel); }

FinSet::FinSet(std::vector<Atom> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  for (std::size_t i = 1; i < elems_.size(); ++i) {
    if (elems_[i - 1] == elems_[i]) throw ArgumentError("duplicate atom '" + elems_[i].label() + "' in finite set");
  }
}

FinSet FinSet::standard(int n) {
  std::vector<Atom> v;
  v.reserve(n);
  for (int i = 1; i <= n; ++i) v.emplace_back(i);
  return FinSet(std::move(v));
}

int FinSet::index_of(const Atom& a) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), a);
  if (it == elems_.end() || !(*it == a)) return -1;
  return static_cast<int>(it - elems_.begin());
}

SetMap::SetMap(FinSet d, FinSet c, std::vector<int> img) : dom(std::move(d)), cod(std::move(c)), image(std::move(img)) {
  if (static_cast<int>(image.size()) != dom.size()) throw ArgumentError("set map: image size differs from domain");
  for (int t : image) {
    if (t < 0 || t >= cod.size()) throw ArgumentError("set map: image outside codomain");
  }
}

std::vector<int> SetMap::fiber(int t) const {
  std::vector<int> out;
  for (int i = 0; i < dom.size(); ++i)
    if (image[i] == t) out.push_back(i);
  return out;
}

Chain::Chain(std::vector<FinSet> levels, std::vector<std::vector<int>> maps)
    : levels_(std::move(levels)), maps_(std::move(maps)) {
  if (levels_.empty()) throw ArgumentError("chain must have at least one level");
  if (maps_.size() + 1 != levels_.size()) throw ArgumentError("chain needs exactly one map between consecutive levels");
  for (std::size_t l = 0; l < maps_.size(); ++l) {
    if (static_cast<int>(maps_[l].size()) != levels_[l + 1].size())
      throw ArgumentError("chain map " + std::to_string(l + 1) + " has wrong domain size");
    for (int t : maps_[l]) {
      if (t < 0 || t >= levels_[l].size())
        throw ArgumentError("chain map " + std::to_string(l + 1) + " leaves its codomain");
    }
  }
}

Chain::Chain(FinSet s) : levels_{std::move(s)} {}

std::vector<int> Chain::fiber(int l, int j) const {
  std::vector<int> out;
  if (l == 0) {
    out.resize(levels_[0].size());
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  const auto& m = maps_[l - 1];
  for (int i = 0; i < static_cast<int>(m.size()); ++i)
    if (m[i] == j) out.push_back(i);
  return out;
}

ChainIso::ChainIso(Chain src, Chain tgt, std::vector<std::vector<int>> p)
    : source(std::move(src)), target(std::move(tgt)), perm(std::move(p)) {
  const int n = source.length();
  if (target.length() != n || static_cast<int>(perm.size()) != n) throw ArgumentError("chain iso: length mismatch");
  for (int l = 0; l < n; ++l) {
    const int sz = source.level(l).size();
    if (target.level(l).size() != sz || static_cast<int>(perm[l].size()) != sz)
      throw ArgumentError("chain iso: level " + std::to_string(l + 1) + " sizes differ");
    std::vector<char> seen(sz, 0);
    for (int v : perm[l]) {
      if (v < 0 || v >= sz || seen[v]) throw ArgumentError("chain iso: component is not a bijection");
      seen[v] = 1;
    }
  }
  for (int l = 0; l + 1 < n; ++l) {
    for (int j = 0; j < source.level(l + 1).size(); ++j) {
      if (perm[l][source.map(l)[j]] != target.map(l)[perm[l + 1][j]])
        throw ArgumentError("chain iso: not natural at level " + std::to_string(l + 1));
    }
  }
}

ChainIso ChainIso::identity(const Chain& c) {
  std::vector<std::vector<int>> p(c.length());
  for (int l = 0; l < c.length(); ++l) {
    p[l].resize(c.level(l).size());
    std::iota(p[l].begin(), p[l].end(), 0);
  }
  return ChainIso(c, c, std::move(p));
}

ChainIso ChainIso::inverse() const {
  std::vector<std::vector<int>> p(perm.size());
  for (std::size_t l = 0; l < perm.size(); ++l) {
    p[l].resize(perm[l].size());
    for (std::size_t j = 0; j < perm[l].size(); ++j) p[l][perm[l][j]] = static_cast<int>(j);
  }
  return ChainIso(target, source, std::move(p));
}

ChainIso ChainIso::after(const ChainIso& first) const {
  if (!(first.target == source)) throw ArgumentError("chain iso composition: endpoints differ");
  std::vector<std::vector<int>> p(perm.size());
  for (std::size_t l = 0; l < perm.size(); ++l) {
    p[l].resize(first.perm[l].size());
    for (std::size_t j = 0; j < p[l].size(); ++j) p[l][j] = perm[l][first.perm[l][j]];
  }
  return ChainIso(first.source, target, std::move(p));
}

bool ChainIso::top_is_identity() const {
  const auto& t = perm.back();
  for (std::size_t j = 0; j < t.size(); ++j)
    if (t[j] != static_cast<int>(j)) return false;
  return source.top() == target.top();
}

// --- functors -------------------------------------------------------------------

Chain face(const Chain& c, int i) {
  const int n = c.length();
  if (n < 2 || i < 1 || i > n - 1)
    throw ArgumentError("face index " + std::to_string(i) + " out of range for a " + std::to_string(n) + "-chain");
  std::vector<FinSet> levels = c.levels();
  std::vector<std::vector<int>> maps = c.maps();
  if (i == 1) {
    levels.erase(levels.begin());
    maps.erase(maps.begin());
  } else {
    // S_{i+1} -> S_i -> S_{i-1} collapses to one map
    std::vector<int> composed(c.level(i).size());
    for (int j = 0; j < c.level(i).size(); ++j) composed[j] = c.map(i - 2)[c.map(i - 1)[j]];
    levels.erase(levels.begin() + (i - 1));
    maps.erase(maps.begin() + (i - 1));
    maps[i - 2] = std::move(composed);
  }
  return Chain(std::move(levels), std::move(maps));
}

Chain degeneracy(const Chain& c, int i) {
  const int n = c.length();
  if (i < 0 || i > n)
    throw ArgumentError("degeneracy index " + std::to_string(i) + " out of range for a " + std::to_string(n) + "-chain");
  std::vector<FinSet> levels = c.levels();
  std::vector<std::vector<int>> maps = c.maps();
  if (i == 0) {
    levels.insert(levels.begin(), FinSet({star_atom()}));
    maps.insert(maps.begin(), std::vector<int>(c.level(0).size(), 0));
  } else {
    std::vector<int> id(c.level(i - 1).size());
    std::iota(id.begin(), id.end(), 0);
    levels.insert(levels.begin() + i, c.level(i - 1));
    maps.insert(maps.begin() + (i - 1), std::move(id));
  }
  return Chain(std::move(levels), std::move(maps));
}

FinSet gamma(const Chain& c) { return c.top(); }

Chain sample_levels(const Chain& c, const std::vector<int>& keep) {
  if (keep.empty() || keep.back() != c.length()) throw ArgumentError("sample_levels must keep the top level");
  std::vector<FinSet> levels;
  std::vector<std::vector<int>> maps;
  for (std::size_t a = 0; a < keep.size(); ++a) {
    const int lv = keep[a];
    if (lv < 1 || (a > 0 && lv <= keep[a - 1])) throw ArgumentError("sample_levels: levels must increase");
    levels.push_back(c.level(lv - 1));
    if (a > 0) {
      const int below = keep[a - 1];
      std::vector<int> m(c.level(lv - 1).size());
      for (int j = 0; j < static_cast<int>(m.size()); ++j) {
        int pos = j;
        for (int l = lv - 1; l >= below; --l) pos = c.map(l - 1)[pos];
        m[j] = pos;
      }
      maps.push_back(std::move(m));
    }
  }
  return Chain(std::move(levels), std::move(maps));
}

bool is_bar_chain(const Chain& c) { return c.top().empty(); }

Chain bar_face(const Chain& c, int i) {
  if (!is_bar_chain(c)) throw ArgumentError("bar_face: top level must be empty");
  return face(c, i);
}

Chain bar_degeneracy(const Chain& c, int i) {
  if (!is_bar_chain(c)) throw ArgumentError("bar_degeneracy: top level must be empty");
  return degeneracy(c, i);
}

FinSet bar_gamma(const Chain& c) {
  if (!is_bar_chain(c)) throw ArgumentError("bar_gamma: top level must be empty");
  return c.top();
}

// --- text encoding ---------------------------------------------------------------

bool valid_atom_label(const std::string& label) {
  if (label.empty()) return false;
  for (char ch : label) {
    if (std::isspace(static_cast<unsigned char>(ch))) return false;
    if (std::string_view(",|<>[]();-").find(ch) != std::string_view::npos) return false;
  }
  return true;
}

std::string encode(const FinSet& s) {
  std::string out;
  for (int i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += s[i].label();
  }
  return out;
}

std::string encode(const Chain& c) {
  std::string out = "[";
  for (int l = 0; l < c.length(); ++l) {
    if (l) out += " | ";
    const FinSet& lv = c.level(l);
    for (int j = 0; j < lv.size(); ++j) {
      if (j) out += ',';
      out += lv[j].label();
      if (l > 0) {
        out += '>';
        out += c.level(l - 1)[c.map(l - 1)[j]].label();
      }
    }
  }
  out += "]";
  return out;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

Atom checked_atom(const std::string& raw, const std::string& where) {
  std::string t = trim(raw);
  if (t == kStarLabel) throw ArgumentError(where + ": the atom '" + kStarLabel + "' is reserved");
  if (!valid_atom_label(t)) throw ArgumentError(where + ": invalid atom '" + t + "'");
  return Atom(t);
}

}  // namespace

Chain parse_chain(const std::string& text) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw ArgumentError("chain text must be enclosed in [ ]");
  auto parts = split(t.substr(1, t.size() - 2), '|');
  std::vector<FinSet> levels;
  std::vector<std::vector<int>> maps;
  for (std::size_t l = 0; l < parts.size(); ++l) {
    const std::string where = "level " + std::to_string(l + 1);
    std::string body = trim(parts[l]);
    std::vector<std::pair<Atom, Atom>> entries;
    std::vector<Atom> atoms;
    if (!body.empty()) {
      for (const auto& item : split(body, ',')) {
        if (l == 0) {
          atoms.push_back(checked_atom(item, where));
        } else {
          auto gt = item.find('>');
          if (gt == std::string::npos) throw ArgumentError(where + ": expected elem>image, got '" + trim(item) + "'");
          Atom a = checked_atom(item.substr(0, gt), where);
          Atom b = checked_atom(item.substr(gt + 1), where);
          atoms.push_back(a);
          entries.emplace_back(a, b);
        }
      }
    }
    FinSet lv(atoms);
    if (l > 0) {
      std::vector<int> m(lv.size(), -1);
      for (const auto& [a, b] : entries) {
        int img = levels.back().index_of(b);
        if (img < 0) throw ArgumentError(where + ": image '" + b.label() + "' is not in the level below");
        m[lv.index_of(a)] = img;
      }
      maps.push_back(std::move(m));
    }
    levels.push_back(std::move(lv));
  }
  return Chain(std::move(levels), std::move(maps));
}

// --- canonical forms ------------------------------------------------------------------

namespace {

// Rooted level tree used for canonical labelling. Height 0 is the root; a
// node at height h < n has children at height h + 1; height-n nodes are leaves.
struct LTree {
  std::vector<std::shared_ptr<const LTree>> kids;  // sorted by key
  int orig = -1;                                    // position in its level of the source chain
  int leaf = -1;                                    // top position for leaves (over-top mode)
  std::string key;
};
using LTreePtr = std::shared_ptr<const LTree>;

LTreePtr make_node(std::vector<LTreePtr> kids, int orig) {
  std::stable_sort(kids.begin(), kids.end(), [](const LTreePtr& a, const LTreePtr& b) { return a->key < b->key; });
  auto node = std::make_shared<LTree>();
  node->orig = orig;
  node->key = "(";
  for (const auto& k : kids) node->key += k->key;
  node->key += ")";
  node->kids = std::move(kids);
  return node;
}

LTreePtr make_leaf(int top_pos, bool labelled, int orig) {
  auto node = std::make_shared<LTree>();
  node->orig = orig;
  node->leaf = top_pos;
  node->key = labelled ? "<" + std::to_string(top_pos) + ">" : ".";
  return node;
}

LTreePtr tree_of(const Chain& c, bool labelled) {
  const int n = c.length();
  std::vector<LTreePtr> current(c.top().size());
  for (int j = 0; j < c.top().size(); ++j) current[j] = make_leaf(j, labelled, j);
  for (int l = n - 1; l >= 1; --l) {
    std::vector<std::vector<LTreePtr>> kids(c.level(l - 1).size());
    for (int j = 0; j < c.level(l).size(); ++j) kids[c.map(l - 1)[j]].push_back(current[j]);
    std::vector<LTreePtr> next(c.level(l - 1).size());
    for (int j = 0; j < c.level(l - 1).size(); ++j) next[j] = make_node(std::move(kids[j]), j);
    current = std::move(next);
  }
  return make_node(std::move(current), 0);
}

struct Layout {
  Chain chain;
  std::vector<std::vector<const LTree*>> nodes;  // nodes[l][pos], level l = S_{l+1}
  // kids[l][p]: positions in level l of the children of position p in level
  // l - 1 (the root for l == 0), in key order. Subtrees may be shared, so
  // positions rather than node pointers identify vertices.
  std::vector<std::vector<std::vector<int>>> kids;
};

// Breadth-first labelling: S_{l+1} ordered by (parent position, key).
Layout layout_of(const LTree& root, int n, const FinSet* top) {
  std::vector<std::vector<const LTree*>> nodes(n);
  std::vector<const LTree*> frontier{&root};
  std::vector<std::vector<int>> parents(n);
  std::vector<std::vector<std::vector<int>>> kids(n);
  for (int l = 0; l < n; ++l) {
    kids[l].resize(frontier.size());
    for (std::size_t p = 0; p < frontier.size(); ++p) {
      for (const auto& k : frontier[p]->kids) {
        kids[l][p].push_back(static_cast<int>(nodes[l].size()));
        nodes[l].push_back(k.get());
        parents[l].push_back(static_cast<int>(p));
      }
    }
    std::vector<const LTree*> next(nodes[l].begin(), nodes[l].end());
    frontier = std::move(next);
  }
  std::vector<FinSet> levels;
  std::vector<std::vector<int>> maps;
  for (int l = 0; l < n; ++l) {
    const bool keep_top = (top != nullptr && l == n - 1);
    if (keep_top) {
      levels.push_back(*top);
      std::vector<int> m(top->size(), -1);
      std::vector<const LTree*> by_pos(top->size(), nullptr);
      for (std::size_t q = 0; q < nodes[l].size(); ++q) {
        m[nodes[l][q]->leaf] = parents[l][q];
        by_pos[nodes[l][q]->leaf] = nodes[l][q];
      }
      for (auto& list : kids[l])
        for (int& q : list) q = nodes[l][q]->leaf;
      nodes[l] = std::move(by_pos);
      if (l > 0) maps.push_back(std::move(m));
    } else {
      levels.push_back(FinSet::standard(static_cast<int>(nodes[l].size())));
      if (l > 0) maps.push_back(parents[l]);
    }
  }
  return Layout{Chain(std::move(levels), std::move(maps)), std::move(nodes), std::move(kids)};
}

CanonicalChain canonicalize(const Chain& c, bool over_top) {
  LTreePtr root = tree_of(c, over_top);
  Layout lay = layout_of(*root, c.length(), over_top ? &c.top() : nullptr);
  std::vector<std::vector<int>> perm(c.length());
  for (int l = 0; l < c.length(); ++l) {
    perm[l].resize(c.level(l).size());
    for (std::size_t q = 0; q < lay.nodes[l].size(); ++q) perm[l][lay.nodes[l][q]->orig] = static_cast<int>(q);
  }
  ChainIso witness(c, lay.chain, std::move(perm));
  return CanonicalChain{lay.chain, std::move(witness), root->key};
}

}  // namespace

CanonicalChain canonical_chain(const Chain& c) { return canonicalize(c, false); }
CanonicalChain canonical_over_top(const Chain& c) { return canonicalize(c, true); }

std::vector<ChainIso> FiberClass::automorphisms() const {
  std::vector<ChainIso> group{ChainIso::identity(representative)};
  std::set<std::vector<std::vector<int>>> seen{group.front().perm};
  std::deque<std::size_t> todo{0};
  while (!todo.empty()) {
    const std::size_t idx = todo.front();
    todo.pop_front();
    for (const auto& g : aut_generators) {
      ChainIso h = g.after(group[idx]);
      if (seen.insert(h.perm).second) {
        group.push_back(h);
        todo.push_back(group.size() - 1);
      }
    }
  }
  return group;
}

FiberBounds FiberBounds::level_sizes(int n, std::vector<int> sizes) {
  FiberBounds b;
  b.max_level_size = sizes;
  b.max_level_size.resize(n, 0);
  for (int h = 0; h < n; ++h) {
    b.allowed_children.emplace_back([](int) { return true; });
    b.max_children.push_back(h < n - 1 ? b.max_level_size[h] : 1 << 20);
  }
  return b;
}

namespace {

struct Sub {
  LTreePtr tree;
  std::vector<int> profile;  // vertices per height inside the subtree (root excluded)
};

void set_partitions(unsigned mask, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (mask == 0) {
    out.push_back(cur);
    return;
  }
  const unsigned low = mask & (~mask + 1);
  const unsigned rest = mask & ~low;
  // every subset of `rest` joins the block of the lowest element
  for (unsigned sub = rest;; sub = (sub - 1) & rest) {
    cur.push_back(low | sub);
    set_partitions(rest & ~sub, cur, out);
    cur.pop_back();
    if (sub == 0) break;
  }
}

class FiberGenerator {
 public:
  FiberGenerator(int n, const FiberBounds& b) : n_(n), bounds_(b) {}

  const std::vector<Sub>& gen(int h, unsigned mask) {
    auto key = std::make_pair(h, mask);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Sub> result;
    if (h == n_) {
      if (std::popcount(mask) == 1) {
        Sub s{make_leaf(std::countr_zero(mask), true, -1), std::vector<int>(n_ + 1, 0)};
        result.push_back(std::move(s));
      }
      return memo_[key] = std::move(result);
    }
    const bool child_is_leaf = (h + 1 == n_);
    int kmax = bounds_.max_children[h];
    if (child_is_leaf) kmax = std::min(kmax, std::popcount(mask));
    else if (h + 1 <= static_cast<int>(bounds_.max_level_size.size()))
      kmax = std::min(kmax, bounds_.max_level_size[h]);
    std::vector<std::vector<unsigned>> partitions;
    std::vector<unsigned> cur;
    set_partitions(mask, cur, partitions);
    for (int k = 0; k <= kmax; ++k) {
      if (!bounds_.allowed_children[h](k)) continue;
      for (const auto& blocks : partitions) {
        const int m = static_cast<int>(blocks.size());
        if (m > k) continue;
        const int r = k - m;
        if (r > 0 && child_is_leaf) continue;
        std::vector<const std::vector<Sub>*> options;
        bool dead = false;
        for (unsigned b : blocks) {
          const auto& o = gen(h + 1, b);
          if (o.empty()) dead = true;
          options.push_back(&o);
        }
        if (dead) continue;
        const std::vector<Sub>* leafless = nullptr;
        if (r > 0) {
          leafless = &gen(h + 1, 0);
          if (leafless->empty()) continue;
        }
        combine(h, options, leafless, r, result);
      }
    }
    return memo_[key] = std::move(result);
  }

 private:
  bool within(const std::vector<int>& prof) const {
    for (int lv = 1; lv < n_; ++lv) {
      if (lv - 1 < static_cast<int>(bounds_.max_level_size.size()) && prof[lv] > bounds_.max_level_size[lv - 1])
        return false;
    }
    return true;
  }

  void combine(int h, const std::vector<const std::vector<Sub>*>& options, const std::vector<Sub>* leafless, int r,
               std::vector<Sub>& out) {
    std::vector<std::size_t> pick(options.size(), 0);
    std::vector<std::size_t> multiset(r, 0);
    while (true) {
      // assemble
      std::vector<LTreePtr> kids;
      std::vector<int> prof(n_ + 1, 0);
      auto add = [&](const Sub& s) {
        kids.push_back(s.tree);
        for (int i = 0; i <= n_; ++i) prof[i] += s.profile[i];
        prof[h + 1] += 1;
      };
      for (std::size_t i = 0; i < options.size(); ++i) add((*options[i])[pick[i]]);
      for (int i = 0; i < r; ++i) add((*leafless)[multiset[i]]);
      if (within(prof)) out.push_back(Sub{make_node(std::move(kids), -1), std::move(prof)});
      // advance: multiset of leafless types first (non-decreasing indices)
      int pos = r - 1;
      while (pos >= 0 && multiset[pos] + 1 >= leafless->size()) --pos;
      if (pos >= 0) {
        const std::size_t v = multiset[pos] + 1;
        for (int i = pos; i < r; ++i) multiset[i] = v;
        continue;
      }
      std::fill(multiset.begin(), multiset.end(), 0);
      int opos = static_cast<int>(options.size()) - 1;
      while (opos >= 0 && pick[opos] + 1 >= options[opos]->size()) --opos;
      if (opos < 0) break;
      ++pick[opos];
      for (std::size_t i = opos + 1; i < pick.size(); ++i) pick[i] = 0;
    }
  }

  int n_;
  const FiberBounds& bounds_;
  std::map<std::pair<int, unsigned>, std::vector<Sub>> memo_;
};

}  // namespace

std::vector<FiberClass> enumerate_fiber(const FinSet& s, int n, const FiberBounds& bounds) {
  if (n < 1) throw ArgumentError("enumerate_fiber: n must be positive");
  if (s.size() > 30) throw ArgumentError("enumerate_fiber: top set too large");
  if (static_cast<int>(bounds.allowed_children.size()) < n || static_cast<int>(bounds.max_children.size()) < n)
    throw ArgumentError("enumerate_fiber: bounds must cover every height");
  FiberGenerator gen(n, bounds);
  const unsigned full = s.size() == 0 ? 0u : ((1u << s.size()) - 1u);
  const auto& roots = gen.gen(0, full);
  std::vector<FiberClass> out;
  out.reserve(roots.size());
  for (const auto& sub : roots) {
    Layout lay = layout_of(*sub.tree, n, &s);
    FiberClass fc{lay.chain, sub.tree->key, {}};
    // swaps of adjacent identical (necessarily leafless) sibling subtrees
    auto key_at = [&](int l, int q) -> const std::string& { return lay.nodes[l][q]->key; };
    for (int l = 0; l < n; ++l) {
      for (const auto& sibs : lay.kids[l]) {
        for (std::size_t i = 0; i + 1 < sibs.size(); ++i) {
          if (key_at(l, sibs[i]) != key_at(l, sibs[i + 1])) continue;
          std::vector<std::vector<int>> p(n);
          for (int t = 0; t < n; ++t) {
            p[t].resize(lay.chain.level(t).size());
            std::iota(p[t].begin(), p[t].end(), 0);
          }
          std::vector<std::array<int, 3>> stack{{l, sibs[i], sibs[i + 1]}};
          while (!stack.empty()) {
            auto [t, x, y] = stack.back();
            stack.pop_back();
            p[t][x] = y;
            p[t][y] = x;
            if (t + 1 < n) {
              const auto& kx = lay.kids[t + 1][x];
              const auto& ky = lay.kids[t + 1][y];
              for (std::size_t k = 0; k < kx.size(); ++k) stack.push_back({t + 1, kx[k], ky[k]});
            }
          }
          fc.aut_generators.emplace_back(lay.chain, lay.chain, std::move(p));
        }
      }
    }
    out.push_back(std::move(fc));
  }
  std::sort(out.begin(), out.end(), [](const FiberClass& a, const FiberClass& b) { return a.key < b.key; });
  return out;
}

}  // namespace coopkit
