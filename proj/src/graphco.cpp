#include "coopkit/graphco.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

#include "coopkit/errors.hpp"

namespace coopkit {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

// Trees on [n] and their positions, built once per n.
struct TreeTable {
  std::vector<EdgeList> trees;
  std::map<EdgeList, int> index;
};

const TreeTable& tree_table(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<TreeTable>> tables;
  std::lock_guard lock(mu);
  auto& slot = tables[n];
  if (!slot) {
    slot = std::make_unique<TreeTable>();
    for (auto& t : enumerate_trees(FinSet::standard(n))) {
      slot->index.emplace(t.edges, static_cast<int>(slot->trees.size()));
      slot->trees.push_back(std::move(t.edges));
    }
  }
  return *slot;
}

int tree_rank(int max_arity, int n) { return n > max_arity ? 0 : static_cast<int>(tree_table(n).trees.size()); }

// Union-find root with path halving.
int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

std::pair<int, int> ordered(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

}  // namespace

std::string encode_graph(const Graph& g, bool directed) {
  std::string out = directed && g.sign < 0 ? "-" : "";
  for (int i = 0; i < g.vertices.size(); ++i) out += (i ? "," : "") + g.vertices[i].label();
  out += ";";
  for (const auto& [a, b] : g.edges)
    out += " " + g.vertices[a].label() + (directed ? ">" : "-") + g.vertices[b].label();
  return out;
}

bool is_tree(const Graph& g) {
  const int n = g.vertices.size();
  if (n == 0 || static_cast<int>(g.edges.size()) != n - 1) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& [a, b] : g.edges) {
    const int ra = find(parent, a), rb = find(parent, b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

std::vector<Graph> enumerate_trees(const FinSet& s) {
  const int n = s.size();
  std::vector<Graph> out;
  if (n == 0) return out;
  // depth-first over edge sets in lexicographic order, pruning cycles
  std::vector<std::pair<int, int>> all;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) all.emplace_back(a, b);
  EdgeList chosen;
  std::vector<int> parent(n);
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == n - 1) {
      out.push_back(Graph{s, chosen, 1});
      return;
    }
    for (std::size_t e = from; e < all.size(); ++e) {
      if (static_cast<int>(all.size() - e) < n - 1 - static_cast<int>(chosen.size())) return;
      chosen.push_back(all[e]);
      std::iota(parent.begin(), parent.end(), 0);
      bool acyclic = true;
      for (const auto& [a, b] : chosen) {
        const int ra = find(parent, a), rb = find(parent, b);
        if (ra == rb) {
          acyclic = false;
          break;
        }
        parent[ra] = rb;
      }
      if (acyclic) rec(e + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Graph> trees_from_pruefer(const FinSet& s) {
  const int n = s.size();
  std::vector<Graph> out;
  if (n == 0) return out;
  if (n == 1) return {Graph{s, {}, 1}};
  std::vector<int> seq(n - 2, 0);
  while (true) {
    std::vector<int> degree(n, 1);
    for (int x : seq) ++degree[x];
    EdgeList edges;
    for (int x : seq) {
      int leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      edges.push_back(ordered(leaf, x));
      --degree[leaf];
      --degree[x];
    }
    std::vector<int> last;
    for (int v = 0; v < n; ++v)
      if (degree[v] == 1) last.push_back(v);
    edges.push_back(ordered(last[0], last[1]));
    std::sort(edges.begin(), edges.end());
    out.push_back(Graph{s, edges, 1});
    int p = n - 3;
    while (p >= 0 && seq[p] == n - 1) seq[p--] = 0;
    if (p < 0) break;
    ++seq[p];
  }
  std::sort(out.begin(), out.end(), [](const Graph& a, const Graph& b) { return a.edges < b.edges; });
  return out;
}

std::optional<Contraction> contract(const Graph& g, const SetMap& f) {
  if (!(f.dom == g.vertices)) throw ArgumentError("contraction map is not defined on the vertices");
  const int m = f.cod.size();
  Contraction out;
  out.quotient = Graph{f.cod, {}, g.sign};
  std::vector<std::vector<int>> fibers(m);
  std::vector<int> local(g.vertices.size());
  for (int v = 0; v < g.vertices.size(); ++v) {
    local[v] = static_cast<int>(fibers[f.image[v]].size());
    fibers[f.image[v]].push_back(v);
  }
  for (int t = 0; t < m; ++t) {
    std::vector<Atom> atoms;
    for (int v : fibers[t]) atoms.push_back(g.vertices[v]);
    out.blocks.push_back(Graph{FinSet(atoms), {}, 1});
  }
  for (const auto& [a, b] : g.edges) {
    const int ta = f.image[a], tb = f.image[b];
    if (ta == tb) out.blocks[ta].edges.emplace_back(local[a], local[b]);
    else out.quotient.edges.emplace_back(ta, tb);
  }
  for (auto& b : out.blocks) {
    if (!is_tree(b)) return std::nullopt;
    std::sort(b.edges.begin(), b.edges.end());
  }
  std::sort(out.quotient.edges.begin(), out.quotient.edges.end());
  if (!is_tree(out.quotient)) throw StructuralError("quotient of a tree by subtrees is not a tree");
  return out;
}

Graph canonical_dir(const Graph& g) {
  Graph out = g;
  for (auto& [a, b] : out.edges)
    if (a > b) {
      std::swap(a, b);
      out.sign = -out.sign;
    }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

SymSeq graph_seq(int max_arity, bool directed) {
  SymSeq out(max_arity);
  for (int n = 0; n <= max_arity; ++n) {
    const TreeTable& t = tree_table(n);
    FreeMod mod;
    const FinSet s = FinSet::standard(n);
    for (const auto& e : t.trees) mod.basis.push_back(encode_graph(Graph{s, e, 1}, directed));
    std::vector<SignedPerm> gens;
    for (int j = 0; j + 1 < n; ++j) {
      SignedPerm p = SignedPerm::identity(mod.rank());
      auto swap = [j](int v) { return v == j ? j + 1 : v == j + 1 ? j : v; };
      for (int b = 0; b < mod.rank(); ++b) {
        Graph moved{s, {}, 1};
        for (const auto& [x, y] : t.trees[b]) moved.edges.emplace_back(swap(x), swap(y));
        moved = canonical_dir(moved);
        p.to[b] = t.index.at(moved.edges);
        p.sign[b] = directed ? moved.sign : 1;
      }
      gens.push_back(std::move(p));
    }
    out.set_arity(n, std::move(mod), std::move(gens));
  }
  return out;
}

LinMap::Column delta_oriented(int max_arity, const Graph& g, int m, const std::vector<int>& f) {
  const int k = g.vertices.size();
  LinMap::Column col;
  auto c = contract(g, SetMap(g.vertices, FinSet::standard(m), f));
  if (!c || m > max_arity || k > max_arity) return col;
  long long row = 0;
  int sign = 1;
  auto place = [&](const Graph& part) {
    const int n = part.vertices.size();
    if (n > max_arity) return false;
    Graph canon = canonical_dir(part);
    sign *= canon.sign;
    const TreeTable& t = tree_table(n);
    row = row * static_cast<long long>(t.trees.size()) + t.index.at(canon.edges);
    return true;
  };
  if (!place(c->quotient)) return col;
  for (const auto& b : c->blocks)
    if (!place(b)) return col;
  col.emplace_back(static_cast<int>(row), sign);
  return col;
}

LinMap delta_graph(int max_arity, int m, const std::vector<int>& g, bool directed) {
  const int k = static_cast<int>(g.size());
  std::vector<int> fiber(m, 0);
  for (int x : g) ++fiber[x];
  long long rows = tree_rank(max_arity, m);
  for (int s : fiber) rows *= tree_rank(max_arity, s);
  LinMap out(static_cast<int>(rows), tree_rank(max_arity, k));
  if (rows == 0) return out;
  const auto& trees = tree_table(k).trees;
  const FinSet s = FinSet::standard(k);
  for (int b = 0; b < out.cols(); ++b) {
    auto col = delta_oriented(max_arity, Graph{s, trees[b], 1}, m, g);
    if (!directed)
      for (auto& e : col) e.second = 1;
    out.add_column(b, col);
  }
  return out;
}

LinMap counit_graph() { return LinMap::identity(1); }

Corruption parse_corruption(const std::string& name) {
  if (name == "none") return Corruption::None;
  if (name == "sign") return Corruption::Sign;
  if (name == "zero-case") return Corruption::ZeroCase;
  if (name == "counit") return Corruption::Counit;
  throw ArgumentError("unknown corruption '" + name + "' (expected none, sign, zero-case or counit)");
}

std::string to_string(Corruption c) {
  switch (c) {
    case Corruption::None: return "none";
    case Corruption::Sign: return "sign";
    case Corruption::ZeroCase: return "zero-case";
    case Corruption::Counit: return "counit";
  }
  return "none";
}

Cooperad graph_cooperad(int max_arity, bool directed, Corruption corrupt, unsigned seed) {
  Cooperad op;
  op.name = directed ? "dirgraph" : "graph";
  if (corrupt != Corruption::None) op.name += "/" + to_string(corrupt);
  op.seq = graph_seq(max_arity, directed);
  op.counit = counit_graph();
  if (corrupt == Corruption::Counit) op.counit.set(0, 0, 2);

  if (corrupt == Corruption::Sign) {
    // candidates: nonzero entries on chains with 2 <= m <= k <= 3
    struct Entry {
      int m;
      std::vector<int> g;
      int row, col;
    };
    std::vector<Entry> candidates;
    for (int k = 2; k <= std::min(3, max_arity); ++k)
      for (int m = 2; m <= k; ++m) {
        std::vector<int> g(k, 0);
        while (true) {
          LinMap d = delta_graph(max_arity, m, g, directed);
          for (int c = 0; c < d.cols(); ++c)
            for (const auto& [r, v] : d.column(c)) candidates.push_back({m, g, r, c});
          int p = k - 1;
          while (p >= 0 && g[p] == m - 1) g[p--] = 0;
          if (p < 0) break;
          ++g[p];
        }
      }
    if (candidates.empty()) throw ArgumentError("no entry to corrupt below arity 3");
    std::mt19937 rng(seed);
    const Entry pick = candidates[rng() % candidates.size()];
    op.cocomp = [max_arity, directed, pick](int m, const std::vector<int>& g) {
      LinMap d = delta_graph(max_arity, m, g, directed);
      if (m == pick.m && g == pick.g) d.set(pick.row, pick.col, -d.get(pick.row, pick.col));
      return d;
    };
  } else if (corrupt == Corruption::ZeroCase) {
    op.cocomp = [max_arity, directed](int m, const std::vector<int>& g) {
      LinMap d = delta_graph(max_arity, m, g, directed);
      for (int c = 0; c < d.cols(); ++c)
        if (d.column(c).empty())
          for (int r = 0; r < d.rows(); ++r) d.set(r, c, 1);
      return d;
    };
  } else {
    op.cocomp = [max_arity, directed](int m, const std::vector<int>& g) {
      return delta_graph(max_arity, m, g, directed);
    };
  }
  return op;
}

Coalgebra graph_coalgebra_example(std::shared_ptr<const Cooperad> gr) {
  Coalgebra c;
  c.name = "graph-coalgebra";
  c.op = std::move(gr);
  c.carrier.basis = {"x", "y"};
  const int top = c.op->seq.max_arity();
  // rows: tree index, then the words over {x, y} (x = 0, y = 1), row-major
  c.cocomp = [top](int m) {
    const int trees = tree_rank(top, m);
    LinMap v(trees << m, 2);
    if (m == 1) v = LinMap::identity(2);
    if (m == 2 && trees == 1) v.set(3, 0, 1);
    return v;
  };
  return c;
}

}  // namespace coopkit
