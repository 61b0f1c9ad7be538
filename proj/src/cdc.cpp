#include "coopkit/cdc.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "coopkit/compose.hpp"
#include "coopkit/errors.hpp"

namespace coopkit {

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

// The three vertices of a triangle, sorted, and its edges as (ab, bc, ac).
struct TriangleShape {
  std::array<int, 3> v;
  std::array<int, 3> e;
};

TriangleShape shape(const Complex& x, const std::array<int, 3>& t) {
  std::set<int> vs;
  for (int e : t) {
    if (e < 0 || e >= static_cast<int>(x.edges.size())) throw ArgumentError("triangle uses unknown edge " + std::to_string(e));
    vs.insert(x.edges[e].first);
    vs.insert(x.edges[e].second);
  }
  if (vs.size() != 3) throw UnsupportedError("triangle with repeated vertices");
  TriangleShape s;
  std::copy(vs.begin(), vs.end(), s.v.begin());
  const std::array<std::pair<int, int>, 3> want{{{s.v[0], s.v[1]}, {s.v[1], s.v[2]}, {s.v[0], s.v[2]}}};
  std::array<char, 3> used{0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    int found = -1;
    for (int j = 0; j < 3; ++j)
      if (!used[j] && x.edges[t[j]] == want[i]) found = j;
    if (found < 0) throw ArgumentError("triangle edges do not bound a vertex triple");
    used[found] = 1;
    s.e[i] = t[found];
  }
  return s;
}

std::string key(const Complex& x) {
  std::string out = std::to_string(x.vertices.size()) + "|";
  for (const auto& [a, b] : x.edges) out += std::to_string(a) + "-" + std::to_string(b) + " ";
  out += "|";
  for (const auto& t : x.triangles) out += std::to_string(t[0]) + "." + std::to_string(t[1]) + "." + std::to_string(t[2]) + " ";
  return out;
}

}  // namespace

void validate(const Complex& x) {
  for (const auto& [a, b] : x.edges) {
    if (a < 0 || b < 0 || a >= x.vertices.size() || b >= x.vertices.size())
      throw ArgumentError("edge endpoint out of range");
    if (a == b) throw UnsupportedError("loop edges are outside the supported fragment");
    if (a > b) throw ArgumentError("edges must be stored with first < second");
  }
  for (const auto& t : x.triangles) shape(x, t);
}

Complex canonical(const Complex& x) {
  validate(x);
  const int ne = static_cast<int>(x.edges.size());
  std::vector<int> order(ne);
  for (int i = 0; i < ne; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x.edges[a] < x.edges[b]; });
  // runs of parallel edges, permuted independently
  std::vector<std::pair<int, int>> runs;
  for (int i = 0; i < ne;) {
    int j = i;
    while (j < ne && x.edges[order[j]] == x.edges[order[i]]) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  Complex best;
  best.vertices = x.vertices;
  for (int i : order) best.edges.push_back(x.edges[i]);
  bool have = false;
  std::vector<int> slot = order;  // slot[new id] = old id
  auto relabel = [&] {
    std::vector<int> to(ne);
    for (int i = 0; i < ne; ++i) to[slot[i]] = i;
    std::vector<std::array<int, 3>> tris;
    for (const auto& t : x.triangles) {
      std::array<int, 3> u{to[t[0]], to[t[1]], to[t[2]]};
      std::sort(u.begin(), u.end());
      tris.push_back(u);
    }
    std::sort(tris.begin(), tris.end());
    if (!have || tris < best.triangles) best.triangles = tris, have = true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t r) {
    if (r == runs.size()) return relabel();
    auto [a, b] = runs[r];
    std::sort(slot.begin() + a, slot.begin() + b);
    do rec(r + 1);
    while (std::next_permutation(slot.begin() + a, slot.begin() + b));
  };
  if (x.triangles.empty()) best.triangles.clear();
  else rec(0);
  return best;
}

std::string encode_complex(const Complex& x) {
  std::string out;
  for (int i = 0; i < x.vertices.size(); ++i) out += (i ? "," : "") + x.vertices[i].label();
  out += ";";
  for (const auto& [a, b] : x.edges) out += " " + x.vertices[a].label() + "-" + x.vertices[b].label();
  out += ";";
  for (const auto& t : x.triangles)
    out += " " + std::to_string(t[0]) + "." + std::to_string(t[1]) + "." + std::to_string(t[2]);
  return out;
}

std::array<std::vector<Int>, 3> reduced_homology(const Complex& x) {
  validate(x);
  const int nv = x.vertices.size(), ne = static_cast<int>(x.edges.size()), nt = static_cast<int>(x.triangles.size());
  std::array<std::vector<Int>, 3> h;
  if (nv == 0) return h;
  LinMap d1(nv, ne), d2(ne, nt);
  for (int e = 0; e < ne; ++e) {
    d1.add(x.edges[e].second, e, 1);
    d1.add(x.edges[e].first, e, -1);
  }
  for (int t = 0; t < nt; ++t) {
    const auto s = shape(x, x.triangles[t]);
    d2.add(s.e[1], t, 1);   // bc
    d2.add(s.e[2], t, -1);  // ac
    d2.add(s.e[0], t, 1);   // ab
  }
  const int r1 = integer_rank(d1), r2 = integer_rank(d2);
  auto fill = [](std::vector<Int>& out, int free, const LinMap& m) {
    out.assign(free, 0);
    for (Int f : smith_invariants(m))
      if (f > 1) out.push_back(f);
  };
  fill(h[0], nv - 1 - r1, d1);
  fill(h[1], ne - r1 - r2, d2);
  h[2].assign(nt - r2, 0);
  return h;
}

bool acyclic(const Complex& x) {
  if (x.vertices.size() == 0) return false;
  const auto h = reduced_homology(x);
  return h[0].empty() && h[1].empty() && h[2].empty();
}

bool collapsible(const Complex& x) {
  validate(x);
  const int nv = x.vertices.size(), ne = static_cast<int>(x.edges.size()), nt = static_cast<int>(x.triangles.size());
  if (nv == 0) return false;
  std::vector<char> v_alive(nv, 1), e_alive(ne, 1), t_alive(nt, 1);
  int alive = nv + ne + nt;
  for (bool moved = true; moved;) {
    moved = false;
    // a free edge: the face of exactly one remaining triangle
    for (int e = 0; e < ne && !moved; ++e) {
      if (!e_alive[e]) continue;
      int count = 0, last = -1;
      for (int t = 0; t < nt; ++t)
        if (t_alive[t] && std::count(x.triangles[t].begin(), x.triangles[t].end(), e)) ++count, last = t;
      if (count == 1) e_alive[e] = t_alive[last] = 0, alive -= 2, moved = true;
    }
    // a free vertex: the end of exactly one remaining edge
    for (int v = 0; v < nv && !moved; ++v) {
      if (!v_alive[v]) continue;
      int count = 0, last = -1;
      for (int e = 0; e < ne; ++e)
        if (e_alive[e] && (x.edges[e].first == v || x.edges[e].second == v)) ++count, last = e;
      if (count != 1) continue;
      bool in_triangle = false;
      for (int t = 0; t < nt; ++t)
        if (t_alive[t] && std::count(x.triangles[t].begin(), x.triangles[t].end(), last)) in_triangle = true;
      if (!in_triangle) v_alive[v] = e_alive[last] = 0, alive -= 2, moved = true;
    }
  }
  return alive == 1;
}

Contractibility classify(const Complex& x) {
  if (collapsible(x)) return Contractibility::Contractible;
  return acyclic(x) ? Contractibility::Indeterminate : Contractibility::NotContractible;
}

std::string to_string(Contractibility c) {
  switch (c) {
    case Contractibility::Contractible: return "contractible";
    case Contractibility::NotContractible: return "not-contractible";
    case Contractibility::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(ContractOutcome c) {
  switch (c) {
    case ContractOutcome::Ok: return "ok";
    case ContractOutcome::NotContractible: return "not-contractible";
    case ContractOutcome::NotDeltaComplex: return "quotient-not-a-delta-complex";
    case ContractOutcome::Indeterminate: return "indeterminate";
  }
  return "?";
}

Complex closure(const Complex& x, const std::vector<int>& support) {
  std::vector<int> local(x.vertices.size(), -1);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < support.size(); ++i) {
    local[support[i]] = static_cast<int>(i);
    atoms.push_back(x.vertices[support[i]]);
  }
  Complex out;
  out.vertices = FinSet(atoms);
  std::vector<int> edge_id(x.edges.size(), -1);
  for (std::size_t e = 0; e < x.edges.size(); ++e) {
    const auto [a, b] = x.edges[e];
    if (local[a] < 0 || local[b] < 0) continue;
    edge_id[e] = static_cast<int>(out.edges.size());
    out.edges.push_back(ordered(local[a], local[b]));
  }
  for (const auto& t : x.triangles)
    if (edge_id[t[0]] >= 0 && edge_id[t[1]] >= 0 && edge_id[t[2]] >= 0)
      out.triangles.push_back({edge_id[t[0]], edge_id[t[1]], edge_id[t[2]]});
  return out;
}

ComplexContraction contract_complex(const Complex& x, const SetMap& f) {
  validate(x);
  if (f.dom != x.vertices) throw ArgumentError("contract_complex: map domain differs from the vertex set");
  ComplexContraction out;
  const int m = f.cod.size();
  bool indeterminate = false;
  for (int t = 0; t < m; ++t) {
    const auto support = f.fiber(t);
    if (support.empty()) {
      out.outcome = ContractOutcome::NotContractible;
      out.reason = "empty fiber over " + f.cod[t].label();
      return out;
    }
    out.blocks.push_back(closure(x, support));
    const auto c = classify(out.blocks.back());
    if (c == Contractibility::NotContractible) {
      out.outcome = ContractOutcome::NotContractible;
      out.reason = "block over " + f.cod[t].label() + " is not contractible";
      out.blocks.clear();
      return out;
    }
    indeterminate = indeterminate || c == Contractibility::Indeterminate;
  }
  // cells outside the blocks; edges there already join distinct fibers
  out.quotient.vertices = f.cod;
  std::vector<int> edge_id(x.edges.size(), -1);
  for (std::size_t e = 0; e < x.edges.size(); ++e) {
    const auto [a, b] = x.edges[e];
    if (f.image[a] == f.image[b]) continue;
    edge_id[e] = static_cast<int>(out.quotient.edges.size());
    out.quotient.edges.push_back(ordered(f.image[a], f.image[b]));
  }
  for (const auto& t : x.triangles) {
    const auto s = shape(x, t);
    std::set<int> images{f.image[s.v[0]], f.image[s.v[1]], f.image[s.v[2]]};
    if (images.size() == 1) continue;  // inside a block
    if (images.size() == 2) {
      out.outcome = ContractOutcome::NotDeltaComplex;
      out.reason = "a triangle meets a block in an edge";
      return out;
    }
    out.quotient.triangles.push_back({edge_id[t[0]], edge_id[t[1]], edge_id[t[2]]});
  }
  const auto q = classify(out.quotient);
  if (q == Contractibility::NotContractible)
    throw StructuralError("quotient of a contractible complex is not contractible: " + encode_complex(out.quotient));
  if (indeterminate || q == Contractibility::Indeterminate) {
    out.outcome = ContractOutcome::Indeterminate;
    out.reason = "a block or the quotient is acyclic but does not collapse";
  }
  return out;
}

std::vector<Complex> enumerate_complexes(int n, int max_triangles, std::vector<Complex>* indeterminate) {
  std::vector<Complex> out;
  if (n <= 0) return out;
  const FinSet s = FinSet::standard(n);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::set<std::string> seen;
  for (int nt = 0; nt <= max_triangles; ++nt) {
    const int ne = n - 1 + nt;  // Euler characteristic one
    if (ne > 0 && pairs.empty()) continue;
    std::vector<int> pick(ne, 0);
    while (true) {
      Complex base;
      base.vertices = s;
      for (int p : pick) base.edges.push_back(pairs[p]);
      // every triangle the edges support
      std::vector<std::array<int, 3>> cand;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c)
            for (int e1 = 0; e1 < ne; ++e1)
              for (int e2 = 0; e2 < ne; ++e2)
                for (int e3 = 0; e3 < ne; ++e3)
                  if (base.edges[e1] == std::make_pair(a, b) && base.edges[e2] == std::make_pair(b, c) &&
                      base.edges[e3] == std::make_pair(a, c)) {
                    std::array<int, 3> t{e1, e2, e3};
                    std::sort(t.begin(), t.end());
                    cand.push_back(t);
                  }
      if (nt == 0 || !cand.empty()) {
        std::vector<int> tp(nt, 0);
        while (true) {
          Complex x = base;
          for (int i : tp) x.triangles.push_back(cand[i]);
          Complex c = canonical(x);
          if (seen.insert(key(c)).second) {
            const auto k = classify(c);
            if (k == Contractibility::Contractible) out.push_back(c);
            else if (k == Contractibility::Indeterminate && indeterminate) indeterminate->push_back(c);
          }
          int q = nt - 1;
          while (q >= 0 && tp[q] == static_cast<int>(cand.size()) - 1) --q;
          if (q < 0) break;
          ++tp[q];
          for (int r = q + 1; r < nt; ++r) tp[r] = tp[q];
        }
      }
      int p = ne - 1;
      while (p >= 0 && pick[p] == static_cast<int>(pairs.size()) - 1) --p;
      if (p < 0) break;
      ++pick[p];
      for (int r = p + 1; r < ne; ++r) pick[r] = pick[p];
    }
  }
  return out;
}

namespace {

struct Table {
  std::vector<Complex> basis;
  std::map<std::string, int> index;
};

const Table& table(int n, int max_triangles) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Table>> tables;
  std::lock_guard lock(mu);
  auto& slot = tables[{n, max_triangles}];
  if (!slot) {
    slot = std::make_unique<Table>();
    slot->basis = enumerate_complexes(n, max_triangles);
    for (std::size_t i = 0; i < slot->basis.size(); ++i) slot->index.emplace(key(slot->basis[i]), static_cast<int>(i));
  }
  return *slot;
}

Complex standardized(Complex x) {
  x.vertices = FinSet::standard(x.vertices.size());
  return canonical(x);
}

struct Cocomp {
  LinMap matrix;
  std::vector<char> undefined;
};

Cocomp compute(int max_arity, int max_triangles, int m, const std::vector<int>& g) {
  const int k = static_cast<int>(g.size());
  auto rank = [&](int n) { return n > max_arity ? 0 : static_cast<int>(table(n, max_triangles).basis.size()); };
  std::vector<int> sizes(m, 0);
  for (int t : g) ++sizes[t];
  long long rows = rank(m);
  for (int sz : sizes) rows *= rank(sz);
  Cocomp out{LinMap(static_cast<int>(rows), rank(k)), std::vector<char>(rank(k), 0)};
  if (rows == 0 || out.matrix.cols() == 0) return out;
  const auto& src = table(k, max_triangles);
  for (int col = 0; col < out.matrix.cols(); ++col) {
    const auto c = contract_complex(src.basis[col], SetMap(FinSet::standard(k), FinSet::standard(m), g));
    if (c.outcome == ContractOutcome::NotContractible) continue;
    if (c.outcome != ContractOutcome::Ok) {
      out.undefined[col] = 1;
      continue;
    }
    long long row = 0;
    auto place = [&](const Complex& part) {
      const int n = part.vertices.size();
      row = row * rank(n) + table(n, max_triangles).index.at(key(standardized(part)));
    };
    place(c.quotient);
    for (const auto& b : c.blocks) place(b);
    out.matrix.set(static_cast<int>(row), col, 1);
  }
  return out;
}

}  // namespace

SymSeq cdc_seq(int max_arity, int max_triangles) {
  SymSeq out(max_arity);
  for (int n = 0; n <= max_arity; ++n) {
    const Table& t = table(n, max_triangles);
    FreeMod mod;
    for (const auto& x : t.basis) mod.basis.push_back(encode_complex(x));
    std::vector<SignedPerm> gens;
    for (int j = 0; j + 1 < n; ++j) {
      SignedPerm p = SignedPerm::identity(mod.rank());
      auto swap = [j](int v) { return v == j ? j + 1 : v == j + 1 ? j : v; };
      for (int b = 0; b < mod.rank(); ++b) {
        Complex moved = t.basis[b];
        for (auto& [x, y] : moved.edges) std::tie(x, y) = ordered(swap(x), swap(y));
        p.to[b] = t.index.at(key(canonical(moved)));
      }
      gens.push_back(std::move(p));
    }
    out.set_arity(n, std::move(mod), std::move(gens));
  }
  return out;
}

Cooperad cdc_cooperad(int max_arity, int max_triangles) {
  if (max_triangles < 0) throw ArgumentError("cdc: negative triangle bound");
  struct Cache {
    std::mutex mu;
    std::map<std::pair<int, std::vector<int>>, std::shared_ptr<const Cocomp>> values;
  };
  auto cache = std::make_shared<Cache>();
  auto get = [cache, max_arity, max_triangles](int m, const std::vector<int>& g) {
    {
      std::lock_guard lock(cache->mu);
      auto it = cache->values.find({m, g});
      if (it != cache->values.end()) return it->second;
    }
    auto v = std::make_shared<const Cocomp>(compute(max_arity, max_triangles, m, g));
    std::lock_guard lock(cache->mu);
    return cache->values.emplace(std::make_pair(m, g), v).first->second;
  };
  Cooperad op;
  op.name = "cdc";
  op.seq = cdc_seq(max_arity, max_triangles);
  op.cocomp = [get](int m, const std::vector<int>& g) { return get(m, g)->matrix; };
  op.undefined = [get](int m, const std::vector<int>& g) { return get(m, g)->undefined; };
  op.counit = LinMap::from_dense({{1}});
  if (max_arity < 1) op.counit = LinMap(1, 0);
  return op;
}

}  // namespace coopkit
