#include "coopkit/json_io.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "coopkit/compose.hpp"
#include "coopkit/errors.hpp"

namespace coopkit {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw ArgumentError(where + ": missing field '" + name + "'");
  return j.at(name);
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ArgumentError(where + ": expected an integer");
  return j.get<int>();
}

}  // namespace

json linmap_to_json(const LinMap& m) {
  json entries = json::array();
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c)) entries.push_back({r, c, v});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

LinMap linmap_from_json(const json& j) {
  const int rows = as_int(field(j, "rows", "matrix"), "matrix rows");
  const int cols = as_int(field(j, "cols", "matrix"), "matrix cols");
  if (rows < 0 || cols < 0) throw ArgumentError("matrix: negative dimension");
  LinMap m(rows, cols);
  const json& e = field(j, "entries", "matrix");
  if (!e.is_array()) throw ArgumentError("matrix entries: expected an array");
  for (const auto& t : e) {
    if (!t.is_array() || t.size() != 3) throw ArgumentError("matrix entries: expected [row, col, value] triplets");
    const int r = as_int(t[0], "matrix entry row");
    const int c = as_int(t[1], "matrix entry col");
    if (!t[2].is_number_integer()) throw ArgumentError("matrix entry value: expected an integer");
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw ArgumentError("matrix entry out of range");
    m.add(r, c, t[2].get<Int>());
  }
  return m;
}

json symseq_to_json(const SymSeq& a) {
  json arity = json::object();
  for (int n = 0; n <= a.max_arity(); ++n) {
    json gens = json::array();
    for (const auto& g : a.generators(n)) {
      json col = json::array();
      for (int b = 0; b < g.size(); ++b) col.push_back({{"to", g.to[b]}, {"sign", g.sign[b]}});
      gens.push_back(col);
    }
    arity[std::to_string(n)] = json{{"basis", a.value(n).basis}, {"generators", gens}};
  }
  return json{{"max_arity", a.max_arity()}, {"arity", arity}};
}

SymSeq symseq_from_json(const json& j) {
  const int top = as_int(field(j, "max_arity", "sequence"), "max_arity");
  if (top < 0) throw ArgumentError("max_arity must be non-negative");
  SymSeq a(top);
  const json& arity = field(j, "arity", "sequence");
  if (!arity.is_object()) throw ArgumentError("arity: expected an object");
  for (const auto& [key, val] : arity.items()) {
    int n = -1;
    try {
      std::size_t used = 0;
      n = std::stoi(key, &used);
      if (used != key.size()) n = -1;
    } catch (const std::exception&) {
    }
    if (n < 0 || n > top) throw ArgumentError("arity key '" + key + "' is not in [0, max_arity]");
    const std::string where = "arity " + key;
    FreeMod m;
    const json& basis = field(val, "basis", where);
    if (!basis.is_array()) throw ArgumentError(where + ": basis must be an array");
    for (const auto& t : basis) {
      if (!t.is_string()) throw ArgumentError(where + ": basis tags must be strings");
      m.basis.push_back(t.get<std::string>());
    }
    std::vector<SignedPerm> gens;
    const json& gj = field(val, "generators", where);
    if (!gj.is_array()) throw ArgumentError(where + ": generators must be an array");
    for (const auto& g : gj) {
      if (!g.is_array()) throw ArgumentError(where + ": each generator must be an array");
      SignedPerm p;
      for (const auto& e : g) {
        p.to.push_back(as_int(field(e, "to", where), where + " generator target"));
        p.sign.push_back(as_int(field(e, "sign", where), where + " generator sign"));
      }
      gens.push_back(std::move(p));
    }
    a.set_arity(n, std::move(m), std::move(gens));
  }
  return a;
}

json cooperad_to_json(const Cooperad& op, int max_set) {
  json cocomp = json::object();
  std::set<std::string> seen;
  for (int k = 0; k <= max_set; ++k)
    for (int m = 0; m <= max_set; ++m) {
      if (m == 0 && k > 0) continue;
      std::vector<int> g(k, 0);
      while (true) {
        Chain c = canonical_chain(Chain({FinSet::standard(m), FinSet::standard(k)}, {g})).chain;
        if (seen.insert(encode(c)).second) {
          LinMap v = op.cocomp_at(c);
          if (!v.is_zero()) cocomp[encode(c)] = linmap_to_json(v);
        }
        int p = k - 1;
        while (p >= 0 && g[p] == m - 1) g[p--] = 0;
        if (p < 0) break;
        ++g[p];
      }
    }
  return json{{"name", op.name}, {"symseq", symseq_to_json(op.seq)}, {"cocomp", cocomp}, {"counit", linmap_to_json(op.counit)}};
}

Cooperad cooperad_from_json(const json& j) {
  std::string name = "custom";
  if (j.is_object() && j.contains("name")) {
    if (!j.at("name").is_string()) throw ArgumentError("cooperad name: expected a string");
    name = j.at("name").get<std::string>();
  }
  SymSeq seq = symseq_from_json(field(j, "symseq", "cooperad"));
  const json& cj = field(j, "cocomp", "cooperad");
  if (!cj.is_object()) throw ArgumentError("cocomp: expected an object keyed by chain");
  std::map<std::string, LinMap> table;
  for (const auto& [key, val] : cj.items()) {
    try {
      table.emplace(key, linmap_from_json(val));
    } catch (const ArgumentError& e) {
      throw ArgumentError("cocomp " + key + ": " + e.what());
    }
  }
  LinMap counit = linmap_from_json(field(j, "counit", "cooperad"));
  return table_cooperad(std::move(name), std::move(seq), std::move(table), std::move(counit));
}

json complex_to_json(const Complex& x) {
  json vs = json::array(), es = json::array(), ts = json::array();
  for (int i = 0; i < x.vertices.size(); ++i) vs.push_back(x.vertices[i].label());
  for (std::size_t e = 0; e < x.edges.size(); ++e)
    es.push_back({e, x.vertices[x.edges[e].first].label(), x.vertices[x.edges[e].second].label()});
  for (std::size_t t = 0; t < x.triangles.size(); ++t)
    ts.push_back({t, x.triangles[t][0], x.triangles[t][1], x.triangles[t][2]});
  return json{{"vertices", vs}, {"edges", es}, {"triangles", ts}};
}

Complex complex_from_json(const json& j) {
  if (j.is_object())
    for (const char* high : {"tetrahedra", "cells3"})
      if (j.contains(high)) throw UnsupportedError("complex: cells of dimension above 2");
  const json& vj = field(j, "vertices", "complex");
  if (!vj.is_array()) throw ArgumentError("complex vertices: expected an array");
  std::vector<Atom> atoms;
  for (const auto& v : vj) {
    if (v.is_string()) atoms.emplace_back(v.get<std::string>());
    else if (v.is_number_integer()) atoms.emplace_back(v.get<int>());
    else throw ArgumentError("complex vertices: expected strings or integers");
  }
  Complex x;
  x.vertices = FinSet(atoms);
  auto vertex = [&](const json& v, const std::string& where) {
    const Atom a = v.is_string() ? Atom(v.get<std::string>()) : Atom(as_int(v, where));
    const int p = x.vertices.index_of(a);
    if (p < 0) throw ArgumentError(where + ": unknown vertex " + a.label());
    return p;
  };
  std::map<int, int> edge_id;
  const json& ej = field(j, "edges", "complex");
  if (!ej.is_array()) throw ArgumentError("complex edges: expected an array");
  for (const auto& e : ej) {
    if (!e.is_array() || e.size() != 3) throw ArgumentError("complex edges: expected [id, a, b]");
    const int id = as_int(e[0], "edge id");
    const std::string where = "edge " + std::to_string(id);
    int a = vertex(e[1], where), b = vertex(e[2], where);
    if (a > b) std::swap(a, b);
    if (!edge_id.emplace(id, static_cast<int>(x.edges.size())).second) throw ArgumentError(where + ": duplicate id");
    x.edges.emplace_back(a, b);
  }
  if (j.contains("triangles")) {
    const json& tj = j.at("triangles");
    if (!tj.is_array()) throw ArgumentError("complex triangles: expected an array");
    for (const auto& t : tj) {
      if (!t.is_array() || t.size() != 4) throw ArgumentError("complex triangles: expected [id, e1, e2, e3]");
      const std::string where = "triangle " + std::to_string(as_int(t[0], "triangle id"));
      std::array<int, 3> cell{};
      for (int i = 0; i < 3; ++i) {
        auto it = edge_id.find(as_int(t[i + 1], where));
        if (it == edge_id.end()) throw ArgumentError(where + ": unknown edge");
        cell[i] = it->second;
      }
      x.triangles.push_back(cell);
    }
  }
  validate(x);
  return x;
}

}  // namespace coopkit
