#pragma once

// Cooperads written out by hand for tests: the commutative and associative
// cooperads (non-unital in arity 0), with row indices computed directly.

#include <algorithm>
#include <map>
#include <memory>
#include <vector>

#include "coopkit/cooperad.hpp"
#include "seq_fixtures.hpp"

namespace fixture {

using namespace coopkit;

// Com: rank 1 in arities 1..max, trivial action; every partition term is 1.
inline Cooperad commutative(int max_arity, Int scale = 1) {
  Cooperad op;
  op.name = "commutative";
  op.seq = line(max_arity, [&] {
    std::vector<int> a;
    for (int k = 1; k <= max_arity; ++k) a.push_back(k);
    return a;
  }());
  op.cocomp = [max_arity, scale](int m, const std::vector<int>& g) {
    const int k = static_cast<int>(g.size());
    std::vector<int> fiber(m, 0);
    for (int x : g) ++fiber[x];
    bool nonzero = m >= 1 && m <= max_arity;
    for (int f : fiber) nonzero = nonzero && f >= 1 && f <= max_arity;
    const int cols = k >= 1 && k <= max_arity ? 1 : 0;
    LinMap out(nonzero ? 1 : 0, cols);
    if (nonzero && cols) out.set(0, 0, scale);
    return out;
  };
  op.counit = LinMap::from_dense({{1}});
  return op;
}

// As: linear orders of [n]; an order splits along f exactly when every
// fiber is an interval of it.
inline std::map<Perm, int> order_index(int n) {
  std::map<Perm, int> idx;
  for (const auto& p : all_perms(n)) idx.emplace(p, static_cast<int>(idx.size()));
  return idx;
}

inline Cooperad associative(int max_arity) {
  Cooperad op;
  op.name = "associative";
  op.seq = from_action(
      max_arity,
      [](int n) {
        if (n == 0) return 0;
        int f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
      },
      [](int n, const Perm& sigma, int b) {
        const auto orders = all_perms(n);
        Perm w = orders[b];
        for (int& x : w) x = sigma[x];
        return std::make_pair(order_index(n).at(w), 1);
      },
      "w");
  op.cocomp = [max_arity](int m, const std::vector<int>& g) {
    const int k = static_cast<int>(g.size());
    std::vector<std::vector<int>> fibers(m);
    for (int j = 0; j < k; ++j) fibers[g[j]].push_back(j);
    bool nonzero = m >= 1 && m <= max_arity;
    int rows = 1;
    auto fact = [](int n) {
      int f = 1;
      for (int i = 2; i <= n; ++i) f *= i;
      return n == 0 ? 0 : f;
    };
    rows *= nonzero ? fact(m) : 0;
    for (const auto& f : fibers) {
      if (f.empty() || static_cast<int>(f.size()) > max_arity) nonzero = false;
      rows *= fact(static_cast<int>(f.size()));
    }
    if (!nonzero) rows = 0;
    const int cols = k >= 1 && k <= max_arity ? fact(k) : 0;
    LinMap out(rows, cols);
    if (!nonzero || cols == 0) return out;
    const auto orders = all_perms(k);
    for (int b = 0; b < cols; ++b) {
      const Perm& w = orders[b];
      Perm blocks;
      bool ok = true;
      for (int x : w) {
        if (!blocks.empty() && blocks.back() == g[x]) continue;
        if (std::find(blocks.begin(), blocks.end(), g[x]) != blocks.end()) ok = false;
        blocks.push_back(g[x]);
      }
      if (!ok) continue;
      long long row = order_index(m).at(blocks);
      for (int i = 0; i < m; ++i) {
        Perm inner;
        for (int x : w)
          if (g[x] == i)
            inner.push_back(static_cast<int>(std::find(fibers[i].begin(), fibers[i].end(), x) - fibers[i].begin()));
        row = row * fact(static_cast<int>(fibers[i].size())) + order_index(static_cast<int>(inner.size())).at(inner);
      }
      out.set(static_cast<int>(row), b, 1);
    }
    return out;
  };
  op.counit = LinMap::from_dense({{1}});
  return op;
}

}  // namespace fixture
