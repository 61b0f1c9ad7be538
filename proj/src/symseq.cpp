#include "coopkit/symseq.hpp"

#include <algorithm>
#include <numeric>

#include "coopkit/errors.hpp"

namespace coopkit {

Perm compose_perm(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse_perm(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
  return r;
}

std::vector<Perm> all_perms(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> adjacent_word(const Perm& perm) {
  // bubble sort: each swap at j right-multiplies by t_j
  Perm w = perm;
  std::vector<int> word;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t j = 0; j + 1 < w.size(); ++j) {
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        word.push_back(static_cast<int>(j));
        swapped = true;
      }
    }
  }
  return word;
}

SymSeq::SymSeq(int max_arity) {
  if (max_arity < 0) throw ArgumentError("max arity must be non-negative");
  values_.resize(max_arity + 1);
  gens_.resize(max_arity + 1);
  for (int n = 0; n <= max_arity; ++n)
    gens_[n].assign(std::max(n - 1, 0), SignedPerm::identity(0));
}

const FreeMod& SymSeq::value(int n) const {
  static const FreeMod zero;
  if (n < 0 || n > max_arity()) return zero;
  return values_[n];
}

const std::vector<SignedPerm>& SymSeq::generators(int n) const {
  static const std::vector<SignedPerm> none;
  if (n < 0 || n > max_arity()) return none;
  return gens_[n];
}

void SymSeq::set_arity(int n, FreeMod value, std::vector<SignedPerm> generators) {
  if (n < 0 || n > max_arity()) throw ArgumentError("arity " + std::to_string(n) + " outside [0, max_arity]");
  if (static_cast<int>(generators.size()) != std::max(n - 1, 0))
    throw ArgumentError("arity " + std::to_string(n) + " needs " + std::to_string(std::max(n - 1, 0)) + " generators");
  for (const auto& g : generators) {
    if (g.size() != value.rank()) throw ArgumentError("arity " + std::to_string(n) + ": generator size differs from rank");
    g.validate();
  }
  values_[n] = std::move(value);
  gens_[n] = std::move(generators);
  std::lock_guard lock(cache_->mu);
  cache_->rho.clear();
}

SignedPerm SymSeq::rho(const Perm& perm) const {
  const int n = static_cast<int>(perm.size());
  const int r = rank(n);
  if (r == 0) return SignedPerm::identity(0);
  {
    std::lock_guard lock(cache_->mu);
    if (auto it = cache_->rho.find(perm); it != cache_->rho.end()) return it->second;
  }
  SignedPerm p = SignedPerm::identity(r);
  for (int j : adjacent_word(perm)) p = compose(gens_[n][j], p);
  std::lock_guard lock(cache_->mu);
  cache_->rho.emplace(perm, p);
  return p;
}

FreeMod SymSeq::evaluate(const FinSet& s) const {
  FreeMod out;
  const std::string deco = "{" + encode(s) + "}";
  for (const auto& t : value(s.size()).basis) out.basis.push_back(t + deco);
  return out;
}

int SymSeq::top_support() const {
  for (int n = max_arity(); n >= 0; --n)
    if (rank(n) > 0) return n;
  return -1;
}

SymSeq counit_seq(int max_arity) {
  SymSeq one(max_arity);
  if (max_arity >= 1) one.set_arity(1, FreeMod::unit(), {});
  return one;
}

Report check_action(const SymSeq& a, const std::string& name) {
  Report rep;
  rep.subject = "action relations of " + name;
  for (int n = 0; n <= a.max_arity(); ++n) {
    const auto& g = a.generators(n);
    const int r = a.rank(n);
    auto id = SignedPerm::identity(r);
    const std::string where = "arity " + std::to_string(n);
    for (int i = 0; i + 1 < n; ++i) {
      const std::string si = "s" + std::to_string(i + 1);
      bool ok = compose(g[i], g[i]) == id;
      rep.add("involution", where + " " + si + "^2", ok ? Status::Pass : Status::Fail, ok ? "" : si + "^2 != 1");
      if (i + 2 < n) {
        auto x = compose(g[i], g[i + 1]);
        bool braid = compose(x, compose(x, x)) == id;
        const std::string sj = "s" + std::to_string(i + 2);
        rep.add("braid", where + " (" + si + " " + sj + ")^3", braid ? Status::Pass : Status::Fail,
                braid ? "" : "(" + si + " " + sj + ")^3 != 1");
      }
      for (int j = i + 2; j + 1 < n; ++j) {
        bool comm = compose(g[i], g[j]) == compose(g[j], g[i]);
        const std::string sj = "s" + std::to_string(j + 1);
        rep.add("commutation", where + " " + si + " " + sj, comm ? Status::Pass : Status::Fail,
                comm ? "" : si + " " + sj + " != " + sj + " " + si);
      }
    }
  }
  return rep;
}

Report check_equivariance(const SymSeq& a, const SymSeq& b, const SeqMorphism& f) {
  Report rep;
  rep.subject = "equivariance";
  const int top = std::min(a.max_arity(), b.max_arity());
  for (int n = 0; n <= top && n < static_cast<int>(f.components.size()); ++n) {
    const LinMap& c = f.components[n];
    std::vector<Perm> perms;
    if (n <= 4) {
      perms = all_perms(n);
    } else {
      for (int j = 0; j + 1 < n; ++j) {
        Perm t(n);
        std::iota(t.begin(), t.end(), 0);
        std::swap(t[j], t[j + 1]);
        perms.push_back(t);
      }
    }
    for (const auto& p : perms) {
      LinMap lhs = c * a.rho(p).matrix();
      LinMap rhs = b.rho(p).matrix() * c;
      if (a.rank(n) == 0 || b.rank(n) == 0) continue;
      std::string inst = "arity " + std::to_string(n) + " perm";
      for (int x : p) inst += " " + std::to_string(x + 1);
      rep.add("equivariance", inst, lhs == rhs ? Status::Pass : Status::Fail);
    }
  }
  return rep;
}

}  // namespace coopkit
