#include "coopkit/cooperad.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <thread>

#include "coopkit/errors.hpp"

namespace coopkit {

namespace {

Chain positional_chain(int m, const std::vector<int>& g) {
  return Chain({FinSet::standard(m), FinSet::standard(static_cast<int>(g.size()))}, {g});
}

// Rows of r are words over the groups (first group most significant, each
// group row-major over its vertices); moves them to the word order of sc.
LinMap regroup(const LinMap& r, const std::vector<std::vector<int>>& groups, const TensorShape& sc) {
  std::vector<long long> group_rank(groups.size(), 1);
  long long total = 1;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int v : groups[g]) group_rank[g] *= sc.factor_rank(v);
    total *= group_rank[g];
  }
  if (total != r.rows() || total != sc.rank()) throw StructuralError("regrouping rank mismatch at " + encode(sc.chain()));
  std::vector<int> digits(sc.vertex_count(), 0);
  std::vector<int> rowmap(r.rows());
  for (long long i = 0; i < r.rows(); ++i) {
    long long rest = i;
    for (int g = static_cast<int>(groups.size()) - 1; g >= 0; --g) {
      long long gi = rest % group_rank[g];
      rest /= group_rank[g];
      for (int w = static_cast<int>(groups[g].size()) - 1; w >= 0; --w) {
        const int v = groups[g][w];
        digits[v] = static_cast<int>(gi % sc.factor_rank(v));
        gi /= sc.factor_rank(v);
      }
    }
    rowmap[i] = static_cast<int>(sc.index(digits));
  }
  LinMap out(r.rows(), r.cols());
  for (int c = 0; c < r.cols(); ++c) {
    LinMap::Column col;
    for (const auto& [row, v] : r.column(c)) col.emplace_back(rowmap[row], v);
    std::sort(col.begin(), col.end());
    out.add_column(c, col);
  }
  return out;
}

std::string describe_difference(const LinMap& a, const LinMap& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return "shapes " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
           "x" + std::to_string(b.cols());
  auto [r, c] = a.first_difference(b);
  return "entry (" + std::to_string(r) + ", " + std::to_string(c) + "): " + std::to_string(a.get(r, c)) + " vs " +
         std::to_string(b.get(r, c));
}

ReportEntry compare(const std::string& check, const std::string& instance, const LinMap& lhs, const LinMap& rhs) {
  ReportEntry e{check, instance, Status::Pass, ""};
  if (!(lhs == rhs)) {
    e.status = Status::Fail;
    e.witness = describe_difference(lhs, rhs);
  }
  return e;
}

// Runs independent checks in parallel; entries keep the input order. A
// check that throws is reported as a failure with the error as witness.
void run_checks(Report& report, const std::vector<std::pair<std::string, std::string>>& labels,
                const std::function<ReportEntry(std::size_t)>& check) {
  std::vector<ReportEntry> out(labels.size());
  parallel_for(labels.size(), [&](std::size_t i) {
    try {
      out[i] = check(i);
    } catch (const UnsupportedError& e) {
      out[i] = ReportEntry{labels[i].first, labels[i].second, Status::Excluded, e.what()};
    } catch (const std::exception& e) {
      out[i] = ReportEntry{labels[i].first, labels[i].second, Status::Fail, e.what()};
    }
  });
  for (auto& e : out) report.add(std::move(e));
}

std::string set_label(const FinSet& s) { return encode(s); }

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("COOPKIT_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) threads = static_cast<unsigned>(t);
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// --- structures -------------------------------------------------------------------------

LinMap Cooperad::cocomp_at(const Chain& c) const {
  if (c.length() != 2) throw ArgumentError("cocomposition needs a 2-chain, got " + encode(c));
  return cocomp(c.level(0).size(), c.map(0));
}

Cooperad trivial_cooperad(int max_arity) {
  Cooperad op;
  op.name = "trivial";
  op.seq = counit_seq(max_arity);
  SymSeq seq = op.seq;
  op.cocomp = [seq](int m, const std::vector<int>& g) {
    const int k = static_cast<int>(g.size());
    if (m == 1 && k == 1) return LinMap::identity(1);
    TensorShape t({seq, seq}, positional_chain(m, g));
    return LinMap(static_cast<int>(t.rank()), seq.rank(k));
  };
  op.counit = LinMap::identity(1);
  return op;
}

Cooperad table_cooperad(std::string name, SymSeq seq, std::map<std::string, LinMap> table, LinMap counit) {
  if (counit.rows() != 1 || counit.cols() != seq.rank(1)) throw ArgumentError("counit must be 1 x rank O(1)");
  for (const auto& [key, m] : table) {
    Chain c = parse_chain(key);
    if (c.length() != 2) throw ArgumentError("cocomposition key " + key + " is not a 2-chain");
    auto cc = canonical_chain(c);
    if (!(cc.chain == c)) throw ArgumentError("cocomposition key " + key + " is not canonical");
    TensorShape t({seq, seq}, c);
    if (m.rows() != t.rank() || m.cols() != seq.rank(c.top().size()))
      throw ArgumentError("cocomposition at " + key + " has the wrong shape");
  }
  Cooperad op;
  op.name = std::move(name);
  op.seq = seq;
  op.counit = std::move(counit);
  auto shared = std::make_shared<const std::map<std::string, LinMap>>(std::move(table));
  op.cocomp = [seq, shared](int m, const std::vector<int>& g) {
    Chain c = positional_chain(m, g);
    auto cc = canonical_chain(c);
    auto it = shared->find(encode(cc.chain));
    TensorShape t({seq, seq}, c);
    const int k = static_cast<int>(g.size());
    if (it == shared->end()) return LinMap(static_cast<int>(t.rank()), seq.rank(k));
    LinMap back = transport_tensor({seq, seq}, cc.witness.inverse()).matrix();
    return back * it->second * seq.rho(cc.witness.perm[1]).matrix();
  };
  return op;
}

Comodule Coalgebra::as_comodule() const {
  Comodule m;
  m.name = name;
  m.op = op;
  m.seq = coefficient_seq(carrier);
  SymSeq oseq = op->seq, mseq = m.seq;
  auto fn = cocomp;
  const int r = carrier.rank();
  m.cocomp = [oseq, mseq, fn, r](int arity, const std::vector<int>& g) {
    TensorShape t({oseq, mseq}, positional_chain(arity, g));
    if (!g.empty()) return LinMap(static_cast<int>(t.rank()), 0);
    LinMap v = fn(arity);
    if (v.rows() != t.rank() || v.cols() != r)
      throw ArgumentError("coalgebra cocomposition in arity " + std::to_string(arity) + " has the wrong shape");
    return v;
  };
  return m;
}

// --- the cosimplicial object ------------------------------------------------------------

Cosimplicial::Cosimplicial(const Cooperad& op) : op_(op), tail_(op.seq), tail_cocomp_(op.cocomp), is_cooperad_(true) {}

Cosimplicial::Cosimplicial(const Comodule& m)
    : op_(*m.op), tail_(m.seq), tail_cocomp_(m.cocomp), is_cooperad_(false) {}

std::vector<SymSeq> Cosimplicial::slots(int n) const {
  if (n < 1) throw ArgumentError("terms start at n = 1");
  std::vector<SymSeq> s(n - 1, op_.seq);
  s.push_back(tail_);
  return s;
}

const KanModule& Cosimplicial::term(int n, const FinSet& s) const {
  if (n < 1) throw ArgumentError("term(" + std::to_string(n) + ") is not a Kan module");
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->terms.find({n, encode(s)});
    if (it != cache_->terms.end()) return *it->second;
  }
  auto out = std::make_shared<KanModule>(slots(n), s);
  std::lock_guard lock(cache_->mu);
  return *cache_->terms.emplace(std::make_pair(n, encode(s)), out).first->second;
}

int Cosimplicial::term_rank(int n, const FinSet& s) const {
  if (n == 0) {
    if (!is_cooperad_) throw ArgumentError("comodule terms start at n = 1");
    return s.size() == 1 ? 1 : 0;
  }
  return term(n, s).rank();
}

const PositionalCocomp& Cosimplicial::cocomp_for_slot(int slot, int n) const {
  return slot == n - 1 ? tail_cocomp_ : op_.cocomp;
}

namespace {

// The 2-chain split off at vertex p of height i - 1: its children in level
// i - 1 of c, and the positional map from the grandchildren onto them.
struct Split {
  std::vector<int> kids;
  std::vector<int> g;
};

Split split_at(const Chain& c, int i, int p) {
  Split s;
  s.kids = c.fiber(i - 1, p);
  std::vector<int> grand;
  for (int u : s.kids)
    for (int w : c.fiber(i, u)) grand.push_back(w);
  std::sort(grand.begin(), grand.end());
  for (int w : grand)
    s.g.push_back(static_cast<int>(std::lower_bound(s.kids.begin(), s.kids.end(), c.map(i - 1)[w]) - s.kids.begin()));
  return s;
}

}  // namespace

LinMap Cosimplicial::tilde_delta(int n, int i, const Chain& c) const {
  if (c.length() != n) throw ArgumentError("tilde_delta: " + encode(c) + " is not a " + std::to_string(n) + "-chain");
  if (i < 1 || i > n - 1) throw ArgumentError("tilde_delta: index " + std::to_string(i) + " out of range");
  Chain d = face(c, i);
  TensorShape sd(slots(n - 1), d);
  TensorShape sc(slots(n), c);
  std::vector<LinMap> factors;
  std::vector<std::vector<int>> groups;
  for (int v = 0; v < sd.vertex_count(); ++v) {
    const int h = sd.height(v), p = sd.position(v);
    if (h != i - 1) {
      factors.push_back(LinMap::identity(sd.factor_rank(v)));
      groups.push_back({sc.vertex(h < i - 1 ? h : h + 1, p)});
      continue;
    }
    const Split sp = split_at(c, i, p);
    const int m = static_cast<int>(sp.kids.size());
    LinMap block = cocomp_for_slot(i - 1, n - 1)(m, sp.g);
    std::vector<int> group{sc.vertex(i - 1, p)};
    long long rows = sc.factor_rank(group[0]);
    for (int u : sp.kids) {
      group.push_back(sc.vertex(i, u));
      rows *= sc.factor_rank(group.back());
    }
    if (block.cols() != sd.factor_rank(v) || block.rows() != rows)
      throw StructuralError("cocomposition at " + encode(positional_chain(m, sp.g)) + " has the wrong shape");
    factors.push_back(std::move(block));
    groups.push_back(std::move(group));
  }
  return regroup(kron_all(factors), groups, sc);
}

std::vector<char> Cosimplicial::undefined_words(int n, int i, const Chain& c) const {
  if (!op_.undefined || (!is_cooperad_ && i - 1 == n - 2)) return {};
  Chain d = face(c, i);
  TensorShape sd(slots(n - 1), d);
  std::vector<std::pair<int, std::vector<char>>> masks;  // (vertex, mask)
  bool any = false;
  for (int v = 0; v < sd.vertex_count(); ++v) {
    if (sd.height(v) != i - 1) continue;
    const Split sp = split_at(c, i, sd.position(v));
    auto mask = op_.undefined(static_cast<int>(sp.kids.size()), sp.g);
    for (char x : mask) any = any || x;
    masks.emplace_back(v, std::move(mask));
  }
  if (!any) return {};
  std::vector<char> out(sd.rank(), 0);
  for (long long w = 0; w < sd.rank(); ++w) {
    const auto dg = sd.digits(w);
    for (const auto& [v, mask] : masks)
      if (!mask.empty() && mask[dg[v]]) out[w] = 1;
  }
  return out;
}

LinMap Cosimplicial::tilde_eps(int n, int j, const Chain& c) const {
  if (c.length() != n) throw ArgumentError("tilde_eps: " + encode(c) + " is not a " + std::to_string(n) + "-chain");
  const int top = is_cooperad_ ? n : n - 1;
  if (j < 0 || j > top) throw ArgumentError("tilde_eps: index " + std::to_string(j) + " out of range");
  Chain d = degeneracy(c, j);
  TensorShape sd(slots(n + 1), d);
  TensorShape sc(slots(n), c);
  std::vector<LinMap> factors;
  std::vector<std::vector<int>> groups;
  for (int v = 0; v < sd.vertex_count(); ++v) {
    const int h = sd.height(v), p = sd.position(v);
    if (h == j) {
      if (sd.arity(v) != 1) throw StructuralError("degenerate vertex with " + std::to_string(sd.arity(v)) + " children");
      factors.push_back(op_.counit);
      groups.emplace_back();
    } else {
      factors.push_back(LinMap::identity(sd.factor_rank(v)));
      groups.push_back({sc.vertex(h < j ? h : h - 1, p)});
    }
  }
  return regroup(kron_all(factors), groups, sc);
}

LinMap Cosimplicial::coface(int n, int i, const FinSet& s) const {
  if (n < 2 || i < 1 || i > n - 1)
    throw ArgumentError("coface Δ^" + std::to_string(n) + "_" + std::to_string(i) + " does not exist");
  const KanModule& src = term(n - 1, s);
  return term(n, s).assemble(src.rank(), [&](const KanClass& cl) {
    const Chain& rep = cl.fiber.representative;
    return tilde_delta(n, i, rep) * src.project(face(rep, i));
  });
}

LinMap Cosimplicial::codegeneracy(int n, int j, const FinSet& s) const {
  const int top = is_cooperad_ ? n : n - 1;
  if (n < 0 || j < 0 || j > top)
    throw ArgumentError("codegeneracy ε^" + std::to_string(n) + "_" + std::to_string(j) + " does not exist");
  const KanModule& src = term(n + 1, s);
  if (n == 0) {
    if (s.size() != 1) return LinMap(0, src.rank());
    return op_.counit * src.project(Chain(s));
  }
  return term(n, s).assemble(src.rank(), [&](const KanClass& cl) {
    const Chain& rep = cl.fiber.representative;
    return tilde_eps(n, j, rep) * src.project(degeneracy(rep, j));
  });
}

// --- verification -----------------------------------------------------------------------

namespace {

std::vector<Chain> canonical_chains(const std::vector<SymSeq>& slots, int max_set) {
  std::vector<Chain> out;
  std::map<std::string, bool> seen;
  const auto bounds = support_bounds(slots);
  for (int k = 0; k <= max_set; ++k)
    for (const auto& fc : enumerate_fiber(FinSet::standard(k), static_cast<int>(slots.size()), bounds)) {
      auto cc = canonical_chain(fc.representative);
      if (seen.emplace(cc.key, true).second) out.push_back(cc.chain);
    }
  return out;
}

void for_each_map(int k, int m, const std::function<void(const std::vector<int>&)>& fn) {
  if (m == 0 && k > 0) return;
  std::vector<int> g(k, 0);
  while (true) {
    fn(g);
    int p = k - 1;
    while (p >= 0 && g[p] == m - 1) g[p--] = 0;
    if (p < 0) return;
    ++g[p];
  }
}

// Marks the columns of `first` that reach a word where the next map is
// undefined.
void mark_through(std::vector<char>& out, const LinMap& first, const std::vector<char>& words) {
  if (words.empty()) return;
  for (int c = 0; c < first.cols(); ++c)
    for (const auto& [r, v] : first.column(c))
      if (words[r]) out[c] = 1;
}

void merge(std::vector<char>& out, const std::vector<char>& more) {
  for (std::size_t i = 0; i < more.size(); ++i) out[i] = out[i] || more[i];
}

LinMap drop_columns(const LinMap& a, const std::vector<char>& mask) {
  LinMap out(a.rows(), a.cols());
  for (int c = 0; c < a.cols(); ++c)
    if (!mask[c]) out.add_column(c, a.column(c));
  return out;
}

// Compares on the columns outside mask; all-masked instances are excluded.
ReportEntry compare_defined(const std::string& check, const std::string& instance, const LinMap& lhs, const LinMap& rhs,
                            const std::vector<char>& mask) {
  const auto dropped = static_cast<int>(std::count(mask.begin(), mask.end(), 1));
  if (dropped == 0) return compare(check, instance, lhs, rhs);
  if (dropped == lhs.cols()) return {check, instance, Status::Excluded, "cocomposition undefined on every column"};
  ReportEntry e = compare(check, instance, drop_columns(lhs, mask), drop_columns(rhs, mask));
  const std::string note = std::to_string(dropped) + " of " + std::to_string(lhs.cols()) + " columns undefined";
  e.witness = e.witness.empty() ? note : e.witness + "; " + note;
  return e;
}

Report verify_structure(const Cosimplicial& x, const std::string& subject, int max_set, int counit_max_set) {
  Report report;
  report.subject = subject;

  // coassociativity
  const auto chains = canonical_chains(x.slots(3), max_set);
  std::vector<std::pair<std::string, std::string>> labels;
  for (const auto& c : chains) labels.emplace_back("coassociativity", encode(c));
  run_checks(report, labels, [&](std::size_t i) {
    const Chain& c = chains[i];
    const LinMap first1 = x.tilde_delta(2, 1, face(c, 1)), first2 = x.tilde_delta(2, 1, face(c, 2));
    LinMap lhs = x.tilde_delta(3, 1, c) * first1;
    LinMap rhs = x.tilde_delta(3, 2, c) * first2;
    std::vector<char> mask(lhs.cols(), 0);
    merge(mask, x.undefined_words(2, 1, face(c, 1)));
    merge(mask, x.undefined_words(2, 1, face(c, 2)));
    mark_through(mask, first1, x.undefined_words(3, 1, c));
    mark_through(mask, first2, x.undefined_words(3, 2, c));
    return compare_defined("coassociativity", encode(c), lhs, rhs, mask);
  });

  // counit
  labels.clear();
  std::vector<std::pair<int, int>> counit_cases;
  for (int k = 0; k <= counit_max_set; ++k)
    for (int j = 0; j <= (x.is_cooperad() ? 1 : 0); ++j) {
      counit_cases.emplace_back(k, j);
      labels.emplace_back(j == 0 ? "counit-left" : "counit-right", set_label(FinSet::standard(k)));
    }
  run_checks(report, labels, [&](std::size_t i) {
    const auto [k, j] = counit_cases[i];
    Chain c(FinSet::standard(k));
    LinMap composite = x.tilde_eps(1, j, c) * x.tilde_delta(2, 1, degeneracy(c, j));
    return compare(labels[i].first, labels[i].second, composite, LinMap::identity(x.slots(1)[0].rank(k)));
  });

  // naturality of the cocomposition under every iso of 2-chains
  labels.clear();
  std::vector<Chain> twos;
  for (int k = 0; k <= max_set; ++k)
    for (int m = 0; m <= max_set; ++m)
      for_each_map(k, m, [&](const std::vector<int>& g) {
        twos.push_back(positional_chain(m, g));
        labels.emplace_back("naturality", encode(twos.back()));
      });
  const auto seqs = x.slots(2);
  run_checks(report, labels, [&](std::size_t i) {
    const Chain& c = twos[i];
    const int m = c.level(0).size(), k = c.top().size();
    const LinMap base = x.tilde_delta(2, 1, c);
    const auto undefined = x.undefined_words(2, 1, c);
    int dropped = 0;
    for (char u : undefined) dropped += u;
    if (dropped > 0 && dropped == seqs[1].rank(k)) return ReportEntry{"naturality", encode(c), Status::Excluded, "cocomposition undefined on every column"};
    for (const Perm& sigma : all_perms(m))
      for (const Perm& tau : all_perms(k)) {
        std::vector<int> g2(k);
        for (int j = 0; j < k; ++j) g2[tau[j]] = sigma[c.map(0)[j]];
        Chain c2 = positional_chain(m, g2);
        ChainIso iso(c, c2, {sigma, tau});
        LinMap lhs = transport_tensor(seqs, iso).matrix() * base;
        LinMap rhs = x.tilde_delta(2, 1, c2) * seqs[1].transport(tau);
        if (!undefined.empty()) {
          // a column is compared when it is defined at both chains
          const LinMap t = seqs[1].transport(tau);
          std::vector<char> mask = undefined;
          mark_through(mask, t, x.undefined_words(2, 1, c2));
          lhs = drop_columns(lhs, mask);
          rhs = drop_columns(rhs, mask);
        }
        if (!(lhs == rhs)) {
          std::string w = "iso to " + encode(c2) + ", " + describe_difference(lhs, rhs);
          return ReportEntry{"naturality", encode(c), Status::Fail, w};
        }
      }
    return ReportEntry{"naturality", encode(c), Status::Pass,
                       dropped ? std::to_string(dropped) + " columns undefined" : ""};
  });
  return report;
}

}  // namespace

Report verify_cooperad(const Cooperad& op, int max_set, int counit_max_set) {
  return verify_structure(Cosimplicial(op), op.name, max_set, counit_max_set < 0 ? max_set : counit_max_set);
}

Report verify_comodule(const Comodule& m, int max_set) {
  return verify_structure(Cosimplicial(m), m.name, max_set, max_set);
}

Report verify_cosimplicial(const Cooperad& op, int max_n, int max_set) {
  Cosimplicial x(op);
  Report report;
  report.subject = op.name;
  struct Case {
    int kind, n, i, j;
    FinSet s;
  };
  std::vector<Case> cases;
  std::vector<std::pair<std::string, std::string>> labels;
  auto label = [](int n, int i, int j, const FinSet& s) {
    return "n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j) + " S=" + encode(s);
  };
  for (int k = 0; k <= max_set; ++k) {
    FinSet s = FinSet::standard(k);
    for (int n = 2; n <= max_n; ++n)
      for (int j = 2; j <= n; ++j)
        for (int i = 1; i < j; ++i) {
          cases.push_back({0, n, i, j, s});
          labels.emplace_back("coface-coface", label(n, i, j, s));
        }
    for (int n = 1; n <= max_n; ++n)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i) {
          cases.push_back({1, n, i, j, s});
          labels.emplace_back("codegeneracy-codegeneracy", label(n, i, j, s));
        }
    for (int n = 1; n <= max_n; ++n)
      for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
          cases.push_back({2, n, i, j, s});
          labels.emplace_back("codegeneracy-coface", label(n, i, j, s));
        }
  }
  run_checks(report, labels, [&](std::size_t idx) {
    const auto& [kind, n, i, j, s] = cases[idx];
    LinMap lhs, rhs;
    if (kind == 0) {
      lhs = x.coface(n + 1, j, s) * x.coface(n, i, s);
      rhs = x.coface(n + 1, i, s) * x.coface(n, j - 1, s);
    } else if (kind == 1) {
      lhs = x.codegeneracy(n - 1, i, s) * x.codegeneracy(n, j, s);
      rhs = x.codegeneracy(n - 1, j - 1, s) * x.codegeneracy(n, i, s);
    } else {
      lhs = x.codegeneracy(n, j, s) * x.coface(n + 1, i, s);
      if (j == i || j == i - 1) rhs = LinMap::identity(x.term_rank(n, s));
      else if (j < i - 1) rhs = x.coface(n, i - 1, s) * x.codegeneracy(n - 1, j, s);
      else rhs = x.coface(n, i, s) * x.codegeneracy(n - 1, j - 1, s);
    }
    return compare(labels[idx].first, labels[idx].second, lhs, rhs);
  });
  return report;
}

namespace {

SeqMorphism identity_morphism(const SymSeq& a) {
  SeqMorphism m;
  for (int k = 0; k <= a.max_arity(); ++k) m.components.push_back(LinMap::identity(a.rank(k)));
  return m;
}

}  // namespace

Report verify_paren_compat(const Cooperad& op, int max_set) {
  Cosimplicial x(op);
  Report report;
  report.subject = op.name;
  const SymSeq& o = op.seq;
  const SeqMorphism id = identity_morphism(o);

  Nested left({o, o, o}, Expr::parse("((1 2) 3)"), max_set);
  Nested right({o, o, o}, Expr::parse("(1 (2 3))"), max_set);
  const int square_set = std::min(max_set, 3);
  Nested four({o, o, o, o}, Expr::parse("(((1 2) 3) 4)"), square_set);
  Nested middle({o, o, o, o}, Expr::parse("(1 (2 3) 4)"), max_set);
  int arity = std::max({left.inner_arity(), right.inner_arity(), four.inner_arity(), middle.inner_arity()});
  SeqMorphism delta;
  for (int a = 0; a <= arity; ++a) delta.components.push_back(x.coface(2, 1, FinSet::standard(a)));

  // (Δ ∘̂ Id) on the inner pair of the square, arity by arity
  const int a4 = four.inner_arity();
  SymSeq oo4 = materialize({o, o}, a4);
  SeqMorphism delta_id;
  for (int a = 0; a <= left.inner_arity(); ++a) {
    FinSet s = FinSet::standard(a);
    delta_id.components.push_back(kan_functorial(x.term(2, s), KanModule({oo4, o}, s), {delta, id}));
  }

  for (int k = 0; k <= max_set; ++k) {
    FinSet s = FinSet::standard(k);
    const KanModule& oo = x.term(2, s);
    LinMap lhs = left.paren(s) * kan_functorial(oo, left.outer(s), {delta, id});
    report.add(compare("paren-delta-left", encode(s), lhs, x.coface(3, 1, s)));
    lhs = right.paren(s) * kan_functorial(oo, right.outer(s), {id, delta});
    report.add(compare("paren-delta-right", encode(s), lhs, x.coface(3, 2, s)));
    lhs = middle.paren(s) * kan_functorial(x.term(3, s), middle.outer(s), {id, delta, id});
    report.add(compare("paren-delta-middle", encode(s), lhs, x.coface(4, 2, s)));
    if (k <= square_set) {
      lhs = four.paren(s) * kan_functorial(left.outer(s), four.outer(s), {delta_id, id});
      LinMap rhs = x.coface(4, 1, s) * left.paren(s);
      report.add(compare("paren-square", encode(s), lhs, rhs));
    }
  }

  // the two ways of flattening (((O O) O) O)
  SymSeq ooo = materialize({o, o, o}, a4);
  Nested flat3_then({o, o, o, o}, Expr::parse("((1 2 3) 4)"), square_set);
  Nested pair_first({o, o, o, o}, Expr::parse("((1 2) 3 4)"), square_set);
  Nested pair_slot({oo4, o, o}, Expr::parse("((1 2) 3)"), square_set);
  SeqMorphism inner;
  for (int a = 0; a <= a4; ++a) {
    Nested local({o, o, o}, Expr::parse("((1 2) 3)"), std::max(a, 1));
    inner.components.push_back(local.paren(FinSet::standard(a)));
  }
  for (int k = 0; k <= square_set; ++k) {
    FinSet s = FinSet::standard(k);
    KanModule start = four.outer(s);
    LinMap r1 = flat3_then.paren(s) * kan_functorial(start, KanModule({ooo, o}, s), {inner, id});
    LinMap r2 = pair_first.paren(s) * pair_slot.paren(s);
    report.add(compare("paren-associativity", encode(s), r1, r2));
  }
  return report;
}

LinMap comodule_delta_n(const Cosimplicial& x, int n, const FinSet& s) {
  if (n < 1) throw ArgumentError("Δ^[n] needs n >= 1");
  if (n == 1) return LinMap::identity(x.term(1, s).rank());
  // every sequence i_2, ..., i_n with 1 <= i_k <= k - 1
  std::vector<int> idx(n + 1, 1);
  LinMap first;
  std::string first_path;
  while (true) {
    LinMap acc = LinMap::identity(x.term(1, s).rank());
    std::string path;
    for (int k = 2; k <= n; ++k) {
      acc = x.coface(k, idx[k], s) * acc;
      path = "Δ^" + std::to_string(k) + "_" + std::to_string(idx[k]) + (path.empty() ? "" : " ") + path;
    }
    if (first_path.empty()) {
      first = std::move(acc);
      first_path = path;
    } else if (!(acc == first)) {
      throw StructuralError("Δ^[" + std::to_string(n) + "] differs along " + first_path + " and " + path + ": " +
                            describe_difference(first, acc));
    }
    int k = n;
    while (k >= 2 && idx[k] == k - 1) idx[k--] = 1;
    if (k < 2) break;
    ++idx[k];
  }
  return first;
}

LinMap coalgebra_delta_n(const Coalgebra& c, int n) {
  return comodule_delta_n(Cosimplicial(c.as_comodule()), n, FinSet());
}

}  // namespace coopkit
