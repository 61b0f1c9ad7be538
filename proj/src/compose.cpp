#include "coopkit/compose.hpp"

#include <algorithm>
#include <numeric>

#include "coopkit/errors.hpp"

namespace coopkit {

namespace {

constexpr long long kMaxTensorRank = 20'000'000;

Perm transposition(int n, int j) {
  Perm t(n);
  std::iota(t.begin(), t.end(), 0);
  std::swap(t[j], t[j + 1]);
  return t;
}

// Rows of m moved: row r goes to rowmap[r].
LinMap permute_rows(const LinMap& m, const std::vector<long long>& rowmap, int rows) {
  LinMap out(rows, m.cols());
  for (int c = 0; c < m.cols(); ++c) {
    LinMap::Column col;
    for (const auto& [r, v] : m.column(c)) col.emplace_back(static_cast<int>(rowmap[r]), v);
    std::sort(col.begin(), col.end());
    out.add_column(c, col);
  }
  return out;
}

}  // namespace

// --- tensor shapes -------------------------------------------------------------------

TensorShape::TensorShape(const std::vector<SymSeq>& seqs, const Chain& c) : chain_(c) {
  const int n = c.length();
  if (static_cast<int>(seqs.size()) != n)
    throw ArgumentError("tensor value needs one sequence per level (" + std::to_string(seqs.size()) + " given for a " +
                        std::to_string(n) + "-chain)");
  level_offset_.push_back(0);
  for (int h = 1; h < n; ++h) level_offset_.push_back(h == 1 ? 1 : level_offset_[h - 1] + c.level(h - 2).size());
  for (int h = 0; h < n; ++h) {
    const int count = h == 0 ? 1 : c.level(h - 1).size();
    for (int p = 0; p < count; ++p) {
      heights_.push_back(h);
      positions_.push_back(p);
      const int k = static_cast<int>(c.fiber(h, p).size());
      arity_.push_back(k);
      factor_rank_.push_back(seqs[h].rank(k));
    }
  }
  stride_.assign(heights_.size(), 1);
  rank_ = 1;
  for (int v = vertex_count() - 1; v >= 0; --v) {
    stride_[v] = rank_;
    rank_ *= factor_rank_[v];
    if (rank_ > kMaxTensorRank) throw UnsupportedError("tensor value too large at " + encode(c));
  }
}

std::vector<int> TensorShape::digits(long long index) const {
  std::vector<int> d(vertex_count());
  for (int v = 0; v < vertex_count(); ++v) {
    d[v] = static_cast<int>(index / stride_[v]);
    index %= stride_[v];
  }
  return d;
}

long long TensorShape::index(const std::vector<int>& digits) const {
  long long i = 0;
  for (int v = 0; v < vertex_count(); ++v) i += digits[v] * stride_[v];
  return i;
}

FreeMod TensorShape::module(const std::vector<SymSeq>& seqs) const {
  FreeMod m;
  for (long long i = 0; i < rank_; ++i) {
    auto d = digits(i);
    std::vector<std::string> w;
    for (int v = 0; v < vertex_count(); ++v) w.push_back(seqs[heights_[v]].value(arity_[v]).basis[d[v]]);
    m.basis.push_back(tensor_tag(w));
  }
  return m;
}

SignedPerm transport_tensor(const std::vector<SymSeq>& seqs, const ChainIso& iso) {
  TensorShape a(seqs, iso.source), b(seqs, iso.target);
  const int nv = a.vertex_count();
  std::vector<int> vmap(nv);
  std::vector<SignedPerm> fac(nv);
  for (int v = 0; v < nv; ++v) {
    const int h = a.height(v), p = a.position(v);
    const int p2 = h == 0 ? 0 : iso.perm[h - 1][p];
    const auto src = iso.source.fiber(h, p);
    const auto tgt = iso.target.fiber(h, p2);
    Perm sigma(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      const int img = iso.perm[h][src[i]];
      sigma[i] = static_cast<int>(std::lower_bound(tgt.begin(), tgt.end(), img) - tgt.begin());
    }
    fac[v] = seqs[h].rho(sigma);
    vmap[v] = b.vertex(h, p2);
  }
  SignedPerm out = SignedPerm::identity(static_cast<int>(a.rank()));
  std::vector<int> e(nv);
  for (long long i = 0; i < a.rank(); ++i) {
    auto d = a.digits(i);
    int s = 1;
    for (int v = 0; v < nv; ++v) {
      e[vmap[v]] = fac[v].to[d[v]];
      s *= fac[v].sign[d[v]];
    }
    out.to[i] = static_cast<int>(b.index(e));
    out.sign[i] = s;
  }
  return out;
}

// --- Kan modules ---------------------------------------------------------------------

FiberBounds support_bounds(const std::vector<SymSeq>& seqs) {
  FiberBounds b;
  long long level = 1;
  for (const auto& a : seqs) {
    std::vector<char> ok(std::max(a.max_arity() + 1, 0), 0);
    for (int k = 0; k <= a.max_arity(); ++k) ok[k] = a.rank(k) > 0;
    b.allowed_children.emplace_back([ok](int k) { return k >= 0 && k < static_cast<int>(ok.size()) && ok[k]; });
    const int top = std::max(a.top_support(), 0);
    b.max_children.push_back(top);
    level = std::min<long long>(level * top, 64);
    b.max_level_size.push_back(static_cast<int>(level));
  }
  return b;
}

KanModule::KanModule(std::vector<SymSeq> seqs, FinSet s) : seqs_(std::move(seqs)), base_(std::move(s)) {
  if (seqs_.empty()) throw ArgumentError("composite of no sequences");
  auto fibers = enumerate_fiber(base_, length(), support_bounds(seqs_));
  for (auto& fc : fibers) {
    TensorShape shape(seqs_, fc.representative);
    std::vector<SignedPerm> gens;
    for (const auto& g : fc.aut_generators) gens.push_back(transport_tensor(seqs_, g));
    Invariants inv = fixed_submodule(static_cast<int>(shape.rank()), gens);
    by_key_[fc.key] = static_cast<int>(classes_.size());
    classes_.push_back(KanClass{std::move(fc), std::move(shape), std::move(inv), rank_});
    rank_ += classes_.back().invariants.rank();
  }
}

FreeMod KanModule::module() const {
  FreeMod m;
  for (const auto& cl : classes_)
    for (int i = 0; i < cl.invariants.rank(); ++i)
      m.basis.push_back(encode(cl.fiber.representative) + "#" + std::to_string(i));
  return m;
}

int KanModule::class_index(const std::string& key) const {
  auto it = by_key_.find(key);
  return it == by_key_.end() ? -1 : it->second;
}

LinMap KanModule::project(const Chain& d) const {
  if (!(d.top() == base_)) throw ArgumentError("projection chain " + encode(d) + " is not over " + encode(base_));
  TensorShape sd(seqs_, d);
  LinMap out(static_cast<int>(sd.rank()), rank_);
  auto cc = canonical_over_top(d);
  const int idx = class_index(cc.key);
  if (idx < 0) {
    if (sd.rank() != 0) throw StructuralError("nonzero tensor value outside the enumerated classes at " + encode(d));
    return out;
  }
  const KanClass& cl = classes_[idx];
  if (!(cc.chain == cl.fiber.representative)) throw StructuralError("canonical form mismatch at " + encode(d));
  SignedPerm t = transport_tensor(seqs_, cc.witness.inverse());
  for (int b = 0; b < cl.invariants.rank(); ++b) {
    LinMap::Column col;
    for (const auto& [r, v] : cl.invariants.inclusion.column(b)) col.emplace_back(t.to[r], t.sign[r] * v);
    std::sort(col.begin(), col.end());
    out.add_column(cl.offset + b, col);
  }
  return out;
}

LinMap KanModule::assemble(int domain_rank, const std::function<LinMap(const KanClass&)>& component) const {
  LinMap out(rank_, domain_rank);
  for (const auto& cl : classes_) {
    LinMap v = component(cl);
    if (v.rows() != cl.shape.rank() || v.cols() != domain_rank)
      throw ArgumentError("component at " + encode(cl.fiber.representative) + " has the wrong shape");
    LinMap coords = cl.invariants.retraction() * v;
    if (!(cl.invariants.inclusion * coords == v))
      throw StructuralError("component at " + encode(cl.fiber.representative) +
                            " is not invariant under the automorphisms of the chain");
    for (int c = 0; c < domain_rank; ++c) {
      LinMap::Column col;
      for (const auto& [r, x] : coords.column(c)) col.emplace_back(r + cl.offset, x);
      out.add_column(c, col);
    }
  }
  return out;
}

ChainIso relabel_top(const Chain& c, const FinSet& t, const Perm& beta) {
  const int n = c.length();
  if (t.size() != c.top().size() || static_cast<int>(beta.size()) != t.size())
    throw ArgumentError("relabel_top: sizes differ");
  std::vector<FinSet> levels = c.levels();
  levels.back() = t;
  std::vector<std::vector<int>> maps = c.maps();
  if (n >= 2) {
    std::vector<int> m(t.size());
    for (int i = 0; i < t.size(); ++i) m[beta[i]] = c.map(n - 2)[i];
    maps.back() = std::move(m);
  }
  Chain d(std::move(levels), std::move(maps));
  std::vector<std::vector<int>> perm(n);
  for (int l = 0; l + 1 < n; ++l) {
    perm[l].resize(c.level(l).size());
    std::iota(perm[l].begin(), perm[l].end(), 0);
  }
  perm[n - 1] = beta;
  return ChainIso(c, d, std::move(perm));
}

LinMap kan_transport(const KanModule& src, const KanModule& tgt, const Perm& beta) {
  const Perm back = inverse_perm(beta);
  return tgt.assemble(src.rank(), [&](const KanClass& cl) {
    // the class representative over T, pulled back to S
    ChainIso to_s = relabel_top(cl.fiber.representative, src.base(), back);
    SignedPerm t = transport_tensor(src.seqs(), to_s.inverse());
    return t.matrix() * src.project(to_s.target);
  });
}

SymSeq materialize(const std::vector<SymSeq>& seqs, int max_arity, const std::string& tag_prefix) {
  SymSeq out(max_arity);
  for (int k = 0; k <= max_arity; ++k) {
    KanModule km(seqs, FinSet::standard(k));
    FreeMod m = km.module();
    for (auto& t : m.basis) t = tag_prefix + t;
    std::vector<SignedPerm> gens;
    for (int j = 0; j + 1 < k; ++j) {
      LinMap g = kan_transport(km, km, transposition(k, j));
      SignedPerm p = SignedPerm::identity(km.rank());
      for (int c = 0; c < km.rank(); ++c) {
        const auto& col = g.column(c);
        if (col.size() != 1 || (col[0].second != 1 && col[0].second != -1))
          throw StructuralError("composite action is not a signed permutation in arity " + std::to_string(k));
        p.to[c] = col[0].first;
        p.sign[c] = static_cast<int>(col[0].second);
      }
      gens.push_back(std::move(p));
    }
    out.set_arity(k, std::move(m), std::move(gens));
  }
  return out;
}

LinMap kan_functorial(const KanModule& src, const KanModule& tgt, const std::vector<SeqMorphism>& maps) {
  if (maps.size() != src.seqs().size() || src.length() != tgt.length())
    throw ArgumentError("kan_functorial: one morphism per slot required");
  return tgt.assemble(src.rank(), [&](const KanClass& cl) {
    const Chain& rep = cl.fiber.representative;
    TensorShape ss(src.seqs(), rep);
    std::vector<LinMap> factors;
    for (int v = 0; v < ss.vertex_count(); ++v) {
      const int h = ss.height(v), k = ss.arity(v);
      const auto& comps = maps[h].components;
      if (k < static_cast<int>(comps.size())) {
        factors.push_back(comps[k]);
      } else {
        factors.emplace_back(tgt.seqs()[h].rank(k), src.seqs()[h].rank(k));
      }
    }
    return kron_all(factors) * src.project(rep);
  });
}

// --- closed form -------------------------------------------------------------------------

ClosedForm closed_form_compose(const SymSeq& a, const SymSeq& b, int n) {
  ClosedForm cf;
  cf.arity = n;
  std::map<std::pair<int, std::vector<int>>, int> index;
  for (int k = 0; k <= a.max_arity(); ++k) {
    if (a.rank(k) == 0 || (k == 0 && n > 0)) continue;
    std::vector<int> f(n, 0);
    while (true) {
      std::vector<int> sizes(k, 0);
      for (int x : f) sizes[x]++;
      int r = a.rank(k);
      for (int s : sizes) r *= b.rank(s);
      if (r > 0) {
        index[{k, f}] = static_cast<int>(cf.summands.size());
        cf.summands.push_back({k, f, cf.ambient_rank, r});
        cf.ambient_rank += r;
      }
      int p = n - 1;
      while (p >= 0 && f[p] + 1 == k) f[p--] = 0;
      if (p < 0) break;
      ++f[p];
    }
  }
  std::vector<SignedPerm> gens;
  for (int k = 2; k <= a.max_arity(); ++k) {
    for (int j = 0; j + 1 < k; ++j) {
      const Perm t = transposition(k, j);
      const SignedPerm ra = a.rho(t);
      SignedPerm g = SignedPerm::identity(cf.ambient_rank);
      bool any = false;
      for (const auto& s : cf.summands) {
        if (s.k != k) continue;
        any = true;
        std::vector<int> tf(n);
        for (int x = 0; x < n; ++x) tf[x] = t[s.f[x]];
        const auto& target = cf.summands[index.at({k, tf})];
        // word = (a, b_0, ..., b_{k-1}), row-major
        std::vector<int> radix{a.rank(k)};
        std::vector<int> sizes(k, 0);
        for (int x : s.f) sizes[x]++;
        for (int i = 0; i < k; ++i) radix.push_back(b.rank(sizes[i]));
        std::vector<int> tradix(k + 1);
        tradix[0] = radix[0];
        for (int i = 0; i < k; ++i) tradix[1 + t[i]] = radix[1 + i];
        for (int w = 0; w < s.rank; ++w) {
          std::vector<int> d(k + 1);
          int rest = w;
          for (int i = k; i >= 0; --i) {
            d[i] = rest % radix[i];
            rest /= radix[i];
          }
          std::vector<int> e(k + 1);
          e[0] = ra.to[d[0]];
          for (int i = 0; i < k; ++i) e[1 + t[i]] = d[1 + i];
          int idx = 0;
          for (int i = 0; i <= k; ++i) idx = idx * tradix[i] + e[i];
          g.to[s.offset + w] = target.offset + idx;
          g.sign[s.offset + w] = ra.sign[d[0]];
        }
      }
      if (any) gens.push_back(std::move(g));
    }
  }
  cf.invariants = fixed_submodule(cf.ambient_rank, gens);
  cf.inclusion = cf.invariants.inclusion;
  return cf;
}

namespace {

Chain chain_of_map(int k, const std::vector<int>& f) {
  return Chain({FinSet::standard(k), FinSet::standard(static_cast<int>(f.size()))}, {f});
}

}  // namespace

LinMap closed_from_kan(const ClosedForm& cf, const KanModule& k) {
  std::vector<LinMap> blocks;
  for (const auto& s : cf.summands) blocks.push_back(k.project(chain_of_map(s.k, s.f)));
  LinMap amb = blocks.empty() ? LinMap(0, k.rank()) : vstack(blocks);
  LinMap coords = cf.invariants.retraction() * amb;
  if (!(cf.inclusion * coords == amb)) throw StructuralError("projections of the composite are not invariant");
  return coords;
}

LinMap kan_from_closed(const ClosedForm& cf, const KanModule& k) {
  std::map<std::pair<int, std::vector<int>>, const ClosedForm::Summand*> index;
  for (const auto& s : cf.summands) index[{s.k, s.f}] = &s;
  return k.assemble(cf.rank(), [&](const KanClass& cl) {
    const Chain& rep = cl.fiber.representative;
    auto it = index.find({rep.level(0).size(), rep.map(0)});
    if (it == index.end()) throw StructuralError("class " + encode(rep) + " has no summand in the closed form");
    return cf.inclusion.row_slice(it->second->offset, it->second->rank);
  });
}

SymSeq coefficient_seq(const FreeMod& a) {
  SymSeq m(0);
  m.set_arity(0, a, {});
  return m;
}

KanModule compose_with_coefficient(const std::vector<SymSeq>& seqs, const FreeMod& a) {
  std::vector<SymSeq> all = seqs;
  all.push_back(coefficient_seq(a));
  return KanModule(std::move(all), FinSet());
}

// --- expressions ---------------------------------------------------------------------------

int Expr::leaf_count() const {
  if (is_leaf()) return 1;
  int n = 0;
  for (const auto& k : kids) n += k.leaf_count();
  return n;
}

std::string Expr::to_string() const {
  if (is_leaf()) return std::to_string(leaf + 1);
  std::string s = "(";
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) s += " ";
    s += kids[i].to_string();
  }
  return s + ")";
}

Expr Expr::flat(int n) {
  Expr e;
  for (int i = 0; i < n; ++i) e.kids.push_back(Expr{i, {}});
  return e;
}

Expr Expr::parse(const std::string& text) {
  std::size_t pos = 0;
  int next = 0;
  std::function<Expr()> parse_one = [&]() -> Expr {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) throw ArgumentError("shape '" + text + "': unexpected end");
    if (text[pos] == '(') {
      ++pos;
      Expr e;
      while (true) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos >= text.size()) throw ArgumentError("shape '" + text + "': missing ')'");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        e.kids.push_back(parse_one());
      }
      if (e.kids.empty()) throw ArgumentError("shape '" + text + "': empty group");
      if (e.kids.size() == 1) return e.kids[0];
      return e;
    }
    std::size_t end = pos;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    if (end == pos) throw ArgumentError("shape '" + text + "': unexpected '" + std::string(1, text[pos]) + "'");
    const int slot = std::stoi(text.substr(pos, end - pos));
    pos = end;
    if (slot != next + 1) throw ArgumentError("shape '" + text + "': slots must appear as 1, 2, ... in order");
    ++next;
    return Expr{slot - 1, {}};
  };
  Expr e = parse_one();
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos != text.size()) throw ArgumentError("shape '" + text + "': trailing text");
  if (e.is_leaf()) {
    Expr root;
    root.kids.push_back(e);
    return root;
  }
  return e;
}

// --- nested composites ---------------------------------------------------------------------

int max_level_size(const std::vector<SymSeq>& slots, int max_set) {
  int best = max_set;
  const auto bounds = support_bounds(slots);
  for (int m = 0; m <= max_set; ++m)
    for (const auto& fc : enumerate_fiber(FinSet::standard(m), static_cast<int>(slots.size()), bounds))
      for (const auto& lv : fc.representative.levels()) best = std::max(best, lv.size());
  return best;
}

std::vector<SymSeq> Nested::Node::kid_seqs() const {
  std::vector<SymSeq> out;
  for (const auto& k : kids) out.push_back(k->seq);
  return out;
}

Nested::Nested(std::vector<SymSeq> slots, Expr shape, int max_set) : slots_(std::move(slots)), shape_(std::move(shape)) {
  if (shape_.is_leaf()) throw ArgumentError("a parenthesization needs at least one group");
  if (shape_.leaf_count() != static_cast<int>(slots_.size()))
    throw ArgumentError("shape " + shape_.to_string() + " does not match " + std::to_string(slots_.size()) + " slots");
  arity_ = max_level_size(slots_, max_set);
  int next = 0;
  root_ = std::make_shared<Node>();
  root_->expr = shape_;
  root_->first = 0;
  for (const auto& k : shape_.kids) root_->kids.push_back(build(k, next));
  root_->last = next - 1;
  root_->seq = materialize(root_->kid_seqs(), max_set);
}

std::shared_ptr<Nested::Node> Nested::build(const Expr& e, int& next) const {
  auto node = std::make_shared<Node>();
  node->expr = e;
  node->first = next;
  if (e.is_leaf()) {
    node->seq = slots_[e.leaf];
    ++next;
  } else {
    for (const auto& k : e.kids) node->kids.push_back(build(k, next));
    node->seq = materialize(node->kid_seqs(), arity_);
  }
  node->last = next - 1;
  return node;
}

KanModule Nested::outer(const FinSet& s) const { return KanModule(root_->kid_seqs(), s); }

const KanModule& Nested::kan_at(const Node& node, int k) const {
  std::lock_guard lock(cache_->mu);
  auto& slot = cache_->kan[{&node, k}];
  if (!slot) slot = std::make_shared<KanModule>(node.kid_seqs(), FinSet::standard(k));
  return *slot;
}

namespace {

// The part of c below vertex (a, p) down to level e (0-based levels), with
// its top relabeled by [k] in order. vmap[t][q] is the position in c of
// vertex (t, q) of the subchain, for heights t >= 1 (height 0 is (a, p)).
Chain subchain(const Chain& c, int a, int e, int p, std::vector<std::vector<int>>& pos) {
  pos.assign(e - a + 1, {});
  for (int l = a; l <= e; ++l) {
    auto& cur = pos[l - a];
    for (int j = 0; j < c.level(l).size(); ++j) {
      bool in;
      if (l == 0) in = true;
      else if (l == a) in = c.map(l - 1)[j] == p;
      else in = std::binary_search(pos[l - a - 1].begin(), pos[l - a - 1].end(), c.map(l - 1)[j]);
      if (in) cur.push_back(j);
    }
  }
  std::vector<FinSet> levels;
  std::vector<std::vector<int>> maps;
  for (int l = a; l <= e; ++l) {
    const auto& cur = pos[l - a];
    if (l == e) {
      levels.push_back(FinSet::standard(static_cast<int>(cur.size())));
    } else {
      std::vector<Atom> atoms;
      for (int j : cur) atoms.push_back(c.level(l)[j]);
      levels.push_back(FinSet(atoms));
    }
    if (l > a) {
      const auto& below = pos[l - a - 1];
      std::vector<int> m;
      for (int j : cur)
        m.push_back(static_cast<int>(std::lower_bound(below.begin(), below.end(), c.map(l - 1)[j]) - below.begin()));
      maps.push_back(std::move(m));
    }
  }
  return Chain(std::move(levels), std::move(maps));
}

}  // namespace

LinMap Nested::phi(const Node& node, const KanModule& k, const Chain& c) const {
  std::vector<SymSeq> flat(slots_.begin() + node.first, slots_.begin() + node.last + 1);
  TensorShape sc(flat, c);
  std::vector<int> keep;
  for (const auto& kid : node.kids) keep.push_back(kid->last - node.first + 1);
  Chain dprime = sample_levels(c, keep);
  LinMap y = k.project(dprime);
  TensorShape sd(node.kid_seqs(), dprime);

  std::vector<LinMap> factors;
  std::vector<TensorShape> subs;
  std::vector<std::vector<int>> group_vertices;  // c-vertex of each sub vertex
  for (int v = 0; v < sd.vertex_count(); ++v) {
    const int j = sd.height(v), p = sd.position(v);
    const Node& kid = *node.kids[j];
    const int a = kid.first - node.first, e = kid.last - node.first;
    std::vector<std::vector<int>> pos;
    Chain sub = subchain(c, a, e, p, pos);
    std::vector<SymSeq> kid_flat(slots_.begin() + kid.first, slots_.begin() + kid.last + 1);
    TensorShape ss(kid_flat, sub);
    if (kid.kids.empty()) {
      factors.push_back(LinMap::identity(static_cast<int>(ss.rank())));
    } else {
      factors.push_back(phi(kid, kan_at(kid, sub.top().size()), sub));
    }
    std::vector<int> gv;
    for (int w = 0; w < ss.vertex_count(); ++w) {
      const int t = ss.height(w);
      gv.push_back(t == 0 ? sc.vertex(a, a == 0 ? 0 : p) : sc.vertex(a + t, pos[t - 1][ss.position(w)]));
    }
    group_vertices.push_back(std::move(gv));
    subs.push_back(std::move(ss));
  }
  LinMap r = kron_all(factors) * y;
  // kron row index -> index in T(c)
  std::vector<long long> rowmap(r.rows());
  std::vector<int> digits(sc.vertex_count());
  for (long long i = 0; i < r.rows(); ++i) {
    long long rest = i;
    for (int g = static_cast<int>(subs.size()) - 1; g >= 0; --g) {
      const long long gi = rest % subs[g].rank();
      rest /= subs[g].rank();
      auto d = subs[g].digits(gi);
      for (std::size_t w = 0; w < d.size(); ++w) digits[group_vertices[g][w]] = d[w];
    }
    rowmap[i] = sc.index(digits);
  }
  return permute_rows(r, rowmap, static_cast<int>(sc.rank()));
}

LinMap Nested::paren(const FinSet& s) const {
  KanModule k = outer(s);
  KanModule flat(slots_, s);
  return flat.assemble(k.rank(), [&](const KanClass& cl) { return phi(*root_, k, cl.fiber.representative); });
}

SeqMorphism Nested::paren_morphism(int max_arity) const {
  SeqMorphism m;
  for (int k = 0; k <= max_arity; ++k) m.components.push_back(paren(FinSet::standard(k)));
  return m;
}

}  // namespace coopkit
