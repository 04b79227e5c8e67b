#include "ordloc/olocale.hpp"

#include <algorithm>
#include <random>

namespace ordloc {

void validate_monad(const FiniteFrame& f, const std::vector<Elem>& t, const std::string& name) {
  const std::size_t m = f.size();
  if (t.size() != m) throw Error(ErrorKind::NotAMonad, name + ": map must be total");
  for (Elem a = 0; a < m; ++a)
    if (t[a] >= m) throw Error(ErrorKind::NotAMonad, name + ": value out of range", {a});
  for (Elem a = 0; a < m; ++a) {
    if (!f.leq(a, t[a])) throw Error(ErrorKind::NotAMonad, name + ": not inflationary", {a});
    if (t[t[a]] != t[a]) throw Error(ErrorKind::NotAMonad, name + ": not idempotent", {a});
    // Covering every a <= b by a chain of joins with coprimes.
    for (Elem c : f.coprimes())
      if (!f.leq(t[a], t[f.join(a, c)])) throw Error(ErrorKind::NotAMonad, name + ": not monotone", {a, f.join(a, c)});
  }
}

namespace {

using Rows = std::vector<std::uint64_t>;

inline bool bit(const Rows& r, std::size_t w, std::size_t i, std::size_t j) { return r[i * w + j / 64] >> (j % 64) & 1; }
inline void set_bit(Rows& r, std::size_t w, std::size_t i, std::size_t j) { r[i * w + j / 64] |= std::uint64_t{1} << (j % 64); }

bool rows_meet(const Rows& a, std::size_t i, const Rows& b, std::size_t j, std::size_t w) {
  for (std::size_t k = 0; k < w; ++k)
    if (a[i * w + k] & b[j * w + k]) return true;
  return false;
}

// Returns a witness (i,k,j) with i rel k rel j but not i rel j, or empty.
std::vector<Elem> transitivity_gap(const Rows& r, std::size_t m, std::size_t w) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      if (bit(r, w, i, k))
        for (std::size_t j = 0; j < m; ++j)
          if (bit(r, w, k, j) && !bit(r, w, i, j))
            return {static_cast<Elem>(i), static_cast<Elem>(k), static_cast<Elem>(j)};
  return {};
}

bool close_transitively(Rows& r, std::size_t m, std::size_t w) {
  bool changed = false;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (bit(r, w, i, k))
        for (std::size_t q = 0; q < w; ++q) {
          std::uint64_t nv = r[i * w + q] | r[k * w + q];
          if (nv != r[i * w + q]) {
            r[i * w + q] = nv;
            changed = true;
          }
        }
  return changed;
}

std::vector<std::pair<Elem, Elem>> row_pairs(const Rows& r, std::size_t m, std::size_t w) {
  std::vector<std::pair<Elem, Elem>> out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (bit(r, w, i, j)) out.push_back({static_cast<Elem>(i), static_cast<Elem>(j)});
  return out;
}

}  // namespace

OrderedLocale OrderedLocale::from_relation(FramePtr f, const std::vector<std::pair<Elem, Elem>>& pairs, bool strict,
                                           std::string* notice) {
  const std::size_t m = f->size();
  if (m > kExplicitLimit) throw Error(ErrorKind::FrameTooLarge, "frame too large for an explicit relation");
  for (auto [a, b] : pairs)
    if (a >= m || b >= m) throw Error(ErrorKind::MalformedInput, "pair out of range", {a, b});
  const std::size_t w = (m + 63) / 64;
  Rows r(m * w, 0);
  for (std::size_t i = 0; i < m; ++i) set_bit(r, w, i, i);
  for (auto [a, b] : pairs) set_bit(r, w, a, b);
  std::size_t initial = 0;
  for (auto x : r) initial += std::popcount(x);
  if (strict) {
    auto gap = transitivity_gap(r, m, w);
    if (!gap.empty())
      throw Error(ErrorKind::MalformedInput, "relation is not transitive",
                  std::vector<long long>(gap.begin(), gap.end()));
  }
  close_transitively(r, m, w);
  const FiniteFrame& fr = *f;
  for (;;) {
    auto ps = row_pairs(r, m, w);
    bool added = false;
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        Elem u = fr.join(ps[i].first, ps[j].first), v = fr.join(ps[i].second, ps[j].second);
        if (bit(r, w, u, v)) continue;
        if (strict)
          throw Error(ErrorKind::AxiomVFailure, "relation is not closed under binary joins",
                      {ps[i].first, ps[i].second, ps[j].first, ps[j].second});
        set_bit(r, w, u, v);
        added = true;
      }
    if (!added) break;
    close_transitively(r, m, w);
  }
  std::size_t final_count = 0;
  for (auto x : r) final_count += std::popcount(x);
  if (notice)
    *notice = final_count == initial ? std::string{}
                                     : "closure added " + std::to_string(final_count - initial) + " pairs";
  OrderedLocale ol;
  ol.frame_ = std::move(f);
  ol.words_ = w;
  ol.rows_ = std::make_shared<const Rows>(std::move(r));
  ol.compute_cones_from_rows();
  return ol;
}

OrderedLocale OrderedLocale::from_monads(const ConePair& cones) {
  validate_monad(*cones.frame, cones.u, "u");
  validate_monad(*cones.frame, cones.d, "d");
  OrderedLocale ol;
  ol.frame_ = cones.frame;
  ol.up_ = cones.u;
  ol.down_ = cones.d;
  return ol;
}

void OrderedLocale::compute_cones_from_rows() {
  const std::size_t m = frame_->size();
  std::vector<Mask> up(m, 0), down(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (bit(*rows_, words_, i, j)) {
        up[i] |= frame_->mask(static_cast<Elem>(j));
        down[j] |= frame_->mask(static_cast<Elem>(i));
      }
  up_.resize(m);
  down_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    up_[i] = frame_->must_id(up[i]);
    down_[i] = frame_->must_id(down[i]);
  }
}

std::vector<Elem> OrderedLocale::successors(Elem u) const {
  std::vector<Elem> out;
  for (Elem v = 0; v < size(); ++v)
    if (rel(u, v)) out.push_back(v);
  return out;
}

std::vector<Elem> OrderedLocale::predecessors(Elem v) const {
  std::vector<Elem> out;
  for (Elem u = 0; u < size(); ++u)
    if (rel(u, v)) out.push_back(u);
  return out;
}

std::vector<std::pair<Elem, Elem>> OrderedLocale::pairs() const {
  if (size() > kExplicitLimit) throw Error(ErrorKind::FrameTooLarge, "relation too large to list");
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem u = 0; u < size(); ++u)
    for (Elem v = 0; v < size(); ++v)
      if (rel(u, v)) out.push_back({u, v});
  return out;
}

std::uint64_t OrderedLocale::relation_size() const {
  if (size() > kExplicitLimit) throw Error(ErrorKind::FrameTooLarge, "relation too large to count");
  std::uint64_t n = 0;
  for (Elem u = 0; u < size(); ++u)
    for (Elem v = 0; v < size(); ++v) n += rel(u, v);
  return n;
}

OrderedLocale OrderedLocale::opposite() const {
  OrderedLocale ol;
  ol.frame_ = frame_;
  ol.up_ = down_;
  ol.down_ = up_;
  if (rows_) {
    const std::size_t m = size();
    Rows t(m * words_, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (bit(*rows_, words_, i, j)) set_bit(t, words_, j, i);
    ol.words_ = words_;
    ol.rows_ = std::make_shared<const Rows>(std::move(t));
  }
  return ol;
}

const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names{"V",      "L+",     "L-", "C-order", "C-join",  "wedge+",
                                              "wedge-", "F+",     "F-", "empty",   "parallel"};
  return names;
}

namespace {

// Shared machinery for the existential laws. For cone-determined relations a
// canonical candidate decides each existence question exactly; explicit
// relations use bit matrices of successors, predecessors and principal
// up/down sets.
struct LawCtx {
  const OrderedLocale& ol;
  const FiniteFrame& f;
  std::size_t m, w = 0;
  Rows succ, pred, below, above;  // below[V] = {x <= V}, above[V] = {x >= V}

  explicit LawCtx(const OrderedLocale& o) : ol(o), f(o.frame()), m(o.size()) {
    if (!ol.cone_determined()) {
      w = (m + 63) / 64;
      succ.assign(m * w, 0);
      pred.assign(m * w, 0);
      below.assign(m * w, 0);
      above.assign(m * w, 0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          if (ol.rel(i, j)) {
            set_bit(succ, w, i, j);
            set_bit(pred, w, j, i);
          }
          if (f.leq(i, j)) {
            set_bit(below, w, j, i);
            set_bit(above, w, i, j);
          }
        }
    }
  }

  // exists U' <= V' with U rel U'
  bool succ_below(Elem u, Elem vp) const {
    if (w) return rows_meet(succ, u, below, vp, w);
    return ol.rel(u, f.meet(ol.up(u), vp));
  }
  // exists U <= V with U rel U'
  bool pred_below(Elem up_, Elem v) const {
    if (w) return rows_meet(pred, up_, below, v, w);
    return ol.rel(f.meet(ol.down(up_), v), up_);
  }
  // exists V' >= U' with V rel V'
  bool succ_above(Elem v, Elem u) const {
    if (w) return rows_meet(succ, v, above, u, w);
    return ol.rel(v, f.join(u, v));
  }
  // exists V >= U with V rel V'
  bool pred_above(Elem vp, Elem u) const {
    if (w) return rows_meet(pred, vp, above, u, w);
    return ol.rel(f.join(u, vp), vp) || ol.rel(f.join(u, ol.down(vp)), vp);
  }
};

std::vector<std::vector<Elem>> lists(const OrderedLocale& ol, bool forward) {
  std::vector<std::vector<Elem>> out(ol.size());
  for (Elem u = 0; u < ol.size(); ++u)
    for (Elem v = 0; v < ol.size(); ++v)
      if (ol.rel(u, v)) (forward ? out[u] : out[v]).push_back(forward ? v : u);
  return out;
}

std::vector<std::vector<Elem>> order_lists(const FiniteFrame& f, bool upward) {
  std::vector<std::vector<Elem>> out(f.size());
  for (Elem a = 0; a < f.size(); ++a)
    for (Elem b = 0; b < f.size(); ++b)
      if (upward ? f.leq(a, b) : f.leq(b, a)) out[a].push_back(b);
  return out;
}

class Sampler {
 public:
  Sampler(const OrderedLocale& ol, std::uint64_t seed) : ol_(ol), f_(ol.frame()), rng_(seed) {}
  Elem any() { return static_cast<Elem>(rng_() % f_.size()); }
  Elem above(Elem u) { return f_.join(u, any()); }
  Elem below(Elem u) { return f_.meet(u, any()); }
  // A successor of v; always related under cone determination.
  Elem succ(Elem v) {
    Elem c = f_.meet(ol_.up(v), any());
    if (rng_() & 1) {
      if (ol_.rel(v, c)) return c;
    }
    Elem s = f_.join(v, c);
    return ol_.rel(v, s) ? s : v;
  }
  Elem pred(Elem v) {
    Elem c = f_.meet(ol_.down(v), any());
    if (rng_() & 1) {
      if (ol_.rel(c, v)) return c;
    }
    Elem s = f_.join(v, c);
    return ol_.rel(s, v) ? s : v;
  }

 private:
  const OrderedLocale& ol_;
  const FiniteFrame& f_;
  std::mt19937_64 rng_;
};

CheckReport sampled(CheckReport r) {
  r.exhaustive = false;
  if (r.pass()) r.note = "sampled";
  else r.note += r.note.empty() ? "sampled" : " (sampled)";
  return r;
}

CheckReport check_V(const OrderedLocale& ol, const Budget& b) {
  const auto& f = ol.frame();
  if (ol.size() > OrderedLocale::kExplicitLimit) {
    if (ol.cone_determined()) {
      CheckReport r = CheckReport::ok("V");
      r.note = "implied by monotone cones";
      return r;
    }
  }
  auto ps = ol.pairs();
  std::uint64_t n = ps.size();
  if (n * (n + 1) / 2 <= b.max_tuples) {
    std::uint64_t tuples = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        ++tuples;
        if (!ol.rel(f.join(ps[i].first, ps[j].first), f.join(ps[i].second, ps[j].second)))
          return CheckReport::failed("V", {ps[i].first, ps[i].second, ps[j].first, ps[j].second},
                                     "join of related pairs not related");
      }
    return CheckReport::ok("V", tuples);
  }
  std::mt19937_64 rng(b.seed);
  for (std::uint64_t s = 0; s < b.samples; ++s) {
    auto p = ps[rng() % n], q = ps[rng() % n];
    if (!ol.rel(f.join(p.first, q.first), f.join(p.second, q.second)))
      return sampled(CheckReport::failed("V", {p.first, p.second, q.first, q.second}, "join of related pairs not related"));
  }
  return sampled(CheckReport::ok("V", b.samples));
}

CheckReport check_C_order(const OrderedLocale& ol, const Budget& b) {
  const auto& f = ol.frame();
  std::uint64_t m = ol.size();
  if (m * m > b.max_tuples && ol.cone_determined()) {
    CheckReport r = CheckReport::ok("C-order");
    r.note = "holds by construction from monads";
    return r;
  }
  auto test = [&](Elem u, Elem v) { return ol.rel(u, v) == (f.leq(u, ol.down(v)) && f.leq(v, ol.up(u))); };
  if (m * m <= b.max_tuples) {
    for (Elem u = 0; u < m; ++u)
      for (Elem v = 0; v < m; ++v)
        if (!test(u, v)) return CheckReport::failed("C-order", {u, v}, "relation differs from cone test");
    return CheckReport::ok("C-order", m * m);
  }
  Sampler s(ol, b.seed);
  for (std::uint64_t i = 0; i < b.samples; ++i) {
    Elem u = s.any(), v = s.any();
    if (!test(u, v)) return sampled(CheckReport::failed("C-order", {u, v}, "relation differs from cone test"));
  }
  return sampled(CheckReport::ok("C-order", b.samples));
}

CheckReport check_C_join(const OrderedLocale& ol) {
  const auto& f = ol.frame();
  if (ol.up(f.bottom()) != f.bottom()) return CheckReport::failed("C-join", {f.bottom()}, "up of bottom is not bottom");
  for (Elem u = 0; u < ol.size(); ++u) {
    Mask j = 0;
    for (Elem c : f.coprimes())
      if (f.leq(c, u)) j |= f.mask(ol.up(c));
    if (f.mask(ol.up(u)) != j) return CheckReport::failed("C-join", {u}, "up is not the join of up over coprimes below");
  }
  return CheckReport::ok("C-join", ol.size() * f.coprimes().size());
}

CheckReport check_empty(const OrderedLocale& ol) {
  const auto& f = ol.frame();
  if (ol.up(f.bottom()) != f.bottom()) return CheckReport::failed("empty", {f.bottom(), ol.up(f.bottom())}, "up of bottom");
  if (ol.down(f.bottom()) != f.bottom())
    return CheckReport::failed("empty", {f.bottom(), ol.down(f.bottom())}, "down of bottom");
  return CheckReport::ok("empty", 2);
}

CheckReport check_F(const OrderedLocale& ol, bool plus, const Budget& b) {
  const auto& f = ol.frame();
  const std::string law = plus ? "F+" : "F-";
  auto test = [&](Elem u, Elem v) {
    if (plus) return f.leq(f.meet(ol.down(u), v), ol.down(f.meet(u, ol.up(v))));
    return f.leq(f.meet(ol.up(u), v), ol.up(f.meet(u, ol.down(v))));
  };
  std::uint64_t m = ol.size();
  if (m * m <= b.max_tuples) {
    for (Elem u = 0; u < m; ++u)
      for (Elem v = 0; v < m; ++v)
        if (!test(u, v)) return CheckReport::failed(law, {u, v});
    return CheckReport::ok(law, m * m);
  }
  Sampler s(ol, b.seed);
  for (std::uint64_t i = 0; i < b.samples; ++i) {
    Elem u = s.any(), v = s.any();
    if (!test(u, v)) return sampled(CheckReport::failed(law, {u, v}));
  }
  return sampled(CheckReport::ok(law, b.samples));
}

// Laws of the form: for all (x, y, z) with a precondition, an existence test
// holds. `kind` selects the law; tuple order matches the loop order:
//   wedge+ (U, V, V'):  U <= V rel V'   => exists U' <= V' with U rel U'
//   wedge- (U', V', V): U' <= V', V rel V' => exists U <= V with U rel U'
//   L+     (U, U', V):  U rel U', U <= V  => exists V' >= U' with V rel V'
//   L-     (U, U', V'): U rel U' <= V'    => exists V >= U with V rel V'
CheckReport check_exists_law(const OrderedLocale& ol, const std::string& law, const Budget& b) {
  const auto& f = ol.frame();
  const std::uint64_t m = ol.size();
  if (m > OrderedLocale::kExplicitLimit) {
    LawCtx ctx(ol);
    Sampler s(ol, b.seed);
    for (std::uint64_t i = 0; i < b.samples; ++i) {
      Elem x = s.any();
      if (law == "wedge+") {
        Elem v = s.above(x), vp = s.succ(v);
        if (!ctx.succ_below(x, vp)) return sampled(CheckReport::failed(law, {x, v, vp}));
      } else if (law == "wedge-") {
        Elem vp = s.above(x), v = s.pred(vp);
        if (!ctx.pred_below(x, v)) return sampled(CheckReport::failed(law, {x, vp, v}));
      } else if (law == "L+") {
        Elem up_ = s.succ(x), v = s.above(x);
        if (!ctx.succ_above(v, up_)) return sampled(CheckReport::failed(law, {x, up_, v}));
      } else {
        Elem up_ = s.succ(x), vp = s.above(up_);
        if (!ctx.pred_above(vp, x)) return sampled(CheckReport::failed(law, {x, up_, vp}));
      }
    }
    return sampled(CheckReport::ok(law, b.samples));
  }
  auto succ = lists(ol, true);
  auto pred = lists(ol, false);
  auto ups = order_lists(f, true);
  std::uint64_t cost = 0;
  for (Elem x = 0; x < m; ++x)
    for (Elem y : (law == "wedge+" || law == "wedge-") ? ups[x] : succ[x])
      cost += law == "wedge+" ? succ[y].size() : law == "wedge-" ? pred[y].size() : law == "L+" ? ups[x].size() : ups[y].size();
  LawCtx ctx(ol);
  if (cost > b.max_tuples) {
    std::mt19937_64 rng(b.seed);
    for (std::uint64_t i = 0; i < b.samples; ++i) {
      Elem x = rng() % m;
      const auto& l1 = (law == "wedge+" || law == "wedge-") ? ups[x] : succ[x];
      Elem y = l1[rng() % l1.size()];
      const auto& l2 = law == "wedge+" ? succ[y] : law == "wedge-" ? pred[y] : law == "L+" ? ups[x] : ups[y];
      Elem z = l2[rng() % l2.size()];
      bool ok = law == "wedge+"   ? ctx.succ_below(x, z)
                : law == "wedge-" ? ctx.pred_below(x, z)
                : law == "L+"     ? ctx.succ_above(z, y)
                                  : ctx.pred_above(z, x);
      if (!ok) return sampled(CheckReport::failed(law, {x, y, z}));
    }
    return sampled(CheckReport::ok(law, b.samples));
  }
  std::uint64_t tuples = 0;
  for (Elem x = 0; x < m; ++x) {
    if (law == "wedge+") {
      for (Elem v : ups[x])
        for (Elem vp : succ[v]) {
          ++tuples;
          if (!ctx.succ_below(x, vp)) return CheckReport::failed(law, {x, v, vp});
        }
    } else if (law == "wedge-") {
      for (Elem vp : ups[x])
        for (Elem v : pred[vp]) {
          ++tuples;
          if (!ctx.pred_below(x, v)) return CheckReport::failed(law, {x, vp, v});
        }
    } else if (law == "L+") {
      for (Elem up_ : succ[x])
        for (Elem v : ups[x]) {
          ++tuples;
          if (!ctx.succ_above(v, up_)) return CheckReport::failed(law, {x, up_, v});
        }
    } else {
      for (Elem up_ : succ[x])
        for (Elem vp : ups[up_]) {
          ++tuples;
          if (!ctx.pred_above(vp, x)) return CheckReport::failed(law, {x, up_, vp});
        }
    }
  }
  return CheckReport::ok(law, tuples);
}

}  // namespace

CheckReport check_axiom(const OrderedLocale& ol, const std::string& law, const Budget& b) {
  if (law == "V") return check_V(ol, b);
  if (law == "C-order") return check_C_order(ol, b);
  if (law == "C-join") return check_C_join(ol);
  if (law == "empty") return check_empty(ol);
  if (law == "F+") return check_F(ol, true, b);
  if (law == "F-") return check_F(ol, false, b);
  if (law == "wedge+" || law == "wedge-" || law == "L+" || law == "L-") return check_exists_law(ol, law, b);
  if (law == "parallel") {
    CheckReport r =
        combine("parallel", {check_empty(ol), check_exists_law(ol, "wedge+", b), check_exists_law(ol, "wedge-", b)});
    // Prefer the disjointness certificate: a pair (U, V) with exactly one of
    // U meet down V and up U meet V empty.
    if (r.fail() && ol.size() <= OrderedLocale::kExplicitLimit) {
      auto w = parallel_disjointness_witness(ol);
      if (!w.empty()) {
        r.note = "disjointness pair; component " + r.note + " fails";
        r.witness = w;
      }
    }
    return r;
  }
  throw Error(ErrorKind::MalformedInput, "unknown axiom " + law);
}

CheckReport check_cone_laws(const OrderedLocale& ol, const Budget& b) {
  const auto& f = ol.frame();
  const std::uint64_t m = ol.size();
  const std::string law = "cones";
  try {
    validate_monad(f, ol.ups(), "up");
    validate_monad(f, ol.downs(), "down");
  } catch (const Error& e) {
    std::vector<Elem> w(e.witness().begin(), e.witness().end());
    return CheckReport::failed(law, w, e.what());
  }
  for (Elem u = 0; u < m; ++u) {
    if (!ol.rel(u, ol.up(u))) return CheckReport::failed(law, {u}, "U rel up U");
    if (!ol.rel(ol.down(u), u)) return CheckReport::failed(law, {u}, "down U rel U");
  }
  auto pair_test = [&](Elem u, Elem v) -> const char* {
    if (ol.rel(u, v) && !(f.leq(u, ol.down(v)) && f.leq(v, ol.up(u)))) return "related pair outside cones";
    if (!f.leq(f.join(ol.up(u), ol.up(v)), ol.up(f.join(u, v)))) return "lax join for up";
    if (!f.leq(f.join(ol.down(u), ol.down(v)), ol.down(f.join(u, v)))) return "lax join for down";
    if (!f.leq(ol.up(f.meet(u, v)), f.meet(ol.up(u), ol.up(v)))) return "lax meet for up";
    if (!f.leq(ol.down(f.meet(u, v)), f.meet(ol.down(u), ol.down(v)))) return "lax meet for down";
    Elem uu = f.meet(ol.up(u), ol.up(v));
    if (ol.up(uu) != uu) return "meet of up-images is an up-image";
    Elem dd = f.meet(ol.down(u), ol.down(v));
    if (ol.down(dd) != dd) return "meet of down-images is a down-image";
    return nullptr;
  };
  if (m * m <= b.max_tuples) {
    for (Elem u = 0; u < m; ++u)
      for (Elem v = 0; v < m; ++v)
        if (const char* why = pair_test(u, v)) return CheckReport::failed(law, {u, v}, why);
    return CheckReport::ok(law, m * m);
  }
  Sampler s(ol, b.seed);
  for (std::uint64_t i = 0; i < b.samples; ++i) {
    Elem u = s.any(), v = s.any();
    if (const char* why = pair_test(u, v)) return sampled(CheckReport::failed(law, {u, v}, why));
  }
  return sampled(CheckReport::ok(law, b.samples));
}

bool violates_parallel_disjointness(const OrderedLocale& ol, Elem u, Elem v) {
  const auto& f = ol.frame();
  return (f.meet(u, ol.down(v)) == f.bottom()) != (f.meet(ol.up(u), v) == f.bottom());
}

std::vector<Elem> parallel_disjointness_witness(const OrderedLocale& ol) {
  for (Elem u = 0; u < ol.size(); ++u)
    for (Elem v = 0; v < ol.size(); ++v)
      if (violates_parallel_disjointness(ol, u, v)) return {u, v};
  return {};
}

CheckReport is_monotone(const FrameMap& f, const OrderedLocale& x, const OrderedLocale& y) {
  if (f.source->size() != x.size() || f.target->size() != y.size())
    throw Error(ErrorKind::NotAFrameMap, "map does not connect the given locales");
  const auto& s = x.frame();
  for (Elem v = 0; v < y.size(); ++v) {
    if (!s.leq(x.up(f(v)), f(y.up(v)))) return CheckReport::failed("monotone", {v}, "up");
    if (!s.leq(x.down(f(v)), f(y.down(v)))) return CheckReport::failed("monotone", {v}, "down");
  }
  return CheckReport::ok("monotone", y.size());
}

Elem convex_hull(const OrderedLocale& ol, Elem u) { return ol.frame().meet(ol.up(u), ol.down(u)); }

bool is_convex_open(const OrderedLocale& ol, Elem u) { return convex_hull(ol, u) == u; }

CheckReport is_convex_locale(const OrderedLocale& ol) {
  // A coprime is a join of convex elements only if it is itself convex.
  for (Elem c : ol.frame().coprimes())
    if (!is_convex_open(ol, c)) return CheckReport::failed("convex", {c}, "coprime is not convex");
  return CheckReport::ok("convex", ol.frame().coprimes().size());
}

CheckReport check_hull_laws(const OrderedLocale& ol, const Budget& b) {
  const auto& f = ol.frame();
  const std::string law = "hull";
  bool par = check_axiom(ol, "parallel", b).pass();
  for (Elem u = 0; u < ol.size(); ++u) {
    Elem h = convex_hull(ol, u);
    if (!f.leq(u, h)) return CheckReport::failed(law, {u}, "inflationary");
    if (convex_hull(ol, h) != h) return CheckReport::failed(law, {u}, "idempotent");
    for (Elem c : f.coprimes())
      if (!f.leq(h, convex_hull(ol, f.join(u, c)))) return CheckReport::failed(law, {u, f.join(u, c)}, "monotone");
    if (ol.up(h) != ol.up(u)) return CheckReport::failed(law, {u}, "up of hull");
    if (ol.down(h) != ol.down(u)) return CheckReport::failed(law, {u}, "down of hull");
    if (!is_convex_open(ol, ol.up(u))) return CheckReport::failed(law, {u}, "up cone convex");
    if (!is_convex_open(ol, ol.down(u))) return CheckReport::failed(law, {u}, "down cone convex");
    if (par) {
      Elem dia = diamond(ol, u);
      if (!f.leq(h, dia)) return CheckReport::failed(law, {u}, "hull below diamond");
      if (!is_convex_open(ol, dia)) return CheckReport::failed(law, {u}, "diamond convex");
    }
  }
  CheckReport r = CheckReport::ok(law, ol.size());
  if (!par) r.note = "parallel laws skipped";
  return r;
}

Elem causal_complement(const OrderedLocale& ol, Elem u) {
  const auto& f = ol.frame();
  return f.meet(f.neg(ol.up(u)), f.neg(ol.down(u)));
}

Elem diamond(const OrderedLocale& ol, Elem u) { return causal_complement(ol, causal_complement(ol, u)); }

CheckReport check_complement_laws(const OrderedLocale& ol, const Budget& b) {
  const auto& f = ol.frame();
  const std::string law = "complement";
  const std::uint64_t m = ol.size();
  bool empty = check_axiom(ol, "empty", b).pass();
  bool par = empty && check_axiom(ol, "parallel", b).pass();
  bool cjoin = check_axiom(ol, "C-join", b).pass();
  bool regular = check_regular_cones(ol).pass();
  std::vector<Elem> perp(m);
  for (Elem u = 0; u < m; ++u) perp[u] = causal_complement(ol, u);
  if (perp[f.top()] != f.bottom()) return CheckReport::failed(law, {f.top()}, "top complement");
  if (empty && perp[f.bottom()] != f.top()) return CheckReport::failed(law, {f.bottom()}, "bottom complement");
  for (Elem u = 0; u < m; ++u) {
    if (f.meet(u, perp[u]) != f.bottom()) return CheckReport::failed(law, {u}, "disjoint from complement");
    for (Elem c : f.coprimes())
      if (!f.leq(perp[f.join(u, c)], perp[u])) return CheckReport::failed(law, {u, f.join(u, c)}, "antitone");
    if (par) {
      if (!f.leq(u, perp[perp[u]])) return CheckReport::failed(law, {u}, "below double complement");
      Elem nd = f.neg(ol.down(u)), nu = f.neg(ol.up(u));
      if (ol.up(nd) != nd) return CheckReport::failed(law, {u}, "up of not down");
      if (ol.down(nu) != nu) return CheckReport::failed(law, {u}, "down of not up");
    }
  }
  if (par || cjoin) {
    auto pair_test = [&](Elem u, Elem v) -> const char* {
      if (par && f.leq(u, perp[v]) != f.leq(v, perp[u])) return "symmetry";
      if (cjoin && perp[f.join(u, v)] != f.meet(perp[u], perp[v])) return "joins to meets";
      return nullptr;
    };
    if (m * m <= b.max_tuples) {
      for (Elem u = 0; u < m; ++u)
        for (Elem v = 0; v < m; ++v)
          if (const char* why = pair_test(u, v)) return CheckReport::failed(law, {u, v}, why);
    } else {
      Sampler s(ol, b.seed);
      for (std::uint64_t i = 0; i < b.samples; ++i) {
        Elem u = s.any(), v = s.any();
        if (const char* why = pair_test(u, v)) return sampled(CheckReport::failed(law, {u, v}, why));
      }
    }
  }
  if (par && regular) {
    // Negation maps past cones bijectively and antitonely onto future cones.
    std::vector<Elem> downs, ups;
    for (Elem u = 0; u < m; ++u) {
      if (ol.down(u) == u) downs.push_back(u);
      if (ol.up(u) == u) ups.push_back(u);
    }
    if (downs.size() != ups.size()) return CheckReport::failed(law, {}, "cone images differ in size");
    for (Elem a : downs)
      if (ol.up(f.neg(a)) != f.neg(a)) return CheckReport::failed(law, {a}, "negation of a past cone");
    for (Elem a : ups)
      if (ol.down(f.neg(a)) != f.neg(a)) return CheckReport::failed(law, {a}, "negation of a future cone");
    for (Elem a : downs)
      if (f.neg(f.neg(a)) != a) return CheckReport::failed(law, {a}, "negation not injective on past cones");
  }
  CheckReport r = CheckReport::ok(law, m);
  r.exhaustive = m * m <= b.max_tuples;
  return r;
}

const char* direction_name(Direction d) { return d == Direction::Future ? "future" : "past"; }

ConeFrame cone_frame(const OrderedLocale& ol, Direction dir, bool require_join_preserving) {
  const auto& f = ol.frame();
  const auto& cone = dir == Direction::Future ? ol.ups() : ol.downs();
  if (require_join_preserving) {
    auto r = dir == Direction::Future ? check_axiom(ol, "C-join") : check_axiom(ol.opposite(), "C-join");
    if (!r.pass())
      throw Error(ErrorKind::ConesDoNotPreserveJoins, std::string(direction_name(dir)) + " cone does not preserve joins",
                  std::vector<long long>(r.witness.begin(), r.witness.end()));
  }
  std::vector<Mask> masks;
  for (Elem u = 0; u < f.size(); ++u)
    if (cone[u] == u) masks.push_back(f.mask(u));
  ConeFrame out;
  if (masks.front() != 0) {
    masks.insert(masks.begin(), 0);
    out.bottom_adjoined = true;
  }
  try {
    out.frame = frame_from_masks(f.base(), masks);
  } catch (const Error& e) {
    throw Error(ErrorKind::ConesDoNotPreserveJoins, std::string("cone image is not a subframe: ") + e.what(), e.witness());
  }
  if (!f.point_realized()) out.frame = std::make_shared<FiniteFrame>(f.base(), masks, false);
  for (Mask x : masks) out.to_ambient.push_back(f.must_id(x));
  out.map = FrameMap::make(ol.frame_ptr(), out.frame, out.to_ambient);
  return out;
}

CheckReport is_biframe(const OrderedLocale& ol, const Budget& b) {
  const auto& f = ol.frame();
  CheckReport cj = check_axiom(ol, "C-join", b);
  CheckReport cjd = check_axiom(ol.opposite(), "C-join", b);
  cjd.law = "C-join (past)";
  CheckReport cv = is_convex_locale(ol);
  // Surjectivity of (up V, down W) -> up V meet down W onto the frame: every
  // coprime must itself be such a meet.
  std::vector<Elem> ups, downs;
  for (Elem u = 0; u < f.size(); ++u) {
    if (ol.up(u) == u) ups.push_back(u);
    if (ol.down(u) == u) downs.push_back(u);
  }
  CheckReport sj = CheckReport::ok("surjective");
  if (static_cast<std::uint64_t>(ups.size()) * downs.size() <= b.max_tuples / 16) {
    std::vector<char> hit(f.size(), 0);
    for (Elem a : ups)
      for (Elem d : downs) hit[f.meet(a, d)] = 1;
    sj.tuples = ups.size() * downs.size();
    for (Elem c : f.coprimes())
      if (!hit[c]) {
        sj = CheckReport::failed("surjective", {c}, "coprime is not a meet of cones");
        break;
      }
  } else {
    sj.note = "decided through coprime convexity";
    if (cv.fail()) sj = CheckReport::failed("surjective", cv.witness, "coprime is not a meet of cones");
  }
  return combine("biframe", {cj, cjd, cv, sj});
}

Elem causal_heyting(const OrderedLocale& ol, Elem u, Elem v, Direction dir) {
  const auto& f = ol.frame();
  Mask out = 0;
  for (Elem w = 0; w < f.size(); ++w) {
    Elem cw = dir == Direction::Past ? ol.down(w) : ol.up(w);
    if (f.leq(f.meet(u, cw), v)) out |= f.mask(w);
  }
  return f.must_id(out);
}

CheckReport check_causal_heyting(const OrderedLocale& ol, const Budget& b) {
  const auto& f = ol.frame();
  const std::uint64_t m = ol.size();
  const std::string law = "causal-heyting";
  std::uint64_t tuples = 0;
  for (Direction dir : {Direction::Future, Direction::Past}) {
    ConeFrame cf = cone_frame(ol, dir);
    const auto& cone = dir == Direction::Future ? ol.ups() : ol.downs();
    std::vector<Elem> imp(m * m);
    for (Elem u = 0; u < m; ++u)
      for (Elem v = 0; v < m; ++v) {
        imp[u * m + v] = causal_heyting(ol, u, v, dir);
        if (imp[u * m + v] != cf.to_ambient[cf.map.right_adjoint(f.heyting(u, v))])
          return CheckReport::failed(law, {u, v}, std::string(direction_name(dir)) + ": right adjoint identity");
      }
    auto adj = [&](Elem u, Elem v, Elem w) { return f.leq(f.meet(u, cone[w]), v) == f.leq(w, imp[u * m + v]); };
    if (m * m * m <= b.max_tuples) {
      for (Elem u = 0; u < m; ++u)
        for (Elem v = 0; v < m; ++v)
          for (Elem w = 0; w < m; ++w) {
            ++tuples;
            if (!adj(u, v, w)) return CheckReport::failed(law, {u, v, w}, std::string(direction_name(dir)) + ": adjunction");
          }
    } else {
      std::mt19937_64 rng(b.seed);
      for (std::uint64_t i = 0; i < b.samples; ++i) {
        Elem u = rng() % m, v = rng() % m, w = rng() % m;
        ++tuples;
        if (!adj(u, v, w))
          return sampled(CheckReport::failed(law, {u, v, w}, std::string(direction_name(dir)) + ": adjunction"));
      }
    }
  }
  CheckReport r = CheckReport::ok(law, tuples, m * m * m <= b.max_tuples);
  if (!r.exhaustive) r.note = "adjunction sampled";
  return r;
}

OrderedLocale meet_of_orders(const FramePtr& f, const std::vector<OrderedLocale>& ols) {
  for (const auto& o : ols)
    if (o.size() != f->size()) throw Error(ErrorKind::MalformedInput, "orders must share a frame");
  return OrderedLocale::from_predicate(f, [&](Elem u, Elem v) {
    for (const auto& o : ols)
      if (!o.rel(u, v)) return false;
    return true;
  });
}

OrderedLocale order_from_map(const FrameMap& fm, const OrderedLocale& y) {
  const auto& s = *fm.source;
  const auto& t = *fm.target;
  if (t.size() != y.size()) throw Error(ErrorKind::NotAFrameMap, "map target differs from the locale frame");
  // Least V with U <= f^{-1}(V); f^{-1} preserves finite meets.
  std::vector<Elem> least(s.size());
  for (Elem u = 0; u < s.size(); ++u) {
    Mask mm = t.mask(t.top());
    for (Elem v = 0; v < t.size(); ++v)
      if (s.leq(u, fm(v))) mm &= t.mask(v);
    least[u] = t.must_id(mm);
  }
  return OrderedLocale::from_predicate(fm.source, [&](Elem u, Elem up_) {
    return s.leq(up_, fm(y.up(least[u]))) && s.leq(u, fm(y.down(least[up_])));
  });
}

CheckReport check_regular_cones(const OrderedLocale& ol) {
  const auto& f = ol.frame();
  auto nn = [&](Elem a) { return f.neg(f.neg(a)); };
  for (Elem u = 0; u < ol.size(); ++u) {
    if (nn(ol.up(u)) != ol.up(u)) return CheckReport::failed("regular-cones", {u}, "not not up U = up U");
    if (ol.up(nn(u)) != ol.up(u)) return CheckReport::failed("regular-cones", {u}, "up not not U = up U");
    if (nn(ol.down(u)) != ol.down(u)) return CheckReport::failed("regular-cones", {u}, "not not down U = down U");
    if (ol.down(nn(u)) != ol.down(u)) return CheckReport::failed("regular-cones", {u}, "down not not U = down U");
  }
  return CheckReport::ok("regular-cones", ol.size());
}

IdealCompletion ideal_completion(const OrderedLocale& ol) {
  const auto& f = ol.frame();
  const std::size_t m = f.size();
  IdealFrame idf = ideal_frame(ol.frame_ptr());
  const auto& fi = *idf.frame;
  std::vector<Elem> back(fi.size(), kNoElem);
  for (Elem x = 0; x < m; ++x) back[idf.iso[x]] = x;
  // Cone of an ideal: the ideal generated by the cones of its members.
  ConePair cp{idf.frame, std::vector<Elem>(fi.size()), std::vector<Elem>(fi.size())};
  for (Elem x = 0; x < m; ++x) {
    Mask mu = 0, md = 0;
    for (Elem w : idf.ideals[x]) {
      mu |= f.mask(ol.up(w));
      md |= f.mask(ol.down(w));
    }
    cp.u[idf.iso[x]] = idf.iso[f.must_id(mu)];
    cp.d[idf.iso[x]] = idf.iso[f.must_id(md)];
  }
  FrameMap map = FrameMap::make(ol.frame_ptr(), idf.frame, back);
  IdealCompletion out{OrderedLocale::from_monads(cp), idf, std::move(map)};
  out.cones_match = true;
  for (Elem x = 0; x < m; ++x)
    if (out.locale.up(idf.iso[x]) != idf.iso[ol.up(x)] || out.locale.down(idf.iso[x]) != idf.iso[ol.down(x)])
      out.cones_match = false;
  out.order_iso = true;
  for (Elem x = 0; x < m && out.order_iso; ++x)
    for (Elem y = 0; y < m; ++y)
      if (ol.rel(x, y) != out.locale.rel(idf.iso[x], idf.iso[y])) {
        out.order_iso = false;
        break;
      }
  return out;
}

}  // namespace ordloc
