#include "ordloc/coverage.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <tuple>

namespace ordloc {

Path validate_path(const OrderedLocale& ol, const std::vector<Elem>& steps) {
  if (steps.empty()) throw Error(ErrorKind::MalformedInput, "a path needs at least one step");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] >= ol.size()) throw Error(ErrorKind::MalformedInput, "step out of range", {static_cast<long long>(i)});
    if (steps[i] == ol.frame().bottom())
      throw Error(ErrorKind::BottomStep, "step " + std::to_string(i) + " is empty", {static_cast<long long>(i)});
  }
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (!ol.rel(steps[i], steps[i + 1]))
      throw Error(ErrorKind::NotRelated, "steps " + std::to_string(i) + " and " + std::to_string(i + 1) + " are not related",
                  {static_cast<long long>(i)});
  return Path{steps};
}

bool refines(const FiniteFrame& f, const Path& q, const Path& p) {
  for (Elem s : p.steps) {
    bool found = false;
    for (Elem t : q.steps) found = found || f.leq(t, s);
    if (!found) return false;
  }
  return true;
}

Path concat(const Path& first, const Path& second) {
  if (first.last() != second.first())
    throw Error(ErrorKind::ConcatMismatch, "endpoint does not match the next start", {first.last(), second.first()});
  Path out = first;
  out.steps.insert(out.steps.end(), second.steps.begin() + 1, second.steps.end());
  return out;
}

namespace {

void require_parallel(const OrderedLocale& ol) {
  auto r = check_axiom(ol, "parallel");
  if (!r.pass())
    throw Error(ErrorKind::NotParallelOrdered, "locale is not parallel ordered: " + r.note,
                std::vector<long long>(r.witness.begin(), r.witness.end()));
}

}  // namespace

Path restrict_path(const OrderedLocale& ol, const Path& p, Elem w, bool verify_axioms) {
  const auto& f = ol.frame();
  if (!f.leq(w, p.last())) throw Error(ErrorKind::NotASubregion, "W is not inside the endpoint", {w});
  if (w == f.bottom()) throw Error(ErrorKind::EmptyRestriction, "restriction to the empty region");
  if (verify_axioms) require_parallel(ol);
  Path out{p.steps};
  out.steps.back() = w;
  for (std::size_t n = out.steps.size() - 1; n-- > 0;) out.steps[n] = f.meet(p.steps[n], ol.down(out.steps[n + 1]));
  return out;
}

Path restrict_path_future(const OrderedLocale& ol, const Path& p, Elem v, bool verify_axioms) {
  const auto& f = ol.frame();
  if (!f.leq(v, p.first())) throw Error(ErrorKind::NotASubregion, "V is not inside the first step", {v});
  if (v == f.bottom()) throw Error(ErrorKind::EmptyRestriction, "restriction to the empty region");
  if (verify_axioms) require_parallel(ol);
  Path out{p.steps};
  out.steps.front() = v;
  for (std::size_t n = 1; n < out.steps.size(); ++n) out.steps[n] = f.meet(p.steps[n], ol.up(out.steps[n - 1]));
  return out;
}

const char* cov_status_name(CovStatus s) {
  switch (s) {
    case CovStatus::Yes: return "yes";
    case CovStatus::No: return "no";
    case CovStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

CoverageEngine::CoverageEngine(const OrderedLocale& ol, std::size_t bound, bool verify_axioms) : ol_(ol), bound_(bound) {
  if (bound_ == 0) bound_ = 2 * (ol.size() - 1);
  if (verify_axioms) {
    for (const char* law : {"parallel", "C-join"}) {
      auto r = check_axiom(ol, law);
      if (!r.pass())
        throw Error(ErrorKind::PreconditionAxioms, std::string("coverage requires ") + law,
                    std::vector<long long>(r.witness.begin(), r.witness.end()));
    }
  }
}

const std::vector<Elem>& CoverageEngine::min_pred(Elem e) {
  auto it = min_pred_.find(e);
  if (it != min_pred_.end()) return it->second;
  const auto& f = ol_.frame();
  std::vector<Elem> preds;
  for (Elem z = 1; z < ol_.size(); ++z)
    if (f.leq(z, ol_.down(e)) && ol_.rel(z, e)) preds.push_back(z);
  std::vector<Elem> mins;
  for (Elem z : preds) {
    bool minimal = true;
    for (Elem y : preds)
      if (y != z && f.leq(y, z)) {
        minimal = false;
        break;
      }
    if (minimal) mins.push_back(z);
  }
  return min_pred_[e] = std::move(mins);
}

const CoverageEngine::Walks& CoverageEngine::walks(Elem c) {
  auto it = walks_.find(c);
  if (it != walks_.end()) return *it->second;
  auto w = std::make_unique<Walks>();
  const auto& f = ol_.frame();
  // Universe of elements reachable from c through minimal predecessors.
  std::map<Elem, int> local;
  std::deque<Elem> todo{c};
  local[c] = 0;
  w->nodes.push_back(c);
  while (!todo.empty() && w->nodes.size() <= 63) {
    Elem e = todo.front();
    todo.pop_front();
    for (Elem z : min_pred(e))
      if (!local.count(z)) {
        local[z] = static_cast<int>(w->nodes.size());
        w->nodes.push_back(z);
        todo.push_back(z);
      }
  }
  if (w->nodes.size() > 63) {
    w->too_large = true;
    return *(walks_[c] = std::move(w));
  }
  const std::size_t n = w->nodes.size();
  w->next.resize(n);
  w->below.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (Elem z : min_pred(w->nodes[i])) w->next[i].push_back(local[z]);
    for (std::size_t j = 0; j < n; ++j)
      if (f.leq(w->nodes[i], w->nodes[j])) w->below[i] |= Mask{1} << j;
  }
  // Level-by-level enumeration of (head, visited) states.
  std::set<std::pair<int, Mask>> seen{{0, Mask{1}}};
  w->states.push_back({0, Mask{1}, -1});
  std::vector<int> frontier{0};
  while (!frontier.empty() && w->levels < bound_) {
    std::vector<int> nxt;
    for (int sidx : frontier) {
      const auto st = w->states[sidx];
      for (int j : w->next[st.head]) {
        Mask vis = st.visited | Mask{1} << j;
        if (!seen.insert({j, vis}).second) continue;
        w->states.push_back({j, vis, sidx});
        nxt.push_back(static_cast<int>(w->states.size()) - 1);
      }
    }
    frontier = std::move(nxt);
    if (!frontier.empty()) ++w->levels;
  }
  w->saturated = frontier.empty();
  return *(walks_[c] = std::move(w));
}

bool CoverageEngine::refinable(const Walks& w, Mask visited, Elem a) const {
  const auto& f = ol_.frame();
  // Search walks from c collecting, for each visited node, a step below it,
  // and some step below A.
  auto hits = [&](int i) { return w.below[i] & visited; };
  auto in_a = [&](int i) { return f.leq(w.nodes[i], a); };
  struct St { int node; Mask hit; bool a; };
  std::vector<St> stack{{0, hits(0), in_a(0)}};
  std::set<std::tuple<int, Mask, bool>> seen{{0, stack[0].hit, stack[0].a}};
  while (!stack.empty()) {
    St s = stack.back();
    stack.pop_back();
    if (s.a && s.hit == visited) return true;
    for (int j : w.next[s.node]) {
      St t{j, s.hit | hits(j), s.a || in_a(j)};
      if (seen.insert({t.node, t.hit, t.a}).second) stack.push_back(t);
    }
  }
  return false;
}

CoverageVerdict CoverageEngine::good(Elem a, Elem c) {
  CoverageVerdict v;
  v.bound_used = bound_;
  // Restricting any path to its endpoint c already inhabits A.
  if (ol_.frame().leq(c, a)) {
    v.status = CovStatus::Yes;
    return v;
  }
  const Walks& w = walks(c);
  if (w.too_large) {
    v.note = "more than 63 elements reachable from a coprime";
    return v;
  }
  std::map<Mask, bool> memo;
  for (std::size_t i = 0; i < w.states.size(); ++i) {
    Mask vis = w.states[i].visited;
    auto it = memo.find(vis);
    bool ok = it != memo.end() ? it->second : (memo[vis] = refinable(w, vis, a));
    if (!ok) {
      v.status = CovStatus::No;
      std::vector<Elem> back;
      for (int s = static_cast<int>(i); s >= 0; s = w.states[s].parent) back.push_back(w.nodes[w.states[s].head]);
      v.witness.steps.assign(back.begin(), back.end());
      v.note = "path has no refinement inhabiting A";
      return v;
    }
  }
  v.status = w.saturated ? CovStatus::Yes : CovStatus::Inconclusive;
  if (!w.saturated) v.note = "path enumeration reached the bound";
  return v;
}

CoverageVerdict CoverageEngine::covers_below(Elem a, Elem u) {
  const auto& f = ol_.frame();
  CoverageVerdict out;
  out.bound_used = bound_;
  out.status = CovStatus::Yes;
  // Path condition first, so a negative answer carries a path when one exists.
  for (Elem c : f.coprimes()) {
    if (!f.leq(c, u)) continue;
    CoverageVerdict g = good(a, c);
    if (g.status == CovStatus::No) return g;
    if (g.status == CovStatus::Inconclusive) {
      out.status = CovStatus::Inconclusive;
      out.note = g.note;
    }
  }
  if (!f.leq(a, ol_.down(u))) {
    out.status = CovStatus::No;
    out.note = "A is not inside the past of U";
  }
  return out;
}

CoverageVerdict covers_below(const OrderedLocale& ol, Elem a, Elem u, std::size_t bound) {
  CoverageEngine e(ol, bound);
  return e.covers_below(a, u);
}

CoverageVerdict covers_above(const OrderedLocale& ol, Elem a, Elem u, std::size_t bound) {
  CoverageEngine e(ol.opposite(), bound);
  return e.covers_below(a, u);
}

CoverageTable coverage_table(const OrderedLocale& ol, Direction dir, std::size_t bound) {
  CoverageEngine e(dir == Direction::Past ? ol : ol.opposite(), bound);
  const auto& f = ol.frame();
  const std::size_t m = f.size();
  CoverageTable t;
  t.dir = dir;
  t.member.assign(m, std::vector<CovStatus>(m, CovStatus::No));
  const auto& lo = e.locale();
  for (Elem a = 0; a < m; ++a) {
    // good(a, c) is shared by every U above c.
    std::vector<CovStatus> g(m, CovStatus::Yes);
    for (Elem c : f.coprimes()) g[c] = e.good(a, c).status;
    for (Elem u = 0; u < m; ++u) {
      if (!f.leq(a, lo.down(u))) continue;
      CovStatus s = CovStatus::Yes;
      for (Elem c : f.coprimes()) {
        if (!f.leq(c, u)) continue;
        if (g[c] == CovStatus::No) {
          s = CovStatus::No;
          break;
        }
        if (g[c] == CovStatus::Inconclusive) s = CovStatus::Inconclusive;
      }
      t.member[u][a] = s;
      if (s == CovStatus::Inconclusive) t.exact = false;
    }
  }
  return t;
}

CoverageTable table_from_sets(Direction dir, const std::vector<std::vector<Elem>>& sets, std::size_t m) {
  CoverageTable t;
  t.dir = dir;
  t.member.assign(m, std::vector<CovStatus>(m, CovStatus::No));
  if (sets.size() != m) throw Error(ErrorKind::MalformedInput, "coverage table needs one row per element");
  for (std::size_t u = 0; u < m; ++u)
    for (Elem a : sets[u]) {
      if (a >= m) throw Error(ErrorKind::MalformedInput, "coverage entry out of range", {static_cast<long long>(u), a});
      t.member[u][a] = CovStatus::Yes;
    }
  return t;
}

Certain region_of_influence(const FiniteFrame& f, const CoverageTable& t, Elem u) {
  Certain out;
  Mask m = 0;
  for (Elem a = 0; a < f.size(); ++a) {
    if (t.member[u][a] == CovStatus::Yes) m |= f.mask(a);
    if (t.member[u][a] == CovStatus::Inconclusive) out.exact = false;
  }
  out.value = f.must_id(m);
  return out;
}

Certain domain_of_dependence(const FiniteFrame& f, const CoverageTable& cov_opposite, Elem a) {
  Certain out;
  Mask m = 0;
  for (Elem v = 0; v < f.size(); ++v) {
    if (cov_opposite.member[v][a] == CovStatus::Yes) m |= f.mask(v);
    if (cov_opposite.member[v][a] == CovStatus::Inconclusive) out.exact = false;
  }
  out.value = f.must_id(m);
  return out;
}

Certain domain_of_dependence(const OrderedLocale& ol, Elem a, Direction dir, std::size_t bound) {
  // D+ uses past covers, D- future covers.
  CoverageEngine e(dir == Direction::Future ? ol : ol.opposite(), bound);
  const auto& f = ol.frame();
  const auto& lo = e.locale();
  std::vector<CovStatus> g(f.size(), CovStatus::Yes);
  for (Elem c : f.coprimes()) g[c] = e.good(a, c).status;
  Certain out;
  Mask m = 0;
  for (Elem v = 0; v < f.size(); ++v) {
    if (!f.leq(a, lo.down(v))) continue;
    CovStatus s = CovStatus::Yes;
    for (Elem c : f.coprimes())
      if (f.leq(c, v)) {
        if (g[c] == CovStatus::No) {
          s = CovStatus::No;
          break;
        }
        if (g[c] == CovStatus::Inconclusive) s = CovStatus::Inconclusive;
      }
    if (s == CovStatus::Yes) m |= f.mask(v);
    if (s == CovStatus::Inconclusive) out.exact = false;
  }
  out.value = f.must_id(m);
  return out;
}

namespace {

using Rows = std::vector<std::vector<char>>;

Rows yes_rows(const CoverageTable& t) {
  Rows r(t.member.size(), std::vector<char>(t.member.size(), 0));
  for (std::size_t u = 0; u < r.size(); ++u)
    for (std::size_t a = 0; a < r.size(); ++a) r[u][a] = t.member[u][a] == CovStatus::Yes;
  return r;
}

CheckReport coverage_axioms(const FiniteFrame& f, const Rows& cov, const Rows& flip, const std::string& sign,
                            const Budget& b) {
  const std::size_t m = f.size();
  std::vector<std::vector<Elem>> lists(m);
  std::uint64_t total = 0;
  for (Elem u = 0; u < m; ++u)
    for (Elem a = 0; a < m; ++a)
      if (cov[u][a]) lists[u].push_back(a);
  for (auto& l : lists) total += l.size();
  auto fail = [&](const std::string& ax, std::vector<Elem> w, const std::string& note = {}) {
    return CheckReport::failed(ax + sign, std::move(w), note);
  };
  std::uint64_t tuples = 0;
  bool exhaustive = true;
  // (C1)
  for (Elem u = 0; u < m; ++u)
    if (!cov[u][u]) return fail("C1", {u});
  // (C2): nullary case, join closure, then the binary set equality.
  for (Elem a = 0; a < m; ++a)
    if (cov[f.bottom()][a] != (a == f.bottom())) return fail("C2", {f.bottom(), a}, "cover of bottom");
  std::uint64_t pair_cost = 0;
  for (auto& l : lists) pair_cost += l.size() * l.size();
  if (pair_cost <= b.max_tuples) {
    for (Elem u = 0; u < m; ++u)
      for (Elem a : lists[u])
        for (Elem c : lists[u]) {
          ++tuples;
          if (!cov[u][f.join(a, c)]) return fail("C2", {u, a, c}, "covers of U not closed under joins");
        }
  } else {
    exhaustive = false;
  }
  auto best_below = [&](Elem u, Elem c) {
    Mask s = 0;
    for (Elem a : lists[u])
      if (f.leq(a, c)) s |= f.mask(a);
    return f.must_id(s);
  };
  std::mt19937_64 rng(b.seed);
  if (total * total <= b.max_tuples) {
    for (Elem u = 0; u < m; ++u)
      for (Elem v = u; v < m; ++v) {
        Elem j = f.join(u, v);
        for (Elem a : lists[u])
          for (Elem c : lists[v]) {
            ++tuples;
            if (!cov[j][f.join(a, c)]) return fail("C2", {u, v, a, c}, "join of covers does not cover the join");
          }
        for (Elem c : lists[j]) {
          ++tuples;
          Elem as = best_below(u, c), bs = best_below(v, c);
          if (!cov[u][as] || !cov[v][bs] || f.join(as, bs) != c)
            return fail("C2", {u, v, c}, "cover of the join does not split");
        }
      }
  } else {
    exhaustive = false;
    for (std::uint64_t s = 0; s < b.samples; ++s) {
      Elem u = rng() % m, v = rng() % m, j = f.join(u, v);
      Elem a = lists[u][rng() % lists[u].size()], c = lists[v][rng() % lists[v].size()];
      if (!cov[j][f.join(a, c)]) return fail("C2", {u, v, a, c}, "join of covers does not cover the join (sampled)");
      Elem d = lists[j][rng() % lists[j].size()];
      Elem as = best_below(u, d), bs = best_below(v, d);
      if (!cov[u][as] || !cov[v][bs] || f.join(as, bs) != d)
        return fail("C2", {u, v, d}, "cover of the join does not split (sampled)");
    }
  }
  // (C3)
  std::uint64_t c3 = 0;
  for (Elem u = 0; u < m; ++u)
    for (Elem a : lists[u]) c3 += lists[a].size();
  if (c3 <= b.max_tuples) {
    for (Elem u = 0; u < m; ++u)
      for (Elem a : lists[u])
        for (Elem bb : lists[a]) {
          ++tuples;
          if (!cov[u][bb]) return fail("C3", {u, a, bb});
        }
  } else {
    exhaustive = false;
    for (std::uint64_t s = 0; s < b.samples; ++s) {
      Elem u = rng() % m;
      Elem a = lists[u][rng() % lists[u].size()];
      Elem bb = lists[a][rng() % lists[a].size()];
      if (!cov[u][bb]) return fail("C3", {u, a, bb}, "sampled");
    }
  }
  // (C4): every C between some cover and some cover of U is a cover.
  for (Elem u = 0; u < m; ++u) {
    std::vector<char> above(m, 0), below(m, 0);
    for (Elem a : lists[u])
      for (Elem c = 0; c < m; ++c) {
        if (f.leq(a, c)) above[c] = 1;
        if (f.leq(c, a)) below[c] = 1;
      }
    for (Elem c = 0; c < m; ++c) {
      ++tuples;
      if (above[c] && below[c] && !cov[u][c]) return fail("C4", {u, c});
    }
  }
  // (C5)
  for (Elem u = 0; u < m; ++u)
    for (Elem a : lists[u]) {
      bool found = false;
      for (Elem w = 0; w < m && !found; ++w) found = flip[a][w] && f.leq(u, w);
      ++tuples;
      if (!found) return fail("C5", {u, a});
    }
  CheckReport r = CheckReport::ok("coverage" + sign, tuples, exhaustive);
  if (!exhaustive) r.note = "sampled";
  return r;
}

}  // namespace

CheckReport abstract_coverage_check(const FiniteFrame& f, const CoverageTable& past, const CoverageTable& future,
                                    const Budget& b) {
  Rows cm = yes_rows(past), cp = yes_rows(future);
  if (cm.size() != f.size() || cp.size() != f.size())
    throw Error(ErrorKind::MalformedInput, "coverage tables must match the frame");
  return combine("coverage", {coverage_axioms(f, cm, cp, "-", b), coverage_axioms(f, cp, cm, "+", b)});
}

GrothendieckReport check_down_grothendieck(const OrderedLocale& ol, std::size_t max_frame, std::size_t bound) {
  const auto& f = ol.frame();
  const std::size_t m = f.size();
  if (m > max_frame || m > 64) throw Error(ErrorKind::FrameTooLarge, "sieve enumeration limited to small frames");
  CoverageTable t = coverage_table(ol, Direction::Past, bound);
  GrothendieckReport out;
  std::uint64_t tuples = 0;
  std::vector<Mask> lower(m, 0);
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y)
      if (f.leq(y, x)) lower[x] |= Mask{1} << y;
  auto join_of = [&](Mask s) {
    Mask r = 0;
    for_each_bit(s, [&](int x) { r |= f.mask(x); });
    return f.must_id(r);
  };
  // Down-closed subsets of the principal ideal of d, in id order.
  auto sieves = [&](Elem d) {
    std::vector<Mask> out_s;
    std::vector<Elem> elems;
    for (Elem x = 0; x < m; ++x)
      if (f.leq(x, d)) elems.push_back(x);
    std::function<void(std::size_t, Mask)> rec = [&](std::size_t k, Mask cur) {
      if (k == elems.size()) {
        out_s.push_back(cur);
        return;
      }
      rec(k + 1, cur);
      Elem x = elems[k];
      if (subset(lower[x] & ~(Mask{1} << x), cur)) rec(k + 1, cur | Mask{1} << x);
    };
    rec(0, 0);
    return out_s;
  };
  auto fail = [&](const std::string& ax, std::vector<Elem> w) {
    out.report = CheckReport::failed("grothendieck", std::move(w), "axiom " + ax);
    return out;
  };
  for (Elem u = 0; u < m; ++u) {
    Elem du = ol.down(u);
    // (i) and (i')
    for (auto [ax, a] : {std::pair<const char*, Elem>{"i", du}, std::pair<const char*, Elem>{"i'", u}}) {
      ++tuples;
      CovStatus s = t.member[u][a];
      if (s == CovStatus::Inconclusive) ++out.abstained;
      else if (s == CovStatus::No) return fail(ax, {u});
    }
    std::vector<Mask> all = sieves(du);
    std::vector<Mask> covering;
    for (Mask s : all) {
      CovStatus st = t.member[u][join_of(s)];
      if (st == CovStatus::Yes) covering.push_back(s);
      else if (st == CovStatus::Inconclusive) ++out.abstained;
    }
    // (ii) stability under W <= U.
    for (Mask s : covering)
      for (Elem w = 0; w < m; ++w) {
        if (!f.leq(w, u)) continue;
        ++tuples;
        Mask pb = s & lower[ol.down(w)];
        CovStatus st = t.member[w][join_of(pb)];
        if (st == CovStatus::Inconclusive) ++out.abstained;
        else if (st == CovStatus::No) return fail("ii", {u, w, join_of(s)});
      }
    // (iii) transitivity.
    for (Mask s : covering)
      for (Mask r : all) {
        ++tuples;
        bool premise = true, unknown = false;
        for_each_bit(s, [&](int v) {
          if (!premise) return;
          CovStatus st = t.member[v][join_of(r & lower[ol.down(v)])];
          if (st == CovStatus::No) premise = false;
          if (st == CovStatus::Inconclusive) unknown = true;
        });
        if (!premise) continue;
        CovStatus st = t.member[u][join_of(r)];
        if (st == CovStatus::Yes) continue;
        if (unknown || st == CovStatus::Inconclusive) {
          ++out.abstained;
          continue;
        }
        return fail("iii", {u, join_of(s), join_of(r)});
      }
  }
  out.report = CheckReport::ok("grothendieck", tuples);
  if (out.abstained) out.report.note = std::to_string(out.abstained) + " memberships abstained";
  return out;
}

}  // namespace ordloc
