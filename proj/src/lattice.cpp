#include "ordloc/lattice.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ordloc {

PointSet PointSet::from_mask(int base_size, Mask m) {
  PointSet p;
  p.base_size = base_size;
  for_each_bit(m, [&](int i) { p.members.push_back(i); });
  return p;
}

Mask PointSet::mask() const {
  Mask m = 0;
  for (int i : members) m |= Mask{1} << i;
  return m;
}

namespace {

std::string mask_str(Mask m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for_each_bit(m, [&](int i) {
    if (!first) os << ',';
    os << i;
    first = false;
  });
  os << '}';
  return os.str();
}

}  // namespace

FiniteFrame::FiniteFrame(int base, std::vector<Mask> masks, bool point_realized)
    : base_(base), masks_(std::move(masks)), point_realized_(point_realized) {
  powerset_ = base_ < 63 && masks_.size() == (std::size_t{1} << base_);
  std::vector<Mask> co, pr;
  for (int p = 0; p < base_; ++p) {
    Mask bit = Mask{1} << p;
    Mask n = full_mask(base_), mm = 0;
    for (Mask u : masks_) {
      if (u & bit) n &= u;
      else mm |= u;
    }
    co.push_back(n);
    pr.push_back(mm);
  }
  auto to_ids = [&](std::vector<Mask>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<Elem> ids;
    for (Mask x : v) ids.push_back(must_id(x));
    return ids;
  };
  coprimes_ = to_ids(co);
  primes_ = to_ids(pr);
}

Elem FiniteFrame::id(Mask m) const {
  if (powerset_) return subset(m, full_mask(base_)) ? static_cast<Elem>(m) : kNoElem;
  auto it = std::lower_bound(masks_.begin(), masks_.end(), m);
  if (it == masks_.end() || *it != m) return kNoElem;
  return static_cast<Elem>(it - masks_.begin());
}

Elem FiniteFrame::must_id(Mask m) const {
  Elem e = id(m);
  if (e == kNoElem) throw Error(ErrorKind::NotAFrame, "subset " + mask_str(m) + " is not an element");
  return e;
}

Elem FiniteFrame::join_all(const std::vector<Elem>& xs) const {
  Mask m = 0;
  for (Elem x : xs) m |= masks_[x];
  return must_id(m);
}

Elem FiniteFrame::meet_all(const std::vector<Elem>& xs) const {
  Mask m = full_mask(base_);
  for (Elem x : xs) m &= masks_[x];
  return must_id(m);
}

Elem FiniteFrame::interior(Mask s) const {
  Mask m = 0;
  for (Elem c : coprimes_)
    if (subset(masks_[c], s)) m |= masks_[c];
  return must_id(m);
}

Elem FiniteFrame::heyting(Elem a, Elem b) const {
  Mask ma = masks_[a], mb = masks_[b], m = 0;
  for (Elem c : coprimes_)
    if (subset(masks_[c] & ma, mb)) m |= masks_[c];
  return must_id(m);
}

std::vector<Elem> FiniteFrame::atoms() const {
  std::vector<Elem> out;
  for (Elem c : coprimes_) {
    bool minimal = true;
    for (Elem d : coprimes_)
      if (d != c && leq(d, c)) minimal = false;
    if (minimal) out.push_back(c);
  }
  return out;
}

bool FiniteFrame::is_boolean() const {
  for (Elem a = 0; a < size(); ++a)
    if ((masks_[a] | masks_[neg(a)]) != masks_[top()]) return false;
  return true;
}

FramePtr frame_from_masks(int base_size, const std::vector<Mask>& opens) {
  if (base_size < 0 || base_size > 64)
    throw Error(ErrorKind::MalformedInput, "base size must be between 0 and 64");
  const Mask full = full_mask(base_size);
  for (Mask m : opens)
    if (!subset(m, full)) throw Error(ErrorKind::MalformedInput, "open " + mask_str(m) + " exceeds the base");
  std::vector<Mask> fam(opens);
  std::sort(fam.begin(), fam.end());
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  auto has = [&](Mask m) { return std::binary_search(fam.begin(), fam.end(), m); };
  if (!has(0)) throw Error(ErrorKind::MissingBottomOrTop, "empty set is not open", {0});
  if (!has(full)) throw Error(ErrorKind::MissingBottomOrTop, "full base is not open", {static_cast<long long>(full)});

  // A family containing the empty set and the base is closed under binary
  // unions and intersections iff every minimal neighbourhood N(p) belongs to
  // it and it is closed under union with each N(p).
  bool closed = true;
  std::vector<Mask> nbhd(base_size);
  for (int p = 0; p < base_size && closed; ++p) {
    Mask n = full;
    for (Mask u : fam)
      if (u >> p & 1) n &= u;
    nbhd[p] = n;
    closed = has(n);
  }
  for (std::size_t i = 0; i < fam.size() && closed; ++i)
    for (int p = 0; p < base_size && closed; ++p) closed = has(fam[i] | nbhd[p]);
  if (closed) return std::make_shared<FiniteFrame>(base_size, std::move(fam), true);

  // Locate the first offending pair in input order.
  for (std::size_t i = 0; i < opens.size(); ++i)
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      Mask a = opens[i], b = opens[j];
      if (!has(a & b))
        throw Error(ErrorKind::NotClosedUnderMeet,
                    "intersection of " + mask_str(a) + " and " + mask_str(b) + " is not open",
                    {static_cast<long long>(a), static_cast<long long>(b)});
      if (!has(a | b))
        throw Error(ErrorKind::NotClosedUnderJoin,
                    "union of " + mask_str(a) + " and " + mask_str(b) + " is not open",
                    {static_cast<long long>(a), static_cast<long long>(b)});
    }
  throw Error(ErrorKind::NotAFrame, "family is not closed");
}

FramePtr frame_from_topology(int base_size, const std::vector<PointSet>& opens) {
  std::vector<Mask> ms;
  for (const auto& p : opens) {
    for (int i : p.members)
      if (i < 0 || i >= base_size) throw Error(ErrorKind::MalformedInput, "point id out of range");
    ms.push_back(p.mask());
  }
  return frame_from_masks(base_size, ms);
}

FramePtr frame_from_poset_downsets(const std::vector<std::vector<bool>>& order) {
  const int n = static_cast<int>(order.size());
  for (const auto& row : order)
    if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::MalformedInput, "order matrix is not square");
  // Merge mutually related points, taking the preorder closure first.
  std::vector<std::vector<bool>> le(order);
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (le[i][k])
        for (int j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = true;
  std::vector<int> cls(n, -1);
  int q = 0;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    for (int j = i; j < n; ++j)
      if (le[i][j] && le[j][i]) cls[j] = q;
    ++q;
  }
  if (q > 64) throw Error(ErrorKind::FrameTooLarge, "more than 64 points after merging");
  std::vector<int> rep(q);
  for (int i = n - 1; i >= 0; --i) rep[cls[i]] = i;
  std::vector<Mask> below(q, 0);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      if (a != b && le[rep[b]][rep[a]]) below[a] |= Mask{1} << b;
  // Visit classes in a linear extension so downsets are built bottom-up.
  std::vector<int> lin(q);
  for (int i = 0; i < q; ++i) lin[i] = i;
  std::sort(lin.begin(), lin.end(), [&](int a, int b) {
    int pa = popcount(below[a]), pb = popcount(below[b]);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<Mask> out;
  std::function<void(int, Mask)> rec = [&](int k, Mask cur) {
    if (k == q) {
      out.push_back(cur);
      return;
    }
    int x = lin[k];
    rec(k + 1, cur);
    if (subset(below[x], cur)) rec(k + 1, cur | Mask{1} << x);
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return std::make_shared<FiniteFrame>(q, std::move(out), q == n);
}

Realized realize_lattice(std::size_t m, const std::function<bool(std::size_t, std::size_t)>& leq) {
  if (m == 0) throw Error(ErrorKind::NotAFrame, "empty lattice");
  std::vector<std::size_t> ji;
  std::size_t bottom = m;
  for (std::size_t x = 0; x < m; ++x) {
    bool is_bottom = true;
    for (std::size_t y = 0; y < m && is_bottom; ++y) is_bottom = leq(x, y);
    if (is_bottom) bottom = x;
  }
  if (bottom == m) throw Error(ErrorKind::NotAFrame, "no bottom element");
  for (std::size_t x = 0; x < m; ++x) {
    if (x == bottom) continue;
    std::vector<std::size_t> below;
    for (std::size_t y = 0; y < m; ++y)
      if (y != x && leq(y, x)) below.push_back(y);
    int covers = 0;
    for (std::size_t y : below) {
      bool maximal = true;
      for (std::size_t z : below)
        if (z != y && leq(y, z) && !leq(z, y)) {
          maximal = false;
          break;
        }
      if (maximal) ++covers;
    }
    if (covers == 1) ji.push_back(x);
  }
  if (ji.size() > 64) throw Error(ErrorKind::FrameTooLarge, "more than 64 join-irreducibles");
  const int k = static_cast<int>(ji.size());
  std::vector<Mask> ms(m, 0);
  for (std::size_t x = 0; x < m; ++x)
    for (int j = 0; j < k; ++j)
      if (leq(ji[j], x)) ms[x] |= Mask{1} << j;
  std::vector<Mask> sorted(ms);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::NotAFrame, "lattice is not distributive");
  Realized r;
  try {
    // Validate, then mark the base as join-irreducibles rather than user points.
    r.frame = std::make_shared<const FiniteFrame>(k, frame_from_masks(k, sorted)->masks(), false);
  } catch (const Error&) {
    throw Error(ErrorKind::NotAFrame, "lattice is not distributive");
  }
  if (r.frame->size() != m) throw Error(ErrorKind::NotAFrame, "lattice is not distributive");
  r.new_id.resize(m);
  for (std::size_t x = 0; x < m; ++x) r.new_id[x] = r.frame->must_id(ms[x]);
  return r;
}

FrameMap FrameMap::make(FramePtr source, FramePtr target, std::vector<Elem> preimage) {
  const auto& s = *source;
  const auto& t = *target;
  if (preimage.size() != t.size()) throw Error(ErrorKind::NotAFrameMap, "preimage must be total on the target");
  for (Elem v : preimage)
    if (v >= s.size()) throw Error(ErrorKind::NotAFrameMap, "preimage value out of range");
  if (preimage[t.bottom()] != s.bottom())
    throw Error(ErrorKind::NotAFrameMap, "bottom not preserved", {t.bottom()});
  if (preimage[t.top()] != s.top()) throw Error(ErrorKind::NotAFrameMap, "top not preserved", {t.top()});
  // Joins with coprimes generate all binary joins, meets with primes all meets.
  for (Elem v = 0; v < t.size(); ++v) {
    for (Elem c : t.coprimes())
      if (preimage[t.join(v, c)] != s.join(preimage[v], preimage[c]))
        throw Error(ErrorKind::NotAFrameMap, "join not preserved", {v, c});
    for (Elem p : t.primes())
      if (preimage[t.meet(v, p)] != s.meet(preimage[v], preimage[p]))
        throw Error(ErrorKind::NotAFrameMap, "meet not preserved", {v, p});
  }
  return FrameMap{std::move(source), std::move(target), std::move(preimage)};
}

FrameMap FrameMap::identity(FramePtr f) {
  std::vector<Elem> pre(f->size());
  for (Elem i = 0; i < pre.size(); ++i) pre[i] = i;
  return FrameMap{f, f, std::move(pre)};
}

Elem FrameMap::right_adjoint(Elem u) const {
  Mask m = 0;
  for (Elem v = 0; v < target->size(); ++v)
    if (source->leq(preimage[v], u)) m |= target->mask(v);
  return target->must_id(m);
}

DoubleNegation double_negation_frame(const FramePtr& f) {
  std::vector<Elem> reg;
  for (Elem a = 0; a < f->size(); ++a)
    if (f->neg(f->neg(a)) == a) reg.push_back(a);
  DoubleNegation out;
  std::vector<Elem> amb_to_reg(f->size(), kNoElem);
  if (reg.size() == f->size()) {
    out.frame = f;
    out.to_ambient = reg;
    for (Elem a = 0; a < f->size(); ++a) amb_to_reg[a] = a;
  } else {
    auto r = realize_lattice(reg.size(), [&](std::size_t i, std::size_t j) { return f->leq(reg[i], reg[j]); });
    out.frame = r.frame;
    out.to_ambient.assign(r.frame->size(), kNoElem);
    for (std::size_t i = 0; i < reg.size(); ++i) {
      out.to_ambient[r.new_id[i]] = reg[i];
      amb_to_reg[reg[i]] = r.new_id[i];
    }
  }
  if (!out.frame->is_boolean()) throw Error(ErrorKind::NotAFrame, "regular elements do not form a Boolean frame");
  std::vector<Elem> pre(f->size());
  for (Elem a = 0; a < f->size(); ++a) pre[a] = amb_to_reg[f->neg(f->neg(a))];
  out.map = FrameMap::make(out.frame, f, std::move(pre));
  return out;
}

IdealFrame ideal_frame(const FramePtr& fp) {
  const auto& f = *fp;
  const std::size_t m = f.size();
  IdealFrame out;
  out.ideals.resize(m);
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y)
      if (f.leq(y, x)) out.ideals[x].push_back(y);
  // Every principal ideal is an ideal.
  for (Elem x = 0; x < m; ++x)
    for (Elem a : out.ideals[x])
      for (Elem b : out.ideals[x])
        if (!f.leq(f.join(a, b), x)) throw Error(ErrorKind::NotAFrame, "principal ideal not join-closed");
  if (m <= 64) {
    // Enumerate all join-closed downsets, deciding elements in id order
    // (a linear extension, since ids follow numeric mask order).
    std::vector<Mask> lower(m, 0);
    std::vector<std::vector<std::pair<Elem, Elem>>> splits(m);
    for (Elem x = 0; x < m; ++x)
      for (Elem y = 0; y < x; ++y)
        if (f.leq(y, x)) lower[x] |= Mask{1} << y;
    for (Elem a = 0; a < m; ++a)
      for (Elem b = a + 1; b < m; ++b) {
        Elem j = f.join(a, b);
        if (j != a && j != b) splits[j].push_back({a, b});
      }
    std::vector<Mask> found;
    std::function<void(Elem, Mask)> rec = [&](Elem k, Mask cur) {
      if (k == m) {
        if (cur) found.push_back(cur);
        return;
      }
      bool forced = false;
      for (auto [a, b] : splits[k])
        if ((cur >> a & 1) && (cur >> b & 1)) forced = true;
      if (!forced) rec(k + 1, cur);
      if (subset(lower[k], cur)) rec(k + 1, cur | Mask{1} << k);
    };
    rec(0, 0);
    out.ideal_count = found.size();
    out.enumerated = true;
    std::vector<Mask> principal(m, 0);
    for (Elem x = 0; x < m; ++x)
      for (Elem y : out.ideals[x]) principal[x] |= Mask{1} << y;
    std::sort(principal.begin(), principal.end());
    std::sort(found.begin(), found.end());
    if (found != principal) throw Error(ErrorKind::NotAFrame, "found a non-principal ideal");
  } else {
    out.ideal_count = m;
  }
  auto r = realize_lattice(m, [&](std::size_t i, std::size_t j) { return f.leq(static_cast<Elem>(i), static_cast<Elem>(j)); });
  out.frame = r.frame;
  out.iso = r.new_id;
  return out;
}

std::vector<Elem> primes_by_definition(const FiniteFrame& f) {
  std::vector<Elem> out;
  for (Elem p = 0; p < f.size(); ++p) {
    if (p == f.top()) continue;
    bool prime = true;
    for (Elem a = 0; a < f.size() && prime; ++a)
      for (Elem b = 0; b < f.size() && prime; ++b)
        if (f.leq(f.meet(a, b), p) && !f.leq(a, p) && !f.leq(b, p)) prime = false;
    if (prime) out.push_back(p);
  }
  return out;
}

std::vector<Elem> coprimes_by_definition(const FiniteFrame& f) {
  std::vector<Elem> out;
  for (Elem c = 0; c < f.size(); ++c) {
    if (c == f.bottom()) continue;
    bool coprime = true;
    for (Elem a = 0; a < f.size() && coprime; ++a)
      for (Elem b = 0; b < f.size() && coprime; ++b)
        if (f.leq(c, f.join(a, b)) && !f.leq(c, a) && !f.leq(c, b)) coprime = false;
    if (coprime) out.push_back(c);
  }
  return out;
}

CheckReport check_heyting_laws(const FiniteFrame& f, const Budget& budget) {
  const std::uint64_t m = f.size();
  std::uint64_t tuples = 0;
  if (f.neg(f.bottom()) != f.top()) return CheckReport::failed("heyting", {f.bottom()}, "not bottom is not top");
  for (Elem x = 0; x < m; ++x) {
    Elem nx = f.neg(x), nnx = f.neg(nx);
    if (!f.leq(x, nnx)) return CheckReport::failed("heyting", {x}, "x <= not not x");
    if (f.neg(nnx) != nx) return CheckReport::failed("heyting", {x}, "triple negation");
    for (Elem y = 0; y < m; ++y) {
      ++tuples;
      Elem ny = f.neg(y), xy = f.meet(x, y);
      if (f.neg(f.neg(xy)) != f.meet(nnx, f.neg(ny)))
        return CheckReport::failed("heyting", {x, y}, "double negation preserves meets");
      if (f.neg(f.join(x, y)) != f.meet(nx, ny))
        return CheckReport::failed("heyting", {x, y}, "negation turns joins into meets");
      if ((xy == f.bottom()) != f.leq(x, ny))
        return CheckReport::failed("heyting", {x, y}, "disjointness versus negation");
    }
  }
  bool exhaustive = m * m * m <= budget.max_tuples / 8;
  auto adj = [&](Elem x, Elem y, Elem z) { return f.leq(f.meet(x, y), z) == f.leq(x, f.heyting(y, z)); };
  if (exhaustive) {
    for (Elem y = 0; y < m; ++y)
      for (Elem z = 0; z < m; ++z) {
        Elem h = f.heyting(y, z);
        for (Elem x = 0; x < m; ++x) {
          ++tuples;
          if (f.leq(f.meet(x, y), z) != f.leq(x, h)) return CheckReport::failed("heyting", {x, y, z}, "adjunction");
        }
      }
  } else {
    std::mt19937_64 rng(budget.seed);
    for (std::uint64_t s = 0; s < budget.samples; ++s) {
      Elem x = rng() % m, y = rng() % m, z = rng() % m;
      ++tuples;
      if (!adj(x, y, z)) return CheckReport::failed("heyting", {x, y, z}, "adjunction");
    }
  }
  return CheckReport::ok("heyting", tuples, exhaustive);
}

CheckReport check_galois(const FrameMap& map) {
  const auto& s = *map.source;
  const auto& t = *map.target;
  std::vector<Elem> ra(s.size());
  for (Elem u = 0; u < s.size(); ++u) ra[u] = map.right_adjoint(u);
  std::uint64_t tuples = 0;
  for (Elem u = 0; u < s.size(); ++u)
    for (Elem v = 0; v < t.size(); ++v) {
      ++tuples;
      if (s.leq(map(v), u) != t.leq(v, ra[u])) return CheckReport::failed("galois", {u, v});
    }
  return CheckReport::ok("galois", tuples);
}

}  // namespace ordloc
