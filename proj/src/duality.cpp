#include "ordloc/duality.hpp"

#include <algorithm>
#include <random>

namespace ordloc {

namespace {

std::vector<Elem> ordered_primes(const FiniteFrame& f) {
  std::vector<Elem> ps = f.primes();
  if (!f.point_realized()) return ps;
  // Key each prime by the first base point p with M(p) = P.
  std::vector<Mask> comp_cl(f.base(), 0);
  for (Mask u : f.masks())
    for (int p = 0; p < f.base(); ++p)
      if (!(u >> p & 1)) comp_cl[p] |= u;
  auto key = [&](Elem pr) {
    for (int p = 0; p < f.base(); ++p)
      if (comp_cl[p] == f.mask(pr)) return p;
    return f.base();
  };
  std::stable_sort(ps.begin(), ps.end(), [&](Elem a, Elem b) { return key(a) < key(b); });
  return ps;
}

Mask pt_mask(const FiniteFrame& f, const std::vector<Elem>& primes, Elem u) {
  Mask r = 0;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (!f.leq(u, primes[i])) r |= Mask{1} << i;
  return r;
}

}  // namespace

PointsSpace points_space(const OrderedLocale& ol, const std::vector<std::string>& names) {
  const auto& f = ol.frame();
  std::vector<Elem> primes = ordered_primes(f);
  const int n = static_cast<int>(primes.size());
  std::vector<Mask> opens;
  for (Elem u = 0; u < f.size(); ++u) opens.push_back(pt_mask(f, primes, u));
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  if (opens.size() != f.size()) throw Error(ErrorKind::NotAFrame, "frame is not spatial");
  FramePtr top = frame_from_masks(n, opens);
  // P <= Q iff every U outside P has up U outside Q, and every V outside Q
  // has down V outside P.
  std::vector<std::pair<int, int>> order;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool le = true;
      for (Elem u = 0; u < f.size() && le; ++u) {
        if (!f.leq(u, primes[i]) && f.leq(ol.up(u), primes[j])) le = false;
        if (!f.leq(u, primes[j]) && f.leq(ol.down(u), primes[i])) le = false;
      }
      if (le && i != j) order.push_back({i, j});
    }
  std::vector<std::string> nm = names;
  if (static_cast<int>(nm.size()) != n) {
    nm.clear();
    for (int i = 0; i < n; ++i) nm.push_back("P" + std::to_string(primes[i]));
  }
  OrderedSpace sp(n, order, top, nm);
  CheckReport t0 = is_T0_ordered(sp);
  CheckReport oc = has_open_cones(sp);
  return PointsSpace{std::move(sp), std::move(primes), std::move(t0), std::move(oc)};
}

Mask pt(const OrderedLocale& ol, const PointsSpace& ps, Elem u) { return pt_mask(ol.frame(), ps.primes, u); }

std::vector<Elem> filter_of_prime(const FiniteFrame& f, Elem p) {
  std::vector<Elem> out;
  for (Elem u = 0; u < f.size(); ++u)
    if (!f.leq(u, p)) out.push_back(u);
  return out;
}

Elem prime_of_filter(const FiniteFrame& f, const std::vector<Elem>& filter) {
  std::vector<char> in(f.size(), 0);
  for (Elem u : filter) in[u] = 1;
  Mask m = 0;
  for (Elem u = 0; u < f.size(); ++u)
    if (!in[u]) m |= f.mask(u);
  return f.must_id(m);
}

UnitReport unit_check(const OrderedSpace& s) {
  const auto& f = *s.topology();
  OrderedLocale loc = induced_locale(s, Variant::EM);
  PointsSpace ps = points_space(loc);
  UnitReport r;
  // eta(p) = the point whose prime is the union of opens missing p.
  std::vector<int> eta(s.size(), -1);
  for (int p = 0; p < s.size(); ++p) {
    Mask mp = 0;
    for (Mask u : f.masks())
      if (!(u >> p & 1)) mp |= u;
    Elem pr = f.must_id(mp);
    for (std::size_t i = 0; i < ps.primes.size(); ++i)
      if (ps.primes[i] == pr) eta[p] = static_cast<int>(i);
  }
  r.injective = true;
  std::vector<char> hit(ps.primes.size(), 0);
  for (int p = 0; p < s.size(); ++p) {
    if (hit[eta[p]]) r.injective = false;
    hit[eta[p]] = 1;
  }
  r.surjective = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  r.monotone = r.inverse_monotone = true;
  for (int p = 0; p < s.size(); ++p)
    for (int q = 0; q < s.size(); ++q) {
      bool lo = s.leq(p, q), hi = ps.space.leq(eta[p], eta[q]);
      if (lo && !hi && r.monotone) {
        r.monotone = false;
        r.monotone_witness = {static_cast<Elem>(p), static_cast<Elem>(q)};
      }
      if (hi && !lo && r.inverse_monotone) {
        r.inverse_monotone = false;
        r.inverse_witness = {static_cast<Elem>(p), static_cast<Elem>(q)};
      }
    }
  r.sober = is_sober(f);
  r.t0_ordered = is_T0_ordered(s).pass();
  r.open_cones = has_open_cones(s).pass();
  if (r.sober && r.t0_ordered && r.open_cones) {
    r.verdict = CheckReport::ok("fixed-point");
  } else {
    std::string why = !r.sober ? "not sober" : !r.open_cones ? "no open cones" : "not T0-ordered";
    r.verdict = CheckReport::failed("fixed-point", r.inverse_witness, why);
  }
  return r;
}

CheckReport counit_check(const OrderedLocale& ol) {
  const auto& f = ol.frame();
  PointsSpace ps = points_space(ol);  // throws if pt is not injective
  const auto& ft = *ps.space.topology();
  std::vector<Elem> pre(f.size());
  for (Elem u = 0; u < f.size(); ++u) pre[u] = ft.must_id(pt(ol, ps, u));
  FrameMap eps = FrameMap::make(ps.space.topology(), ol.frame_ptr(), pre);
  CheckReport spatial = CheckReport::ok("spatial", f.size());
  spatial.note = "pt is injective on every finite frame";
  CheckReport mono = is_monotone(eps, induced_locale(ps.space, Variant::EM), ol);
  mono.law = "counit-monotone";
  return combine("counit", {spatial, mono});
}

CheckReport check_axiom_P(const OrderedLocale& ol, const Budget& b) {
  const auto& f = ol.frame();
  PointsSpace ps = points_space(ol);
  std::vector<Mask> pts(f.size());
  for (Elem u = 0; u < f.size(); ++u) pts[u] = pt(ol, ps, u);
  for (Elem u = 0; u < f.size(); ++u) {
    if (up_cone(ps.space, pts[u]) != pts[ol.up(u)]) return CheckReport::failed("bullet", {u}, "up pt(U) = pt(up U)");
    if (down_cone(ps.space, pts[u]) != pts[ol.down(u)])
      return CheckReport::failed("bullet", {u}, "down pt(U) = pt(down U)");
  }
  CheckReport r = CheckReport::ok("bullet", f.size());
  if (!check_axiom(ol, "C-order", b).pass()) {
    r.note = "order transport skipped without C-order";
    return r;
  }
  auto em = [&](Elem u, Elem v) {
    return subset(pts[v], up_cone(ps.space, pts[u])) && subset(pts[u], down_cone(ps.space, pts[v]));
  };
  const std::uint64_t m = f.size();
  if (m * m <= b.max_tuples) {
    for (Elem u = 0; u < m; ++u)
      for (Elem v = 0; v < m; ++v)
        if (ol.rel(u, v) != em(u, v)) return CheckReport::failed("bullet", {u, v}, "U rel V iff pt(U) rel pt(V)");
    r.tuples += m * m;
  } else {
    std::mt19937_64 rng(b.seed);
    for (std::uint64_t i = 0; i < b.samples; ++i) {
      Elem u = rng() % m, v = rng() % m;
      if (ol.rel(u, v) != em(u, v)) {
        auto fr = CheckReport::failed("bullet", {u, v}, "U rel V iff pt(U) rel pt(V) (sampled)");
        fr.exhaustive = false;
        return fr;
      }
    }
    r.tuples += b.samples;
    r.exhaustive = false;
    r.note = "order transport sampled";
  }
  return r;
}

IdealPointSet ideal_points(const OrderedLocale& ol) {
  const auto& f = ol.frame();
  ConeFrame fut = futures_frame(ol);
  ConeFrame past = pasts_frame(ol);
  IdealPointSet out;
  for (Elem c : past.frame->coprimes()) out.ips.push_back(past.to_ambient[c]);
  for (Elem c : fut.frame->coprimes()) out.ifs.push_back(fut.to_ambient[c]);
  for (Elem p : fut.frame->primes()) out.future_points.push_back(fut.to_ambient[p]);
  for (Elem p : past.frame->primes()) out.past_points.push_back(past.to_ambient[p]);
  out.paired = check_axiom(ol, "parallel").pass() && check_regular_cones(ol).pass();
  if (out.paired) {
    auto negs = [&](const std::vector<Elem>& xs) {
      std::vector<Elem> r;
      for (Elem x : xs) r.push_back(f.neg(x));
      std::sort(r.begin(), r.end());
      return r;
    };
    auto sorted = [](std::vector<Elem> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    out.bijections_hold = negs(out.future_points) == sorted(out.ips) && negs(out.past_points) == sorted(out.ifs);
  }
  return out;
}

CheckReport double_negation_transport(const OrderedLocale& ol) {
  const auto& f = ol.frame();
  CheckReport reg = check_regular_cones(ol);
  if (!reg.pass())
    throw Error(ErrorKind::RegularConesRequired, "regular cones required",
                std::vector<long long>(reg.witness.begin(), reg.witness.end()));
  if (!check_axiom(ol, "C-order").pass()) throw Error(ErrorKind::PreconditionAxioms, "C-order required");
  DoubleNegation dn = double_negation_frame(ol.frame_ptr());
  OrderedLocale ri = order_from_map(dn.map, ol);
  std::vector<Elem> amb_to_reg(f.size(), kNoElem);
  for (Elem r = 0; r < dn.to_ambient.size(); ++r) amb_to_reg[dn.to_ambient[r]] = r;
  auto nn = [&](Elem u) { return amb_to_reg[f.neg(f.neg(u))]; };
  std::uint64_t tuples = 0;
  for (Elem u = 0; u < f.size(); ++u) {
    for (Elem v = 0; v < f.size(); ++v) {
      ++tuples;
      if (ri.rel(nn(u), nn(v)) != ol.rel(u, v)) return CheckReport::failed("dn-transport", {u, v}, "order transport");
    }
    if (dn.to_ambient[ri.up(nn(u))] != ol.up(u)) return CheckReport::failed("dn-transport", {u}, "up cone");
    if (dn.to_ambient[ri.down(nn(u))] != ol.down(u)) return CheckReport::failed("dn-transport", {u}, "down cone");
  }
  IdealPointSet a = ideal_points(ol), b = ideal_points(ri);
  std::vector<Elem> mapped;
  for (Elem x : b.ips) mapped.push_back(dn.to_ambient[x]);
  std::sort(mapped.begin(), mapped.end());
  std::vector<Elem> orig = a.ips;
  std::sort(orig.begin(), orig.end());
  if (mapped != orig) return CheckReport::failed("dn-transport", {}, "IP sets differ");
  return CheckReport::ok("dn-transport", tuples);
}

namespace {

bool is_triangle_ideal(int n, const std::vector<Mask>& rel, Mask s) {
  if (!s) return false;
  for (int x = 0; x < n; ++x) {
    if (!(s >> x & 1)) continue;
    for (int y = 0; y < n; ++y)
      if ((rel[y] >> x & 1) && !(s >> y & 1)) return false;  // J2
  }
  for (int x = 0; x < n; ++x) {
    if (!(s >> x & 1)) continue;
    for (int y = x; y < n; ++y) {
      if (!(s >> y & 1)) continue;
      if (!(rel[x] & rel[y] & s)) return false;  // J1
    }
  }
  return true;
}

}  // namespace

std::vector<Mask> triangle_ideals(int n, const std::vector<Mask>& rel) {
  if (n > 16) throw Error(ErrorKind::FrameTooLarge, "ideal enumeration is limited to 16 points");
  std::vector<Mask> out;
  for (Mask s = 1; s < (Mask{1} << n); ++s)
    if (is_triangle_ideal(n, rel, s)) out.push_back(s);
  return out;
}

CheckReport is_past_semi_full(int n, const std::vector<Mask>& rel) {
  auto below = [&](int x) {
    Mask r = 0;
    for (int y = 0; y < n; ++y)
      if (rel[y] >> x & 1) r |= Mask{1} << y;
    return r;
  };
  for (int x = 0; x < n; ++x)
    if (!below(x)) return CheckReport::failed("past-semi-full", {static_cast<Elem>(x)}, "no element below");
  for (int x = 0; x < n; ++x) {
    Mask bx = below(x);
    for (int y1 = 0; y1 < n; ++y1)
      for (int y2 = y1; y2 < n; ++y2) {
        if (!(bx >> y1 & 1) || !(bx >> y2 & 1)) continue;
        if (!(rel[y1] & rel[y2] & bx))
          return CheckReport::failed("past-semi-full",
                                     {static_cast<Elem>(y1), static_cast<Elem>(y2), static_cast<Elem>(x)},
                                     "no interpolant");
      }
  }
  return CheckReport::ok("past-semi-full", n);
}

CheckReport check_ideal_directed_joins(int n, const std::vector<Mask>& rel, const std::vector<Mask>& ideals) {
  std::uint64_t tuples = 0;
  for (Mask a : ideals)
    for (Mask b : ideals) {
      if (!subset(a, b) && !subset(b, a)) continue;
      ++tuples;
      Mask u = a | b;
      if (!std::binary_search(ideals.begin(), ideals.end(), u) || !is_triangle_ideal(n, rel, u))
        return CheckReport::failed("directed-joins", {}, "union of comparable ideals is not an ideal");
    }
  return CheckReport::ok("directed-joins", tuples);
}

}  // namespace ordloc
