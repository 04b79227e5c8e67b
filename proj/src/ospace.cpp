#include "ordloc/ospace.hpp"

namespace ordloc {

OrderedSpace::OrderedSpace(int n, const std::vector<std::pair<int, int>>& order, FramePtr topology,
                           std::vector<std::string> names)
    : n_(n), up_(n), down_(n), top_(std::move(topology)), names_(std::move(names)) {
  if (n < 0 || n > 64) throw Error(ErrorKind::MalformedInput, "point count must be in 0..64");
  if (top_->base() != n) throw Error(ErrorKind::MalformedInput, "topology base differs from point count");
  for (int x = 0; x < n; ++x) up_[x] = Mask{1} << x;
  for (auto [x, y] : order) {
    if (x < 0 || y < 0 || x >= n || y >= n) throw Error(ErrorKind::MalformedInput, "order pair out of range", {x, y});
    up_[x] |= Mask{1} << y;
  }
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < n; ++x)
      if (up_[x] >> k & 1) up_[x] |= up_[k];
  for (int x = 0; x < n; ++x) {
    down_[x] = 0;
    for (int y = 0; y < n; ++y)
      if (up_[y] >> x & 1) down_[x] |= Mask{1} << y;
  }
  if (names_.empty())
    for (int x = 0; x < n; ++x) names_.push_back(std::to_string(x));
  if (static_cast<int>(names_.size()) != n) throw Error(ErrorKind::MalformedInput, "one name per point required");
}

std::vector<std::pair<int, int>> OrderedSpace::order_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (x != y && leq(x, y)) out.push_back({x, y});
  return out;
}

Mask up_cone(const OrderedSpace& s, Mask a) {
  Mask r = 0;
  for_each_bit(a, [&](int x) { r |= s.up_of(x); });
  return r;
}

Mask down_cone(const OrderedSpace& s, Mask a) {
  Mask r = 0;
  for_each_bit(a, [&](int x) { r |= s.down_of(x); });
  return r;
}

CheckReport has_open_cones(const OrderedSpace& s) {
  const auto& f = *s.topology();
  for (Elem u = 0; u < f.size(); ++u) {
    if (!f.contains(up_cone(s, f.mask(u)))) return CheckReport::failed("open-cones", {u}, "up");
    if (!f.contains(down_cone(s, f.mask(u)))) return CheckReport::failed("open-cones", {u}, "down");
  }
  return CheckReport::ok("open-cones", f.size());
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::EM: return "em";
    case Variant::Upper: return "upper";
    case Variant::Lower: return "lower";
  }
  return "?";
}

OrderedLocale induced_locale(const OrderedSpace& s, Variant v) {
  const auto& f = *s.topology();
  ConePair cp{s.topology(), std::vector<Elem>(f.size()), std::vector<Elem>(f.size())};
  for (Elem u = 0; u < f.size(); ++u) {
    cp.u[u] = v == Variant::Lower ? f.top() : f.interior(up_cone(s, f.mask(u)));
    cp.d[u] = v == Variant::Upper ? f.top() : f.interior(down_cone(s, f.mask(u)));
  }
  return OrderedLocale::from_monads(cp);
}

namespace {

// Smallest open containing each point.
std::vector<Mask> neighbourhoods(const FiniteFrame& f) {
  std::vector<Mask> n(f.base(), full_mask(f.base()));
  for (Mask u : f.masks())
    for_each_bit(u, [&](int p) { n[p] &= u; });
  return n;
}

}  // namespace

CheckReport is_T0_ordered(const OrderedSpace& s) {
  auto nb = neighbourhoods(*s.topology());
  std::uint64_t tuples = 0;
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y) {
      if (s.leq(x, y)) continue;
      ++tuples;
      bool sep = !(up_cone(s, nb[x]) >> y & 1) || !(down_cone(s, nb[y]) >> x & 1);
      if (!sep)
        return CheckReport::failed("T0-ordered", {static_cast<Elem>(x), static_cast<Elem>(y)}, "points not separated");
    }
  return CheckReport::ok("T0-ordered", tuples);
}

bool is_T0(const FiniteFrame& f) {
  auto nb = neighbourhoods(f);
  for (int x = 0; x < f.base(); ++x)
    for (int y = x + 1; y < f.base(); ++y)
      if ((nb[x] >> y & 1) && (nb[y] >> x & 1)) return false;
  return true;
}

bool is_sober(const FiniteFrame& f) {
  // Every prime must be the complement of the closure of exactly one point.
  std::vector<Mask> comp_cl(f.base(), 0);
  for (Mask u : f.masks())
    for (int p = 0; p < f.base(); ++p)
      if (!(u >> p & 1)) comp_cl[p] |= u;
  for (Elem pr : f.primes()) {
    int count = 0;
    for (int p = 0; p < f.base(); ++p) count += comp_cl[p] == f.mask(pr);
    if (count != 1) return false;
  }
  return true;
}

bool is_pointwise_convex(const OrderedSpace& s, Mask c) { return subset(up_cone(s, c) & down_cone(s, c), c); }

CheckReport is_convex_space(const OrderedSpace& s) {
  const auto& f = *s.topology();
  auto nb = neighbourhoods(f);
  for (int p = 0; p < s.size(); ++p) {
    bool found = false;
    for (Elem u = 0; u < f.size() && !found; ++u) {
      Mask m = f.mask(u);
      found = (m >> p & 1) && subset(m, nb[p]) && is_pointwise_convex(s, m);
    }
    if (!found)
      return CheckReport::failed("convex-space", {static_cast<Elem>(p), f.must_id(nb[p])},
                                 "neighbourhood is not a union of convex opens");
  }
  return CheckReport::ok("convex-space", s.size());
}

namespace {

// Violation of chain coverage at target y: the least x0 <= y outside A
// whose past misses A. Returns -1 when none.
int chain_violation(const OrderedSpace& s, Mask a, int y) {
  if (a >> y & 1) return -1;
  Mask cand = s.down_of(y) & ~a;
  for (int x = 0; x < s.size(); ++x)
    if ((cand >> x & 1) && (s.down_of(x) & a) == 0) return x;
  return -1;
}

}  // namespace

CheckReport chain_covers_below(const OrderedSpace& s, Mask a, Mask u) {
  if (!subset(a, down_cone(s, u))) {
    CheckReport r = CheckReport::failed("chain-cover", {}, "A is not inside the past of U");
    for_each_bit(a & ~down_cone(s, u), [&](int x) {
      if (r.witness.empty()) r.witness.push_back(static_cast<Elem>(x));
    });
    return r;
  }
  for (int y = 0; y < s.size(); ++y) {
    if (!(u >> y & 1)) continue;
    int x0 = chain_violation(s, a, y);
    if (x0 >= 0) {
      std::vector<Elem> w{static_cast<Elem>(x0)};
      if (x0 != y) w.push_back(static_cast<Elem>(y));
      return CheckReport::failed("chain-cover", w, "chain avoids A");
    }
  }
  return CheckReport::ok("chain-cover", popcount(u));
}

Mask pointwise_domain_of_dependence(const OrderedSpace& s, Mask a, Direction dir) {
  if (dir == Direction::Past) {
    std::vector<std::pair<int, int>> rev;
    for (auto [x, y] : s.order_pairs()) rev.push_back({y, x});
    OrderedSpace op(s.size(), rev, s.topology(), s.names());
    return pointwise_domain_of_dependence(op, a, Direction::Future);
  }
  Mask out = 0;
  Mask reach = up_cone(s, a);
  for (int y = 0; y < s.size(); ++y)
    if ((reach >> y & 1) && chain_violation(s, a, y) < 0) out |= Mask{1} << y;
  return out;
}

std::vector<std::vector<bool>> specialisation_order(const FiniteFrame& f) {
  auto nb = neighbourhoods(f);
  std::vector<std::vector<bool>> out(f.base(), std::vector<bool>(f.base()));
  for (int x = 0; x < f.base(); ++x)
    for (int y = 0; y < f.base(); ++y) out[x][y] = nb[x] >> y & 1;
  return out;
}

bool is_monotone_point_map(const OrderedSpace& x, const OrderedSpace& y, const std::vector<int>& g) {
  for (int a = 0; a < x.size(); ++a)
    for (int b = 0; b < x.size(); ++b)
      if (x.leq(a, b) && !y.leq(g[a], g[b])) return false;
  return true;
}

bool cone_monotone_point_map(const OrderedSpace& x, const OrderedSpace& y, const std::vector<int>& g, Direction dir) {
  auto pre = [&](Mask b) {
    Mask r = 0;
    for (int p = 0; p < x.size(); ++p)
      if (b >> g[p] & 1) r |= Mask{1} << p;
    return r;
  };
  // Cones commute with unions, so singletons suffice.
  for (int q = 0; q < y.size(); ++q) {
    Mask b = Mask{1} << q;
    Mask lhs = dir == Direction::Future ? up_cone(x, pre(b)) : down_cone(x, pre(b));
    Mask rhs = pre(dir == Direction::Future ? up_cone(y, b) : down_cone(y, b));
    if (!subset(lhs, rhs)) return false;
  }
  return true;
}

}  // namespace ordloc
