#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ordloc/olocale.hpp"

namespace ordloc {

// Finite ordered topological space: points 0..n-1, a preorder stored as up
// and down masks per point, and a topology realized over the points.
class OrderedSpace {
 public:
  // Generator pairs (x, y) meaning x <= y; the reflexive-transitive closure is taken.
  OrderedSpace(int n, const std::vector<std::pair<int, int>>& order, FramePtr topology,
               std::vector<std::string> names = {});

  int size() const { return n_; }
  bool leq(int x, int y) const { return up_[x] >> y & 1; }
  Mask up_of(int x) const { return up_[x]; }
  Mask down_of(int x) const { return down_[x]; }
  const FramePtr& topology() const { return top_; }
  const std::vector<std::string>& names() const { return names_; }
  std::vector<std::pair<int, int>> order_pairs() const;  // non-reflexive pairs of the closure

 private:
  int n_;
  std::vector<Mask> up_, down_;
  FramePtr top_;
  std::vector<std::string> names_;
};

Mask up_cone(const OrderedSpace& s, Mask a);
Mask down_cone(const OrderedSpace& s, Mask a);

// Witness: the smallest failing open; note names the direction.
CheckReport has_open_cones(const OrderedSpace& s);

enum class Variant { EM, Upper, Lower };
const char* variant_name(Variant v);
OrderedLocale induced_locale(const OrderedSpace& s, Variant v = Variant::EM);

// Witness (x, y) in point ids.
CheckReport is_T0_ordered(const OrderedSpace& s);
bool is_T0(const FiniteFrame& topology);
bool is_sober(const FiniteFrame& topology);

bool is_pointwise_convex(const OrderedSpace& s, Mask c);
// Witness: a point p whose smallest neighbourhood contains no convex open
// around p, followed by that neighbourhood's element id.
CheckReport is_convex_space(const OrderedSpace& s);

// Witness chain (x0, y) in point ids; a single point when x0 = y.
CheckReport chain_covers_below(const OrderedSpace& s, Mask a, Mask u);
Mask pointwise_domain_of_dependence(const OrderedSpace& s, Mask a, Direction dir);

// x <= y iff every open containing x contains y.
std::vector<std::vector<bool>> specialisation_order(const FiniteFrame& topology);

// g maps points of x to points of y.
bool is_monotone_point_map(const OrderedSpace& x, const OrderedSpace& y, const std::vector<int>& g);
// up g^{-1}(A) within g^{-1}(up A) for all A (dir Future), dually for Past.
bool cone_monotone_point_map(const OrderedSpace& x, const OrderedSpace& y, const std::vector<int>& g, Direction dir);

}  // namespace ordloc
