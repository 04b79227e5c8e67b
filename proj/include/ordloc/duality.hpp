#pragma once

#include <string>
#include <vector>

#include "ordloc/ospace.hpp"

namespace ordloc {

// Points of an ordered locale, in prime form. On a point-realized frame the
// primes are listed in the order of the base points they come from, so for a
// sober space point i of the result is base point i.
struct PointsSpace {
  OrderedSpace space;
  std::vector<Elem> primes;  // point index -> prime element
  CheckReport t0_ordered;
  CheckReport open_cones;
};
PointsSpace points_space(const OrderedLocale& ol, const std::vector<std::string>& names = {});

// pt(U) as a mask over the point indices of ps.
Mask pt(const OrderedLocale& ol, const PointsSpace& ps, Elem u);
// Completely prime filter of a prime P: {U : U not below P}.
std::vector<Elem> filter_of_prime(const FiniteFrame& f, Elem p);
Elem prime_of_filter(const FiniteFrame& f, const std::vector<Elem>& filter);

struct UnitReport {
  bool injective = false;        // T0
  bool surjective = false;       // enough points (always in the finite case)
  bool monotone = false;
  bool inverse_monotone = false;
  bool sober = false;
  bool t0_ordered = false;
  bool open_cones = false;
  std::vector<Elem> monotone_witness;  // (p, q) with p <= q but images unrelated
  std::vector<Elem> inverse_witness;   // (p, q) with images related but p not <= q
  CheckReport verdict;                 // pass iff a fixed point
};
UnitReport unit_check(const OrderedSpace& s);

// Counit monotonicity plus spatiality of the frame.
CheckReport counit_check(const OrderedLocale& ol);
// Axiom (bullet): up pt(U) = pt(up U) and down pt(U) = pt(down U). When it
// holds together with C-order, also verifies U rel V iff pt(U) rel pt(V).
CheckReport check_axiom_P(const OrderedLocale& ol, const Budget& b = {});

struct IdealPointSet {
  std::vector<Elem> ips, ifs;                     // ambient ids
  std::vector<Elem> future_points, past_points;   // ambient ids
  bool paired = false;                            // parallel and regular cones
  bool bijections_hold = false;
};
IdealPointSet ideal_points(const OrderedLocale& ol);

CheckReport double_negation_transport(const OrderedLocale& ol);

// Relations for the triangle-ideal layer are row masks: rel[x] >> y & 1 iff x rel y.
std::vector<Mask> triangle_ideals(int n, const std::vector<Mask>& rel);
// Witness [x] for condition (i), [y1, y2, x] for condition (ii).
CheckReport is_past_semi_full(int n, const std::vector<Mask>& rel);
// Unions of comparable ideals are ideals (the finite content of directed joins).
CheckReport check_ideal_directed_joins(int n, const std::vector<Mask>& rel, const std::vector<Mask>& ideals);

}  // namespace ordloc
