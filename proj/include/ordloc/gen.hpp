#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ordloc/ospace.hpp"

namespace ordloc {

// Positive rational slope num/den.
struct Slope {
  int num = 1;
  int den = 1;
  bool operator==(const Slope&) const = default;
};

enum class GridTopology { Discrete, DiamondBasis, Custom };

// Points are named "(t,x)" and indexed t*x_size + x, skipping defects.
struct GridSpec {
  int t_size = 3;
  int x_size = 3;
  Slope up_slope;
  Slope down_slope;
  GridTopology topology = GridTopology::Discrete;
  std::vector<Mask> custom_opens;                 // over surviving point indices
  std::vector<std::pair<int, int>> defects;       // removed (t, x)
  bool light_cone_lattice = false;                // only moves (t,x) -> (t+1,x+-1)
};

// (t,x) <= (t',x') iff t' >= t and |x'-x| <= slope (t'-t). With defects or the
// lattice variant the order is reachability by single time steps through
// surviving points. Throws SlopesUnequal.
OrderedSpace minkowski_grid(const GridSpec& spec);
// Discrete grid with future cones of slope up_slope and past cones of slope down_slope.
OrderedLocale two_speed_grid(const GridSpec& spec);
// (t,x) <= (t',x') iff x = x' and t <= t'.
OrderedSpace vertical_grid(int t_size, int x_size);
// Points *, a, 0, b; opens {}, {*}, {a,0,b}, all; order * <= 0.
OrderedSpace non_OC_example();
// Points z, x, y, t; order z <= x, y <= t; opens {}, {z}, {t}, {z,t}, {x,z,t}, {y,z,t}, all.
OrderedSpace bowtie();

// Opens generated under finite unions and intersections by the diamonds up p ^ down q, p < q.
FramePtr diamond_basis_topology(int n, const std::vector<Mask>& up, const std::vector<Mask>& down);
// Closes a family of subsets of an n-point base under unions and intersections, adding {} and all.
std::vector<Mask> topology_closure(int n, const std::vector<Mask>& family);

struct Instance {
  std::string name;
  std::shared_ptr<const OrderedSpace> space;   // null for locale-only instances
  std::shared_ptr<const OrderedLocale> locale; // EM locale of the space when one exists
  std::vector<std::string> point_names;        // names of the frame's base points
};
// Names "(t,x)" for a defect-free grid.
std::vector<std::string> grid_names(int t_size, int x_size);

std::vector<Instance> standard_suite();
Instance suite_instance(const std::string& name);

}  // namespace ordloc
