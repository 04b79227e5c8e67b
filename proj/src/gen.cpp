#include "ordloc/gen.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ordloc {

namespace {

bool within(Slope s, int dx, int dt) { return dt >= 0 && static_cast<long long>(dx < 0 ? -dx : dx) * s.den <= static_cast<long long>(s.num) * dt; }

std::string coord_name(int t, int x) { return "(" + std::to_string(t) + "," + std::to_string(x) + ")"; }

void validate(const GridSpec& g) {
  if (g.t_size < 1 || g.x_size < 1) throw Error(ErrorKind::MalformedInput, "grid sizes must be positive");
  if (g.t_size * g.x_size > 64) throw Error(ErrorKind::FrameTooLarge, "grids are limited to 64 points");
  for (Slope s : {g.up_slope, g.down_slope})
    if (s.num <= 0 || s.den <= 0) throw Error(ErrorKind::MalformedInput, "slopes must be positive");
  for (auto [t, x] : g.defects)
    if (t < 0 || x < 0 || t >= g.t_size || x >= g.x_size)
      throw Error(ErrorKind::MalformedInput, "defect out of bounds", {t, x});
}

FramePtr discrete(int n) {
  std::vector<Mask> all(std::size_t{1} << n);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return std::make_shared<const FiniteFrame>(n, std::move(all), true);
}

}  // namespace

std::vector<Mask> topology_closure(int n, const std::vector<Mask>& family) {
  std::set<Mask> meets{0, full_mask(n)};
  for (Mask a : family) meets.insert(a & full_mask(n));
  // Intersection closure first; unions of an intersection-closed family stay intersection-closed.
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Mask> cur(meets.begin(), meets.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) grew |= meets.insert(cur[i] & cur[j]).second;
  }
  std::set<Mask> opens(meets.begin(), meets.end());
  std::vector<Mask> gens(meets.begin(), meets.end());
  std::vector<Mask> frontier(opens.begin(), opens.end());
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (Mask a : frontier)
      for (Mask g : gens)
        if (opens.insert(a | g).second) next.push_back(a | g);
    frontier = std::move(next);
  }
  return {opens.begin(), opens.end()};
}

FramePtr diamond_basis_topology(int n, const std::vector<Mask>& up, const std::vector<Mask>& down) {
  std::vector<Mask> fam;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (p != q && (up[p] >> q & 1)) fam.push_back(up[p] & down[q]);
  return frame_from_masks(n, topology_closure(n, fam));
}

OrderedSpace minkowski_grid(const GridSpec& g) {
  validate(g);
  if (!(g.up_slope == g.down_slope)) throw Error(ErrorKind::SlopesUnequal, "unequal slopes: use two_speed_grid");
  std::vector<int> index(g.t_size * g.x_size, -1);
  std::vector<std::pair<int, int>> coords;
  std::vector<std::string> names;
  for (int t = 0; t < g.t_size; ++t)
    for (int x = 0; x < g.x_size; ++x) {
      if (std::find(g.defects.begin(), g.defects.end(), std::pair{t, x}) != g.defects.end()) continue;
      index[t * g.x_size + x] = static_cast<int>(coords.size());
      coords.push_back({t, x});
      names.push_back(coord_name(t, x));
    }
  int n = static_cast<int>(coords.size());
  std::vector<std::pair<int, int>> pairs;
  bool stepwise = !g.defects.empty() || g.light_cone_lattice;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto [t, x] = coords[i];
      auto [t2, x2] = coords[j];
      if (i == j) continue;
      if (!stepwise) {
        if (t2 > t && within(g.up_slope, x2 - x, t2 - t)) pairs.push_back({i, j});
      } else if (t2 == t + 1) {
        int dx = x2 - x;
        bool move = g.light_cone_lattice ? (dx == 1 || dx == -1) : within(g.up_slope, dx, 1);
        if (move) pairs.push_back({i, j});
      }
    }
  // The space constructor closes the step relation transitively.
  OrderedSpace bare(n, pairs, discrete(n), names);
  FramePtr top;
  switch (g.topology) {
    case GridTopology::Discrete: top = bare.topology(); break;
    case GridTopology::DiamondBasis: {
      std::vector<Mask> up(n), down(n);
      for (int i = 0; i < n; ++i) up[i] = bare.up_of(i), down[i] = bare.down_of(i);
      top = diamond_basis_topology(n, up, down);
      break;
    }
    case GridTopology::Custom: top = frame_from_masks(n, g.custom_opens); break;
  }
  return OrderedSpace(n, pairs, top, names);
}

OrderedLocale two_speed_grid(const GridSpec& g) {
  validate(g);
  if (!g.defects.empty() || g.topology != GridTopology::Discrete)
    throw Error(ErrorKind::MalformedInput, "two-speed grids are discrete and defect-free");
  int n = g.t_size * g.x_size;
  if (n > 16) throw Error(ErrorKind::FrameTooLarge, "two-speed grids are limited to 16 points");
  std::vector<Mask> up(n, 0), down(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int t = i / g.x_size, x = i % g.x_size, t2 = j / g.x_size, x2 = j % g.x_size;
      if (within(g.up_slope, x2 - x, t2 - t)) up[i] |= Mask{1} << j;
      if (within(g.down_slope, x2 - x, t - t2)) down[i] |= Mask{1} << j;
    }
  FramePtr f = discrete(n);
  ConePair cp{f, std::vector<Elem>(f->size()), std::vector<Elem>(f->size())};
  for (Elem u = 0; u < f->size(); ++u) {
    Mask a = 0, b = 0;
    for_each_bit(f->mask(u), [&](int p) { a |= up[p], b |= down[p]; });
    cp.u[u] = static_cast<Elem>(a);
    cp.d[u] = static_cast<Elem>(b);
  }
  return OrderedLocale::from_monads(cp);
}

std::vector<std::string> grid_names(int t_size, int x_size) {
  std::vector<std::string> out;
  for (int i = 0; i < t_size * x_size; ++i) out.push_back(coord_name(i / x_size, i % x_size));
  return out;
}

OrderedSpace vertical_grid(int t_size, int x_size) {
  if (t_size < 1 || x_size < 1 || t_size * x_size > 64) throw Error(ErrorKind::MalformedInput, "bad grid size");
  int n = t_size * x_size;
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    names.push_back(coord_name(i / x_size, i % x_size));
    if (i + x_size < n) pairs.push_back({i, i + x_size});
  }
  return OrderedSpace(n, pairs, discrete(n), names);
}

OrderedSpace non_OC_example() {
  // * = 0, a = 1, 0 = 2, b = 3.
  return OrderedSpace(4, {{0, 2}}, frame_from_masks(4, {0b0000, 0b0001, 0b1110, 0b1111}), {"*", "a", "0", "b"});
}

OrderedSpace bowtie() {
  // z = 0, x = 1, y = 2, t = 3.
  return OrderedSpace(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}},
                      frame_from_masks(4, {0b0000, 0b0001, 0b1000, 0b1001, 0b1011, 0b1101, 0b1111}),
                      {"z", "x", "y", "t"});
}

namespace {

Instance from_space(std::string name, OrderedSpace s) {
  auto sp = std::make_shared<const OrderedSpace>(std::move(s));
  return {std::move(name), sp, std::make_shared<const OrderedLocale>(induced_locale(*sp)), sp->names()};
}

GridSpec square(int k) {
  GridSpec g;
  g.t_size = g.x_size = k;
  return g;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"M22",      "M33",      "M44",      "vertical33",
                                              "twospeed23", "nonOC",  "bowtie",   "codiscrete",
                                              "discrete", "equality", "chain3",   "lightcone33-defect"};
  return names;
}

}  // namespace

Instance suite_instance(const std::string& name) {
  if (name == "M22") return from_space(name, minkowski_grid(square(2)));
  if (name == "M33") return from_space(name, minkowski_grid(square(3)));
  if (name == "M44") return from_space(name, minkowski_grid(square(4)));
  if (name == "vertical33") return from_space(name, vertical_grid(3, 3));
  if (name == "twospeed23") {
    GridSpec g;
    g.t_size = 2;
    g.down_slope = {2, 1};
    return {name, nullptr, std::make_shared<const OrderedLocale>(two_speed_grid(g)), grid_names(2, 3)};
  }
  if (name == "nonOC") return from_space(name, non_OC_example());
  if (name == "bowtie") return from_space(name, bowtie());
  if (name == "codiscrete") return from_space(name, OrderedSpace(2, {}, frame_from_masks(2, {0, 3})));
  if (name == "discrete") return from_space(name, OrderedSpace(3, {}, discrete(3)));
  if (name == "equality")
    return {name, nullptr, std::make_shared<const OrderedLocale>(OrderedLocale::from_relation(discrete(2), {})),
            {"0", "1"}};
  if (name == "chain3") return from_space(name, OrderedSpace(3, {{0, 1}, {1, 2}}, discrete(3)));
  if (name == "lightcone33-defect") {
    GridSpec g = square(3);
    g.light_cone_lattice = true;
    g.defects = {{1, 1}};
    return from_space(name, minkowski_grid(g));
  }
  throw Error(ErrorKind::MalformedInput, "unknown suite instance: " + name);
}

std::vector<Instance> standard_suite() {
  std::vector<Instance> out;
  for (const auto& n : suite_names()) out.push_back(suite_instance(n));
  return out;
}

}  // namespace ordloc
