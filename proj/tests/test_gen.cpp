#include "doctest.h"
#include "support.hpp"

using namespace ordloc;
using oracle::error_of;
using oracle::pts;

namespace {

int index_of(const OrderedSpace& s, const std::string& name) {
  const auto& n = s.names();
  auto it = std::find(n.begin(), n.end(), name);
  REQUIRE(it != n.end());
  return static_cast<int>(it - n.begin());
}

}  // namespace

TEST_SUITE("gen") {
  TEST_CASE("minkowski grids") {
    GridSpec g;
    auto m33 = minkowski_grid(g);
    CHECK(m33.size() == 9);
    CHECK(m33.order_pairs().size() == 23);
    for (int w : {2, 3, 4}) {
      GridSpec s;
      s.t_size = s.x_size = w;
      auto sp = minkowski_grid(s);
      std::size_t strict = 0;
      for (int i = 0; i < w * w; ++i)
        for (int j = 0; j < w * w; ++j) {
          CHECK(sp.leq(i, j) == oracle::grid_leq(i, j, w));
          strict += i != j && oracle::grid_leq(i, j, w);
          if (i != j && sp.leq(i, j)) CHECK(!sp.leq(j, i));
        }
      CHECK(sp.order_pairs().size() == strict);
    }
    GridSpec row;
    row.t_size = 1;
    row.x_size = 4;
    CHECK(minkowski_grid(row).order_pairs().empty());
    GridSpec wide;
    wide.x_size = 3;
    wide.up_slope = {1, 2};
    wide.down_slope = {1, 2};
    auto half = minkowski_grid(wide);
    CHECK(!half.leq(0, 4));
    CHECK(half.leq(0, 7));
  }

  TEST_CASE("grid errors") {
    GridSpec g;
    g.down_slope = {2, 1};
    auto e = error_of([&] { minkowski_grid(g); });
    REQUIRE(e);
    CHECK(e->kind() == ErrorKind::SlopesUnequal);
    GridSpec big;
    big.t_size = 9;
    big.x_size = 8;
    auto e2 = error_of([&] { minkowski_grid(big); });
    REQUIRE(e2);
    CHECK(e2->kind() == ErrorKind::FrameTooLarge);
    GridSpec bad;
    bad.defects = {{5, 0}};
    auto e3 = error_of([&] { minkowski_grid(bad); });
    REQUIRE(e3);
    CHECK(e3->kind() == ErrorKind::MalformedInput);
  }

  TEST_CASE("defects") {
    GridSpec g;
    g.light_cone_lattice = true;
    g.defects = {{1, 1}};
    auto one = minkowski_grid(g);
    CHECK(one.size() == 8);
    CHECK(one.leq(index_of(one, "(0,1)"), index_of(one, "(2,1)")));
    g.defects = {{1, 1}, {1, 0}, {1, 2}};
    auto three = minkowski_grid(g);
    CHECK(three.size() == 6);
    CHECK(!three.leq(index_of(three, "(0,1)"), index_of(three, "(2,1)")));
    // The lattice variant forbids standing still.
    GridSpec lat;
    lat.light_cone_lattice = true;
    auto l = minkowski_grid(lat);
    CHECK(!l.leq(index_of(l, "(0,0)"), index_of(l, "(1,0)")));
    CHECK(l.leq(index_of(l, "(0,0)"), index_of(l, "(2,0)")));
    // Removing a point without the lattice variant blocks shortcuts through it.
    GridSpec plain;
    plain.t_size = 3;
    plain.x_size = 1;
    plain.defects = {{1, 0}};
    auto col = minkowski_grid(plain);
    CHECK(col.order_pairs().empty());
  }

  TEST_CASE("two speed grids") {
    GridSpec g;
    g.t_size = 2;
    g.down_slope = {2, 1};
    auto ts = two_speed_grid(g);
    const auto& f = ts.frame();
    Elem u = f.must_id(pts({{0, 2}})), v = f.must_id(pts({{1, 0}}));
    CHECK(f.meet(ts.up(u), v) == f.bottom());
    CHECK(f.meet(u, ts.down(v)) != f.bottom());
    CHECK(check_axiom(ts, "parallel").fail());
    for (Slope up : {Slope{1, 1}, Slope{1, 2}, Slope{3, 2}}) {
      GridSpec s;
      s.up_slope = s.down_slope = up;
      auto same = two_speed_grid(s);
      auto em = induced_locale(minkowski_grid(s));
      CHECK(same.ups() == em.ups());
      CHECK(same.downs() == em.downs());
      CHECK(check_axiom(same, "parallel").pass());
    }
    GridSpec flat;
    flat.t_size = 1;
    flat.down_slope = {3, 1};
    auto fl = two_speed_grid(flat);
    for (Elem w = 0; w < fl.size(); ++w) CHECK((fl.up(w) == w && fl.down(w) == w));
    CHECK(check_axiom(fl, "parallel").pass());
  }

  TEST_CASE("vertical grid") {
    auto v = vertical_grid(3, 3);
    for (int x = 0; x < 3; ++x) {
      Mask col = pts({{0, x}, {1, x}, {2, x}});
      CHECK(up_cone(v, pts({{0, x}})) == col);
      CHECK(pointwise_domain_of_dependence(v, pts({{0, x}}), Direction::Future) == col);
    }
    auto inst = suite_instance("vertical33");
    const auto& f = inst.locale->frame();
    auto d = domain_of_dependence(*inst.locale, f.must_id(pts({{0, 1}})), Direction::Future);
    CHECK(d.exact);
    CHECK(f.mask(d.value) == pts({{0, 1}, {1, 1}, {2, 1}}));
  }

  TEST_CASE("fixed examples") {
    auto n = non_OC_example();
    CHECK(n.names() == std::vector<std::string>{"*", "a", "0", "b"});
    CHECK(n.topology()->masks() == std::vector<Mask>{0, 1, 0b1110, 0b1111});
    CHECK(n.order_pairs() == std::vector<std::pair<int, int>>{{0, 2}});
    auto b = bowtie();
    CHECK(b.names() == std::vector<std::string>{"z", "x", "y", "t"});
    CHECK(b.topology()->masks() == std::vector<Mask>{0, 1, 8, 9, 0b1011, 0b1101, 0b1111});
    CHECK(b.order_pairs() == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}});
  }

  TEST_CASE("topologies") {
    CHECK(topology_closure(2, {1}) == std::vector<Mask>{0, 1, 3});
    CHECK(topology_closure(3, {3, 6}) == std::vector<Mask>{0, 2, 3, 6, 7});
    auto v = vertical_grid(2, 1);
    auto t = diamond_basis_topology(2, {v.up_of(0), v.up_of(1)}, {v.down_of(0), v.down_of(1)});
    CHECK(t->masks() == std::vector<Mask>{0, 3});
    GridSpec d;
    d.topology = GridTopology::DiamondBasis;
    CHECK(minkowski_grid(d).topology()->size() == 512);
  }

  TEST_CASE("standard suite") {
    auto suite = standard_suite();
    CHECK(suite.size() == 12);
    for (const auto& inst : suite) {
      CAPTURE(inst.name);
      CHECK(inst.locale);
      CHECK(inst.point_names.size() == static_cast<std::size_t>(inst.locale->frame().base()));
      // Deterministic: regenerating gives an identical document.
      CHECK(serialize(document_from_instance(inst)) == serialize(document_from_instance(suite_instance(inst.name))));
    }
    CHECK_THROWS_AS(suite_instance("nope"), Error);
  }
}
