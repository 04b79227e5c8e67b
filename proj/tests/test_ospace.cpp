#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace ordloc;
using oracle::grid_down;
using oracle::grid_up;
using oracle::discrete_frame;
using oracle::pts;

namespace {

Instance keep(const char* name) { return suite_instance(name); }

OrderedSpace random_space(std::mt19937& rng, int n) {
  std::vector<std::pair<int, int>> order;
  std::bernoulli_distribution coin(0.3);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (coin(rng)) order.push_back({x, y});
  return OrderedSpace(n, order, discrete_frame(n));
}

}  // namespace

TEST_SUITE("ospace") {
  TEST_CASE("cones") {
    auto m = keep("M33");
    const auto& s = *m.space;
    CHECK(up_cone(s, pts({{0, 1}})) == pts({{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}));
    CHECK(up_cone(s, 0) == 0);
    for (Mask a : {Mask{0x1}, Mask{0x22}, Mask{0x1c0}, Mask{0x155}}) {
      CHECK(up_cone(s, a) == grid_up(a, 9, 3));
      CHECK(down_cone(s, a) == grid_down(a, 9, 3));
      CHECK(up_cone(s, up_cone(s, a)) == up_cone(s, a));
      CHECK(subset(a, up_cone(s, a)));
    }
    OrderedSpace eq(4, {}, discrete_frame(4));
    for (Mask a = 0; a < 16; ++a) CHECK((up_cone(eq, a) == a && down_cone(eq, a) == a));
  }

  TEST_CASE("open cones") {
    CHECK(has_open_cones(*keep("M33").space).pass());
    CHECK(has_open_cones(*keep("bowtie").space).pass());
    auto n = keep("nonOC");
    auto r = has_open_cones(*n.space);
    REQUIRE(r.fail());
    CHECK(n.space->topology()->mask(r.witness[0]) == 0b0001);
    CHECK(r.note == "up");
    CHECK(up_cone(*n.space, 0b0001) == 0b0101);
  }

  TEST_CASE("induced locales") {
    auto m = keep("M33");
    const auto& ol = *m.locale;
    const auto& f = ol.frame();
    CHECK(ol.rel(f.must_id(pts({{0, 1}})), f.must_id(oracle::row(1))));
    for (Elem u = 0; u < f.size(); ++u) CHECK(ol.rel(u, u));
    OrderedSpace line(2, {}, discrete_frame(2));
    auto l = induced_locale(line);
    CHECK(!l.rel(l.frame().must_id(1), l.frame().must_id(2)));
    // With open cones the localic cones are the pointwise cones.
    for (Elem u = 0; u < f.size(); ++u) CHECK(f.mask(ol.up(u)) == grid_up(f.mask(u), 9, 3));
    // Without open cones they are interiors of the pointwise cones.
    auto n = keep("nonOC");
    const auto& nf = n.locale->frame();
    for (Elem u = 0; u < nf.size(); ++u)
      CHECK(nf.mask(n.locale->up(u)) == oracle::interior(nf.masks(), up_cone(*n.space, nf.mask(u))));
    auto upper = induced_locale(*m.space, Variant::Upper);
    auto lower = induced_locale(*m.space, Variant::Lower);
    Elem a = f.must_id(pts({{0, 0}})), b = f.must_id(pts({{2, 2}}));
    CHECK(!ol.rel(a, f.must_id(pts({{2, 2}, {0, 2}}))));
    CHECK(upper.rel(a, b));
    CHECK(!lower.rel(b, a));
  }

  TEST_CASE("separation and sobriety") {
    auto m = keep("M33");
    CHECK(is_T0_ordered(*m.space).pass());
    CHECK(is_sober(*m.space->topology()));
    auto b = keep("bowtie");
    auto r = is_T0_ordered(*b.space);
    REQUIRE(r.fail());
    CHECK(r.witness == std::vector<Elem>{1, 2});
    CHECK(is_sober(*b.space->topology()));
    auto c = keep("codiscrete");
    CHECK(!is_T0(*c.space->topology()));
    CHECK(!is_sober(*c.space->topology()));
    // Finite shortcut: sober iff T0.
    for (const auto& inst : standard_suite())
      if (inst.space) CHECK(is_sober(*inst.space->topology()) == is_T0(*inst.space->topology()));
  }

  TEST_CASE("convexity") {
    auto m = keep("M33");
    const auto& s = *m.space;
    CHECK(is_pointwise_convex(s, pts({{0, 0}, {1, 0}, {1, 1}, {2, 0}})));
    CHECK(!is_pointwise_convex(s, pts({{0, 0}, {2, 0}})));
    CHECK(is_pointwise_convex(s, full_mask(9)));
    auto b = keep("bowtie");
    CHECK(!is_pointwise_convex(*b.space, 0b1011));
    for (const auto& inst : standard_suite())
      if (inst.space && has_open_cones(*inst.space).pass()) {
        CAPTURE(inst.name);
        CHECK(is_convex_space(*inst.space).pass() == is_convex_locale(*inst.locale).pass());
      }
  }

  TEST_CASE("chain coverage") {
    auto m = keep("M33");
    const auto& s = *m.space;
    CHECK(chain_covers_below(s, oracle::row(0), pts({{2, 1}})).pass());
    // (0,2) lies outside the past of (1,0), so the check fails before any chain is examined.
    auto r = chain_covers_below(s, pts({{0, 0}, {0, 2}}), pts({{1, 0}}));
    REQUIRE(r.fail());
    CHECK(r.witness == std::vector<Elem>{2});
    auto r2 = chain_covers_below(s, pts({{0, 0}}), pts({{1, 0}}));
    REQUIRE(r2.fail());
    CHECK(r2.witness == std::vector<Elem>{1, 3});
    for (Mask u : {pts({{1, 1}}), oracle::row(2), Mask{0x1ff}}) CHECK(chain_covers_below(s, u, u).pass());
    // Chain coverage implies localic coverage on the open-cone grid.
    const auto& f = m.locale->frame();
    CoverageEngine eng(*m.locale);
    for (Mask a : {oracle::row(0), oracle::row(1), pts({{1, 0}, {1, 1}}), pts({{0, 1}, {1, 0}, {1, 2}})})
      for (Mask u : {pts({{2, 1}}), pts({{1, 1}}), oracle::row(2)})
        if (chain_covers_below(s, a, u).pass())
          CHECK(eng.covers_below(f.must_id(a), f.must_id(u)).status != CovStatus::No);
  }

  TEST_CASE("pointwise domains of dependence") {
    auto m = keep("M33");
    const auto& s = *m.space;
    CHECK(pointwise_domain_of_dependence(s, oracle::row(0), Direction::Future) == full_mask(9));
    CHECK(pointwise_domain_of_dependence(s, pts({{0, 0}, {0, 2}}), Direction::Future) == pts({{0, 0}, {0, 2}}));
    CHECK(pointwise_domain_of_dependence(s, 0, Direction::Future) == 0);
    CHECK(pointwise_domain_of_dependence(s, oracle::row(2), Direction::Past) == full_mask(9));
  }

  TEST_CASE("specialisation order") {
    auto d = specialisation_order(*discrete_frame(3));
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) CHECK(d[x][y] == (x == y));
    auto b = specialisation_order(*keep("bowtie").space->topology());
    CHECK(b[1][0]);
    CHECK(b[1][3]);
    CHECK(b[2][0]);
    CHECK(b[2][3]);
    CHECK(!b[1][2]);
    auto c = specialisation_order(*keep("codiscrete").space->topology());
    CHECK((c[0][1] && c[1][0]));
  }

  TEST_CASE("monotone point maps via cones") {
    std::mt19937 rng(7);
    int monotone = 0, other = 0;
    for (int trial = 0; trial < 300; ++trial) {
      auto x = random_space(rng, 4), y = random_space(rng, 4);
      std::vector<int> g(4);
      for (int& v : g) v = static_cast<int>(rng() % 4);
      bool direct = true;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          if (x.leq(a, b) && !y.leq(g[a], g[b])) direct = false;
      CHECK(is_monotone_point_map(x, y, g) == direct);
      CHECK(cone_monotone_point_map(x, y, g, Direction::Future) == direct);
      CHECK(cone_monotone_point_map(x, y, g, Direction::Past) == direct);
      (direct ? monotone : other)++;
    }
    CHECK(monotone > 10);
    CHECK(other > 10);
  }
}
