#include "doctest.h"
#include "support.hpp"

using namespace ordloc;
using oracle::grid_down;
using oracle::pts;

namespace {

OrderedLocale inclusion_order(const FramePtr& f) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem u = 0; u < f->size(); ++u)
    for (Elem v = 0; v < f->size(); ++v)
      if (f->leq(u, v)) pairs.push_back({u, v});
  return OrderedLocale::from_relation(f, pairs);
}

bool brute_ideal(int n, const std::vector<Mask>& rel, Mask s) {
  if (!s) return false;
  for (int x = 0; x < n; ++x) {
    if (!(s >> x & 1)) continue;
    for (int y = 0; y < n; ++y)
      if ((rel[y] >> x & 1) && !(s >> y & 1)) return false;  // down-closed
    for (int y = 0; y < n; ++y) {
      if (!(s >> y & 1)) continue;
      bool ub = false;
      for (int z = 0; z < n; ++z) ub = ub || ((s >> z & 1) && (rel[x] >> z & 1) && (rel[y] >> z & 1));
      if (!ub) return false;
    }
  }
  return true;
}

std::vector<Mask> grid_relation(bool strict) {
  std::vector<Mask> rel(9, 0);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      if (oracle::grid_leq(i, j, 3) && (!strict || j / 3 > i / 3)) rel[i] |= Mask{1} << j;
  return rel;
}

}  // namespace

TEST_SUITE("duality") {
  TEST_CASE("points of ordered locales") {
    auto m = suite_instance("M33");
    auto ps = points_space(*m.locale);
    REQUIRE(ps.space.size() == 9);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) CHECK(ps.space.leq(i, j) == oracle::grid_leq(i, j, 3));
    CHECK(ps.space.topology()->size() == 512);
    CHECK(ps.t0_ordered.pass());

    auto b = suite_instance("bowtie");
    auto bp = points_space(*b.locale);
    REQUIRE(bp.space.size() == 4);
    CHECK(bp.space.leq(1, 2));
    CHECK(bp.space.leq(2, 1));
    CHECK(!b.space->leq(1, 2));

    // Inclusion order: points are ordered by reverse inclusion of filters.
    const auto& bt = b.locale->frame_ptr();
    auto ip = points_space(inclusion_order(bt));
    auto spec = specialisation_order(*bt);
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) CHECK(ip.space.leq(x, y) == spec[y][x]);
    for (const auto& inst : standard_suite()) CHECK(points_space(*inst.locale).t0_ordered.pass());
  }

  TEST_CASE("filters and primes") {
    for (const char* name : {"bowtie", "nonOC", "chain3", "lightcone33-defect"}) {
      auto inst = suite_instance(name);
      const auto& f = inst.locale->frame();
      for (Elem p : f.primes()) {
        auto filt = filter_of_prime(f, p);
        for (Elem u : filt) CHECK(!f.leq(u, p));
        CHECK(prime_of_filter(f, filt) == p);
      }
    }
  }

  TEST_CASE("unit and counit") {
    auto m = suite_instance("M33");
    CHECK(unit_check(*m.space).verdict.pass());
    auto b = unit_check(*suite_instance("bowtie").space);
    CHECK(b.sober);
    CHECK(b.open_cones);
    CHECK(!b.t0_ordered);
    CHECK(!b.inverse_monotone);
    CHECK(b.inverse_witness == std::vector<Elem>{1, 2});
    CHECK(b.verdict.fail());
    auto c = unit_check(*suite_instance("codiscrete").space);
    CHECK(!c.injective);
    CHECK(c.surjective);
    auto n = unit_check(*suite_instance("nonOC").space);
    CHECK(!n.open_cones);
    CHECK(!n.monotone);
    for (const auto& inst : standard_suite()) CHECK(counit_check(*inst.locale).pass());
  }

  TEST_CASE("bullet axiom") {
    CHECK(check_axiom_P(*suite_instance("M33").locale).pass());
    auto bt = suite_instance("bowtie").locale->frame_ptr();
    CHECK(check_axiom_P(OrderedLocale::from_relation(bt, {})).pass());
    auto inc = inclusion_order(bt);
    auto r = check_axiom_P(inc);
    REQUIRE(r.fail());
    // Oracle: the point up cone of pt(U) against pt of the localic up cone.
    auto ps = points_space(inc);
    Elem u = r.witness[0];
    Mask pu = pt(inc, ps, u);
    Mask up = up_cone(ps.space, pu), down = down_cone(ps.space, pu);
    CHECK((up != pt(inc, ps, inc.up(u)) || down != pt(inc, ps, inc.down(u))));
  }

  TEST_CASE("ideal points") {
    auto m = suite_instance("M33");
    const auto& f = m.locale->frame();
    auto ips = ideal_points(*m.locale);
    REQUIRE(ips.ips.size() == 9);
    std::vector<Mask> want, got;
    for (int p = 0; p < 9; ++p) want.push_back(grid_down(Mask{1} << p, 9, 3));
    for (Elem e : ips.ips) got.push_back(f.mask(e));
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    CHECK(got == want);
    CHECK(ips.paired);
    CHECK(ips.bijections_hold);

    auto v = suite_instance("vertical33");
    const auto& vf = v.locale->frame();
    auto vips = ideal_points(*v.locale);
    got.clear();
    want.clear();
    for (Elem e : vips.ips) got.push_back(vf.mask(e));
    for (int t = 0; t < 3; ++t)
      for (int x = 0; x < 3; ++x) {
        Mask seg = 0;
        for (int s = 0; s <= t; ++s) seg |= pts({{s, x}});
        want.push_back(seg);
      }
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    CHECK(got == want);

    auto two = frame_from_masks(2, {0, 1, 2, 3});
    auto eips = ideal_points(OrderedLocale::from_relation(two, {}));
    std::vector<Elem> atoms = eips.ips;
    std::sort(atoms.begin(), atoms.end());
    CHECK(atoms == std::vector<Elem>{1, 2});
  }

  TEST_CASE("double negation transport") {
    CHECK(double_negation_transport(*suite_instance("M33").locale).pass());
    auto chain = frame_from_masks(3, {0, 1, 3, 7});
    auto e = oracle::error_of([&] { double_negation_transport(OrderedLocale::from_relation(chain, {})); });
    REQUIRE(e);
    CHECK(e->kind() == ErrorKind::RegularConesRequired);
  }

  TEST_CASE("triangle ideals") {
    auto rel = grid_relation(false);
    auto ideals = triangle_ideals(9, rel);
    std::vector<Mask> brute;
    for (Mask s = 1; s < 512; ++s)
      if (brute_ideal(9, rel, s)) brute.push_back(s);
    CHECK(ideals == brute);
    for (int p = 0; p < 9; ++p)
      CHECK(std::find(ideals.begin(), ideals.end(), grid_down(Mask{1} << p, 9, 3)) != ideals.end());
    CHECK(is_past_semi_full(9, rel).pass());
    CHECK(check_ideal_directed_joins(9, rel, ideals).pass());

    auto strict = grid_relation(true);
    CHECK(triangle_ideals(9, strict).empty());
    auto r = is_past_semi_full(9, strict);
    REQUIRE(r.fail());
    CHECK(r.witness.size() == 1);  // a bottom-row element has nothing below it

    CHECK(triangle_ideals(3, std::vector<Mask>(3, 0)).empty());
    CHECK_THROWS_AS(triangle_ideals(17, std::vector<Mask>(17, 0)), Error);
  }
}
