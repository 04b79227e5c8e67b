#include "doctest.h"
#include <map>

#include "support.hpp"

using namespace ordloc;
using oracle::grid_down;
using oracle::grid_up;
using oracle::pts;

namespace {

FramePtr bowtie_frame() { return frame_from_masks(4, {0b0000, 0b0001, 0b1000, 0b1001, 0b1011, 0b1101, 0b1111}); }

OrderedLocale inclusion_order(const FramePtr& f) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem u = 0; u < f->size(); ++u)
    for (Elem v = 0; v < f->size(); ++v)
      if (f->leq(u, v)) pairs.push_back({u, v});
  return OrderedLocale::from_relation(f, pairs);
}

// Keeps suite locales alive for the duration of the test binary.
const OrderedLocale& loc(const std::string& name) {
  static std::map<std::string, Instance> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, suite_instance(name)).first;
  return *it->second.locale;
}

}  // namespace

TEST_SUITE("olocale") {
  TEST_CASE("relations and cones") {
    auto f = bowtie_frame();
    auto eq = OrderedLocale::from_relation(f, {});
    for (Elem u = 0; u < f->size(); ++u) CHECK((eq.up(u) == u && eq.down(u) == u));
    auto inc = inclusion_order(f);
    for (Elem u = 0; u < f->size(); ++u) CHECK((inc.down(u) == u && inc.up(u) == f->top()));

    // The EM order of M22 given as explicit pairs matches the induced locale.
    auto m = suite_instance("M22");
    auto expl = OrderedLocale::from_relation(m.locale->frame_ptr(), m.locale->pairs());
    CHECK(expl.ups() == m.locale->ups());
    CHECK(expl.downs() == m.locale->downs());

    // Relation size of the M33 EM order from point-set cones.
    auto m3 = suite_instance("M33");
    std::uint64_t count = 0;
    for (Mask u = 0; u < 512; ++u)
      for (Mask v = 0; v < 512; ++v) count += subset(u, grid_down(v, 9, 3)) && subset(v, grid_up(u, 9, 3));
    CHECK(m3.locale->relation_size() == count);
    CHECK(count == 41202);
    const auto& f3 = m3.locale->frame();
    CHECK(m3.locale->rel(f3.must_id(pts({{0, 1}})), f3.must_id(oracle::row(1))));
  }

  TEST_CASE("closure notice and strict mode") {
    auto f = frame_from_masks(2, {0, 1, 2, 3});
    std::string notice;
    auto ol = OrderedLocale::from_relation(f, {{1, 2}, {2, 3}}, false, &notice);
    CHECK(ol.rel(1, 3));
    CHECK(!notice.empty());
    CHECK_THROWS_AS(OrderedLocale::from_relation(f, {{1, 2}, {2, 3}}, true), Error);
    try {
      OrderedLocale::from_relation(f, {{1, 2}, {2, 3}}, true);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MalformedInput);
    }
    // Transitive but not join-closed: {0} rel {1} and {1} rel {0} force {0,1} rel {0,1} only; add a join gap.
    try {
      OrderedLocale::from_relation(f, {{1, 1}, {0, 2}}, true);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::AxiomVFailure);
    }
  }

  TEST_CASE("orders from monads") {
    auto f = bowtie_frame();
    std::vector<Elem> id(f->size());
    for (Elem u = 0; u < f->size(); ++u) id[u] = u;
    auto eq = OrderedLocale::from_monads({f, id, id});
    for (Elem u = 0; u < f->size(); ++u)
      for (Elem v = 0; v < f->size(); ++v) CHECK(eq.rel(u, v) == (u == v));
    auto bad = id;
    bad[1] = 2;  // not inflationary
    CHECK_THROWS_AS(OrderedLocale::from_monads({f, bad, id}), Error);
    GridSpec g;
    g.t_size = 2;
    g.down_slope = {2, 1};
    auto ts = two_speed_grid(g);
    CHECK(ts.up(ts.frame().must_id(pts({{0, 1}}))) == ts.frame().must_id(pts({{0, 1}, {1, 0}, {1, 1}, {1, 2}})));
    CHECK(ts.down(ts.frame().must_id(pts({{1, 0}}))) == ts.frame().must_id(pts({{1, 0}, {0, 0}, {0, 1}, {0, 2}})));
  }

  TEST_CASE("axiom relations") {
    for (const char* name : {"M22", "nonOC", "bowtie", "chain3", "equality", "twospeed23", "codiscrete"}) {
      CAPTURE(name);
      const auto& ol = loc(name);
      bool wp = check_axiom(ol, "wedge+").pass(), wm = check_axiom(ol, "wedge-").pass();
      bool co = check_axiom(ol, "C-order").pass();
      CHECK(wp == (co && check_axiom(ol, "F+").pass()));
      CHECK(wm == (co && check_axiom(ol, "F-").pass()));
      CHECK(check_axiom(ol, "L+").pass());
      CHECK(check_axiom(ol, "L-").pass());
      CHECK(check_cone_laws(ol).pass());
      if (check_axiom(ol, "parallel").pass()) CHECK(parallel_disjointness_witness(ol).empty());
    }
    auto lower = induced_locale(*suite_instance("M33").space, Variant::Lower);
    CHECK(check_axiom(lower, "empty").fail());
    CHECK_THROWS_AS(check_axiom(lower, "no-such-law"), Error);
  }

  TEST_CASE("monotone maps") {
    auto m = suite_instance("M33");
    const auto& ol = *m.locale;
    CHECK(is_monotone(FrameMap::identity(ol.frame_ptr()), ol, ol).pass());
    // Down-closed opens with the restricted order.
    ConeFrame past = pasts_frame(ol);
    auto sub = OrderedLocale::from_predicate(past.frame, [&](Elem a, Elem b) {
      return ol.rel(past.to_ambient[a], past.to_ambient[b]);
    });
    auto r = is_monotone(past.map, ol, sub);
    CHECK(r.fail());
    CHECK(r.note == "up");
    // The witness is a down-set whose up cone is not down-closed.
    Mask w = ol.frame().mask(past.map(r.witness[0]));
    CHECK(grid_down(w, 9, 3) == w);
    CHECK(grid_down(grid_up(w, 9, 3), 9, 3) != grid_up(w, 9, 3));
    // The up cone of the past of (2,1) is everything, hence no violation there.
    Elem v = past.frame->must_id(grid_down(pts({{2, 1}}), 9, 3));
    CHECK(ol.up(past.map(v)) == ol.frame().top());
  }

  TEST_CASE("hulls and convexity") {
    for (const char* name : {"M33", "bowtie", "vertical33"}) {
      const auto& ol = loc(name);
      for (Elem u = 0; u < ol.size(); ++u) {
        CHECK(convex_hull(ol, ol.up(u)) == ol.up(u));
        CHECK(ol.up(convex_hull(ol, u)) == ol.up(u));
      }
    }
    CHECK(is_convex_locale(loc("M33")).pass());
    const auto& m = loc("M33");
    CHECK(!is_convex_open(m, m.frame().must_id(pts({{0, 0}, {2, 0}}))));
  }

  TEST_CASE("complements") {
    for (const char* name : {"M33", "bowtie", "nonOC", "chain3"}) {
      const auto& ol = loc(name);
      CHECK(causal_complement(ol, ol.frame().top()) == ol.frame().bottom());
      CHECK(check_complement_laws(ol).pass());
    }
  }

  TEST_CASE("futures and pasts frames") {
    auto m = suite_instance("M33");
    // Down-closed sets of a finite poset correspond to antichains.
    std::size_t antichains = 0;
    for (Mask a = 0; a < 512; ++a) {
      bool anti = true;
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
          if (i != j && (a >> i & 1) && (a >> j & 1) && oracle::grid_leq(i, j, 3)) anti = false;
      antichains += anti;
    }
    ConeFrame past = pasts_frame(*m.locale);
    CHECK(past.frame->size() == antichains);
    for (Elem e : past.to_ambient) CHECK(grid_down(m.locale->frame().mask(e), 9, 3) == m.locale->frame().mask(e));
    auto eq = OrderedLocale::from_relation(bowtie_frame(), {});
    CHECK(futures_frame(eq).frame->size() == 7);
    auto inc = inclusion_order(bowtie_frame());
    CHECK_THROWS_AS(futures_frame(inc), Error);
    ConeFrame deg = cone_frame(inc, Direction::Future, false);
    CHECK(deg.frame->size() == 2);
    CHECK(deg.bottom_adjoined);
  }

  TEST_CASE("biframe predicate") {
    CHECK(is_biframe(loc("M33")).pass());
    CHECK(is_biframe(loc("vertical33")).pass());
    const auto& b = loc("bowtie");
    const auto& f = b.frame();
    bool joins_of_convex = true;
    for (Elem u = 0; u < f.size(); ++u) {
      Mask acc = 0;
      for (Elem v = 0; v < f.size(); ++v)
        if (f.leq(v, u) && f.meet(b.up(v), b.down(v)) == v) acc |= f.mask(v);
      joins_of_convex = joins_of_convex && acc == f.mask(u);
    }
    bool cjoin = check_axiom(b, "C-join").pass() && check_axiom(b.opposite(), "C-join").pass();
    CHECK(is_biframe(b).pass() == (cjoin && joins_of_convex));
  }

  TEST_CASE("causal heyting") {
    const auto& ol = loc("M33");
    const auto& f = ol.frame();
    Elem u = f.must_id(pts({{1, 1}})), v = f.must_id(pts({{0, 1}}));
    CHECK(f.mask(causal_heyting(ol, u, v, Direction::Past)) == pts({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}}));
    CHECK(causal_heyting(ol, f.bottom(), v, Direction::Past) == f.top());
    CHECK(check_causal_heyting(ol).pass());
    auto eq = OrderedLocale::from_relation(bowtie_frame(), {});
    for (Elem a = 0; a < 7; ++a)
      for (Elem c = 0; c < 7; ++c) CHECK(causal_heyting(eq, a, c, Direction::Past) == eq.frame().heyting(a, c));
  }

  TEST_CASE("meets of orders and orders from maps") {
    auto m = suite_instance("M33");
    const auto& em = *m.locale;
    auto fp = em.frame_ptr();
    auto eq = OrderedLocale::from_relation(fp, {});
    auto meet = meet_of_orders(fp, {em, eq});
    CHECK(meet.relation_size() == fp->size());
    auto total = meet_of_orders(fp, {});
    CHECK(total.relation_size() == fp->size() * fp->size());
    auto ul = meet_of_orders(fp, {induced_locale(*m.space, Variant::Upper), induced_locale(*m.space, Variant::Lower)});
    CHECK(ul.relation_size() == em.relation_size());
    auto back = order_from_map(FrameMap::identity(fp), em);
    CHECK(back.relation_size() == em.relation_size());
    auto dn = double_negation_frame(fp);
    CHECK(order_from_map(dn.map, em).relation_size() == em.relation_size());
  }

  TEST_CASE("regular cones") {
    CHECK(check_regular_cones(loc("M33")).pass());
    auto f = bowtie_frame();
    auto r = check_regular_cones(OrderedLocale::from_relation(f, {}));
    REQUIRE(r.fail());
    Elem w = r.witness[0];
    Mask notw = oracle::interior(f->masks(), ~f->mask(w) & 0xf);
    CHECK(oracle::interior(f->masks(), ~notw & 0xf) != f->mask(w));
    CHECK(f->neg(f->neg(f->must_id(0b1011))) != f->must_id(0b1011));
  }

  TEST_CASE("ideal completion") {
    auto f = bowtie_frame();
    for (auto ol : {OrderedLocale::from_relation(f, {}), inclusion_order(f), loc("M22")}) {
      auto ic = ideal_completion(ol);
      CHECK(ic.order_iso);
      CHECK(ic.cones_match);
    }
  }
}
