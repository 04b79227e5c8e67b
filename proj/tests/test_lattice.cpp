#include "doctest.h"
#include "support.hpp"

using namespace ordloc;

namespace {

FramePtr bowtie_frame() { return frame_from_masks(4, {0b0000, 0b0001, 0b1000, 0b1001, 0b1011, 0b1101, 0b1111}); }
FramePtr chain3() { return frame_from_poset_downsets({{true, true}, {false, true}}); }
FramePtr boolean2() { return frame_from_masks(2, {0, 1, 2, 3}); }

template <class F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorKind::MalformedInput, "");
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("topology construction") {
    auto f = boolean2();
    CHECK(f->size() == 4);
    CHECK(f->is_boolean());
    CHECK(f->atoms() == std::vector<Elem>{1, 2});
    CHECK(bowtie_frame()->size() == 7);

    auto e = error_of([] { frame_from_masks(3, {0, 1, 2, 7}); });
    CHECK(e.kind() == ErrorKind::NotClosedUnderJoin);
    CHECK(e.witness() == std::vector<long long>{1, 2});
    CHECK(error_of([] { frame_from_masks(2, {0, 1}); }).kind() == ErrorKind::MissingBottomOrTop);
    CHECK(error_of([] { frame_from_masks(3, {0, 3, 6, 7}); }).kind() == ErrorKind::NotClosedUnderMeet);

    auto via_sets = frame_from_topology(2, {PointSet::from_mask(2, 0), PointSet::from_mask(2, 1), PointSet::from_mask(2, 2),
                                            PointSet::from_mask(2, 3)});
    CHECK(via_sets->masks() == boolean2()->masks());
  }

  TEST_CASE("downset frames") {
    CHECK(frame_from_poset_downsets({{true}})->size() == 2);
    CHECK(frame_from_poset_downsets({{true, false}, {false, true}})->size() == 4);
    auto c = chain3();
    CHECK(c->size() == 3);
    CHECK(c->coprimes() == std::vector<Elem>{1, 2});
    CHECK(c->primes() == std::vector<Elem>{0, 1});
  }

  TEST_CASE("heyting implication") {
    auto b = boolean2();
    CHECK(b->heyting(1, 2) == 2);
    auto f = bowtie_frame();
    CHECK(f->mask(f->neg(f->must_id(0b0001))) == 0b1000);
    for (Elem a = 0; a < f->size(); ++a) {
      CHECK(f->heyting(a, a) == f->top());
      // Oracle: the union of opens w with a ^ w inside b.
      for (Elem c = 0; c < f->size(); ++c) {
        Mask want = 0;
        for (Mask w : f->masks())
          if (subset(f->mask(a) & w, f->mask(c))) want |= w;
        CHECK(f->mask(f->heyting(a, c)) == want);
      }
    }
    CHECK(check_heyting_laws(*f).pass());
    CHECK(check_heyting_laws(*chain3()).pass());
  }

  TEST_CASE("primes and coprimes") {
    auto f = bowtie_frame();
    std::vector<Mask> primes;
    for (Elem p : f->primes()) primes.push_back(f->mask(p));
    std::sort(primes.begin(), primes.end());
    CHECK(primes == std::vector<Mask>{0b0001, 0b1000, 0b1011, 0b1101});
    CHECK(f->primes() == primes_by_definition(*f));
    CHECK(f->coprimes() == coprimes_by_definition(*f));
    auto b = boolean2();
    CHECK(b->primes() == std::vector<Elem>{1, 2});
    CHECK(b->coprimes() == b->atoms());
  }

  TEST_CASE("right adjoint and Galois law") {
    auto id = FrameMap::identity(bowtie_frame());
    for (Elem u = 0; u < 7; ++u) CHECK(id.right_adjoint(u) == u);
    CHECK(check_galois(id).pass());

    // Inclusion of the down-closed opens of M33.
    auto m = suite_instance("M33");
    ConeFrame past = pasts_frame(*m.locale);
    const auto& amb = m.locale->frame();
    Elem u = amb.must_id(oracle::pts({{0, 0}, {1, 1}}));
    Elem r = past.map.right_adjoint(u);
    CHECK(amb.mask(past.to_ambient[r]) == oracle::pts({{0, 0}}));
    CHECK(check_galois(past.map).pass());

    // The map from the powerset of one point onto the 2-element frame.
    auto one = frame_from_masks(1, {0, 1});
    auto two = frame_from_masks(1, {0, 1});
    auto f = FrameMap::make(one, two, {0, 1});
    CHECK(f.right_adjoint(0) == 0);
    CHECK(f.right_adjoint(1) == 1);

    CHECK_THROWS_AS(FrameMap::make(one, two, {1, 1}), Error);
  }

  TEST_CASE("double negation") {
    auto dn = double_negation_frame(bowtie_frame());
    CHECK(dn.frame->size() == 4);
    CHECK(dn.frame->is_boolean());
    auto f = bowtie_frame();
    std::vector<Mask> regular;
    for (Elem e : dn.to_ambient) regular.push_back(f->mask(e));
    CHECK(regular == std::vector<Mask>{0b0000, 0b0001, 0b1000, 0b1111});
    CHECK(double_negation_frame(chain3()).frame->size() == 2);
    CHECK(double_negation_frame(boolean2()).frame->size() == 4);
  }

  TEST_CASE("ideal frame") {
    for (FramePtr f : {frame_from_masks(1, {0, 1}), boolean2(), bowtie_frame(), chain3()}) {
      IdealFrame idl = ideal_frame(f);
      CHECK(idl.enumerated);
      CHECK(idl.frame->size() == f->size());
      for (Elem x = 0; x < f->size(); ++x)
        for (Elem y = 0; y < f->size(); ++y) CHECK(f->leq(x, y) == idl.frame->leq(idl.iso[x], idl.iso[y]));
    }
  }

  TEST_CASE("Birkhoff realization") {
    // Divisors of 12 under divisibility form a distributive lattice with 6 elements.
    std::vector<int> d{1, 2, 3, 4, 6, 12};
    auto r = realize_lattice(d.size(), [&](std::size_t a, std::size_t b) { return d[b] % d[a] == 0; });
    CHECK(r.frame->size() == 6);
    CHECK(!r.frame->point_realized());
    for (std::size_t a = 0; a < d.size(); ++a)
      for (std::size_t b = 0; b < d.size(); ++b)
        CHECK(r.frame->leq(r.new_id[a], r.new_id[b]) == (d[b] % d[a] == 0));
  }
}
