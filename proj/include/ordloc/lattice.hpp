#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ordloc/core.hpp"

namespace ordloc {

// Point ids of a finite base, kept sorted and unique.
struct PointSet {
  int base_size = 0;
  std::vector<int> members;

  static PointSet from_mask(int base_size, Mask m);
  Mask mask() const;
};

// A finite frame, stored as a family of subsets of a base of at most 64
// points that is closed under binary union and intersection. Element ids are
// the positions of the masks in ascending numeric order, so the bottom is 0
// and the top is size()-1. When the frame was built from a topology the base
// is the user's point set; otherwise it is the set of join-irreducibles
// (Birkhoff realization) and point_realized() is false.
class FiniteFrame {
 public:
  // Trusted constructor: masks must already be closed and contain 0 and full.
  FiniteFrame(int base, std::vector<Mask> masks, bool point_realized);

  int base() const { return base_; }
  std::size_t size() const { return masks_.size(); }
  Elem bottom() const { return 0; }
  Elem top() const { return static_cast<Elem>(masks_.size() - 1); }
  bool point_realized() const { return point_realized_; }
  bool is_powerset() const { return powerset_; }

  Mask mask(Elem a) const { return masks_[a]; }
  const std::vector<Mask>& masks() const { return masks_; }
  Elem id(Mask m) const;  // kNoElem when m is not an element
  bool contains(Mask m) const { return id(m) != kNoElem; }
  Elem must_id(Mask m) const;

  bool leq(Elem a, Elem b) const { return subset(masks_[a], masks_[b]); }
  Elem meet(Elem a, Elem b) const { return must_id(masks_[a] & masks_[b]); }
  Elem join(Elem a, Elem b) const { return must_id(masks_[a] | masks_[b]); }
  Elem join_all(const std::vector<Elem>& xs) const;
  Elem meet_all(const std::vector<Elem>& xs) const;

  // Largest element whose mask lies inside s.
  Elem interior(Mask s) const;
  Elem heyting(Elem a, Elem b) const;
  Elem neg(Elem a) const { return heyting(a, bottom()); }

  const std::vector<Elem>& coprimes() const { return coprimes_; }
  const std::vector<Elem>& primes() const { return primes_; }
  std::vector<Elem> atoms() const;
  bool is_boolean() const;

 private:
  int base_;
  std::vector<Mask> masks_;
  bool point_realized_;
  bool powerset_;
  std::vector<Elem> coprimes_;
  std::vector<Elem> primes_;
};

using FramePtr = std::shared_ptr<const FiniteFrame>;

// Validating constructor from explicit opens; throws NotClosedUnderMeet,
// NotClosedUnderJoin or MissingBottomOrTop with the offending open(s).
FramePtr frame_from_topology(int base_size, const std::vector<PointSet>& opens);
FramePtr frame_from_masks(int base_size, const std::vector<Mask>& opens);

// Down-closed subsets of the poset induced by a preorder (row i, column j set
// when i <= j). Equivalent points are merged before realization.
FramePtr frame_from_poset_downsets(const std::vector<std::vector<bool>>& order);

// Birkhoff realization of an abstract finite distributive lattice given by
// its order. new_id[i] is the id of the i-th input element in the result.
struct Realized {
  FramePtr frame;
  std::vector<Elem> new_id;
};
Realized realize_lattice(std::size_t m, const std::function<bool(std::size_t, std::size_t)>& leq);

// Frame homomorphism f^{-1}: target -> source (the locale map runs source -> target).
struct FrameMap {
  FramePtr source;
  FramePtr target;
  std::vector<Elem> preimage;

  static FrameMap make(FramePtr source, FramePtr target, std::vector<Elem> preimage);
  static FrameMap identity(FramePtr f);
  Elem operator()(Elem v) const { return preimage[v]; }
  Elem right_adjoint(Elem u) const;
};

struct DoubleNegation {
  FramePtr frame;                 // regular elements, joins recomputed
  FrameMap map;                   // source = regular frame, target = ambient, V -> not not V
  std::vector<Elem> to_ambient;   // regular id -> ambient id
};
DoubleNegation double_negation_frame(const FramePtr& f);

struct IdealFrame {
  FramePtr frame;
  std::vector<Elem> iso;           // element -> its principal ideal
  std::vector<std::vector<Elem>> ideals;  // members of each ideal, by ideal id
  bool enumerated = false;         // all subsets scanned for ideals
  std::size_t ideal_count = 0;
};
IdealFrame ideal_frame(const FramePtr& f);

// Oracles and law checks.
std::vector<Elem> primes_by_definition(const FiniteFrame& f);
std::vector<Elem> coprimes_by_definition(const FiniteFrame& f);
CheckReport check_heyting_laws(const FiniteFrame& f, const Budget& b = {});
CheckReport check_galois(const FrameMap& map);

}  // namespace ordloc
