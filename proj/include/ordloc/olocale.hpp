#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ordloc/lattice.hpp"

namespace ordloc {

// Pair of monads (u, d) on a frame, indexed by element id.
struct ConePair {
  FramePtr frame;
  std::vector<Elem> u;
  std::vector<Elem> d;
};

// Throws NotAMonad naming the failing law.
void validate_monad(const FiniteFrame& f, const std::vector<Elem>& t, const std::string& name);

// A frame with a causal preorder. The relation is held either as an explicit
// bit matrix (frames up to kExplicitLimit elements) or, when it comes from a
// pair of monads, implicitly through U rel V iff U <= d(V) and V <= u(U).
class OrderedLocale {
 public:
  static constexpr std::size_t kExplicitLimit = 4096;

  // Reflexive-transitive closure plus saturation under binary joins. In
  // strict mode any enlargement is an error; otherwise *notice (if given)
  // describes what was added.
  static OrderedLocale from_relation(FramePtr f, const std::vector<std::pair<Elem, Elem>>& pairs,
                                     bool strict = false, std::string* notice = nullptr);
  static OrderedLocale from_monads(const ConePair& cones);
  // Predicate-defined relation, materialized; the caller guarantees it is a
  // preorder satisfying the join axiom.
  template <class Pred>
  static OrderedLocale from_predicate(FramePtr f, Pred&& pred);

  const FiniteFrame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  std::size_t size() const { return frame_->size(); }
  bool cone_determined() const { return !rows_; }

  bool rel(Elem u, Elem v) const {
    if (rows_) return (*rows_)[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64) & 1;
    return frame_->leq(u, down_[v]) && frame_->leq(v, up_[u]);
  }
  Elem up(Elem u) const { return up_[u]; }
  Elem down(Elem u) const { return down_[u]; }
  const std::vector<Elem>& ups() const { return up_; }
  const std::vector<Elem>& downs() const { return down_; }
  ConePair cones() const { return ConePair{frame_, up_, down_}; }

  std::vector<Elem> successors(Elem u) const;
  std::vector<Elem> predecessors(Elem v) const;
  std::vector<std::pair<Elem, Elem>> pairs() const;
  std::uint64_t relation_size() const;
  // Reverses the relation; cones swap.
  OrderedLocale opposite() const;

 private:
  OrderedLocale() = default;
  void compute_cones_from_rows();

  FramePtr frame_;
  std::size_t words_ = 0;
  std::shared_ptr<const std::vector<std::uint64_t>> rows_;
  std::vector<Elem> up_, down_;
};

template <class Pred>
OrderedLocale OrderedLocale::from_predicate(FramePtr f, Pred&& pred) {
  if (f->size() > kExplicitLimit) throw Error(ErrorKind::FrameTooLarge, "frame too large for an explicit relation");
  OrderedLocale ol;
  ol.frame_ = std::move(f);
  const std::size_t m = ol.frame_->size();
  ol.words_ = (m + 63) / 64;
  auto rows = std::make_shared<std::vector<std::uint64_t>>(m * ol.words_, 0);
  for (Elem u = 0; u < m; ++u)
    for (Elem v = 0; v < m; ++v)
      if (pred(u, v)) (*rows)[u * ol.words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  ol.rows_ = std::move(rows);
  ol.compute_cones_from_rows();
  return ol;
}

// Axiom names: V, L+, L-, C-order, C-join, wedge+, wedge-, F+, F-, empty, parallel.
const std::vector<std::string>& axiom_names();
CheckReport check_axiom(const OrderedLocale& ol, const std::string& law, const Budget& b = {});

CheckReport check_cone_laws(const OrderedLocale& ol, const Budget& b = {});
// A pair with exactly one of U meet down V, up U meet V empty: a certificate
// that the locale is not parallel ordered. Empty when none exists.
std::vector<Elem> parallel_disjointness_witness(const OrderedLocale& ol);
bool violates_parallel_disjointness(const OrderedLocale& ol, Elem u, Elem v);

// Monotonicity of a frame map between ordered locales (source and target of
// the map must be the frames of x and y).
CheckReport is_monotone(const FrameMap& f, const OrderedLocale& x, const OrderedLocale& y);

Elem convex_hull(const OrderedLocale& ol, Elem u);
bool is_convex_open(const OrderedLocale& ol, Elem u);
CheckReport is_convex_locale(const OrderedLocale& ol);
CheckReport check_hull_laws(const OrderedLocale& ol, const Budget& b = {});

Elem causal_complement(const OrderedLocale& ol, Elem u);
Elem diamond(const OrderedLocale& ol, Elem u);
CheckReport check_complement_laws(const OrderedLocale& ol, const Budget& b = {});

struct ConeFrame {
  FramePtr frame;
  FrameMap map;                  // source = ambient frame, preimage = inclusion
  std::vector<Elem> to_ambient;  // cone-frame id -> ambient id
  bool bottom_adjoined = false;
};
enum class Direction { Future, Past };
const char* direction_name(Direction d);
ConeFrame cone_frame(const OrderedLocale& ol, Direction dir, bool require_join_preserving = true);
inline ConeFrame futures_frame(const OrderedLocale& ol) { return cone_frame(ol, Direction::Future); }
inline ConeFrame pasts_frame(const OrderedLocale& ol) { return cone_frame(ol, Direction::Past); }

CheckReport is_biframe(const OrderedLocale& ol, const Budget& b = {});

Elem causal_heyting(const OrderedLocale& ol, Elem u, Elem v, Direction dir);
CheckReport check_causal_heyting(const OrderedLocale& ol, const Budget& b = {});

OrderedLocale meet_of_orders(const FramePtr& f, const std::vector<OrderedLocale>& ols);
// Largest order on the source frame of f making f monotone into y.
OrderedLocale order_from_map(const FrameMap& f, const OrderedLocale& y);

CheckReport check_regular_cones(const OrderedLocale& ol);

struct IdealCompletion {
  OrderedLocale locale;
  IdealFrame ideals;
  FrameMap map;             // source = original frame, preimage = principal ideal inverse
  bool order_iso = false;   // principal ideals transport the order exactly
  bool cones_match = false; // up and down of principal ideals are principal
};
IdealCompletion ideal_completion(const OrderedLocale& ol);

}  // namespace ordloc
