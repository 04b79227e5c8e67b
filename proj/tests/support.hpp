#pragma once
// Helpers and independent oracles shared by the test binaries. Oracles work on
// raw point sets and never call the library routine they are checking.

#include <cstdlib>
#include <functional>
#include <optional>
#include <initializer_list>
#include <utility>
#include <vector>

#include "ordloc/coverage.hpp"
#include "ordloc/duality.hpp"
#include "ordloc/gen.hpp"
#include "ordloc/io.hpp"

namespace oracle {

using ordloc::Elem;
using ordloc::Mask;

// Grid points (t, x) on a grid of width w.
inline Mask pts(std::initializer_list<std::pair<int, int>> ps, int w = 3) {
  Mask m = 0;
  for (auto [t, x] : ps) m |= Mask{1} << (t * w + x);
  return m;
}

inline Mask row(int t, int w = 3) {
  Mask m = 0;
  for (int x = 0; x < w; ++x) m |= Mask{1} << (t * w + x);
  return m;
}

// Causal order of a w-wide grid with slope num/den: (t,x) <= (t',x') iff t' >= t and |dx| den <= num dt.
inline bool grid_leq(int i, int j, int w, int num = 1, int den = 1) {
  int t = i / w, x = i % w, t2 = j / w, x2 = j % w;
  return t2 >= t && std::abs(x2 - x) * den <= num * (t2 - t);
}

inline Mask grid_up(Mask a, int n, int w, int num = 1, int den = 1) {
  Mask r = 0;
  for (int i = 0; i < n; ++i)
    if (a >> i & 1)
      for (int j = 0; j < n; ++j)
        if (grid_leq(i, j, w, num, den)) r |= Mask{1} << j;
  return r;
}

inline Mask grid_down(Mask a, int n, int w, int num = 1, int den = 1) {
  Mask r = 0;
  for (int j = 0; j < n; ++j)
    if (a >> j & 1)
      for (int i = 0; i < n; ++i)
        if (grid_leq(i, j, w, num, den)) r |= Mask{1} << i;
  return r;
}

// Largest member of the family inside s: the union of all members inside s.
inline Mask interior(const std::vector<Mask>& opens, Mask s) {
  Mask r = 0;
  for (Mask o : opens)
    if ((o & ~s) == 0) r |= o;
  return r;
}

inline ordloc::FramePtr discrete_frame(int n) {
  std::vector<Mask> all;
  for (Mask m = 0; m < (Mask{1} << n); ++m) all.push_back(m);
  return ordloc::frame_from_masks(n, all);
}

// The library error raised by fn, if any.
inline std::optional<ordloc::Error> error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ordloc::Error& e) {
    return e;
  }
  return std::nullopt;
}

inline Elem id(const ordloc::FiniteFrame& f, Mask m) { return f.must_id(m); }

}  // namespace oracle
