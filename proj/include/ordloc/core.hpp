#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ordloc {

// Opens are realized as subsets of a base of at most 64 points.
using Mask = std::uint64_t;
// Dense element id inside a FiniteFrame.
using Elem = std::uint32_t;

inline constexpr Elem kNoElem = 0xffffffffu;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

template <class F>
inline void for_each_bit(Mask m, F&& f) {
  while (m) {
    int i = std::countr_zero(m);
    f(i);
    m &= m - 1;
  }
}

enum class ErrorKind {
  NotClosedUnderMeet,
  NotClosedUnderJoin,
  MissingBottomOrTop,
  MalformedInput,
  NotAFrame,
  NotAFrameMap,
  NotAMonad,
  AxiomVFailure,
  ConesDoNotPreserveJoins,
  RegularConesRequired,
  PreconditionAxioms,
  BottomStep,
  NotRelated,
  ConcatMismatch,
  NotASubregion,
  NotParallelOrdered,
  EmptyRestriction,
  FrameTooLarge,
  SlopesUnequal,
  ParseError,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::vector<long long> witness = {})
      : std::runtime_error(std::move(message)), kind_(kind), witness_(std::move(witness)) {}
  ErrorKind kind() const { return kind_; }
  const std::vector<long long>& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<long long> witness_;
};

enum class Verdict { Pass, Fail, Inconclusive };

const char* verdict_name(Verdict v);

// Outcome of a law check. A failing report carries the lexicographically
// least failing tuple found (element ids, or point ids where noted).
struct CheckReport {
  std::string law;
  Verdict verdict = Verdict::Pass;
  std::vector<Elem> witness;
  std::string note;
  bool exhaustive = true;
  std::uint64_t tuples = 0;

  bool pass() const { return verdict == Verdict::Pass; }
  bool fail() const { return verdict == Verdict::Fail; }

  static CheckReport ok(std::string law, std::uint64_t tuples = 0, bool exhaustive = true) {
    CheckReport r;
    r.law = std::move(law);
    r.tuples = tuples;
    r.exhaustive = exhaustive;
    return r;
  }
  static CheckReport failed(std::string law, std::vector<Elem> witness, std::string note = {}) {
    CheckReport r;
    r.law = std::move(law);
    r.verdict = Verdict::Fail;
    r.witness = std::move(witness);
    r.note = std::move(note);
    return r;
  }
};

// Conjunction of sub-reports; the first failure wins.
CheckReport combine(std::string law, const std::vector<CheckReport>& parts);

// Work limit for checks that are exhaustive up to a tuple budget and fall back
// to seeded sampling beyond it.
struct Budget {
  std::uint64_t max_tuples = 2'000'000'000ull;
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 0x5eed0001ull;
};

}  // namespace ordloc
