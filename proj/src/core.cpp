#include "ordloc/core.hpp"

namespace ordloc {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotClosedUnderMeet: return "NotClosedUnderMeet";
    case ErrorKind::NotClosedUnderJoin: return "NotClosedUnderJoin";
    case ErrorKind::MissingBottomOrTop: return "MissingBottomOrTop";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::NotAFrameMap: return "NotAFrameMap";
    case ErrorKind::NotAMonad: return "NotAMonad";
    case ErrorKind::AxiomVFailure: return "AxiomVFailure";
    case ErrorKind::ConesDoNotPreserveJoins: return "ConesDoNotPreserveJoins";
    case ErrorKind::RegularConesRequired: return "RegularConesRequired";
    case ErrorKind::PreconditionAxioms: return "PreconditionAxioms";
    case ErrorKind::BottomStep: return "BottomStep";
    case ErrorKind::NotRelated: return "NotRelated";
    case ErrorKind::ConcatMismatch: return "ConcatMismatch";
    case ErrorKind::NotASubregion: return "NotASubregion";
    case ErrorKind::NotParallelOrdered: return "NotParallelOrdered";
    case ErrorKind::EmptyRestriction: return "EmptyRestriction";
    case ErrorKind::FrameTooLarge: return "FrameTooLarge";
    case ErrorKind::SlopesUnequal: return "SlopesUnequal";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

CheckReport combine(std::string law, const std::vector<CheckReport>& parts) {
  CheckReport out = CheckReport::ok(std::move(law));
  for (const auto& p : parts) {
    out.tuples += p.tuples;
    out.exhaustive = out.exhaustive && p.exhaustive;
  }
  for (const auto& p : parts) {
    if (p.verdict == Verdict::Fail) {
      out.verdict = Verdict::Fail;
      out.witness = p.witness;
      out.note = p.law + (p.note.empty() ? "" : ": " + p.note);
      return out;
    }
  }
  for (const auto& p : parts) {
    if (p.verdict == Verdict::Inconclusive) {
      out.verdict = Verdict::Inconclusive;
      out.note = p.law + (p.note.empty() ? "" : ": " + p.note);
      return out;
    }
  }
  return out;
}

}  // namespace ordloc
