#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ordloc/olocale.hpp"

namespace ordloc {

struct Path {
  std::vector<Elem> steps;
  Elem first() const { return steps.front(); }
  Elem last() const { return steps.back(); }
  bool operator==(const Path&) const = default;
};

// Throws BottomStep or NotRelated with the offending index.
Path validate_path(const OrderedLocale& ol, const std::vector<Elem>& steps);
// q refines p: every step of p contains some step of q.
bool refines(const FiniteFrame& f, const Path& q, const Path& p);
// first followed by second; the last step of first must equal the first step of second.
Path concat(const Path& first, const Path& second);
// Past restriction to W <= last step, and future restriction to V <= first step.
Path restrict_path(const OrderedLocale& ol, const Path& p, Elem w, bool verify_axioms = true);
Path restrict_path_future(const OrderedLocale& ol, const Path& p, Elem v, bool verify_axioms = true);

enum class CovStatus { Yes, No, Inconclusive };
const char* cov_status_name(CovStatus s);

struct CoverageVerdict {
  CovStatus status = CovStatus::Inconclusive;
  Path witness;  // a path landing in U with no refinement inhabiting A (status No)
  std::size_t bound_used = 0;
  std::string note;
};

// Decides A in Cov-(U). Paths landing in U reduce to paths ending at a
// coprime below U, and both the path and its refinement can be taken as walks
// through minimal predecessors; the walk states are enumerated level by level
// up to the bound. A saturated enumeration gives an exact answer.
class CoverageEngine {
 public:
  // bound 0 selects the default of twice the number of non-bottom elements.
  explicit CoverageEngine(const OrderedLocale& ol, std::size_t bound = 0, bool verify_axioms = true);

  CoverageVerdict covers_below(Elem a, Elem u);
  // Verdict of "every path ending at coprime c refines into A", without the A <= down U test.
  CoverageVerdict good(Elem a, Elem c);
  std::size_t bound() const { return bound_; }
  const OrderedLocale& locale() const { return ol_; }

 private:
  struct Walks {
    std::vector<Elem> nodes;               // local index -> element
    std::vector<std::vector<int>> next;    // minimal predecessors, local indices
    std::vector<Mask> below;               // nodes j with nodes[i] <= nodes[j]
    struct State { int head; Mask visited; int parent; };
    std::vector<State> states;             // (head, visited) states with parent links
    bool saturated = false;
    bool too_large = false;
    std::size_t levels = 0;
  };
  const Walks& walks(Elem c);
  const std::vector<Elem>& min_pred(Elem e);
  bool refinable(const Walks& w, Mask visited, Elem a) const;

  OrderedLocale ol_;
  std::size_t bound_;
  std::map<Elem, std::vector<Elem>> min_pred_;
  std::map<Elem, std::unique_ptr<Walks>> walks_;
};

CoverageVerdict covers_below(const OrderedLocale& ol, Elem a, Elem u, std::size_t bound = 0);
CoverageVerdict covers_above(const OrderedLocale& ol, Elem a, Elem u, std::size_t bound = 0);

// member[U][A] for Cov-(U) (dir Past) or Cov+(U) (dir Future).
struct CoverageTable {
  Direction dir = Direction::Past;
  std::vector<std::vector<CovStatus>> member;
  bool exact = true;
};
CoverageTable coverage_table(const OrderedLocale& ol, Direction dir, std::size_t bound = 0);
CoverageTable table_from_sets(Direction dir, const std::vector<std::vector<Elem>>& sets, std::size_t m);

struct Certain {
  Elem value = 0;
  bool exact = true;
};
// L(U) = join of Cov(U).
Certain region_of_influence(const FiniteFrame& f, const CoverageTable& t, Elem u);
// D+(A) = join of V with A in Cov-(V); D-(A) uses Cov+.
Certain domain_of_dependence(const OrderedLocale& ol, Elem a, Direction dir, std::size_t bound = 0);
Certain domain_of_dependence(const FiniteFrame& f, const CoverageTable& cov_opposite, Elem a);

// Axioms (C1)-(C5) on a pair of tables (Cov- and Cov+); unresolved entries count as absent.
CheckReport abstract_coverage_check(const FiniteFrame& f, const CoverageTable& past, const CoverageTable& future,
                                    const Budget& b = {});

struct GrothendieckReport {
  CheckReport report;
  std::uint64_t abstained = 0;
};
GrothendieckReport check_down_grothendieck(const OrderedLocale& ol, std::size_t max_frame = 16, std::size_t bound = 0);

}  // namespace ordloc
