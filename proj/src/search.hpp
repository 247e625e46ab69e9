#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "classes.hpp"
#include "cnf.hpp"
#include "search_limits.hpp"

namespace weakbd {

struct SearchStats {
  long long nodes = 0;
  long long leaves = 0;
  int max_depth = 0;
  double elapsed_s = 0.0;
  // hitting-set breakdown, filled by detect_krom only
  long long hs_calls = 0;
  long long hs_nodes = 0;
};

struct BackdoorResult {
  bool found = false;
  std::vector<int> backdoor;  // sorted variable ids
  Assignment witness;         // domain = backdoor
  std::optional<Assignment> model;  // total over var(F), present iff found
  SearchStats stats;
};

// raised when a detection call hits its deadline; carries what was counted
struct DetectTimeout : std::runtime_error {
  SearchStats partial;
  explicit DetectTimeout(SearchStats s)
      : std::runtime_error("detection timed out"), partial(s) {}
};

// weak Krom backdoor via one 3-hitting-set search plus at most 2^|H|
// leaf satisfiability checks; requires width(F) <= 3
BackdoorResult detect_krom(const Formula& f, int k,
                           const SearchLimits& limits = {});

// weak Horn backdoor via the bounded search tree with branching rules
// R1 (all-positive clause), R2 (overlapping mixed pair), R3 (disjoint
// mixed clauses); requires width(F) <= 3
BackdoorResult detect_horn(const Formula& f, int k,
                           const SearchLimits& limits = {});

// baseline search for any clause-defined class: branch over all minimal
// assignments fixing the first out-of-class clause; requires width(F) <= 3
BackdoorResult detect_generic(const Formula& f, int k, BaseClass cls,
                              const SearchLimits& limits = {});

// exhaustive reference: all variable subsets in nondecreasing size, all
// assignments of each; works for every class and width
BackdoorResult detect_bruteforce(const Formula& f, int k, BaseClass cls,
                                 const SearchLimits& limits = {});

bool verify_witness(const Formula& f, const std::vector<int>& backdoor,
                    const Assignment& witness, BaseClass cls, int k);

// recurrence T(k) = a T(k-1) + b T(k-2)
struct RecurrencePair {
  int a = 0;
  int b = 0;
};

// positive root of x^2 = a x + b
double branching_factor(int a, int b);
inline double branching_factor(RecurrencePair r) {
  return branching_factor(r.a, r.b);
}

// ---- branching internals, exposed for direct testing ----

enum class HornClauseKind {
  HornOk,
  AllPositive,    // >= 2 literals, all positive
  TwoPosOneNeg,   // exactly two positive and one negative literal
};
HornClauseKind classify_horn_clause(const Clause& c);

// one branch = the variables it newly assigns, sorted by id
using Branch = std::vector<std::pair<int, bool>>;

// minimal assignments turning an all-positive clause Horn
std::vector<Branch> r1_branches(const Clause& c);
// minimal assignments turning two variable-sharing mixed clauses Horn,
// by explicit case tables over the pair's shared-variable signs
std::vector<Branch> r2_branches(const Clause& c, const Clause& d);
// two-way split on the lowest positive variable of a mixed clause
std::vector<Branch> r3_branches(const Clause& c);

// all minimal assignments tau over var(c) with {c[tau]} in cls
std::vector<Branch> minimal_class_assignments(const Clause& c, BaseClass cls);

// recurrences realized by the implemented R1/R2/R3 branch tables
std::vector<RecurrencePair> implemented_recurrences();

std::string result_to_json(const BackdoorResult& r);

}  // namespace weakbd
