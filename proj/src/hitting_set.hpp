#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cnf.hpp"
#include "search_limits.hpp"

namespace weakbd {

// Hitting set instance: a family of non-empty subsets of `elements`.
struct HsInstance {
  std::vector<int> elements;           // sorted unique positive ids
  std::vector<std::vector<int>> sets;  // each sorted unique, non-empty

  static HsInstance make(std::vector<int> elements,
                         std::vector<std::vector<int>> sets);
};

struct HsResult {
  bool found = false;
  std::vector<int> hitting_set;
  long long nodes = 0;
};

// Bounded search tree for instances with sets of size <= 3: branch on the
// elements of an unhit minimum-size set, supersets pruned first.
HsResult hs3_solve(const HsInstance& inst, int k,
                   const SearchLimits& limits = {});

bool hs_verify(const HsInstance& inst, const std::vector<int>& hitting_set);

// Standard simplification: elements of singleton sets are forced into any
// hitting set. Returns the instance with singletons and the sets they hit
// removed, plus the forced elements; the caller lowers the budget by the
// number of forced elements.
struct FoldedHs {
  HsInstance instance;
  std::vector<int> forced;
};
FoldedHs fold_singletons(const HsInstance& inst);

// Text format: "p hs <nelems> <nsets>", then one set per line.
HsInstance parse_hs(const std::string& text);
std::string write_hs(const HsInstance& inst);

}  // namespace weakbd
