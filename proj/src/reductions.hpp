#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cnf.hpp"
#include "hitting_set.hpp"

namespace weakbd {

struct Graph {
  std::vector<int> vertices;                // sorted unique positive ids
  std::vector<std::pair<int, int>> edges;   // normalized u < v, sorted unique

  static Graph make(std::vector<int> vertices,
                    std::vector<std::pair<int, int>> edges);
};

// DIMACS edge format: "p edge <n> <m>", lines "e u v".
Graph parse_dimacs_edge(const std::string& text);

enum class ReductionKind { SatToChains, HsToMatch, VcToZeroVal };

struct AuxBlock {
  std::size_t source;       // clause index / set index in the input
  std::vector<int> y_vars;  // fresh chain variables allocated for it
};

struct ReductionOutput {
  ReductionKind kind;
  Formula formula;
  int k = 0;
  std::vector<int> original_vars;
  std::vector<AuxBlock> aux;
};

// Replace every clause of more than 3 literals by an equisatisfiable chain
// of 3-literal clauses over fresh variables; the budget is |var(F)|.
ReductionOutput sat_to_chains(const Formula& f);

// Hitting set to weak Match backdoor: a binary cycle over the elements plus
// one chain per set. Requires >= 2 elements and every set size >= 2.
ReductionOutput hs_to_match(const HsInstance& inst, int k);

// Vertex cover to weak 0-valid backdoor: one all-positive binary clause per
// edge.
ReductionOutput vc_to_zeroval(const Graph& g, int k);

std::string sidecar_json(const ReductionOutput& out);

}  // namespace weakbd
