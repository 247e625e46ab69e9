#include "reductions.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace weakbd {

Graph Graph::make(std::vector<int> vertices,
                  std::vector<std::pair<int, int>> edges) {
  Graph g;
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()),
                 vertices.end());
  if (!vertices.empty() && vertices.front() < 1)
    throw ContractError("vertex ids must be positive");
  g.vertices = std::move(vertices);
  for (auto& [u, v] : edges) {
    if (u == v) throw ContractError("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!std::binary_search(g.vertices.begin(), g.vertices.end(), u) ||
        !std::binary_search(g.vertices.begin(), g.vertices.end(), v))
      throw ContractError("edge endpoint outside the vertex set");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  return g;
}

Graph parse_dimacs_edge(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  long n = 0, m = 0;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok[0] == 'c') continue;
    if (tok == "p") {
      if (header_seen) throw ParseError("duplicate header", line_no);
      std::string fmt;
      if (!(ls >> fmt >> n >> m) || fmt != "edge" || n < 0 || m < 0)
        throw ParseError("malformed header '" + line + "'", line_no);
      header_seen = true;
      continue;
    }
    if (tok == "e") {
      if (!header_seen) throw ParseError("edge before header", line_no);
      long u, v;
      if (!(ls >> u >> v) || u < 1 || v < 1 || u > n || v > n)
        throw ParseError("malformed edge '" + line + "'", line_no);
      if (u == v) throw ParseError("self-loop in edge '" + line + "'", line_no);
      edges.push_back({(int)u, (int)v});
      continue;
    }
    throw ParseError("bad token '" + tok + "'", line_no);
  }
  if (!header_seen) throw ParseError("missing 'p edge' header", line_no);
  std::vector<int> vertices((std::size_t)n);
  for (long i = 0; i < n; ++i) vertices[(std::size_t)i] = (int)(i + 1);
  return Graph::make(std::move(vertices), std::move(edges));
}

ReductionOutput sat_to_chains(const Formula& f) {
  ReductionOutput out;
  out.kind = ReductionKind::SatToChains;
  out.original_vars = f.variables();
  out.k = (int)f.num_vars();
  int next_fresh = out.original_vars.empty() ? 1 : out.original_vars.back() + 1;
  std::vector<Clause> clauses;
  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
    const Clause& c = f[ci];
    if (c.size() <= 3) {
      clauses.push_back(c);
      continue;
    }
    // {l1,l2,y1}, {~y_j, l_{j+2}, y_{j+1}} for j = 1..l-4, {~y_{l-3}, l_{l-1}, l_l}
    std::vector<Lit> lits(c.begin(), c.end());
    std::size_t l = lits.size();
    AuxBlock block{ci, {}};
    for (std::size_t j = 0; j + 3 < l; ++j)
      block.y_vars.push_back(next_fresh++);
    const auto& y = block.y_vars;
    clauses.push_back(Clause({lits[0], lits[1], Lit::make(y[0], true)}));
    for (std::size_t j = 1; j + 3 < l; ++j)
      clauses.push_back(Clause({Lit::make(y[j - 1], false), lits[j + 1],
                                Lit::make(y[j], true)}));
    clauses.push_back(
        Clause({Lit::make(y.back(), false), lits[l - 2], lits[l - 1]}));
    out.aux.push_back(std::move(block));
  }
  out.formula = Formula(std::move(clauses));
  return out;
}

ReductionOutput hs_to_match(const HsInstance& inst, int k) {
  if (k < 0) throw ContractError("budget must be non-negative");
  if (inst.elements.size() < 2)
    throw ContractError("hs_to_match needs at least 2 elements");
  for (const auto& s : inst.sets)
    if (s.size() < 2)
      throw ContractError(
          "hs_to_match needs sets of size >= 2 (fold singleton sets into the "
          "hitting set first)");
  ReductionOutput out;
  out.kind = ReductionKind::HsToMatch;
  out.original_vars = inst.elements;
  out.k = k;
  const std::vector<int>& x = inst.elements;
  int next_fresh = x.back() + 1;
  std::vector<Clause> clauses;
  // cycle over the elements
  for (std::size_t i = 0; i < x.size(); ++i)
    clauses.push_back(Clause({Lit::make(x[i], false),
                              Lit::make(x[(i + 1) % x.size()], true)}));
  // one implication chain per set, interleaving its elements
  for (std::size_t si = 0; si < inst.sets.size(); ++si) {
    const std::vector<int>& s = inst.sets[si];
    std::size_t q = s.size();
    AuxBlock block{si, {}};
    for (std::size_t j = 0; j + 1 < q; ++j) block.y_vars.push_back(next_fresh++);
    const auto& y = block.y_vars;
    clauses.push_back(Clause({Lit::make(y[0], true), Lit::make(s[0], true)}));
    for (std::size_t j = 1; j + 1 < q; ++j)
      clauses.push_back(Clause({Lit::make(y[j - 1], false),
                                Lit::make(y[j], true),
                                Lit::make(s[j], true)}));
    clauses.push_back(Clause(
        {Lit::make(y[q - 2], false), Lit::make(s[q - 1], true)}));
    out.aux.push_back(std::move(block));
  }
  out.formula = Formula(std::move(clauses));
  return out;
}

ReductionOutput vc_to_zeroval(const Graph& g, int k) {
  if (k < 0) throw ContractError("budget must be non-negative");
  ReductionOutput out;
  out.kind = ReductionKind::VcToZeroVal;
  out.original_vars = g.vertices;
  out.k = k;
  std::vector<Clause> clauses;
  for (auto [u, v] : g.edges)
    clauses.push_back(Clause({Lit::make(u, true), Lit::make(v, true)}));
  out.formula = Formula(std::move(clauses));
  return out;
}

std::string sidecar_json(const ReductionOutput& out) {
  nlohmann::json j;
  switch (out.kind) {
    case ReductionKind::SatToChains: j["kind"] = "sat2chains"; break;
    case ReductionKind::HsToMatch: j["kind"] = "hs2match"; break;
    case ReductionKind::VcToZeroVal: j["kind"] = "vc20val"; break;
  }
  j["k"] = out.k;
  j["original_vars"] = out.original_vars;
  nlohmann::json aux = nlohmann::json::array();
  for (const AuxBlock& b : out.aux)
    aux.push_back({{"source", b.source}, {"y_vars", b.y_vars}});
  j["aux"] = std::move(aux);
  return j.dump();
}

}  // namespace weakbd
