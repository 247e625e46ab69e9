#include "hitting_set.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace weakbd {

HsInstance HsInstance::make(std::vector<int> elements,
                            std::vector<std::vector<int>> sets) {
  HsInstance inst;
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  if (!elements.empty() && elements.front() < 1)
    throw ContractError("element ids must be positive");
  inst.elements = std::move(elements);
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw ContractError("hitting set instance has an empty set");
    for (int e : s)
      if (!std::binary_search(inst.elements.begin(), inst.elements.end(), e))
        throw ContractError("set element " + std::to_string(e) +
                            " is not in the element universe");
  }
  inst.sets = std::move(sets);
  return inst;
}

namespace {

struct Hs3Search {
  const SearchLimits& limits;
  long long nodes = 0;
  std::vector<int> solution;

  void note_node() {
    ++nodes;
    if (limits.deadline && nodes % limits.check_interval == 0 &&
        limits.expired())
      throw TimeoutError(nodes);
  }

  // `open` holds the still-unhit sets in insertion order
  bool solve(std::vector<std::vector<int>> open, std::vector<int>& chosen,
             int budget) {
    note_node();
    // a set that contains another is hit whenever the smaller one is
    std::vector<char> drop(open.size(), 0);
    for (std::size_t i = 0; i < open.size(); ++i) {
      for (std::size_t j = 0; j < open.size(); ++j) {
        if (i == j) continue;
        bool j_subset = std::includes(open[i].begin(), open[i].end(),
                                      open[j].begin(), open[j].end());
        if (j_subset && (open[j].size() < open[i].size() || j < i)) {
          drop[i] = 1;
          break;
        }
      }
    }
    std::vector<std::vector<int>> kept;
    for (std::size_t i = 0; i < open.size(); ++i)
      if (!drop[i]) kept.push_back(std::move(open[i]));
    if (kept.empty()) {
      solution = chosen;
      return true;
    }
    if (budget == 0) return false;
    std::size_t pick = 0;
    for (std::size_t i = 1; i < kept.size(); ++i)
      if (kept[i].size() < kept[pick].size()) pick = i;
    std::vector<int> branch_set = kept[pick];
    for (int e : branch_set) {
      std::vector<std::vector<int>> rest;
      for (auto& s : kept)
        if (!std::binary_search(s.begin(), s.end(), e)) rest.push_back(s);
      chosen.push_back(e);
      if (solve(std::move(rest), chosen, budget - 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

HsResult hs3_solve(const HsInstance& inst, int k, const SearchLimits& limits) {
  if (k < 0) throw ContractError("budget must be non-negative");
  for (const auto& s : inst.sets)
    if (s.size() > 3)
      throw ContractError("hs3_solve requires sets of size <= 3");
  Hs3Search search{limits};
  std::vector<int> chosen;
  HsResult res;
  res.found = search.solve(inst.sets, chosen, k);
  res.nodes = search.nodes;
  if (res.found) {
    std::sort(search.solution.begin(), search.solution.end());
    res.hitting_set = std::move(search.solution);
  }
  return res;
}

bool hs_verify(const HsInstance& inst, const std::vector<int>& hitting_set) {
  for (const auto& s : inst.sets) {
    bool hit = std::any_of(s.begin(), s.end(), [&](int e) {
      return std::find(hitting_set.begin(), hitting_set.end(), e) !=
             hitting_set.end();
    });
    if (!hit) return false;
  }
  return true;
}

FoldedHs fold_singletons(const HsInstance& inst) {
  FoldedHs out;
  std::vector<int> forced;
  for (const auto& s : inst.sets)
    if (s.size() == 1) forced.push_back(s[0]);
  std::sort(forced.begin(), forced.end());
  forced.erase(std::unique(forced.begin(), forced.end()), forced.end());
  std::vector<std::vector<int>> kept;
  for (const auto& s : inst.sets) {
    bool hit = std::any_of(s.begin(), s.end(), [&](int e) {
      return std::binary_search(forced.begin(), forced.end(), e);
    });
    if (!hit) kept.push_back(s);
  }
  out.instance = HsInstance::make(inst.elements, std::move(kept));
  out.forced = std::move(forced);
  return out;
}

HsInstance parse_hs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  long n_elems = 0, n_sets = 0;
  std::vector<std::vector<int>> sets;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok[0] == 'c') continue;
    if (tok == "p") {
      if (header_seen) throw ParseError("duplicate header", line_no);
      std::string fmt;
      if (!(ls >> fmt >> n_elems >> n_sets) || fmt != "hs" || n_elems < 0 ||
          n_sets < 0)
        throw ParseError("malformed header '" + line + "'", line_no);
      header_seen = true;
      continue;
    }
    if (!header_seen) throw ParseError("set data before 'p hs' header", line_no);
    std::vector<int> set;
    ls.clear();
    ls.seekg(0);
    while (ls >> tok) {
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (end != tok.c_str() + tok.size() || v < 1 || v > n_elems)
        throw ParseError("bad element '" + tok + "'", line_no);
      set.push_back((int)v);
    }
    if (set.empty()) throw ParseError("empty set", line_no);
    sets.push_back(std::move(set));
  }
  if (!header_seen) throw ParseError("missing 'p hs' header", line_no);
  if ((long)sets.size() != n_sets)
    throw ParseError("expected " + std::to_string(n_sets) + " sets, found " +
                         std::to_string(sets.size()),
                     line_no);
  std::vector<int> elements((std::size_t)n_elems);
  for (long i = 0; i < n_elems; ++i) elements[(std::size_t)i] = (int)(i + 1);
  return HsInstance::make(std::move(elements), std::move(sets));
}

std::string write_hs(const HsInstance& inst) {
  std::ostringstream out;
  int max_elem = inst.elements.empty() ? 0 : inst.elements.back();
  out << "p hs " << max_elem << ' ' << inst.sets.size() << '\n';
  for (const auto& s : inst.sets) {
    for (std::size_t i = 0; i < s.size(); ++i)
      out << (i ? " " : "") << s[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace weakbd
