#include "generate.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace weakbd {

namespace {

uint64_t bounded(std::mt19937_64& rng, uint64_t n) {
  // unbiased rejection sampling straight off the raw stream
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

// number of clauses of exactly `width` distinct variables over n_vars,
// capped to avoid overflow
uint64_t count_valid_clauses(int n_vars, int width) {
  const uint64_t cap = UINT64_MAX / 2;
  uint64_t binom = 1;
  for (int i = 0; i < width; ++i) {
    if (binom > cap / (uint64_t)std::max(1, n_vars)) return cap;
    binom = binom * (uint64_t)(n_vars - i) / (uint64_t)(i + 1);
  }
  for (int i = 0; i < width; ++i) {
    if (binom > cap / 2) return cap;
    binom *= 2;
  }
  return binom;
}

}  // namespace

Formula generate_random(int n_vars, int n_clauses, int width, uint64_t seed) {
  if (n_vars < 0 || n_clauses < 0 || width < 1)
    throw ContractError("bad generator parameters");
  if (width > n_vars || (uint64_t)n_clauses > count_valid_clauses(n_vars, width))
    throw ContractError("requested more clauses than exist for this width");
  std::mt19937_64 rng(seed);
  std::set<Clause> clauses;
  while ((int)clauses.size() < n_clauses) {
    std::vector<int> vars;
    while ((int)vars.size() < width) {
      int v = (int)bounded(rng, (uint64_t)n_vars) + 1;
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
    }
    std::vector<Lit> lits;
    for (int v : vars) lits.push_back(Lit::make(v, bounded(rng, 2) == 1));
    clauses.insert(Clause(std::move(lits)));
  }
  return Formula(std::vector<Clause>(clauses.begin(), clauses.end()));
}

}  // namespace weakbd
