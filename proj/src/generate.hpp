#pragma once

#include <cstdint>

#include "cnf.hpp"

namespace weakbd {

// n_clauses distinct clauses of exactly `width` literals over variables
// 1..n_vars, sampled uniformly without replacement. Deterministic per seed
// (no use of distribution classes, so output is stable across platforms).
Formula generate_random(int n_vars, int n_clauses, int width, uint64_t seed);

}  // namespace weakbd
