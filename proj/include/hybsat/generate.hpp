#pragma once

#include <cstdint>

#include "hybsat/cnf.hpp"

namespace hybsat {

// Pigeonhole instance: one clause per pigeon choosing a hole, one binary
// conflict clause per hole and pigeon pair. Unsatisfiable whenever
// pigeons > holes.
Formula pigeonhole(int pigeons, int holes);

// Uniform random 3-SAT with round(ratio * num_vars) clauses of three
// distinct variables and random polarities. Deterministic given the seed.
Formula random_3sat(int num_vars, double ratio, uint64_t seed);

} // namespace hybsat
