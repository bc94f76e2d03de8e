#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hybsat::bench {

struct BenchConfig {
    std::string corpus_dir;
    std::vector<std::string> modes{"hybrid", "cdcl"};
    double timeout = 10.0;
    uint64_t seed = 1;
    int jobs = 1;
    std::string out_prefix = "bench";
    std::string self_path; // solver binary to invoke per run
};

struct RunRecord {
    std::string instance;
    std::string mode;
    std::string status = "UNKNOWN"; // SAT | UNSAT | UNKNOWN
    double seconds = 0;
    uint64_t seed = 0;
    uint64_t flips = 0, local_minima = 0, fix_calls = 0, conflicts = 0, learned = 0, restarts = 0;
    std::string note;
};

// Runs every (instance, mode) pair in child processes through a bounded
// worker pool, re-verifies every SAT model, writes <prefix>-results.csv
// and <prefix>-cactus-<mode>.csv. Returns nonzero on errors; a SAT/UNSAT
// disagreement between modes on the same instance is a fatal error.
int run_bench(const BenchConfig& config);

} // namespace hybsat::bench
