#pragma once

#include <functional>

#include "hybsat/cdcl.hpp"
#include "hybsat/cnf.hpp"
#include "hybsat/local_search.hpp"
#include "hybsat/rng.hpp"
#include "hybsat/trail.hpp"

namespace hybsat {

struct HybridParams {
    uint64_t max_flips = 0; // per restart; 0 means 100 * num_vars
    uint64_t seed = 0;
    Budget budget{1200.0, 0, 0}; // wall clock default mirrors competition practice
    CdclOptions cdcl;
    bool ls_only = false; // disable the fixing step (incomplete baseline)
};

enum class FixResult { UnsatProved, Unknown };

// Local search drives; every local minimum hands one falsified clause to
// the clause-learning engine, which fixes its literals as decisions,
// learns on conflict and resynchronizes the complete assignment with the
// trail. Variables on the trail are never flipped.
class HybridSolver {
public:
    HybridSolver(Formula& f, const HybridParams& params = {});

    SolveOutcome solve();

    // Fixes the literals of a falsified clause as decisions (activity
    // order), propagating after each one. On conflict: analysis, learning
    // and backjump; a level-0 conflict proves unsatisfiability. Always
    // leaves propagation at fixpoint and the assignment synchronized.
    // Pre: alpha is in the falsified set.
    FixResult fix(const Clause* alpha);

    // Total model from trail values plus the complete assignment; verified
    // against the formula. Pre: the falsified set is empty.
    Model merged_model() const;

    Formula& formula() { return formula_; }
    PropEngine& prop() { return cdcl_.prop(); }
    const PropEngine& prop() const { return cdcl_.prop(); }
    CdclEngine& cdcl() { return cdcl_; }
    LocalSearch& ls() { return ls_; }
    Rng& rng() { return rng_; }
    SolveStats& stats() { return cdcl_.stats(); }

    // Invoked at every local minimum, before the clause to fix is chosen.
    std::function<void(HybridSolver&)> on_local_minimum;

private:
    Formula& formula_;
    HybridParams params_;
    CdclEngine cdcl_;
    LocalSearch ls_;
    Rng rng_;
};

SolveOutcome solve_hybrid(Formula& f, const HybridParams& params = {});

} // namespace hybsat
