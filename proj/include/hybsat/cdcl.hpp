#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include "hybsat/cnf.hpp"
#include "hybsat/trail.hpp"

namespace hybsat {

struct Budget {
    double max_seconds = 0;     // 0 = unlimited
    uint64_t max_conflicts = 0; // 0 = unlimited
    uint64_t flip_limit = 0;    // 0 = unlimited (hybrid solver only)
};

struct SolveStats {
    uint64_t decisions = 0;
    uint64_t propagations = 0;
    uint64_t conflicts = 0;
    uint64_t learned = 0;
    uint64_t removed = 0;
    uint64_t restarts = 0;
    uint64_t flips = 0;
    uint64_t local_minima = 0;
    uint64_t fix_calls = 0;
    double seconds = 0;
};

enum class Status { Sat, Unsat, Unknown };

struct SolveOutcome {
    Status status = Status::Unknown;
    Model model; // meaningful iff status == Sat
    SolveStats stats;
};

struct CdclOptions {
    double var_decay = 0.95;
    double clause_decay = 0.999;
    uint64_t luby_unit = 64;          // restart interval base, in conflicts
    size_t reduce_base = 4000;        // learned store cap: max(base, factor * originals)
    double reduce_factor = 2.0;
    bool minimize = true;             // recursive learned-clause minimization
    bool restart_every_conflict = false; // test knob
};

// Asserting clause produced by conflict analysis: lits[0] is the single
// literal of the conflict decision level, lits[1] (when present) sits at
// the backjump level.
struct LearnedClauseInfo {
    std::vector<Lit> lits;
    Lit asserting;
    int backjump_level = 0;
};

// Indexed max-heap over variables; priority = activity, ties by lowest
// variable index.
class VarOrderHeap {
public:
    explicit VarOrderHeap(const std::vector<double>& act) : act_(act) {}

    bool empty() const { return heap_.empty(); }
    bool contains(Var v) const {
        return v < static_cast<Var>(pos_.size()) && pos_[static_cast<size_t>(v)] >= 0;
    }
    void grow(int num_vars) { pos_.resize(static_cast<size_t>(num_vars) + 1, -1); }
    void insert(Var v);
    void update(Var v); // after an activity increase
    Var pop();

private:
    bool before(Var a, Var b) const {
        double sa = act_[static_cast<size_t>(a)], sb = act_[static_cast<size_t>(b)];
        return sa > sb || (sa == sb && a < b);
    }
    void sift_up(size_t i);
    void sift_down(size_t i);

    const std::vector<double>& act_;
    std::vector<Var> heap_;
    std::vector<int32_t> pos_;
};

// Per-variable activity scores with multiplicative decay and overflow
// rescaling, driving the decision order.
class VarActivity {
public:
    VarActivity(int num_vars, double decay);

    void bump(Var v);
    void decay() { inc_ /= decay_; }
    double score(Var v) const { return act_[static_cast<size_t>(v)]; }
    void reinsert(Var v) {
        if (!heap_.contains(v)) heap_.insert(v);
    }
    // Highest-activity unassigned variable (ties: lowest index).
    Var pick_unassigned(const PropEngine& e);

private:
    std::vector<double> act_;
    double inc_ = 1.0;
    double decay_;
    VarOrderHeap heap_;
};

// Conflict analysis (first UIP + recursive minimization), clause learning,
// Luby restarts and learned-store reduction, plus the complete solver loop.
// Also used piecewise by the hybrid solver.
class CdclEngine {
public:
    explicit CdclEngine(Formula& f, const CdclOptions& opts = {});

    PropEngine& prop() { return prop_; }
    const PropEngine& prop() const { return prop_; }
    VarActivity& activity() { return activity_; }
    SolveStats& stats() { return stats_; }
    const CdclOptions& options() const { return opts_; }

    // First-UIP analysis of a falsified clause. Pre: decision level >= 1
    // (a level-0 conflict means the formula is proved unsatisfiable and is
    // handled by the caller).
    LearnedClauseInfo analyze(const Clause* conflict);

    // Second-highest decision level among the literals; 0 for units.
    int compute_backjump_level(const std::vector<Lit>& lits) const;

    // Adds the analyzed clause, backjumps (to override_level if >= 0, else
    // to info.backjump_level) and enqueues the asserting literal if the
    // clause became unit.
    Clause* learn(const LearnedClauseInfo& info, int override_level = -1);

    void decay_activities();

    Lit pick_decision();

    // Luby-scheduled restart test; consumes the interval when due.
    bool restart_due();

    // Deletes the lowest-activity half of the learned store once it
    // exceeds max(reduce_base, reduce_factor * originals). Reasons of
    // trail literals and clauses of size <= 2 are kept.
    bool maybe_reduce();
    uint64_t reduce_epoch() const { return reduce_epoch_; }

    // Algorithm: propagate, analyze/learn/backjump on conflict (restart
    // resets to level 0), decide otherwise; SAT when all variables are
    // assigned, UNSAT on a level-0 conflict.
    SolveOutcome solve(const Budget& budget = {});

    // Observer invoked after each analysis, before backjumping.
    std::function<void(const LearnedClauseInfo&, const PropEngine&)> on_learn;

private:
    bool literal_redundant(Lit q, uint32_t abstract_levels);
    void minimize(std::vector<Lit>& learnt);
    void bump_clause(Clause* c);
    void decay_clause_activity() { cla_inc_ /= opts_.clause_decay; }

    Formula& formula_;
    CdclOptions opts_;
    PropEngine prop_;
    VarActivity activity_;
    SolveStats stats_;
    double cla_inc_ = 1.0;

    uint64_t conflicts_since_restart_ = 0;
    uint64_t restart_round_ = 0;
    uint64_t reduce_epoch_ = 0;

    // analysis scratch
    std::vector<uint8_t> seen_;
    std::vector<Var> to_clear_;
    std::vector<int8_t> redundant_memo_; // 0 unknown, 1 redundant, 2 needed
    std::vector<Var> memo_clear_;
};

// i-th term (1-based) of the Luby sequence 1,1,2,1,1,2,4,...
uint64_t luby(uint64_t i);

SolveOutcome solve_cdcl(Formula& f, const Budget& budget = {}, const CdclOptions& opts = {});

} // namespace hybsat
