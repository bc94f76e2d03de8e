#include "hybsat/hybrid.hpp"

#include <cassert>
#include <stdexcept>

namespace hybsat {

HybridSolver::HybridSolver(Formula& f, const HybridParams& params)
    : formula_(f),
      params_(params),
      cdcl_(f, params.cdcl),
      ls_(f, cdcl_.prop()),
      rng_(params.seed) {}

FixResult HybridSolver::fix(const Clause* alpha) {
    SolveStats& st = stats();
    ++st.fix_calls;
    uint64_t epoch_before = cdcl_.reduce_epoch();

    // pending decisions: alpha's literals over unassigned variables, each
    // to be asserted true
    std::vector<Lit> pending;
    for (Lit l : alpha->lits)
        if (prop().value(l.var()) == LBool::Undef) pending.push_back(l);
    assert(!pending.empty() && "a falsified clause at propagation fixpoint has free variables");

    const Clause* conflict = nullptr;
    while (!pending.empty() && conflict == nullptr) {
        // highest activity first, ties by clause order
        size_t best = 0;
        for (size_t i = 1; i < pending.size(); ++i)
            if (cdcl_.activity().score(pending[i].var()) > cdcl_.activity().score(pending[best].var()))
                best = i;
        prop().decide(pending[best]);
        ++st.decisions;
        conflict = prop().propagate();
        std::erase_if(pending, [&](Lit l) { return prop().value(l.var()) != LBool::Undef; });
    }

    if (conflict != nullptr) {
        // The remaining decisions are abandoned. Learning must leave
        // propagation at fixpoint, so conflicts triggered by the asserting
        // literal are resolved here as well.
        for (;;) {
            ++st.conflicts;
            if (prop().decision_level() == 0) return FixResult::UnsatProved;
            LearnedClauseInfo info = cdcl_.analyze(conflict);
            cdcl_.learn(info);
            cdcl_.decay_activities();
            conflict = prop().propagate();
            if (conflict == nullptr) break;
        }
        cdcl_.maybe_reduce();
    }

    if (cdcl_.reduce_epoch() != epoch_before) {
        ls_.rebuild();
    } else {
        ls_.sync_with_trail();
        ls_.track_new_learned();
    }
    return FixResult::Unknown;
}

Model HybridSolver::merged_model() const {
    Model m(formula_.num_vars());
    for (Var v = 1; v <= formula_.num_vars(); ++v) {
        LBool t = prop().value(v);
        if (t != LBool::Undef && (t == LBool::True) != ls_.value(v))
            throw std::logic_error("merged_model: assignment out of sync with trail");
        m.set(v, t == LBool::Undef ? ls_.value(v) : t == LBool::True);
    }
    if (!verify_model(formula_, m, true))
        throw std::logic_error("merged_model: verification failed");
    return m;
}

SolveOutcome HybridSolver::solve() {
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    SolveStats& st = stats();
    auto finish = [&](Status s, Model m = {}) {
        st.seconds = elapsed();
        return SolveOutcome{s, std::move(m), st};
    };

    if (formula_.has_empty_clause()) return finish(Status::Unsat);
    if (prop().propagate() != nullptr) return finish(Status::Unsat); // root-level conflict

    const Budget& budget = params_.budget;
    uint64_t max_flips = params_.max_flips ? params_.max_flips
                                           : 100ull * static_cast<uint64_t>(formula_.num_vars());
    if (max_flips == 0) max_flips = 1;

    bool first_round = true;
    for (;;) {
        if (!first_round) ++st.restarts;
        first_round = false;
        prop().backjump(0);
        ls_.init_random(rng_);

        for (uint64_t j = 0; j < max_flips; ++j) {
            if (budget.max_seconds > 0 && elapsed() >= budget.max_seconds)
                return finish(Status::Unknown);
            if (budget.flip_limit && st.flips >= budget.flip_limit)
                return finish(Status::Unknown);
            if (budget.max_conflicts && st.conflicts >= budget.max_conflicts)
                return finish(Status::Unknown);

            if (ls_.all_satisfied()) return finish(Status::Sat, merged_model());

            if (auto flipped = ls_.try_descent_step(rng_)) {
                (void)flipped;
                ++st.flips;
                continue;
            }

            ++st.local_minima;
            if (on_local_minimum) on_local_minimum(*this);
            if (params_.ls_only) break; // no fixing step: draw a fresh assignment

            const Clause* alpha = ls_.falsified_at(rng_.below(ls_.falsified_count()));
            if (fix(alpha) == FixResult::UnsatProved) return finish(Status::Unsat);
        }
    }
}

SolveOutcome solve_hybrid(Formula& f, const HybridParams& params) {
    HybridSolver solver(f, params);
    return solver.solve();
}

} // namespace hybsat
