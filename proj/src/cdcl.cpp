#include "hybsat/cdcl.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace hybsat {

// --- VarOrderHeap ---------------------------------------------------------

void VarOrderHeap::insert(Var v) {
    if (contains(v)) return;
    pos_[static_cast<size_t>(v)] = static_cast<int32_t>(heap_.size());
    heap_.push_back(v);
    sift_up(heap_.size() - 1);
}

void VarOrderHeap::update(Var v) {
    if (contains(v)) sift_up(static_cast<size_t>(pos_[static_cast<size_t>(v)]));
}

Var VarOrderHeap::pop() {
    Var top = heap_[0];
    pos_[static_cast<size_t>(top)] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        pos_[static_cast<size_t>(heap_[0])] = 0;
        sift_down(0);
    }
    return top;
}

void VarOrderHeap::sift_up(size_t i) {
    Var v = heap_[i];
    while (i > 0) {
        size_t parent = (i - 1) / 2;
        if (!before(v, heap_[parent])) break;
        heap_[i] = heap_[parent];
        pos_[static_cast<size_t>(heap_[i])] = static_cast<int32_t>(i);
        i = parent;
    }
    heap_[i] = v;
    pos_[static_cast<size_t>(v)] = static_cast<int32_t>(i);
}

void VarOrderHeap::sift_down(size_t i) {
    Var v = heap_[i];
    for (;;) {
        size_t child = 2 * i + 1;
        if (child >= heap_.size()) break;
        if (child + 1 < heap_.size() && before(heap_[child + 1], heap_[child])) ++child;
        if (!before(heap_[child], v)) break;
        heap_[i] = heap_[child];
        pos_[static_cast<size_t>(heap_[i])] = static_cast<int32_t>(i);
        i = child;
    }
    heap_[i] = v;
    pos_[static_cast<size_t>(v)] = static_cast<int32_t>(i);
}

// --- VarActivity ----------------------------------------------------------

VarActivity::VarActivity(int num_vars, double decay)
    : act_(static_cast<size_t>(num_vars) + 1, 0.0), decay_(decay), heap_(act_) {
    heap_.grow(num_vars);
    for (Var v = 1; v <= num_vars; ++v) heap_.insert(v);
}

void VarActivity::bump(Var v) {
    act_[static_cast<size_t>(v)] += inc_;
    if (act_[static_cast<size_t>(v)] > 1e100) {
        for (double& a : act_) a *= 1e-100;
        inc_ *= 1e-100;
    }
    heap_.update(v);
}

Var VarActivity::pick_unassigned(const PropEngine& e) {
    for (;;) {
        assert(!heap_.empty());
        Var v = heap_.pop();
        if (e.value(v) == LBool::Undef) return v;
    }
}

// --- luby -----------------------------------------------------------------

uint64_t luby(uint64_t i) {
    // find the subsequence containing i
    uint64_t k = 1;
    while ((1ull << k) - 1 < i) ++k;
    while ((1ull << k) - 1 != i) {
        i -= (1ull << (k - 1)) - 1;
        k = 1;
        while ((1ull << k) - 1 < i) ++k;
    }
    return 1ull << (k - 1);
}

// --- CdclEngine -----------------------------------------------------------

CdclEngine::CdclEngine(Formula& f, const CdclOptions& opts)
    : formula_(f),
      opts_(opts),
      prop_(f),
      activity_(f.num_vars(), opts.var_decay),
      seen_(static_cast<size_t>(f.num_vars()) + 1, 0),
      redundant_memo_(static_cast<size_t>(f.num_vars()) + 1, 0) {
    prop_.on_unassign = [this](Var v) { activity_.reinsert(v); };
}

void CdclEngine::bump_clause(Clause* c) {
    c->activity += cla_inc_;
    if (c->activity > 1e20) {
        for (size_t i = 0; i < formula_.num_learned(); ++i)
            formula_.learned_clause(i)->activity *= 1e-20;
        cla_inc_ *= 1e-20;
    }
}

LearnedClauseInfo CdclEngine::analyze(const Clause* conflict) {
    const int conflict_level = prop_.decision_level();
    assert(conflict_level >= 1 && "level-0 conflicts are handled by the caller");

    std::vector<Lit> learnt(1); // slot 0 reserved for the asserting literal
    int path = 0;
    size_t index = prop_.trail().size();
    Lit p{};
    bool have_p = false;
    const Clause* cur = conflict;

    for (;;) {
        assert(cur != nullptr);
        if (cur->learned) bump_clause(const_cast<Clause*>(cur));
        for (Lit q : cur->lits) {
            Var v = q.var();
            if (have_p && v == p.var()) continue;
            if (seen_[static_cast<size_t>(v)] || prop_.level_of(v) == 0) continue;
            seen_[static_cast<size_t>(v)] = 1;
            to_clear_.push_back(v);
            activity_.bump(v);
            if (prop_.level_of(v) >= conflict_level) ++path;
            else learnt.push_back(q);
        }
        // most recently assigned literal that participates in the conflict
        while (!seen_[static_cast<size_t>(prop_.trail()[--index].lit.var())]) {}
        p = prop_.trail()[index].lit;
        have_p = true;
        seen_[static_cast<size_t>(p.var())] = 0;
        --path;
        if (path == 0) break;
        cur = prop_.reason_of(p.var());
    }
    learnt[0] = ~p;

    if (opts_.minimize) minimize(learnt);

    int bl = 0;
    if (learnt.size() >= 2) {
        size_t hi = 1;
        for (size_t i = 2; i < learnt.size(); ++i)
            if (prop_.level_of(learnt[i].var()) > prop_.level_of(learnt[hi].var())) hi = i;
        std::swap(learnt[1], learnt[hi]);
        bl = prop_.level_of(learnt[1].var());
    }

    for (Var v : to_clear_) seen_[static_cast<size_t>(v)] = 0;
    to_clear_.clear();

    LearnedClauseInfo info{std::move(learnt), Lit{}, bl};
    info.asserting = info.lits[0];
    if (on_learn) on_learn(info, prop_);
    return info;
}

bool CdclEngine::literal_redundant(Lit q, uint32_t abstract_levels) {
    const Clause* r = prop_.reason_of(q.var());
    if (r == nullptr) return false; // decision
    for (Lit x : r->lits) {
        Var v = x.var();
        if (v == q.var()) continue;
        if (prop_.level_of(v) == 0 || seen_[static_cast<size_t>(v)]) continue;
        if (redundant_memo_[static_cast<size_t>(v)] == 1) continue;
        if (redundant_memo_[static_cast<size_t>(v)] == 2) return false;
        uint32_t bit = 1u << (prop_.level_of(v) & 31);
        bool ok = (bit & abstract_levels) != 0 && literal_redundant(x, abstract_levels);
        redundant_memo_[static_cast<size_t>(v)] = ok ? 1 : 2;
        memo_clear_.push_back(v);
        if (!ok) return false;
    }
    return true;
}

void CdclEngine::minimize(std::vector<Lit>& learnt) {
    uint32_t abstract_levels = 0;
    for (size_t i = 1; i < learnt.size(); ++i)
        abstract_levels |= 1u << (prop_.level_of(learnt[i].var()) & 31);

    size_t keep = 1;
    for (size_t i = 1; i < learnt.size(); ++i) {
        if (!literal_redundant(learnt[i], abstract_levels)) learnt[keep++] = learnt[i];
    }
    learnt.resize(keep);

    for (Var v : memo_clear_) redundant_memo_[static_cast<size_t>(v)] = 0;
    memo_clear_.clear();
}

int CdclEngine::compute_backjump_level(const std::vector<Lit>& lits) const {
    int top = -1, second = -1;
    for (Lit l : lits) {
        int lvl = prop_.level_of(l.var());
        if (lvl > top) {
            second = top;
            top = lvl;
        } else if (lvl > second) {
            second = lvl;
        }
    }
    return second < 0 ? 0 : second;
}

Clause* CdclEngine::learn(const LearnedClauseInfo& info, int override_level) {
    int target = override_level >= 0 ? override_level : info.backjump_level;
    prop_.backjump(target);
    Clause* c = prop_.add_and_attach_learned(info.lits);
    bump_clause(c);
    ++stats_.learned;
    return c;
}

void CdclEngine::decay_activities() {
    activity_.decay();
    decay_clause_activity();
}

Lit CdclEngine::pick_decision() {
    Var v = activity_.pick_unassigned(prop_);
    return prop_.saved_phase(v) ? Lit::positive(v) : Lit::negative(v);
}

bool CdclEngine::restart_due() {
    if (opts_.restart_every_conflict) return true;
    if (++conflicts_since_restart_ >= opts_.luby_unit * luby(restart_round_ + 1)) {
        conflicts_since_restart_ = 0;
        ++restart_round_;
        return true;
    }
    return false;
}

bool CdclEngine::maybe_reduce() {
    size_t cap = std::max(opts_.reduce_base,
                          static_cast<size_t>(opts_.reduce_factor * formula_.original().size()));
    if (formula_.num_learned() <= cap) return false;

    std::vector<const Clause*> locked;
    prop_.collect_reason_clauses(locked);
    std::unordered_set<const Clause*> locked_set(locked.begin(), locked.end());

    std::vector<Clause*> candidates;
    candidates.reserve(formula_.num_learned());
    for (size_t i = 0; i < formula_.num_learned(); ++i) {
        Clause* c = formula_.learned_clause(i);
        if (c->size() <= 2 || locked_set.count(c)) continue;
        candidates.push_back(c);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Clause* a, const Clause* b) { return a->activity < b->activity; });

    size_t target = formula_.num_learned() / 2;
    if (candidates.size() > target) candidates.resize(target);
    if (candidates.empty()) return false;

    prop_.remove_learned({candidates.begin(), candidates.end()});
    stats_.removed += candidates.size();
    ++reduce_epoch_;
    return true;
}

SolveOutcome CdclEngine::solve(const Budget& budget) {
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    auto finish = [&](Status s, Model m = {}) {
        stats_.seconds = elapsed();
        return SolveOutcome{s, std::move(m), stats_};
    };

    for (;;) {
        if (budget.max_conflicts && stats_.conflicts >= budget.max_conflicts)
            return finish(Status::Unknown);
        if (budget.max_seconds > 0 && elapsed() >= budget.max_seconds)
            return finish(Status::Unknown);

        const Clause* conflict = prop_.propagate();
        if (conflict != nullptr) {
            ++stats_.conflicts;
            if (prop_.decision_level() == 0) return finish(Status::Unsat);
            LearnedClauseInfo info = analyze(conflict);
            bool restart = restart_due();
            if (restart) ++stats_.restarts;
            learn(info, restart ? 0 : -1);
            decay_activities();
            maybe_reduce();
        } else {
            if (prop_.num_assigned() == static_cast<size_t>(formula_.num_vars())) {
                Model m(formula_.num_vars());
                for (Var v = 1; v <= formula_.num_vars(); ++v)
                    m.set(v, prop_.value(v) == LBool::True);
                if (!verify_model(formula_, m, true))
                    throw std::logic_error("cdcl: model verification failed");
                return finish(Status::Sat, std::move(m));
            }
            Lit d = pick_decision();
            ++stats_.decisions;
            prop_.decide(d);
        }
    }
}

SolveOutcome solve_cdcl(Formula& f, const Budget& budget, const CdclOptions& opts) {
    if (f.has_empty_clause()) return SolveOutcome{Status::Unsat, {}, {}};
    CdclEngine engine(f, opts);
    return engine.solve(budget);
}

} // namespace hybsat
