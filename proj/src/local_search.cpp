#include "hybsat/local_search.hpp"

#include <cassert>
#include <stdexcept>

namespace hybsat {

LocalSearch::LocalSearch(const Formula& f, const PropEngine& trail)
    : formula_(f), trail_(trail) {
    size_t n = static_cast<size_t>(f.num_vars());
    value_.assign(n + 1, 0);
    occ_.resize(2 * n);
    mirror_.assign(n + 1, LBool::Undef);
}

void LocalSearch::init_random(Rng& rng) {
    for (Var v = 1; v <= formula_.num_vars(); ++v) {
        LBool t = trail_.value(v);
        value_[static_cast<size_t>(v)] = (t == LBool::Undef) ? rng.coin() : (t == LBool::True);
    }
    rebuild();
}

void LocalSearch::rebuild() {
    for (Var v = 1; v <= formula_.num_vars(); ++v) {
        LBool t = trail_.value(v);
        mirror_[static_cast<size_t>(v)] = t;
        if (t != LBool::Undef) value_[static_cast<size_t>(v)] = (t == LBool::True);
    }
    clauses_.clear();
    for (auto& wl : occ_) wl.clear();
    falsified_.clear();
    falsified_pos_.clear();
    tracked_learned_ = 0;
    for (const Clause& c : formula_.original()) add_tracked(&c);
    while (tracked_learned_ < formula_.num_learned())
        add_tracked(formula_.learned_clause(tracked_learned_++));
}

void LocalSearch::add_tracked(const Clause* c) {
    int32_t id = static_cast<int32_t>(clauses_.size());
    Tracked t{c};
    for (Lit l : c->lits) {
        occ_[static_cast<size_t>(l.code())].push_back(id);
        if (value_[static_cast<size_t>(l.var())] != l.negated()) ++t.true_count;
        if (trail_.value(l) == LBool::True) ++t.trail_true;
    }
    clauses_.push_back(t);
    falsified_pos_.push_back(-1);
    refresh_membership(id);
}

void LocalSearch::track_new_learned() {
    while (tracked_learned_ < formula_.num_learned())
        add_tracked(formula_.learned_clause(tracked_learned_++));
}

void LocalSearch::refresh_membership(int32_t id) {
    const Tracked& t = clauses_[static_cast<size_t>(id)];
    bool should = t.trail_true == 0 && t.true_count == 0;
    int32_t pos = falsified_pos_[static_cast<size_t>(id)];
    if (should && pos < 0) {
        falsified_pos_[static_cast<size_t>(id)] = static_cast<int32_t>(falsified_.size());
        falsified_.push_back(id);
    } else if (!should && pos >= 0) {
        int32_t last = falsified_.back();
        falsified_[static_cast<size_t>(pos)] = last;
        falsified_pos_[static_cast<size_t>(last)] = pos;
        falsified_.pop_back();
        falsified_pos_[static_cast<size_t>(id)] = -1;
    }
}

int LocalSearch::delta_unchecked(Var v) const {
    Lit now_true = true_lit(v);
    Lit gains = ~now_true; // becomes true after the flip
    int make = 0, brk = 0;
    for (int32_t id : occ_[static_cast<size_t>(gains.code())]) {
        const Tracked& t = clauses_[static_cast<size_t>(id)];
        if (t.trail_true == 0 && t.true_count == 0) ++make;
    }
    for (int32_t id : occ_[static_cast<size_t>(now_true.code())]) {
        const Tracked& t = clauses_[static_cast<size_t>(id)];
        if (t.trail_true == 0 && t.true_count == 1) ++brk;
    }
    return brk - make;
}

int LocalSearch::flip_delta(Var v) const {
    if (trail_.value(v) != LBool::Undef)
        throw std::logic_error("flip_delta: variable is fixed by the trail");
    return delta_unchecked(v);
}

void LocalSearch::toggle(Var v) {
    Lit was_true = true_lit(v);
    Lit now_true = ~was_true;
    value_[static_cast<size_t>(v)] = !value_[static_cast<size_t>(v)];
    for (int32_t id : occ_[static_cast<size_t>(now_true.code())]) {
        ++clauses_[static_cast<size_t>(id)].true_count;
        refresh_membership(id);
    }
    for (int32_t id : occ_[static_cast<size_t>(was_true.code())]) {
        --clauses_[static_cast<size_t>(id)].true_count;
        refresh_membership(id);
    }
}

void LocalSearch::flip(Var v) {
    if (trail_.value(v) != LBool::Undef)
        throw std::logic_error("flip: variable is fixed by the trail");
    if (on_flip) on_flip(v);
    toggle(v);
}

std::optional<Var> LocalSearch::try_descent_step(Rng& rng) {
    assert(!falsified_.empty());
    order_.assign(falsified_.begin(), falsified_.end());
    rng.shuffle(order_);
    for (int32_t id : order_) {
        const Clause* c = clauses_[static_cast<size_t>(id)].clause;
        int best = 0;
        ties_.clear();
        for (Lit l : c->lits) {
            Var v = l.var();
            if (trail_.value(v) != LBool::Undef) continue;
            int d = delta_unchecked(v);
            if (d >= 0) continue;
            if (ties_.empty() || d < best) {
                best = d;
                ties_.assign(1, v);
            } else if (d == best) {
                ties_.push_back(v);
            }
        }
        if (!ties_.empty()) {
            Var v = ties_[rng.below(ties_.size())];
            flip(v);
            return v;
        }
    }
    return std::nullopt; // local minimum
}

void LocalSearch::sync_with_trail() {
    for (Var v = 1; v <= formula_.num_vars(); ++v) {
        LBool cur = trail_.value(v);
        LBool old = mirror_[static_cast<size_t>(v)];
        if (cur == old) continue;
        if (old != LBool::Undef) {
            Lit was = (old == LBool::True) ? Lit::positive(v) : Lit::negative(v);
            for (int32_t id : occ_[static_cast<size_t>(was.code())]) {
                --clauses_[static_cast<size_t>(id)].trail_true;
                refresh_membership(id);
            }
        }
        if (cur != LBool::Undef) {
            Lit now = (cur == LBool::True) ? Lit::positive(v) : Lit::negative(v);
            for (int32_t id : occ_[static_cast<size_t>(now.code())]) {
                ++clauses_[static_cast<size_t>(id)].trail_true;
                refresh_membership(id);
            }
            bool want = (cur == LBool::True);
            if (value_[static_cast<size_t>(v)] != want) toggle(v);
        }
        mirror_[static_cast<size_t>(v)] = cur;
    }
}

Model LocalSearch::assignment() const {
    Model m(formula_.num_vars());
    for (Var v = 1; v <= formula_.num_vars(); ++v) m.set(v, value(v));
    return m;
}

std::vector<const Clause*> LocalSearch::falsified_clauses() const {
    std::vector<const Clause*> out;
    out.reserve(falsified_.size());
    for (int32_t id : falsified_) out.push_back(clauses_[static_cast<size_t>(id)].clause);
    return out;
}

} // namespace hybsat
