#include "hybsat/trail.hpp"

#include <cassert>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace hybsat {

PropEngine::PropEngine(Formula& f) : formula_(f) {
    size_t n = static_cast<size_t>(f.num_vars());
    watches_.resize(2 * n);
    assign_.assign(n + 1, LBool::Undef);
    level_.assign(n + 1, 0);
    reason_.assign(n + 1, kReasonDecision);
    saved_phase_.assign(n + 1, 0);
    attached_.reserve(f.original().size() + f.num_learned());
    for (Clause& c : f.original_span()) attach_initial(&c);
    for (size_t i = 0; i < f.num_learned(); ++i) attach_initial(f.learned_clause(i));
}

// Attachment before any assignment exists. Unit clauses are not watched;
// they are forced by propagate() (and re-forced after any backjump that
// could drop them).
int32_t PropEngine::attach_initial(Clause* c) {
    int32_t cid = static_cast<int32_t>(attached_.size());
    attached_.push_back(Attached{c});
    const auto& lits = c->lits;
    if (lits.empty()) {
        if (pending_conflict_ < 0) pending_conflict_ = cid;
        return cid;
    }
    if (lits.size() == 1) {
        unit_clauses_.push_back(cid);
        return cid;
    }
    Attached& a = attached_.back();
    a.w0 = 0;
    a.w1 = 1;
    watches_[static_cast<size_t>(lits[0].code())].push_back(Watcher{cid, lits[1]});
    watches_[static_cast<size_t>(lits[1].code())].push_back(Watcher{cid, lits[0]});
    return cid;
}

void PropEngine::enqueue(Lit l, int32_t reason) {
    Var v = l.var();
    assert(value(v) == LBool::Undef);
    assign_[static_cast<size_t>(v)] = lbool_of(!l.negated());
    level_[static_cast<size_t>(v)] = decision_level();
    reason_[static_cast<size_t>(v)] = reason;
    trail_.push_back(TrailEntry{l, static_cast<int32_t>(decision_level()), reason});
}

// Attachment under the current assignment, for clauses learned mid-search.
// Watches prefer non-false literals; a clause unit under the trail gets its
// forced literal enqueued right away.
int32_t PropEngine::attach_live(Clause* c) {
    int32_t cid = static_cast<int32_t>(attached_.size());
    attached_.push_back(Attached{c});
    Attached& a = attached_.back();

    const auto& lits = c->lits;
    if (lits.empty()) {
        if (pending_conflict_ < 0) pending_conflict_ = cid;
        return cid;
    }

    int first = -1, second = -1;
    int worst_false = -1; // false literal with the highest level
    for (int k = 0; k < static_cast<int>(lits.size()); ++k) {
        if (value(lits[static_cast<size_t>(k)]) != LBool::False) {
            if (first < 0) first = k;
            else if (second < 0) second = k;
        } else if (worst_false < 0 ||
                   level_of(lits[static_cast<size_t>(k)].var()) >
                       level_of(lits[static_cast<size_t>(worst_false)].var())) {
            worst_false = k;
        }
    }

    if (first < 0) {
        if (pending_conflict_ < 0) pending_conflict_ = cid;
        return cid;
    }
    if (lits.size() == 1) {
        unit_clauses_.push_back(cid);
        if (value(lits[0]) == LBool::Undef) enqueue(lits[0], cid);
        return cid; // unit clauses are never watched
    }
    if (second < 0) {
        second = worst_false;
        if (value(lits[static_cast<size_t>(first)]) == LBool::Undef)
            enqueue(lits[static_cast<size_t>(first)], cid);
    }
    a.w0 = first;
    a.w1 = second;
    watches_[static_cast<size_t>(lits[static_cast<size_t>(first)].code())].push_back(
        Watcher{cid, lits[static_cast<size_t>(second)]});
    watches_[static_cast<size_t>(lits[static_cast<size_t>(second)].code())].push_back(
        Watcher{cid, lits[static_cast<size_t>(first)]});
    return cid;
}

void PropEngine::decide(Lit l) {
    if (value(l.var()) != LBool::Undef)
        throw std::logic_error("decide: variable already assigned");
    level_starts_.push_back(static_cast<int32_t>(trail_.size()));
    enqueue(l, kReasonDecision);
}

const Clause* PropEngine::propagate() {
    if (pending_conflict_ >= 0) {
        const Clause* c = attached_[static_cast<size_t>(pending_conflict_)].clause;
        pending_conflict_ = -2;
        qhead_ = trail_.size();
        return c;
    }

    for (int32_t cid : unit_clauses_) {
        const Attached& a = attached_[static_cast<size_t>(cid)];
        Lit l = a.clause->lits[0];
        if (value(l) == LBool::True) continue;
        if (value(l) == LBool::False) {
            qhead_ = trail_.size();
            return a.clause;
        }
        enqueue(l, cid);
    }

    while (qhead_ < trail_.size()) {
        Lit p = trail_[qhead_++].lit; // p just became true; visit watchers of ~p
        auto& wl = watches_[static_cast<size_t>((~p).code())];
        size_t keep = 0;
        for (size_t i = 0; i < wl.size(); ++i) {
            Watcher w = wl[i];
            if (value(w.blocker) == LBool::True) {
                wl[keep++] = w;
                continue;
            }
            Attached& a = attached_[static_cast<size_t>(w.cid)];
            auto& lits = a.clause->lits;
            if (lits[static_cast<size_t>(a.w0)] == ~p) std::swap(a.w0, a.w1);
            Lit other = lits[static_cast<size_t>(a.w0)];
            if (value(other) == LBool::True) {
                wl[keep++] = Watcher{w.cid, other};
                continue;
            }
            // look for a replacement watch
            int repl = -1;
            for (int k = 0; k < static_cast<int>(lits.size()); ++k) {
                if (k == a.w0 || k == a.w1) continue;
                if (value(lits[static_cast<size_t>(k)]) != LBool::False) { repl = k; break; }
            }
            if (repl >= 0) {
                a.w1 = repl;
                watches_[static_cast<size_t>(lits[static_cast<size_t>(repl)].code())].push_back(
                    Watcher{w.cid, other});
                continue; // dropped from this list
            }
            wl[keep++] = w;
            if (value(other) == LBool::False) {
                // falsified clause: keep remaining watchers, stop
                for (size_t j = i + 1; j < wl.size(); ++j) wl[keep++] = wl[j];
                wl.resize(keep);
                qhead_ = trail_.size();
                return a.clause;
            }
            enqueue(other, w.cid);
        }
        wl.resize(keep);
    }
    return nullptr;
}

void PropEngine::unassign_top() {
    TrailEntry e = trail_.back();
    trail_.pop_back();
    Var v = e.lit.var();
    saved_phase_[static_cast<size_t>(v)] = (assign_[static_cast<size_t>(v)] == LBool::True);
    assign_[static_cast<size_t>(v)] = LBool::Undef;
    reason_[static_cast<size_t>(v)] = kReasonDecision;
    if (on_unassign) on_unassign(v);
}

void PropEngine::backjump(int level) {
    if (level > decision_level())
        throw std::logic_error("backjump: target level above current level");
    if (level == decision_level()) return;
    size_t target = static_cast<size_t>(level_starts_[static_cast<size_t>(level)]);
    while (trail_.size() > target) unassign_top();
    level_starts_.resize(static_cast<size_t>(level));
    qhead_ = trail_.size();
}

Clause* PropEngine::add_and_attach_learned(std::vector<Lit> lits) {
    Clause* c = formula_.add_learned(std::move(lits));
    attach_live(c);
    return c;
}

void PropEngine::collect_reason_clauses(std::vector<const Clause*>& out) const {
    for (const TrailEntry& e : trail_)
        if (e.reason >= 0) out.push_back(attached_[static_cast<size_t>(e.reason)].clause);
}

void PropEngine::remove_learned(const std::vector<const Clause*>& victims) {
    if (victims.empty()) return;
    std::unordered_set<const Clause*> dead(victims.begin(), victims.end());

    std::vector<Attached> fresh;
    fresh.reserve(attached_.size() - victims.size());
    std::unordered_map<int32_t, int32_t> remap;
    for (int32_t cid = 0; cid < static_cast<int32_t>(attached_.size()); ++cid) {
        if (dead.count(attached_[static_cast<size_t>(cid)].clause)) continue;
        remap[cid] = static_cast<int32_t>(fresh.size());
        fresh.push_back(attached_[static_cast<size_t>(cid)]);
    }
    attached_ = std::move(fresh);

    for (TrailEntry& e : trail_) {
        if (e.reason < 0) continue;
        auto it = remap.find(e.reason);
        assert(it != remap.end() && "deleted clause still used as reason");
        e.reason = it->second;
        reason_[static_cast<size_t>(e.lit.var())] = it->second;
    }
    for (int32_t& cid : unit_clauses_) {
        auto it = remap.find(cid);
        assert(it != remap.end() && "unit clauses are never deleted");
        cid = it->second;
    }

    for (auto& wl : watches_) wl.clear();
    for (int32_t cid = 0; cid < static_cast<int32_t>(attached_.size()); ++cid) {
        const Attached& a = attached_[static_cast<size_t>(cid)];
        if (a.w0 < 0) continue;
        const auto& lits = a.clause->lits;
        watches_[static_cast<size_t>(lits[static_cast<size_t>(a.w0)].code())].push_back(
            Watcher{cid, lits[static_cast<size_t>(a.w1)]});
        watches_[static_cast<size_t>(lits[static_cast<size_t>(a.w1)].code())].push_back(
            Watcher{cid, lits[static_cast<size_t>(a.w0)]});
    }

    formula_.remove_learned_if([&](const Clause* c) { return dead.count(c) > 0; });
}

bool up_entails(const Formula& f, Lit l) {
    Formula scratch = f.clone();
    PropEngine e(scratch);
    if (e.propagate()) return true; // formula refuted by propagation alone
    if (e.value(l) == LBool::True) return true;
    if (e.value(l) == LBool::False) return false;
    e.decide(~l);
    return e.propagate() != nullptr;
}

} // namespace hybsat
