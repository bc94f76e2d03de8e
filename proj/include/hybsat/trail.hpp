#pragma once

#include <functional>
#include <vector>

#include "hybsat/cnf.hpp"

namespace hybsat {

enum class LBool : uint8_t { False = 0, True = 1, Undef = 2 };

inline LBool lbool_of(bool b) { return b ? LBool::True : LBool::False; }

struct TrailEntry {
    Lit lit;
    int32_t level;
    int32_t reason; // attached clause id, kReasonDecision for decisions
};

constexpr int32_t kReasonDecision = -1;

// Partial interpretation as a trail with decision levels and reason
// clauses, plus unit propagation over two watched literals. Watch
// positions live here, not in the clauses, so the formula stays
// untouched and shareable.
//
// Clauses of size 1 are enqueued at level 0 and carry no watches.
// Backjumping needs no watch restoration.
class PropEngine {
public:
    explicit PropEngine(Formula& f);

    Formula& formula() { return formula_; }
    const Formula& formula() const { return formula_; }

    LBool value(Var v) const { return assign_[static_cast<size_t>(v)]; }
    LBool value(Lit l) const {
        LBool b = value(l.var());
        if (b == LBool::Undef) return LBool::Undef;
        return ((b == LBool::True) != l.negated()) ? LBool::True : LBool::False;
    }

    int level_of(Var v) const { return level_[static_cast<size_t>(v)]; }
    const Clause* reason_of(Var v) const {
        int32_t r = reason_[static_cast<size_t>(v)];
        return r >= 0 ? attached_[static_cast<size_t>(r)].clause : nullptr;
    }
    bool is_decision(Var v) const {
        return value(v) != LBool::Undef && reason_[static_cast<size_t>(v)] == kReasonDecision;
    }

    int decision_level() const { return static_cast<int>(level_starts_.size()); }
    size_t num_assigned() const { return trail_.size(); }
    const std::vector<TrailEntry>& trail() const { return trail_; }

    bool saved_phase(Var v) const { return saved_phase_[static_cast<size_t>(v)]; }

    // Opens a new decision level. Throws if the variable is assigned.
    void decide(Lit l);

    // Unit propagation to fixpoint. Returns the falsified clause on
    // conflict, nullptr otherwise.
    const Clause* propagate();

    // Removes all entries above the given level. Throws if level exceeds
    // the current one.
    void backjump(int level);

    // Adds a clause to the learned store and attaches it. If it is unit
    // under the current trail the forced literal is enqueued with the new
    // clause as reason.
    Clause* add_and_attach_learned(std::vector<Lit> lits);

    // Detaches and destroys the given learned clauses. None of them may be
    // the reason of a trail literal.
    void remove_learned(const std::vector<const Clause*>& victims);

    // Clause pointers currently serving as reasons on the trail.
    void collect_reason_clauses(std::vector<const Clause*>& out) const;

    // Invoked whenever a variable becomes unassigned (used to refill the
    // decision heap).
    std::function<void(Var)> on_unassign;

private:
    struct Attached {
        Clause* clause;
        int32_t w0 = -1, w1 = -1; // watched positions in clause->lits
    };
    struct Watcher {
        int32_t cid;
        Lit blocker;
    };

    void enqueue(Lit l, int32_t reason);
    int32_t attach_initial(Clause* c);
    int32_t attach_live(Clause* c);
    void unassign_top();

    Formula& formula_;
    std::vector<Attached> attached_;
    std::vector<int32_t> unit_clauses_; // size-1 clauses, re-forced by propagate
    std::vector<std::vector<Watcher>> watches_; // indexed by watched literal code
    std::vector<TrailEntry> trail_;
    std::vector<int32_t> level_starts_; // trail index where each level begins
    std::vector<LBool> assign_;
    std::vector<int32_t> level_;
    std::vector<int32_t> reason_;
    std::vector<uint8_t> saved_phase_;
    size_t qhead_ = 0;
    int32_t pending_conflict_ = -2; // attach-time conflict, returned by next propagate
};

// Sigma |=* l: asserting ~l on a scratch engine and propagating yields a
// conflict. Diagnostic use; the caller's state is untouched.
bool up_entails(const Formula& f, Lit l);

} // namespace hybsat
