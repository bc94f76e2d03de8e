#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hybsat/cnf.hpp"
#include "hybsat/rng.hpp"
#include "hybsat/trail.hpp"

namespace hybsat {

// Descent engine over a complete assignment, restricted to variables the
// trail has not fixed. Keeps per-clause counters of literals true under
// the assignment and under the trail; the falsified set holds exactly the
// clauses with neither, i.e. the clauses of the trail-simplified formula
// falsified by the complete assignment.
class LocalSearch {
public:
    LocalSearch(const Formula& f, const PropEngine& trail);

    // Trail-assigned variables copy their trail value, every other
    // variable is set uniformly at random; counters are rebuilt.
    void init_random(Rng& rng);

    bool value(Var v) const { return value_[static_cast<size_t>(v)]; }
    Model assignment() const;

    // Change in the falsified count if v were flipped (break - make).
    // Pure query. Throws if v is trail-assigned.
    int flip_delta(Var v) const;

    // Examines the falsified clauses in random order; in the first clause
    // with a free variable whose delta is negative, flips the best such
    // variable (most negative delta, ties random) and returns it. Returns
    // nullopt when no falsified clause admits a descent flip (local
    // minimum). Pre: the falsified set is nonempty.
    std::optional<Var> try_descent_step(Rng& rng);

    // Toggles a free variable and updates all counters incrementally.
    // Throws if v is trail-assigned.
    void flip(Var v);

    // Incremental resynchronization after trail changes: trail counters
    // are adjusted for every variable whose trail state changed, and the
    // assignment is overwritten with the trail value where they disagree.
    void sync_with_trail();

    // Starts tracking learned clauses appended since the last call.
    void track_new_learned();

    // Full rebuild (needed after learned-clause deletion). Also applies
    // the trail-overwrite rule to the assignment.
    void rebuild();

    size_t falsified_count() const { return falsified_.size(); }
    const Clause* falsified_at(size_t i) const { return clauses_[static_cast<size_t>(falsified_[i])].clause; }
    std::vector<const Clause*> falsified_clauses() const;
    bool all_satisfied() const { return falsified_.empty(); }

    // Observer for every descent/explicit flip (not trail overwrites).
    std::function<void(Var)> on_flip;

private:
    struct Tracked {
        const Clause* clause;
        int32_t true_count = 0;  // literals true under the assignment
        int32_t trail_true = 0;  // literals true under the trail
    };

    Lit true_lit(Var v) const { return value_[static_cast<size_t>(v)] ? Lit::positive(v) : Lit::negative(v); }
    void add_tracked(const Clause* c);
    void refresh_membership(int32_t id);
    void toggle(Var v);
    int delta_unchecked(Var v) const;

    const Formula& formula_;
    const PropEngine& trail_;
    std::vector<uint8_t> value_;
    std::vector<Tracked> clauses_;
    std::vector<std::vector<int32_t>> occ_; // literal code -> tracked clause ids
    std::vector<int32_t> falsified_;        // sparse set of tracked ids
    std::vector<int32_t> falsified_pos_;    // id -> position or -1
    std::vector<LBool> mirror_;             // trail view at last sync, per var
    size_t tracked_learned_ = 0;

    // scratch
    std::vector<int32_t> order_;
    std::vector<Var> ties_;
};

} // namespace hybsat
