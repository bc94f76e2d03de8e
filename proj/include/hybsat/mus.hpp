#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hybsat/cnf.hpp"
#include "hybsat/trail.hpp"

namespace hybsat {

// The literal z such that z is the only literal of beta true under ic,
// absent when beta has zero or more than one satisfier.
std::optional<Lit> once_satisfied_on(const Clause& beta, const Model& ic);

struct CriticalityReport {
    const Clause* clause = nullptr;
    bool critical = false;
    // witnesses per literal of the clause: clauses containing the opposite
    // literal and once-satisfied on it
    std::vector<std::pair<Lit, std::vector<const Clause*>>> links;
};

// A falsified clause is critical when flipping any of its literals would
// break some clause satisfied only by the opposite literal. With a trail,
// everything is evaluated over the trail-simplified formula: trail-assigned
// literals of alpha are exempt from the quantifier and trail-satisfied
// clauses are not eligible witnesses.
CriticalityReport is_critical(const Clause& alpha, const Formula& f, const Model& ic,
                              const PropEngine* trail = nullptr);

// All subset-minimal unsatisfiable subsets of the original clauses, as
// index sets, by brute-force enumeration. Test-oracle scale only: throws
// when the formula exceeds the guards.
std::vector<std::vector<int>> enumerate_mus(const Formula& f, size_t max_clauses = 20,
                                            int max_vars = 15);

// True iff every given MUS contains at least one critical clause under ic.
bool every_mus_has_critical_clause(const Formula& f, const Model& ic,
                                   const std::vector<std::vector<int>>& muses,
                                   const PropEngine* trail = nullptr);

} // namespace hybsat
