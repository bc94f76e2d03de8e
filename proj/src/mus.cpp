#include "hybsat/mus.hpp"

#include <bit>
#include <algorithm>
#include <stdexcept>

namespace hybsat {

std::optional<Lit> once_satisfied_on(const Clause& beta, const Model& ic) {
    std::optional<Lit> sat;
    for (Lit l : beta.lits) {
        if (ic.value(l.var()) != l.negated()) {
            if (sat) return std::nullopt; // two satisfiers
            sat = l;
        }
    }
    return sat;
}

namespace {

bool trail_satisfies(const PropEngine& trail, const Clause& c) {
    for (Lit l : c.lits)
        if (trail.value(l) == LBool::True) return true;
    return false;
}

} // namespace

CriticalityReport is_critical(const Clause& alpha, const Formula& f, const Model& ic,
                              const PropEngine* trail) {
    CriticalityReport report;
    report.clause = &alpha;

    if (ic.satisfies(alpha)) return report;             // |L+| != 0
    if (trail && trail_satisfies(*trail, alpha)) return report; // not part of the simplified view

    bool critical = true;
    for (Lit l : alpha.lits) {
        if (trail && trail->value(l.var()) != LBool::Undef) continue; // fixed, not flippable
        Lit opp = ~l;
        std::vector<const Clause*> witnesses;
        f.for_each_clause([&](const Clause& cand) {
            if (!cand.contains(opp)) return;
            if (trail && trail_satisfies(*trail, cand)) return;
            if (once_satisfied_on(cand, ic) == std::optional<Lit>(opp))
                witnesses.push_back(&cand);
        });
        if (witnesses.empty()) critical = false;
        report.links.emplace_back(l, std::move(witnesses));
    }
    report.critical = critical;
    return report;
}

namespace {

// Truth-table satisfiability of the clause subset selected by mask.
bool subset_satisfiable(const std::vector<const Clause*>& clauses, uint32_t mask, int num_vars) {
    uint64_t total = 1ull << num_vars;
    for (uint64_t a = 0; a < total; ++a) {
        bool ok = true;
        for (size_t i = 0; ok && i < clauses.size(); ++i) {
            if (!(mask & (1u << i))) continue;
            bool sat = false;
            for (Lit l : clauses[i]->lits) {
                bool val = (a >> (l.var() - 1)) & 1;
                if (val != l.negated()) { sat = true; break; }
            }
            ok = sat;
        }
        if (ok) return true;
    }
    return false;
}

} // namespace

std::vector<std::vector<int>> enumerate_mus(const Formula& f, size_t max_clauses, int max_vars) {
    size_t m = f.original().size();
    if (m > max_clauses || m > 31)
        throw std::invalid_argument("enumerate_mus: too many clauses for brute force");
    if (f.num_vars() > max_vars)
        throw std::invalid_argument("enumerate_mus: too many variables for brute force");

    std::vector<const Clause*> clauses;
    clauses.reserve(m);
    for (const Clause& c : f.original()) clauses.push_back(&c);

    uint32_t all = (m == 0) ? 0 : ((m == 31) ? 0x7fffffffu : ((1u << m) - 1));
    if (m == 0 || subset_satisfiable(clauses, all, f.num_vars())) return {};

    std::vector<uint32_t> masks;
    masks.reserve(all);
    for (uint32_t mask = 1; mask <= all; ++mask) masks.push_back(mask);
    std::stable_sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
        return std::popcount(a) < std::popcount(b);
    });

    // Increasing cardinality: an unsatisfiable subset containing no earlier
    // MUS has only satisfiable proper subsets, hence is itself minimal.
    std::vector<uint32_t> mus_masks;
    for (uint32_t mask : masks) {
        bool covered = false;
        for (uint32_t mm : mus_masks)
            if ((mask & mm) == mm) { covered = true; break; }
        if (covered) continue;
        if (!subset_satisfiable(clauses, mask, f.num_vars())) mus_masks.push_back(mask);
    }

    std::vector<std::vector<int>> out;
    out.reserve(mus_masks.size());
    for (uint32_t mm : mus_masks) {
        std::vector<int> idx;
        for (size_t i = 0; i < m; ++i)
            if (mm & (1u << i)) idx.push_back(static_cast<int>(i));
        out.push_back(std::move(idx));
    }
    return out;
}

bool every_mus_has_critical_clause(const Formula& f, const Model& ic,
                                   const std::vector<std::vector<int>>& muses,
                                   const PropEngine* trail) {
    for (const auto& mus : muses) {
        bool any = false;
        for (int i : mus) {
            if (is_critical(f.original()[static_cast<size_t>(i)], f, ic, trail).critical) {
                any = true;
                break;
            }
        }
        if (!any) return false;
    }
    return true;
}

} // namespace hybsat
