#include "hybsat/cnf.hpp"

namespace hybsat {

std::optional<Clause> resolvent(const Clause& ci, const Clause& cj, Var x) {
    Lit pos = Lit::positive(x);
    Lit neg = Lit::negative(x);
    if (!ci.contains(pos))
        throw std::invalid_argument("resolvent: pivot not positive in first clause");
    if (!cj.contains(neg))
        throw std::invalid_argument("resolvent: pivot not negative in second clause");

    Clause out;
    out.lits.reserve(ci.size() + cj.size() - 2);
    auto push = [&](Lit l) -> bool { // false on tautology
        if (l.var() == x) return true;
        for (Lit o : out.lits) {
            if (o == l) return true;
            if (o == ~l) return false;
        }
        out.lits.push_back(l);
        return true;
    };
    for (Lit l : ci.lits)
        if (!push(l)) return std::nullopt;
    for (Lit l : cj.lits)
        if (!push(l)) return std::nullopt;
    return out;
}

bool verify_model(const Formula& f, const Model& m, bool check_learned) {
    for (const Clause& c : f.original())
        if (!m.satisfies(c)) return false;
    if (check_learned) {
        for (size_t i = 0; i < f.num_learned(); ++i)
            if (!m.satisfies(*f.learned_clause(i))) return false;
    }
    return true;
}

} // namespace hybsat
