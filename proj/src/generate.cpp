#include "hybsat/generate.hpp"

#include <cmath>
#include <stdexcept>

#include "hybsat/rng.hpp"

namespace hybsat {

Formula pigeonhole(int pigeons, int holes) {
    if (pigeons < 1 || holes < 1)
        throw std::invalid_argument("pigeonhole: counts must be positive");
    auto var = [holes](int p, int h) { return Lit::positive((p - 1) * holes + h); };

    Formula f(pigeons * holes);
    for (int p = 1; p <= pigeons; ++p) {
        std::vector<Lit> choice;
        for (int h = 1; h <= holes; ++h) choice.push_back(var(p, h));
        f.add_clause(choice);
    }
    for (int h = 1; h <= holes; ++h)
        for (int p1 = 1; p1 <= pigeons; ++p1)
            for (int p2 = p1 + 1; p2 <= pigeons; ++p2)
                f.add_clause({~var(p1, h), ~var(p2, h)});
    return f;
}

Formula random_3sat(int num_vars, double ratio, uint64_t seed) {
    if (num_vars < 3)
        throw std::invalid_argument("random_3sat: need at least 3 variables");
    if (ratio <= 0)
        throw std::invalid_argument("random_3sat: ratio must be positive");
    auto num_clauses = static_cast<uint64_t>(std::llround(ratio * num_vars));

    Rng rng(seed);
    Formula f(num_vars);
    for (uint64_t i = 0; i < num_clauses; ++i) {
        Var a = static_cast<Var>(rng.below(static_cast<uint64_t>(num_vars))) + 1;
        Var b, c;
        do {
            b = static_cast<Var>(rng.below(static_cast<uint64_t>(num_vars))) + 1;
        } while (b == a);
        do {
            c = static_cast<Var>(rng.below(static_cast<uint64_t>(num_vars))) + 1;
        } while (c == a || c == b);
        auto lit = [&](Var v) { return rng.coin() ? Lit::positive(v) : Lit::negative(v); };
        f.add_clause({lit(a), lit(b), lit(c)});
    }
    return f;
}

} // namespace hybsat
