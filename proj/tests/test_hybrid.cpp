#include <doctest.h>

#include "hybsat/generate.hpp"
#include "hybsat/hybrid.hpp"
#include "hybsat/mus.hpp"

#include "oracles.hpp"
#include "testdata.hpp"

using namespace hybsat;

namespace {

HybridParams quick_params(uint64_t seed = 1) {
    HybridParams p;
    p.seed = seed;
    p.budget = Budget{30.0, 0, 0};
    return p;
}

void force_assignment(LocalSearch& ls, const PropEngine& e, const std::vector<bool>& want) {
    for (Var v = 1; v < static_cast<Var>(want.size()); ++v) {
        if (e.value(v) != LBool::Undef) continue;
        if (ls.value(v) != want[static_cast<size_t>(v)]) ls.flip(v);
    }
}

} // namespace

TEST_SUITE("hybrid") {

TEST_CASE("trivial formulas") {
    Formula empty(2);
    auto r = solve_hybrid(empty, quick_params());
    CHECK(r.status == Status::Sat);
    CHECK(verify_model(empty, r.model));

    Formula contradiction = make_formula(1, {{1}, {-1}});
    CHECK(solve_hybrid(contradiction, quick_params()).status == Status::Unsat);

    Formula with_empty = make_formula(1, {{}});
    CHECK(solve_hybrid(with_empty, quick_params()).status == Status::Unsat);
}

TEST_CASE("the two-MUS instance is proved unsatisfiable") {
    Formula f = testdata::two_mus_formula();
    CHECK(!oracles::brute_force_sat(f));
    auto r = solve_hybrid(f, quick_params(3));
    CHECK(r.status == Status::Unsat);
}

TEST_CASE("fix without conflict decides the clause literals true and resyncs") {
    Formula f = make_formula(2, {{1, 2}});
    HybridSolver hs(f, quick_params());
    hs.ls().init_random(hs.rng());
    force_assignment(hs.ls(), hs.prop(), {false, false, false});
    REQUIRE(hs.ls().falsified_count() == 1);

    CHECK(hs.fix(&f.original()[0]) == FixResult::Unknown);
    CHECK(hs.prop().value(1) == LBool::True);
    CHECK(hs.prop().value(2) == LBool::True);
    CHECK(hs.prop().decision_level() == 2);
    CHECK(hs.ls().value(1) == true);
    CHECK(hs.ls().value(2) == true);
    CHECK(hs.ls().all_satisfied());
    CHECK(hs.stats().fix_calls == 1);
    CHECK(hs.stats().conflicts == 0);
}

TEST_CASE("fix drives a conflict chain down to level 0 and proves UNSAT") {
    Formula f = make_formula(4, {{1, 2}, {-1, 3}, {-1, -3}, {-2, 4}, {-2, -4}});
    REQUIRE(!oracles::brute_force_sat(f));
    HybridSolver hs(f, quick_params());
    REQUIRE(hs.prop().propagate() == nullptr);
    hs.ls().init_random(hs.rng());
    force_assignment(hs.ls(), hs.prop(), {false, false, false, false, false});
    REQUIRE(hs.ls().falsified_count() == 1); // just (1 2)

    CHECK(hs.fix(&f.original()[0]) == FixResult::UnsatProved);
    CHECK(hs.stats().conflicts >= 2);
}

TEST_CASE("after fix the assignment always agrees with the trail") {
    Rng rng(1111);
    for (int iter = 0; iter < 40; ++iter) {
        int n = 5 + static_cast<int>(rng.below(6));
        Formula f = random_3sat(n, 4.5, rng.next());
        HybridSolver hs(f, quick_params(rng.next()));
        if (hs.prop().propagate() != nullptr) continue;
        hs.ls().init_random(hs.rng());
        int fixes = 0;
        while (!hs.ls().all_satisfied() && fixes < 10) {
            auto stepped = hs.ls().try_descent_step(hs.rng());
            if (stepped) continue;
            const Clause* alpha = hs.ls().falsified_at(0);
            if (hs.fix(alpha) == FixResult::UnsatProved) break;
            ++fixes;
            for (Var v = 1; v <= n; ++v)
                if (hs.prop().value(v) != LBool::Undef)
                    CHECK(hs.ls().value(v) == (hs.prop().value(v) == LBool::True));
            auto expect = oracles::brute_falsified(f, hs.ls().assignment(), &hs.prop());
            CHECK(hs.ls().falsified_count() == expect.size());
        }
    }
}

TEST_CASE("merged model combines trail and assignment values") {
    Formula f = make_formula(2, {{1, 2}});
    HybridSolver hs(f, quick_params());
    hs.prop().decide(Lit::positive(1));
    REQUIRE(hs.prop().propagate() == nullptr);
    hs.ls().init_random(hs.rng());
    hs.ls().sync_with_trail();
    force_assignment(hs.ls(), hs.prop(), {false, true, false});
    REQUIRE(hs.ls().all_satisfied());

    Model m = hs.merged_model();
    CHECK(m.value(1) == true);  // trail value
    CHECK(m.value(2) == false); // assignment value
    CHECK(verify_model(f, m));
}

TEST_CASE("solve returns verified models on satisfiable instances") {
    Rng rng(2222);
    int sats = 0;
    for (int iter = 0; iter < 30; ++iter) {
        int n = 6 + static_cast<int>(rng.below(7));
        Formula f = random_3sat(n, 3.5, rng.next());
        auto r = solve_hybrid(f, quick_params(rng.next()));
        REQUIRE(r.status != Status::Unknown);
        if (r.status == Status::Sat) {
            CHECK(verify_model(f, r.model, true));
            ++sats;
        }
    }
    CHECK(sats > 0);
}

TEST_CASE("agreement with brute force and the complete solver on random instances") {
    Rng rng(3333);
    int unsats = 0;
    for (int iter = 0; iter < 60; ++iter) {
        int n = 4 + static_cast<int>(rng.below(9));
        uint64_t seed = rng.next();
        Formula f = random_3sat(n, 2.0 + 4.0 * rng.unit(), seed);
        Formula g = f.clone();
        bool expect_sat = oracles::brute_force_sat(f);
        auto hybrid = solve_hybrid(f, quick_params(rng.next()));
        auto cdcl = solve_cdcl(g);
        REQUIRE(hybrid.status != Status::Unknown);
        CHECK((hybrid.status == Status::Sat) == expect_sat);
        CHECK(hybrid.status == cdcl.status);
        if (hybrid.status == Status::Unsat) ++unsats;
    }
    CHECK(unsats > 0);
}

TEST_CASE("no flip ever touches a trail-assigned variable") {
    Formula f = pigeonhole(4, 3);
    HybridParams params = quick_params(5);
    HybridSolver hs(f, params);
    uint64_t flips_checked = 0, violations = 0;
    hs.ls().on_flip = [&](Var v) {
        ++flips_checked;
        if (hs.prop().value(v) != LBool::Undef) ++violations;
    };
    auto r = hs.solve();
    CHECK(r.status == Status::Unsat);
    CHECK(violations == 0);
    CHECK(flips_checked == r.stats.flips);
}

TEST_CASE("every falsified clause is critical at each local minimum (trail-aware)") {
    // needs instances that are not refuted by root propagation alone
    std::vector<Formula> instances;
    instances.push_back(pigeonhole(3, 2));
    instances.push_back(pigeonhole(4, 3));
    instances.push_back(random_3sat(12, 5.2, 99));

    uint64_t minima = 0;
    for (Formula& f : instances) {
        uint64_t before = minima;
        HybridSolver hs(f, quick_params(7));
        hs.on_local_minimum = [&](HybridSolver& s) {
            ++minima;
            Model ic = s.ls().assignment();
            for (const Clause* alpha : s.ls().falsified_clauses())
                CHECK(is_critical(*alpha, s.formula(), ic, &s.prop()).critical);
        };
        auto r = hs.solve();
        CHECK(r.status != Status::Unknown);
        CHECK(minima - before == r.stats.local_minima);
    }
    CHECK(minima > 0);
}

TEST_CASE("the two-MUS instance happens to be refuted by root propagation") {
    Formula f = testdata::two_mus_formula();
    auto r = solve_hybrid(f, quick_params(7));
    CHECK(r.status == Status::Unsat);
    CHECK(r.stats.local_minima == 0);
    CHECK(r.stats.flips == 0);
}

TEST_CASE("learned clauses persist across outer-loop restarts") {
    Formula f = pigeonhole(4, 3);
    HybridParams params = quick_params(11);
    params.max_flips = 2; // force frequent restarts
    HybridSolver hs(f, params);
    size_t last_learned = 0;
    bool monotone = true;
    hs.on_local_minimum = [&](HybridSolver& s) {
        size_t now = s.formula().num_learned();
        if (now < last_learned) monotone = false;
        last_learned = now;
    };
    auto r = hs.solve();
    CHECK(r.status == Status::Unsat);
    CHECK(r.stats.restarts > 0);
    CHECK(monotone);
    CHECK(f.num_learned() > 0);
}

TEST_CASE("budget exhaustion reports UNKNOWN") {
    Formula f = pigeonhole(6, 5);
    HybridParams params = quick_params(1);
    params.budget = Budget{1e-12, 0, 0};
    CHECK(solve_hybrid(f, params).status == Status::Unknown);

    Formula g = random_3sat(40, 4.2, 9);
    HybridParams flip_capped = quick_params(2);
    flip_capped.budget = Budget{30.0, 0, 2};
    auto r = solve_hybrid(g, flip_capped);
    if (r.status == Status::Unknown) CHECK(r.stats.flips <= 2);
    else CHECK(r.status == Status::Sat); // allowed: solved before the cap
}

TEST_CASE("fixed seeds reproduce outcome, model and statistics") {
    Formula f1 = random_3sat(25, 4.0, 77);
    Formula f2 = random_3sat(25, 4.0, 77);
    auto a = solve_hybrid(f1, quick_params(13));
    auto b = solve_hybrid(f2, quick_params(13));
    REQUIRE(a.status == b.status);
    CHECK(a.stats.flips == b.stats.flips);
    CHECK(a.stats.local_minima == b.stats.local_minima);
    CHECK(a.stats.conflicts == b.stats.conflicts);
    if (a.status == Status::Sat)
        for (Var v = 1; v <= 25; ++v) CHECK(a.model.value(v) == b.model.value(v));
}

TEST_CASE("ls-only mode never claims UNSAT and verifies its models") {
    Formula sat = random_3sat(20, 3.0, 5);
    HybridParams params = quick_params(3);
    params.ls_only = true;
    auto r = solve_hybrid(sat, params);
    REQUIRE(r.status == Status::Sat);
    CHECK(verify_model(sat, r.model));
    CHECK(r.stats.fix_calls == 0);

    Formula unsat = pigeonhole(3, 2);
    HybridParams capped = quick_params(3);
    capped.ls_only = true;
    capped.budget = Budget{0.2, 0, 0};
    CHECK(solve_hybrid(unsat, capped).status == Status::Unknown);
}

} // TEST_SUITE
