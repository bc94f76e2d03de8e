#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>

#include "hybsat/competition.hpp"
#include "hybsat/dimacs.hpp"
#include "hybsat/generate.hpp"
#include "hybsat/hybrid.hpp"
#include "hybsat/mus.hpp"

#include "bench.hpp"

using namespace hybsat;

namespace {

std::string self_path(const char* argv0) {
    char buf[4096];
    ssize_t n = readlink("/proc/self/exe", buf, sizeof buf - 1);
    if (n > 0) {
        buf[n] = '\0';
        return buf;
    }
    return argv0;
}

int cmd_solve(const std::string& path, const std::string& mode, uint64_t seed, uint64_t max_flips,
              double timeout, uint64_t flip_limit, uint64_t conflict_limit, bool stats,
              bool verify) {
    Formula f;
    try {
        f = parse_dimacs_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << path << ": " << e.what() << '\n';
        return 1;
    }

    std::cout << "c hybsat\n";
    std::cout << "c instance " << path << '\n';
    std::cout << "c mode " << mode << " seed " << seed << '\n';

    SolveOutcome outcome;
    if (mode == "cdcl") {
        outcome = solve_cdcl(f, Budget{timeout, conflict_limit, 0});
    } else {
        HybridParams params;
        params.seed = seed;
        params.max_flips = max_flips;
        params.budget = Budget{timeout, conflict_limit, flip_limit};
        params.ls_only = (mode == "ls-only");
        outcome = solve_hybrid(f, params);
    }

    if (stats) print_stats(std::cout, outcome.stats);
    if (verify && outcome.status == Status::Sat) {
        if (!verify_model(f, outcome.model, true)) {
            std::cerr << "error: model failed verification\n";
            return 1;
        }
        std::cout << "c model verified\n";
    }
    print_result(std::cout, outcome);
    return status_exit_code(outcome.status);
}

int write_instance(const Formula& f, const std::string& header, const std::string& out_path) {
    std::ostringstream body;
    body << "c " << header << '\n';
    write_dimacs(f, body);
    if (out_path.empty()) {
        std::cout << body.str();
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 1;
    }
    out << body.str();
    return 0;
}

void print_clause(std::ostream& out, const Clause& c) {
    for (Lit l : c.lits) out << l.to_dimacs() << ' ';
    out << '0';
}

int cmd_mus(const std::string& path, size_t max_clauses, int max_vars,
            const std::string& assign_str) {
    Formula f;
    try {
        f = parse_dimacs_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << path << ": " << e.what() << '\n';
        return 1;
    }

    if (!assign_str.empty()) {
        Model ic(f.num_vars());
        std::vector<bool> given(static_cast<size_t>(f.num_vars()) + 1, false);
        std::istringstream ss(assign_str);
        int n;
        while (ss >> n) {
            int v = n > 0 ? n : -n;
            if (v < 1 || v > f.num_vars()) {
                std::cerr << "error: literal " << n << " out of range\n";
                return 1;
            }
            ic.set(v, n > 0);
            given[static_cast<size_t>(v)] = true;
        }
        for (Var v = 1; v <= f.num_vars(); ++v) {
            if (!given[static_cast<size_t>(v)]) {
                std::cerr << "error: assignment must be complete, variable " << v << " missing\n";
                return 1;
            }
        }
        for (size_t i = 0; i < f.original().size(); ++i) {
            const Clause& c = f.original()[i];
            std::cout << "clause " << i << " (";
            print_clause(std::cout, c);
            std::cout << "): ";
            if (ic.satisfies(c)) {
                std::cout << "satisfied\n";
                continue;
            }
            CriticalityReport rep = is_critical(c, f, ic);
            std::cout << "falsified, " << (rep.critical ? "critical" : "not critical") << '\n';
            for (const auto& [lit, witnesses] : rep.links) {
                std::cout << "  literal " << lit.to_dimacs() << ": ";
                if (witnesses.empty()) {
                    std::cout << "no once-satisfied clause on " << (~lit).to_dimacs() << '\n';
                    continue;
                }
                std::cout << "linked to";
                for (const Clause* w : witnesses) {
                    std::cout << " (";
                    print_clause(std::cout, *w);
                    std::cout << ')';
                }
                std::cout << '\n';
            }
        }
        return 0;
    }

    std::vector<std::vector<int>> muses;
    try {
        muses = enumerate_mus(f, max_clauses, max_vars);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    if (muses.empty()) {
        std::cout << "no minimal unsatisfiable subset (formula satisfiable)\n";
        return 0;
    }
    for (size_t i = 0; i < muses.size(); ++i) {
        std::cout << "MUS " << (i + 1) << " (" << muses[i].size() << " clauses):";
        for (int idx : muses[i]) std::cout << ' ' << idx;
        std::cout << '\n';
        for (int idx : muses[i]) {
            std::cout << "  [" << idx << "] ";
            print_clause(std::cout, f.original()[static_cast<size_t>(idx)]);
            std::cout << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid local-search / clause-learning SAT solver"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve a DIMACS CNF instance");
    std::string solve_file, mode = "hybrid";
    uint64_t seed = 0, max_flips = 0, flip_limit = 0, conflict_limit = 0;
    double timeout = 1200.0;
    bool stats = false, verify = false;
    solve->add_option("file", solve_file, "DIMACS CNF input")->required();
    solve->add_option("--mode", mode, "hybrid | cdcl | ls-only")
        ->check(CLI::IsMember({"hybrid", "cdcl", "ls-only"}));
    solve->add_option("--seed", seed, "random seed");
    solve->add_option("--max-flips", max_flips, "flips per restart (0: 100 * vars)");
    solve->add_option("--timeout", timeout, "wall-clock limit in seconds (0: none)")
        ->envname("HYBSAT_TIMEOUT");
    solve->add_option("--flip-limit", flip_limit, "total flip limit (0: none)");
    solve->add_option("--conflict-limit", conflict_limit, "conflict limit (0: none)");
    solve->add_flag("--stats", stats, "print statistics as comment lines");
    solve->add_flag("--verify", verify, "re-verify the model before printing");

    // gen
    auto* gen = app.add_subcommand("gen", "generate benchmark instances");
    gen->require_subcommand(1);
    auto* gen_rand = gen->add_subcommand("random-3sat", "uniform random 3-SAT");
    int rnd_vars = 20;
    double rnd_ratio = 4.26;
    uint64_t rnd_seed = 1;
    std::string rnd_out;
    gen_rand->add_option("--vars", rnd_vars, "number of variables")->check(CLI::PositiveNumber);
    gen_rand->add_option("--ratio", rnd_ratio, "clause/variable ratio")->check(CLI::PositiveNumber);
    gen_rand->add_option("--seed", rnd_seed, "generator seed");
    gen_rand->add_option("-o,--out", rnd_out, "output file (default stdout)");
    auto* gen_php = gen->add_subcommand("pigeonhole", "pigeonhole principle instance");
    int php_pigeons = 3, php_holes = 2;
    std::string php_out;
    gen_php->add_option("--pigeons", php_pigeons, "number of pigeons")->check(CLI::PositiveNumber);
    gen_php->add_option("--holes", php_holes, "number of holes")->check(CLI::PositiveNumber);
    gen_php->add_option("-o,--out", php_out, "output file (default stdout)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run a corpus through multiple solver modes");
    bench::BenchConfig bc;
    bench_cmd->add_option("corpus", bc.corpus_dir, "directory of .cnf files")->required();
    bench_cmd->add_option("--mode", bc.modes, "modes to compare")
        ->check(CLI::IsMember({"hybrid", "cdcl", "ls-only"}));
    bench_cmd->add_option("--timeout", bc.timeout, "per-instance timeout in seconds")
        ->envname("HYBSAT_TIMEOUT");
    bench_cmd->add_option("--seed", bc.seed, "base seed (each run offsets it)");
    bench_cmd->add_option("--jobs", bc.jobs, "worker pool size")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--out", bc.out_prefix, "output file prefix");

    // mus
    auto* mus_cmd = app.add_subcommand("mus", "minimal unsatisfiable subsets and criticality");
    std::string mus_file, mus_assign;
    uint64_t mus_max_clauses = 20;
    int mus_max_vars = 15;
    mus_cmd->add_option("file", mus_file, "DIMACS CNF input")->required();
    mus_cmd->add_option("--max-clauses", mus_max_clauses, "enumeration clause guard");
    mus_cmd->add_option("--max-vars", mus_max_vars, "enumeration variable guard");
    mus_cmd->add_option("--assign", mus_assign,
                        "complete assignment (literals) for a criticality report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return cmd_solve(solve_file, mode, seed, max_flips, timeout, flip_limit,
                             conflict_limit, stats, verify);
        if (gen_rand->parsed()) {
            std::ostringstream header;
            header << "random-3sat vars=" << rnd_vars << " ratio=" << rnd_ratio
                   << " seed=" << rnd_seed;
            return write_instance(random_3sat(rnd_vars, rnd_ratio, rnd_seed), header.str(),
                                  rnd_out);
        }
        if (gen_php->parsed()) {
            std::ostringstream header;
            header << "pigeonhole pigeons=" << php_pigeons << " holes=" << php_holes;
            return write_instance(pigeonhole(php_pigeons, php_holes), header.str(), php_out);
        }
        if (bench_cmd->parsed()) {
            bc.self_path = self_path(argv[0]);
            return bench::run_bench(bc);
        }
        if (mus_cmd->parsed())
            return cmd_mus(mus_file, mus_max_clauses, mus_max_vars, mus_assign);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
