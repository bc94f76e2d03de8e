#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

std::string solver_binary() {
    const char* env = std::getenv("HYBSAT_BIN");
    REQUIRE_MESSAGE(env != nullptr, "HYBSAT_BIN must point at the solver binary");
    return env;
}

CommandResult run(const std::string& args) {
    std::string cmd = "'" + solver_binary() + "' " + args + " 2>/dev/null";
    CommandResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "hybsat_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("solve: satisfiable instance prints a model and exits 10") {
    fs::path f = temp_dir() / "tiny-sat.cnf";
    write_file(f, "p cnf 2 2\n1 -2 0\n2 0\n");
    auto r = run("solve --mode hybrid --seed 1 '" + f.string() + "'");
    CHECK(r.exit_code == 10);
    CHECK(contains(r.output, "s SATISFIABLE"));
    CHECK(contains(r.output, "v 1 2 0"));
}

TEST_CASE("solve: unsatisfiable instance exits 20") {
    fs::path f = temp_dir() / "tiny-unsat.cnf";
    write_file(f, "p cnf 1 2\n1 0\n-1 0\n");
    for (const char* mode : {"hybrid", "cdcl"}) {
        auto r = run(std::string("solve --mode ") + mode + " '" + f.string() + "'");
        CHECK(r.exit_code == 20);
        CHECK(contains(r.output, "s UNSATISFIABLE"));
    }
}

TEST_CASE("solve: tiny timeout yields UNKNOWN and exit 0") {
    auto gen = run("gen pigeonhole --pigeons 8 --holes 7 -o '" +
                   (temp_dir() / "php87.cnf").string() + "'");
    REQUIRE(gen.exit_code == 0);
    auto r = run("solve --timeout 0.0001 '" + (temp_dir() / "php87.cnf").string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "s UNKNOWN"));
}

TEST_CASE("solve: malformed input reports an error with a nonzero non-status exit") {
    fs::path f = temp_dir() / "broken.cnf";
    write_file(f, "p cnf 2 1\n1 0 extra\n");
    auto r = run("solve '" + f.string() + "'");
    CHECK(r.exit_code == 1);
    CHECK(!contains(r.output, "s SATISFIABLE"));

    auto missing = run("solve '" + (temp_dir() / "nonexistent.cnf").string() + "'");
    CHECK(missing.exit_code == 1);
}

TEST_CASE("solve: --stats and --verify emit comment lines") {
    fs::path f = temp_dir() / "stats.cnf";
    write_file(f, "p cnf 3 2\n1 2 0\n-1 3 0\n");
    auto r = run("solve --seed 2 --stats --verify '" + f.string() + "'");
    CHECK(r.exit_code == 10);
    CHECK(contains(r.output, "c flips="));
    CHECK(contains(r.output, "c conflicts="));
    CHECK(contains(r.output, "c model verified"));
}

TEST_CASE("gen: deterministic bytes given a seed") {
    auto a = run("gen random-3sat --vars 20 --ratio 3.0 --seed 7");
    auto b = run("gen random-3sat --vars 20 --ratio 3.0 --seed 7");
    auto c = run("gen random-3sat --vars 20 --ratio 3.0 --seed 8");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output != c.output);
    CHECK(contains(a.output, "p cnf 20 60"));

    auto php = run("gen pigeonhole --pigeons 3 --holes 2");
    CHECK(contains(php.output, "p cnf 6 9"));
}

TEST_CASE("solver output is byte-identical across reruns with a fixed seed") {
    fs::path f = temp_dir() / "det.cnf";
    REQUIRE(run("gen random-3sat --vars 40 --ratio 4.0 --seed 11 -o '" + f.string() + "'")
                .exit_code == 0);
    auto a = run("solve --mode hybrid --seed 5 '" + f.string() + "'");
    auto b = run("solve --mode hybrid --seed 5 '" + f.string() + "'");
    CHECK(a.output == b.output);
    CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("mus: enumeration and criticality reports") {
    fs::path f = temp_dir() / "twomus.cnf";
    write_file(f, "p cnf 5 8\n-4 5 0\n2 -3 0\n-4 0\n-1 2 0\n1 0\n1 -3 5 0\n-1 3 4 0\n-2 0\n");
    auto r = run("mus '" + f.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "MUS 1 (3 clauses): 3 4 7"));
    CHECK(contains(r.output, "MUS 2 (5 clauses): 1 2 4 6 7"));

    auto crit = run("mus --assign '1 2 3 4 5' '" + f.string() + "'");
    CHECK(crit.exit_code == 0);
    CHECK(contains(crit.output, "falsified"));

    auto sat = run("mus '" + (temp_dir() / "satfile.cnf").string() + "'");
    CHECK(sat.exit_code == 1); // missing file is an error
}

TEST_CASE("bench: toy corpus, cross-mode agreement, CSV and cactus outputs") {
    fs::path corpus = temp_dir() / "corpus";
    fs::create_directories(corpus);
    for (int s = 1; s <= 4; ++s) {
        REQUIRE(run("gen random-3sat --vars 20 --ratio 4.2 --seed " + std::to_string(s) +
                    " -o '" + (corpus / ("r" + std::to_string(s) + ".cnf")).string() + "'")
                    .exit_code == 0);
    }
    REQUIRE(run("gen pigeonhole --pigeons 3 --holes 2 -o '" + (corpus / "php.cnf").string() +
                "'")
                .exit_code == 0);

    fs::path prefix = temp_dir() / "bench";
    auto r = run("bench --mode hybrid --mode cdcl --timeout 5 --seed 3 --jobs 2 --out '" +
                 prefix.string() + "' '" + corpus.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "10 runs"));

    std::ifstream results(prefix.string() + "-results.csv");
    REQUIRE(results.good());
    std::string header;
    std::getline(results, header);
    CHECK(contains(header, "instance,mode,status"));
    int lines = 0;
    std::string line;
    while (std::getline(results, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 10);

    CHECK(fs::exists(prefix.string() + "-cactus-hybrid.csv"));
    CHECK(fs::exists(prefix.string() + "-cactus-cdcl.csv"));
}

TEST_CASE("bench: empty corpus succeeds, missing corpus fails") {
    fs::path empty = temp_dir() / "empty_corpus";
    fs::create_directories(empty);
    fs::path prefix = temp_dir() / "bench_empty";
    auto r = run("bench --out '" + prefix.string() + "' '" + empty.string() + "'");
    CHECK(r.exit_code == 0);

    auto bad = run("bench '" + (temp_dir() / "no_such_dir").string() + "'");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("bench: sub-millisecond timeout leaves instances unsolved") {
    fs::path corpus = temp_dir() / "hard_corpus";
    fs::create_directories(corpus);
    REQUIRE(run("gen pigeonhole --pigeons 9 --holes 8 -o '" + (corpus / "php98.cnf").string() +
                "'")
                .exit_code == 0);
    fs::path prefix = temp_dir() / "bench_hard";
    auto r = run("bench --mode hybrid --timeout 0.0001 --out '" + prefix.string() + "' '" +
                 corpus.string() + "'");
    CHECK(r.exit_code == 0);
    std::ifstream results(prefix.string() + "-results.csv");
    std::string header, line;
    std::getline(results, header);
    REQUIRE(std::getline(results, line));
    CHECK(contains(line, "UNKNOWN"));
}

} // TEST_SUITE
