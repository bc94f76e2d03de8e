#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <sys/wait.h>

#include "hybsat/cnf.hpp"
#include "hybsat/dimacs.hpp"

namespace hybsat::bench {

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    out += "'";
    return out;
}

struct ChildResult {
    int exit_code = -1;
    std::string output;
    bool spawn_failed = false;
};

ChildResult run_child(const std::string& command) {
    ChildResult r;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        r.spawn_failed = true;
        return r;
    }
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int status = pclose(pipe);
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    else if (WIFSIGNALED(status)) r.exit_code = 128 + WTERMSIG(status);
    else r.exit_code = -1;
    return r;
}

uint64_t parse_stat(const std::string& output, const std::string& key) {
    std::string needle = "c " + key + "=";
    size_t pos = output.find(needle);
    if (pos == std::string::npos) return 0;
    return std::strtoull(output.c_str() + pos + needle.size(), nullptr, 10);
}

double parse_time(const std::string& output) {
    std::string needle = "c time=";
    size_t pos = output.find(needle);
    if (pos == std::string::npos) return 0;
    return std::strtod(output.c_str() + pos + needle.size(), nullptr);
}

// Model literals from 'v' lines; empty when absent.
std::vector<int> parse_model(const std::string& output) {
    std::vector<int> lits;
    std::istringstream ss(output);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.rfind("v ", 0) != 0 && line != "v") continue;
        std::istringstream ls(line.substr(1));
        int n;
        while (ls >> n)
            if (n != 0) lits.push_back(n);
    }
    return lits;
}

} // namespace

int run_bench(const BenchConfig& config) {
    namespace fs = std::filesystem;

    if (!fs::is_directory(config.corpus_dir)) {
        std::cerr << "error: corpus directory '" << config.corpus_dir << "' not found\n";
        return 1;
    }
    std::vector<std::string> instances;
    for (const auto& e : fs::directory_iterator(config.corpus_dir))
        if (e.is_regular_file() && e.path().extension() == ".cnf")
            instances.push_back(e.path().string());
    std::sort(instances.begin(), instances.end());

    struct Task {
        std::string instance;
        std::string mode;
        uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const auto& inst : instances)
        for (const auto& mode : config.modes)
            tasks.push_back({inst, mode, config.seed + tasks.size()});

    std::vector<RunRecord> records(tasks.size());
    std::atomic<size_t> next{0};
    std::mutex fatal_mutex;
    std::vector<std::string> fatal_errors;

    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            RunRecord& rec = records[i];
            rec.instance = t.instance;
            rec.mode = t.mode;
            rec.seed = t.seed;

            std::ostringstream cmd;
            cmd << shell_quote(config.self_path) << " solve --mode " << t.mode << " --seed "
                << t.seed << " --timeout " << config.timeout << " --stats "
                << shell_quote(t.instance) << " 2>/dev/null";
            ChildResult child = run_child(cmd.str());

            if (child.spawn_failed) {
                rec.note = "spawn failed";
                continue;
            }
            if (child.exit_code == 10) rec.status = "SAT";
            else if (child.exit_code == 20) rec.status = "UNSAT";
            else if (child.exit_code == 0) rec.status = "UNKNOWN";
            else {
                rec.status = "UNKNOWN";
                rec.note = "exit=" + std::to_string(child.exit_code);
            }
            rec.seconds = parse_time(child.output);
            rec.flips = parse_stat(child.output, "flips");
            rec.local_minima = parse_stat(child.output, "local_minima");
            rec.fix_calls = parse_stat(child.output, "fix_calls");
            rec.conflicts = parse_stat(child.output, "conflicts");
            rec.learned = parse_stat(child.output, "learned");
            rec.restarts = parse_stat(child.output, "restarts");

            if (rec.status == "SAT") {
                try {
                    Formula f = parse_dimacs_file(t.instance);
                    Model m(f.num_vars());
                    for (int lit : parse_model(child.output)) {
                        int v = lit > 0 ? lit : -lit;
                        if (v >= 1 && v <= f.num_vars()) m.set(v, lit > 0);
                    }
                    if (!verify_model(f, m)) {
                        std::lock_guard<std::mutex> lock(fatal_mutex);
                        fatal_errors.push_back("model verification failed: " + t.instance + " [" +
                                               t.mode + "]");
                    }
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(fatal_mutex);
                    fatal_errors.push_back(std::string("re-verification error: ") + e.what());
                }
            }
        }
    };

    int jobs = std::max(1, config.jobs);
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::string results_path = config.out_prefix + "-results.csv";
    std::ofstream out(results_path);
    if (!out) {
        std::cerr << "error: cannot write " << results_path << '\n';
        return 1;
    }
    out << "instance,mode,status,seconds,seed,flips,local_minima,fix_calls,conflicts,learned,"
           "restarts,note\n";
    for (const RunRecord& r : records) {
        out << r.instance << ',' << r.mode << ',' << r.status << ',' << r.seconds << ',' << r.seed
            << ',' << r.flips << ',' << r.local_minima << ',' << r.fix_calls << ',' << r.conflicts
            << ',' << r.learned << ',' << r.restarts << ',' << r.note << '\n';
    }
    out.close();

    for (const auto& mode : config.modes) {
        std::vector<double> solved;
        for (const RunRecord& r : records)
            if (r.mode == mode && r.status != "UNKNOWN") solved.push_back(r.seconds);
        std::sort(solved.begin(), solved.end());
        std::string path = config.out_prefix + "-cactus-" + mode + ".csv";
        std::ofstream cactus(path);
        cactus << "rank,seconds\n";
        for (size_t i = 0; i < solved.size(); ++i)
            cactus << (i + 1) << ',' << solved[i] << '\n';
    }

    // cross-mode status agreement
    std::map<std::string, std::pair<bool, bool>> seen; // instance -> (sat, unsat)
    for (const RunRecord& r : records) {
        if (r.status == "SAT") seen[r.instance].first = true;
        if (r.status == "UNSAT") seen[r.instance].second = true;
    }
    for (const auto& [inst, flags] : seen)
        if (flags.first && flags.second)
            fatal_errors.push_back("status disagreement between modes on " + inst);

    size_t solved_total = 0;
    for (const RunRecord& r : records)
        if (r.status != "UNKNOWN") ++solved_total;
    std::cout << "c bench: " << instances.size() << " instances, " << records.size() << " runs, "
              << solved_total << " solved\n";
    std::cout << "c results: " << results_path << '\n';

    if (!fatal_errors.empty()) {
        for (const auto& msg : fatal_errors) std::cerr << "FATAL: " << msg << '\n';
        return 2;
    }
    return 0;
}

} // namespace hybsat::bench
