#include "hybsat/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hybsat {

namespace {

long long parse_int(const std::string& tok, int line) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, "invalid token '" + tok + "'");
    return v;
}

} // namespace

Formula parse_dimacs(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    long long num_vars = 0;
    Formula f;
    std::vector<Lit> cur;

    while (std::getline(in, line)) {
        ++lineno;
        size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == 'c') continue;
        if (line[i] == 'p') {
            if (have_header) throw ParseError(lineno, "duplicate 'p cnf' header");
            std::istringstream ss(line);
            std::string p, fmt;
            long long nv = -1, nc = -1;
            std::string extra;
            ss >> p >> fmt >> nv >> nc;
            if (p != "p" || fmt != "cnf" || ss.fail() || nv < 0 || nc < 0 || (ss >> extra))
                throw ParseError(lineno, "malformed header, expected 'p cnf <vars> <clauses>'");
            num_vars = nv;
            f = Formula(static_cast<int>(num_vars));
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(lineno, "clause data before 'p cnf' header");

        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            long long n = parse_int(tok, lineno);
            if (n == 0) {
                f.add_clause(cur);
                cur.clear();
            } else {
                if (n > num_vars || -n > num_vars)
                    throw ParseError(lineno, "literal " + tok + " exceeds declared variable count");
                cur.push_back(Lit::from_dimacs(static_cast<int>(n)));
            }
        }
    }
    if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "empty input, missing 'p cnf' header");
    if (!cur.empty()) throw ParseError(lineno, "missing terminating 0 in last clause");
    return f;
}

Formula parse_dimacs(const std::string& text) {
    std::istringstream ss(text);
    return parse_dimacs(ss);
}

Formula parse_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_dimacs(in);
}

void write_dimacs(const Formula& f, std::ostream& out) {
    out << "p cnf " << f.num_vars() << ' ' << f.original().size() << '\n';
    for (const Clause& c : f.original()) {
        for (Lit l : c.lits) out << l.to_dimacs() << ' ';
        out << "0\n";
    }
}

std::string to_dimacs(const Formula& f) {
    std::ostringstream ss;
    write_dimacs(f, ss);
    return ss.str();
}

} // namespace hybsat
