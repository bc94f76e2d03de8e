#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hybsat/cnf.hpp"

namespace hybsat {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}

    int line;
};

// DIMACS CNF reader. Comment lines start with 'c', one 'p cnf <vars>
// <clauses>' header, clauses are nonzero integers terminated by 0 and may
// span lines. The clause count after normalization may differ from the
// header (duplicate literals merged, tautologies dropped).
Formula parse_dimacs(std::istream& in);
Formula parse_dimacs(const std::string& text);
Formula parse_dimacs_file(const std::string& path);

// Re-serialization of the original clauses, for debugging and generators.
void write_dimacs(const Formula& f, std::ostream& out);
std::string to_dimacs(const Formula& f);

} // namespace hybsat
