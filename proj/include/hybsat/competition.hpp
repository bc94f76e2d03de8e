#pragma once

#include <iosfwd>

#include "hybsat/cdcl.hpp"

namespace hybsat {

// SAT-competition conventions: 's' status line, 'v' model lines, comment
// lines prefixed 'c', exit codes 10 / 20 / 0.
const char* status_text(Status s);
int status_exit_code(Status s);

// Prints the 's' line and, for SAT results, 'v' lines (20 literals per
// line, 0-terminated).
void print_result(std::ostream& out, const SolveOutcome& outcome, bool with_model = true);

// Stats as 'c <key>=<value>' lines.
void print_stats(std::ostream& out, const SolveStats& stats);

} // namespace hybsat
