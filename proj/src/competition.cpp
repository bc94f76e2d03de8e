#include "hybsat/competition.hpp"

#include <ostream>

namespace hybsat {

const char* status_text(Status s) {
    switch (s) {
        case Status::Sat: return "SATISFIABLE";
        case Status::Unsat: return "UNSATISFIABLE";
        default: return "UNKNOWN";
    }
}

int status_exit_code(Status s) {
    switch (s) {
        case Status::Sat: return 10;
        case Status::Unsat: return 20;
        default: return 0;
    }
}

void print_result(std::ostream& out, const SolveOutcome& outcome, bool with_model) {
    out << "s " << status_text(outcome.status) << '\n';
    if (outcome.status == Status::Sat && with_model) {
        int per_line = 0;
        out << 'v';
        for (Var v = 1; v <= outcome.model.num_vars(); ++v) {
            out << ' ' << (outcome.model.value(v) ? v : -v);
            if (++per_line == 20 && v != outcome.model.num_vars()) {
                out << "\nv";
                per_line = 0;
            }
        }
        out << " 0\n";
    }
}

void print_stats(std::ostream& out, const SolveStats& st) {
    out << "c flips=" << st.flips << '\n'
        << "c local_minima=" << st.local_minima << '\n'
        << "c fix_calls=" << st.fix_calls << '\n'
        << "c decisions=" << st.decisions << '\n'
        << "c conflicts=" << st.conflicts << '\n'
        << "c learned=" << st.learned << '\n'
        << "c removed=" << st.removed << '\n'
        << "c restarts=" << st.restarts << '\n'
        << "c time=" << st.seconds << '\n';
}

} // namespace hybsat
