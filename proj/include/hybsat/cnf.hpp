#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace hybsat {

using Var = int32_t; // 1-based variable index

// A literal packed as 2*(var-1) + sign so it can index watch/occurrence
// arrays directly. External I/O uses signed 1-based integers (DIMACS).
class Lit {
public:
    Lit() = default;

    static Lit positive(Var v) { return Lit(2 * (v - 1)); }
    static Lit negative(Var v) { return Lit(2 * (v - 1) + 1); }
    static Lit from_code(int32_t c) { return Lit(c); }

    static Lit from_dimacs(int n) {
        return n > 0 ? positive(n) : negative(-n);
    }

    Var var() const { return code_ / 2 + 1; }
    bool negated() const { return code_ & 1; }
    int32_t code() const { return code_; }
    int to_dimacs() const { return negated() ? -var() : var(); }

    Lit operator~() const { return Lit(code_ ^ 1); }

    friend bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
    friend bool operator!=(Lit a, Lit b) { return a.code_ != b.code_; }
    friend bool operator<(Lit a, Lit b) { return a.code_ < b.code_; }

private:
    explicit Lit(int32_t code) : code_(code) {}

    int32_t code_ = -1;
};

struct Clause {
    std::vector<Lit> lits;
    bool learned = false;
    double activity = 0.0;

    size_t size() const { return lits.size(); }
    bool empty() const { return lits.empty(); }

    bool contains(Lit l) const {
        for (Lit x : lits)
            if (x == l) return true;
        return false;
    }
};

// CNF instance: immutable original clauses plus a growable learned store.
// Learned clauses are heap-allocated so references stay valid while the
// store grows; deletion is only done through remove_learned_if, whose
// callers are responsible for dropping their references first.
class Formula {
public:
    Formula() = default;
    explicit Formula(int num_vars) : num_vars_(num_vars) {
        if (num_vars < 0) throw std::invalid_argument("negative variable count");
    }

    Formula(Formula&&) = default;
    Formula& operator=(Formula&&) = default;
    Formula(const Formula&) = delete;
    Formula& operator=(const Formula&) = delete;

    int num_vars() const { return num_vars_; }

    // Adds a clause, removing duplicate literals (first occurrence kept)
    // and dropping tautologies. An empty clause is retained.
    void add_clause(const std::vector<Lit>& lits) {
        std::vector<Lit> out;
        out.reserve(lits.size());
        for (Lit l : lits) {
            if (l.var() < 1 || l.var() > num_vars_)
                throw std::invalid_argument("literal variable out of range");
            bool dup = false;
            for (Lit o : out) {
                if (o == l) { dup = true; break; }
                if (o == ~l) return; // tautology, drop whole clause
            }
            if (!dup) out.push_back(l);
        }
        if (out.empty()) has_empty_ = true;
        original_.push_back(Clause{std::move(out), false, 0.0});
    }

    const std::vector<Clause>& original() const { return original_; }
    std::span<Clause> original_span() { return original_; }
    bool has_empty_clause() const { return has_empty_; }

    Clause* add_learned(std::vector<Lit> lits) {
        learned_.push_back(std::make_unique<Clause>(Clause{std::move(lits), true, 0.0}));
        return learned_.back().get();
    }

    size_t num_learned() const { return learned_.size(); }
    Clause* learned_clause(size_t i) { return learned_[i].get(); }
    const Clause* learned_clause(size_t i) const { return learned_[i].get(); }

    template <typename Pred>
    size_t remove_learned_if(Pred&& pred) {
        size_t before = learned_.size();
        std::erase_if(learned_, [&](const std::unique_ptr<Clause>& c) { return pred(c.get()); });
        return before - learned_.size();
    }

    template <typename Fn>
    void for_each_clause(Fn&& fn) const {
        for (const Clause& c : original_) fn(c);
        for (const auto& c : learned_) fn(*c);
    }

    Formula clone() const {
        Formula g(num_vars_);
        g.original_ = original_;
        g.has_empty_ = has_empty_;
        g.learned_.reserve(learned_.size());
        for (const auto& c : learned_) g.learned_.push_back(std::make_unique<Clause>(*c));
        return g;
    }

private:
    int num_vars_ = 0;
    bool has_empty_ = false;
    std::vector<Clause> original_;
    std::vector<std::unique_ptr<Clause>> learned_;
};

// Total truth assignment over [1, num_vars].
struct Model {
    std::vector<uint8_t> values; // index 0 unused

    Model() = default;
    explicit Model(int num_vars) : values(static_cast<size_t>(num_vars) + 1, 0) {}

    int num_vars() const { return static_cast<int>(values.size()) - 1; }
    bool value(Var v) const { return values[static_cast<size_t>(v)]; }
    void set(Var v, bool b) { values[static_cast<size_t>(v)] = b; }

    bool satisfies(const Clause& c) const {
        for (Lit l : c.lits)
            if (value(l.var()) != l.negated()) return true;
        return false;
    }
};

// Builds a formula from DIMACS-style signed integers, for tests and bindings.
inline Formula make_formula(int num_vars, const std::vector<std::vector<int>>& clauses) {
    Formula f(num_vars);
    for (const auto& cl : clauses) {
        std::vector<Lit> lits;
        lits.reserve(cl.size());
        for (int n : cl) {
            if (n == 0) throw std::invalid_argument("literal 0 in clause");
            lits.push_back(Lit::from_dimacs(n));
        }
        f.add_clause(lits);
    }
    return f;
}

// Resolvent of ci (contains x) and cj (contains ~x); nullopt when the
// result is tautological. Throws when the pivot is missing from a side.
std::optional<Clause> resolvent(const Clause& ci, const Clause& cj, Var x);

// True iff every original clause has a literal true under m. With
// check_learned the learned store is checked too (a free consistency test).
bool verify_model(const Formula& f, const Model& m, bool check_learned = false);

} // namespace hybsat
