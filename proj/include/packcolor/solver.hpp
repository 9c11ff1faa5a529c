#pragma once

#include "packcolor/cnf.hpp"

#include <chrono>
#include <cstdint>
#include <stop_token>
#include <string>
#include <vector>

namespace packcolor {

struct EmbeddedLimits {
    int max_vars = 5000;
    std::uint64_t max_conflicts = 0; // 0 = unlimited
};

// Chronological-backtracking DPLL with two watched literals and no clause
// learning. Complete, small, and meant to be trusted rather than fast.
// Clauses may be added between solve() calls; every call restarts from an
// empty assignment.
class EmbeddedSolver {
public:
    explicit EmbeddedSolver(const CnfFormula& formula, EmbeddedLimits limits = {});

    void add_clause(const Clause& clause);
    SolveOutcome solve();

    std::uint64_t conflicts() const { return total_conflicts_; }
    std::uint64_t decisions() const { return total_decisions_; }

private:
    // Literal codes: 2*(v-1) for +v, 2*(v-1)+1 for -v.
    static int code(Literal lit) { return lit > 0 ? 2 * (lit - 1) : 2 * (-lit - 1) + 1; }
    static int var_of(int code) { return code >> 1; }
    static int negate(int code) { return code ^ 1; }

    int value(int code) const; // 1 true, 0 false, -1 unassigned
    void assign(int code);
    bool propagate();          // false on conflict
    void undo_to(std::size_t trail_size);
    void reset();

    struct Level {
        std::size_t trail_start;
        int decision;
        bool flipped;
    };

    int num_vars_;
    EmbeddedLimits limits_;
    CnfFormula formula_; // original literals, for the final model check
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_; // by literal code
    std::vector<int> units_;
    bool has_empty_clause_ = false;

    std::vector<std::int8_t> assigns_;
    std::vector<int> trail_;
    std::size_t qhead_ = 0;
    std::vector<Level> levels_;
    std::uint64_t total_conflicts_ = 0;
    std::uint64_t total_decisions_ = 0;
};

// One-shot embedded solve. Throws RefusalError above limits.max_vars.
SolveOutcome solve_embedded(const CnfFormula& formula, EmbeddedLimits limits = {});

// Every distinct assignment to `projection` that extends to a full model,
// each once, sorted lexicographically (false < true) in projection order.
// Uses blocking clauses over the projection variables.
std::vector<std::vector<bool>> enumerate_models(const CnfFormula& formula, const std::vector<int>& projection,
                                                EmbeddedLimits limits = {});

// Runs `command <dimacs-path>` (command split on whitespace, no shell),
// parses its "s"/"v" output and re-checks any model against every clause.
// Exit codes are ignored. Timeout or a stop request kills the process group
// and yields Unknown. Spawn failure -> EnvironmentError; a model that
// falsifies a clause -> IntegrityError.
SolveOutcome solve_external(const CnfFormula& formula, const std::string& command,
                            std::chrono::duration<double> timeout, std::stop_token stop = {},
                            const std::vector<std::string>& dimacs_comments = {});

// Default external command from PACKCOLOR_SOLVER, empty when unset.
std::string default_solver_command();

} // namespace packcolor
