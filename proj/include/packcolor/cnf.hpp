#pragma once

#include <optional>
#include <string>
#include <vector>

namespace packcolor {

// DIMACS-style literal: +v is variable v, -v its negation. Never 0.
using Literal = int;
using Clause = std::vector<Literal>;

struct CnfFormula {
    int num_vars = 0;
    std::vector<Clause> clauses;

    // Throws InputError if a clause is empty, mentions 0 or a variable beyond
    // num_vars, repeats a literal, or contains both v and -v.
    void validate() const;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

// Total truth assignment over variables 1..num_vars.
class SolverModel {
public:
    SolverModel() = default;
    explicit SolverModel(int num_vars) : values_(static_cast<std::size_t>(num_vars) + 1, false) {}
    SolverModel(int num_vars, const std::vector<bool>& one_based_values);

    int num_vars() const { return values_.empty() ? 0 : static_cast<int>(values_.size()) - 1; }
    bool value(int var) const;
    bool satisfies(Literal lit) const { return lit > 0 ? value(lit) : !value(-lit); }
    void set(int var, bool v);

    friend bool operator==(const SolverModel&, const SolverModel&) = default;

private:
    std::vector<bool> values_; // index 0 unused
};

// Index of the first clause the model falsifies, if any.
std::optional<std::size_t> first_falsified_clause(const CnfFormula& formula, const SolverModel& model);

enum class SolveStatus { Sat, Unsat, Unknown };

std::string_view to_string(SolveStatus s);

struct SolveOutcome {
    SolveStatus status = SolveStatus::Unknown;
    std::optional<SolverModel> model; // present iff Sat
    std::string reason;               // diagnostic for Unknown
    double wall_time = 0.0;           // seconds
    std::string solver_id;

    static SolveOutcome sat(SolverModel m) { return {SolveStatus::Sat, std::move(m), {}, 0.0, {}}; }
    static SolveOutcome unsat() { return {SolveStatus::Unsat, std::nullopt, {}, 0.0, {}}; }
    static SolveOutcome unknown(std::string why) { return {SolveStatus::Unknown, std::nullopt, std::move(why), 0.0, {}}; }
};

} // namespace packcolor
