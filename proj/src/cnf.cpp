#include "packcolor/cnf.hpp"

#include "packcolor/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace packcolor {

void CnfFormula::validate() const
{
    if (num_vars < 0)
        throw InputError("negative variable count");
    std::vector<Literal> sorted;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        const Clause& clause = clauses[i];
        const std::string where = "clause " + std::to_string(i + 1);
        if (clause.empty())
            throw InputError(where + " is empty");
        for (Literal lit : clause) {
            if (lit == 0 || std::abs(lit) > num_vars)
                throw InputError(where + " has literal " + std::to_string(lit) + " outside 1.." +
                                 std::to_string(num_vars));
        }
        sorted = clause;
        std::sort(sorted.begin(), sorted.end(),
                  [](Literal a, Literal b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b; });
        for (std::size_t k = 1; k < sorted.size(); ++k) {
            if (sorted[k] == sorted[k - 1])
                throw InputError(where + " repeats literal " + std::to_string(sorted[k]));
            if (sorted[k] == -sorted[k - 1])
                throw InputError(where + " is tautological on variable " + std::to_string(std::abs(sorted[k])));
        }
    }
}

SolverModel::SolverModel(int num_vars, const std::vector<bool>& one_based_values) : SolverModel(num_vars)
{
    for (int v = 1; v <= num_vars && static_cast<std::size_t>(v) < one_based_values.size(); ++v)
        values_[v] = one_based_values[v];
}

bool SolverModel::value(int var) const
{
    if (var < 1 || var > num_vars())
        throw InputError("model has no variable " + std::to_string(var));
    return values_[var];
}

void SolverModel::set(int var, bool v)
{
    if (var < 1 || var > num_vars())
        throw InputError("model has no variable " + std::to_string(var));
    values_[var] = v;
}

std::optional<std::size_t> first_falsified_clause(const CnfFormula& formula, const SolverModel& model)
{
    if (model.num_vars() < formula.num_vars)
        return formula.clauses.empty() ? std::nullopt : std::optional<std::size_t>(0);
    for (std::size_t i = 0; i < formula.clauses.size(); ++i) {
        const Clause& clause = formula.clauses[i];
        if (std::none_of(clause.begin(), clause.end(), [&](Literal l) { return model.satisfies(l); }))
            return i;
    }
    return std::nullopt;
}

std::string_view to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::Sat:
        return "SAT";
    case SolveStatus::Unsat:
        return "UNSAT";
    case SolveStatus::Unknown:
        break;
    }
    return "UNKNOWN";
}

} // namespace packcolor
