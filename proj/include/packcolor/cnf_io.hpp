#pragma once

#include "packcolor/cnf.hpp"
#include "packcolor/encoder.hpp"
#include "packcolor/grid.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace packcolor {

// "p cnf V C" header, then one clause per line terminated by " 0". Comment
// lines, if given, are written as "c <text>" before the header.
std::string write_dimacs(const CnfFormula& formula, const std::vector<std::string>& comments = {});

// Self-describing comment lines for an encoding: dimensions, colors, scheme.
std::vector<std::string> describe_varmap(const VarMap& varmap);

// Reads DIMACS CNF. Comment lines are skipped; clause count and variable
// bounds are checked against the header.
CnfFormula read_dimacs(std::string_view text);

// SAT-competition style solver output: "s SATISFIABLE|UNSATISFIABLE|UNKNOWN"
// plus "v ..." value lines terminated by 0. Variables the solver did not
// mention make a SAT answer incomplete (ParseError).
SolveOutcome parse_solver_output(std::string_view text, int num_vars);

// For every cell, the smallest color k with P(cell, k) true. A cell with no
// true color is an IntegrityError.
// Planted cells take their planted color (true in every model of a planted
// encoding); others take the smallest true color.
Coloring decode_model(const SolverModel& model, const VarMap& varmap,
                      const std::optional<Coloring>& plants = std::nullopt);

} // namespace packcolor
