#include "packcolor/cnf_io.hpp"

#include "packcolor/errors.hpp"

#include <charconv>
#include <limits>
#include <cstdlib>
#include <sstream>

namespace packcolor {

namespace {

void append_int(std::string& out, int v)
{
    char buf[16];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, end);
}

// Splits on blanks without allocating per token beyond the view.
std::vector<std::string_view> tokens(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

long long to_integer(std::string_view tok, const char* what)
{
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(std::string("expected integer in ") + what + ", got '" + std::string(tok) + "'");
    return v;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn)
{
    std::size_t start = 0;
    std::size_t lineno = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        fn(text.substr(start, end - start), ++lineno);
        start = end + 1;
    }
}

} // namespace

std::string write_dimacs(const CnfFormula& formula, const std::vector<std::string>& comments)
{
    std::string out;
    out.reserve(formula.clauses.size() * 16 + 64);
    for (const std::string& c : comments) {
        out += "c ";
        out += c;
        out += '\n';
    }
    out += "p cnf ";
    append_int(out, formula.num_vars);
    out += ' ';
    out += std::to_string(formula.clauses.size());
    out += '\n';
    for (const Clause& clause : formula.clauses) {
        for (Literal lit : clause) {
            append_int(out, lit);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

std::vector<std::string> describe_varmap(const VarMap& vm)
{
    std::vector<std::string> lines;
    lines.push_back("packcolor grid " + std::to_string(vm.spec().rows()) + "x" + std::to_string(vm.spec().cols()) +
                    " " + std::string(to_string(vm.spec().topology())));
    lines.push_back("packcolor colors " + std::to_string(vm.max_color()));
    std::string scheme = "packcolor scheme " + std::string(to_string(vm.scheme()));
    if (vm.scheme() == Scheme::Commander)
        scheme += " group_size " + std::to_string(vm.group_size());
    lines.push_back(scheme);
    lines.push_back("packcolor vars position 1.." + std::to_string(vm.position_var_count()) + " total " +
                    std::to_string(vm.total_vars()));
    return lines;
}

CnfFormula read_dimacs(std::string_view text)
{
    CnfFormula f;
    bool have_header = false;
    long long declared_clauses = 0;
    Clause current;

    for_each_line(text, [&](std::string_view line, std::size_t lineno) {
        const auto toks = tokens(line);
        if (toks.empty() || toks[0] == "c" || toks[0].front() == 'c' || toks[0] == "%")
            return;
        if (toks[0] == "p") {
            if (have_header)
                throw ParseError("line " + std::to_string(lineno) + ": duplicate header");
            if (toks.size() != 4 || toks[1] != "cnf")
                throw ParseError("line " + std::to_string(lineno) + ": header must be 'p cnf V C'");
            const long long vars = to_integer(toks[2], "header");
            declared_clauses = to_integer(toks[3], "header");
            if (vars < 0 || vars > std::numeric_limits<int>::max() || declared_clauses < 0)
                throw ParseError("line " + std::to_string(lineno) + ": header counts out of range");
            f.num_vars = static_cast<int>(vars);
            have_header = true;
            return;
        }
        if (!have_header)
            throw ParseError("line " + std::to_string(lineno) + ": clause before 'p cnf' header");
        for (std::string_view tok : toks) {
            const long long lit = to_integer(tok, "clause");
            if (lit == 0) {
                f.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (std::llabs(lit) > f.num_vars)
                throw ParseError("line " + std::to_string(lineno) + ": literal " + std::to_string(lit) +
                                 " exceeds declared " + std::to_string(f.num_vars) + " variables");
            current.push_back(static_cast<Literal>(lit));
        }
    });

    if (!have_header)
        throw ParseError("missing 'p cnf' header");
    if (!current.empty())
        throw ParseError("last clause is not terminated by 0");
    if (static_cast<long long>(f.clauses.size()) != declared_clauses)
        throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(f.clauses.size()));
    return f;
}

SolveOutcome parse_solver_output(std::string_view text, int num_vars)
{
    std::optional<SolveStatus> status;
    std::vector<signed char> seen(static_cast<std::size_t>(num_vars) + 1, -1);
    bool saw_values = false;
    bool model_terminated = false;

    for_each_line(text, [&](std::string_view line, std::size_t lineno) {
        const auto toks = tokens(line);
        if (toks.empty())
            return;
        if (toks[0] == "s") {
            std::string word;
            for (std::size_t i = 1; i < toks.size(); ++i)
                word += (i > 1 ? " " : "") + std::string(toks[i]);
            SolveStatus s;
            if (word == "SATISFIABLE")
                s = SolveStatus::Sat;
            else if (word == "UNSATISFIABLE")
                s = SolveStatus::Unsat;
            else if (word == "UNKNOWN" || word == "INDETERMINATE")
                s = SolveStatus::Unknown;
            else
                throw ParseError("line " + std::to_string(lineno) + ": unrecognized status '" + word + "'");
            if (status && *status != s)
                throw ParseError("line " + std::to_string(lineno) + ": conflicting status lines");
            status = s;
            return;
        }
        if (toks[0] != "v")
            return; // comments, statistics
        saw_values = true;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const long long lit = to_integer(toks[i], "value line");
            if (lit == 0) {
                model_terminated = true;
                continue;
            }
            const long long var = std::llabs(lit);
            if (var > num_vars)
                throw ParseError("line " + std::to_string(lineno) + ": value for variable " + std::to_string(var) +
                                 " beyond declared " + std::to_string(num_vars));
            const signed char v = lit > 0 ? 1 : 0;
            if (seen[var] != -1 && seen[var] != v)
                throw ParseError("line " + std::to_string(lineno) + ": variable " + std::to_string(var) +
                                 " assigned both ways");
            seen[var] = v;
        }
    });

    if (!status)
        return SolveOutcome::unknown("malformed solver output: no 's' status line");
    if (*status == SolveStatus::Unsat)
        return SolveOutcome::unsat();
    if (*status == SolveStatus::Unknown)
        return SolveOutcome::unknown("solver reported UNKNOWN");

    if (!saw_values || !model_terminated)
        throw ParseError("SAT answer without a complete 0-terminated model");
    SolverModel model(num_vars);
    for (int v = 1; v <= num_vars; ++v) {
        if (seen[v] == -1)
            throw ParseError("SAT model omits variable " + std::to_string(v));
        model.set(v, seen[v] == 1);
    }
    return SolveOutcome::sat(std::move(model));
}

Coloring decode_model(const SolverModel& model, const VarMap& vm, const std::optional<Coloring>& plants)
{
    if (plants && plants->spec() != vm.spec())
        throw InputError("plants do not match the encoded grid");
    if (model.num_vars() < vm.position_var_count())
        throw IntegrityError("model covers " + std::to_string(model.num_vars()) + " variables, encoding needs " +
                             std::to_string(vm.position_var_count()));
    Coloring coloring(vm.spec());
    for (std::size_t i = 0; i < vm.spec().cell_count(); ++i) {
        const Cell cell = vm.spec().cell_at(i);
        int chosen = 0;
        if (plants && plants->assigned(cell)) {
            const int k = plants->at(cell);
            if (k > vm.max_color() || !model.value(vm.position_var(cell, k)))
                throw IntegrityError("model contradicts the plant at (" + std::to_string(cell.row) + "," +
                                     std::to_string(cell.col) + ")");
            chosen = k;
        }
        for (int k = 1; k <= vm.max_color() && chosen == 0; ++k) {
            if (model.value(vm.position_var(cell, k)))
                chosen = k;
        }
        if (chosen == 0)
            throw IntegrityError("model assigns no color to cell (" + std::to_string(cell.row) + "," +
                                 std::to_string(cell.col) + ")");
        coloring.set(cell, chosen);
    }
    return coloring;
}

} // namespace packcolor
