#include "packcolor/solver.hpp"

#include "packcolor/cnf_io.hpp"
#include "packcolor/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace packcolor {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Embedded DPLL
// ---------------------------------------------------------------------------

EmbeddedSolver::EmbeddedSolver(const CnfFormula& formula, EmbeddedLimits limits)
    : num_vars_(formula.num_vars), limits_(limits), formula_{formula.num_vars, {}},
      watches_(2 * static_cast<std::size_t>(std::max(formula.num_vars, 0))),
      assigns_(static_cast<std::size_t>(std::max(formula.num_vars, 0)), -1)
{
    if (formula.num_vars > limits.max_vars)
        throw RefusalError("formula has " + std::to_string(formula.num_vars) +
                           " variables, embedded solver limit is " + std::to_string(limits.max_vars) +
                           "; use an external solver");
    formula.validate();
    for (const Clause& c : formula.clauses)
        add_clause(c);
}

void EmbeddedSolver::add_clause(const Clause& clause)
{
    for (Literal lit : clause) {
        if (lit == 0 || std::abs(lit) > num_vars_)
            throw InputError("literal " + std::to_string(lit) + " outside formula variables");
    }
    formula_.clauses.push_back(clause);
    if (clause.empty()) {
        has_empty_clause_ = true;
        return;
    }
    if (clause.size() == 1) {
        units_.push_back(code(clause[0]));
        return;
    }
    std::vector<int> coded;
    coded.reserve(clause.size());
    for (Literal lit : clause)
        coded.push_back(code(lit));
    const int id = static_cast<int>(clauses_.size());
    watches_[coded[0]].push_back(id);
    watches_[coded[1]].push_back(id);
    clauses_.push_back(std::move(coded));
}

int EmbeddedSolver::value(int c) const
{
    const std::int8_t v = assigns_[var_of(c)];
    if (v < 0)
        return -1;
    return (c & 1) ? 1 - v : v;
}

void EmbeddedSolver::assign(int c)
{
    assigns_[var_of(c)] = (c & 1) ? 0 : 1;
    trail_.push_back(c);
}

bool EmbeddedSolver::propagate()
{
    while (qhead_ < trail_.size()) {
        const int false_lit = negate(trail_[qhead_++]);
        std::vector<int>& ws = watches_[false_lit];
        std::size_t keep = 0;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const int id = ws[i];
            std::vector<int>& cl = clauses_[id];
            // Keep the false watch in slot 1.
            if (cl[0] == false_lit)
                std::swap(cl[0], cl[1]);
            if (value(cl[0]) == 1) {
                ws[keep++] = id;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < cl.size(); ++k) {
                if (value(cl[k]) != 0) {
                    std::swap(cl[1], cl[k]);
                    watches_[cl[1]].push_back(id);
                    moved = true;
                    break;
                }
            }
            if (moved)
                continue;
            ws[keep++] = id;
            if (value(cl[0]) == 0) {
                for (std::size_t j = i + 1; j < ws.size(); ++j)
                    ws[keep++] = ws[j];
                ws.resize(keep);
                return false;
            }
            assign(cl[0]);
        }
        ws.resize(keep);
    }
    return true;
}

void EmbeddedSolver::undo_to(std::size_t trail_size)
{
    while (trail_.size() > trail_size) {
        assigns_[var_of(trail_.back())] = -1;
        trail_.pop_back();
    }
    qhead_ = std::min(qhead_, trail_size);
}

void EmbeddedSolver::reset()
{
    undo_to(0);
    levels_.clear();
    qhead_ = 0;
}

SolveOutcome EmbeddedSolver::solve()
{
    reset();
    if (has_empty_clause_)
        return SolveOutcome::unsat();

    // Level 0: unit clauses.
    for (int u : units_) {
        const int v = value(u);
        if (v == 0)
            return SolveOutcome::unsat();
        if (v < 0)
            assign(u);
    }
    if (!propagate())
        return SolveOutcome::unsat();

    std::uint64_t conflicts = 0;
    int next_var = 0;
    bool conflict = false;
    for (;;) {
        if (conflict) {
            ++conflicts;
            ++total_conflicts_;
            if (limits_.max_conflicts != 0 && conflicts >= limits_.max_conflicts)
                return SolveOutcome::unknown("conflict budget of " + std::to_string(limits_.max_conflicts) +
                                             " exhausted");
            // Chronological backtracking: flip the most recent unflipped decision.
            while (!levels_.empty() && levels_.back().flipped) {
                undo_to(levels_.back().trail_start);
                levels_.pop_back();
            }
            if (levels_.empty())
                return SolveOutcome::unsat();
            Level& top = levels_.back();
            undo_to(top.trail_start);
            top.flipped = true;
            assign(negate(top.decision));
            next_var = 0;
            conflict = !propagate();
            continue;
        }

        while (next_var < num_vars_ && assigns_[next_var] >= 0)
            ++next_var;
        if (next_var == num_vars_)
            break;

        ++total_decisions_;
        // Try false first: most position variables are false in any model.
        const int decision = 2 * next_var + 1;
        levels_.push_back(Level{trail_.size(), decision, false});
        assign(decision);
        conflict = !propagate();
    }

    SolverModel model(num_vars_);
    for (int v = 0; v < num_vars_; ++v)
        model.set(v + 1, assigns_[v] == 1);
    if (auto bad = first_falsified_clause(formula_, model))
        throw IntegrityError("embedded solver produced a model falsifying clause " + std::to_string(*bad + 1));
    return SolveOutcome::sat(std::move(model));
}

SolveOutcome solve_embedded(const CnfFormula& formula, EmbeddedLimits limits)
{
    const auto start = std::chrono::steady_clock::now();
    EmbeddedSolver solver(formula, limits);
    SolveOutcome out = solver.solve();
    out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.solver_id = "embedded-dpll";
    return out;
}

std::vector<std::vector<bool>> enumerate_models(const CnfFormula& formula, const std::vector<int>& projection,
                                                EmbeddedLimits limits)
{
    for (int v : projection) {
        if (v < 1 || v > formula.num_vars)
            throw InputError("projection variable " + std::to_string(v) + " outside formula");
    }
    std::vector<int> sorted = projection;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("projection repeats a variable");

    EmbeddedSolver solver(formula, limits);
    std::vector<std::vector<bool>> models;
    for (;;) {
        SolveOutcome out = solver.solve();
        if (out.status == SolveStatus::Unknown)
            throw RefusalError("model enumeration stopped: " + out.reason);
        if (out.status == SolveStatus::Unsat)
            break;
        std::vector<bool> projected;
        projected.reserve(projection.size());
        Clause blocking;
        for (int v : projection) {
            const bool val = out.model->value(v);
            projected.push_back(val);
            blocking.push_back(val ? -v : v);
        }
        models.push_back(std::move(projected));
        if (blocking.empty())
            break; // the single empty projection
        solver.add_clause(blocking);
    }
    std::sort(models.begin(), models.end());
    return models;
}

// ---------------------------------------------------------------------------
// External solver subprocess
// ---------------------------------------------------------------------------

namespace {

class TempDir {
public:
    TempDir()
    {
        std::string tmpl = (fs::temp_directory_path() / "packcolor-XXXXXX").string();
        if (::mkdtemp(tmpl.data()) == nullptr)
            throw EnvironmentError(std::string("cannot create temp directory: ") + std::strerror(errno));
        path_ = tmpl;
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::vector<std::string> split_command(const std::string& command)
{
    std::vector<std::string> argv;
    std::istringstream in(command);
    for (std::string tok; in >> tok;)
        argv.push_back(tok);
    return argv;
}

} // namespace

std::string default_solver_command()
{
    const char* env = std::getenv("PACKCOLOR_SOLVER");
    return env ? std::string(env) : std::string();
}

SolveOutcome solve_external(const CnfFormula& formula, const std::string& command,
                            std::chrono::duration<double> timeout, std::stop_token stop,
                            const std::vector<std::string>& dimacs_comments)
{
    if (timeout.count() <= 0)
        throw InputError("timeout must be positive");
    std::vector<std::string> args = split_command(command);
    if (args.empty())
        throw EnvironmentError("no external solver command (set PACKCOLOR_SOLVER or pass --solver)");

    TempDir dir;
    const fs::path cnf_path = dir.path() / "instance.cnf";
    const fs::path out_path = dir.path() / "solver.out";
    {
        std::ofstream cnf(cnf_path);
        cnf << write_dimacs(formula, dimacs_comments);
        if (!cnf)
            throw EnvironmentError("cannot write " + cnf_path.string());
    }
    args.push_back(cnf_path.string());

    std::vector<char*> argv;
    for (std::string& a : args)
        argv.push_back(a.data());
    argv.push_back(nullptr);

    int report[2];
    if (::pipe2(report, O_CLOEXEC) != 0)
        throw EnvironmentError(std::string("pipe: ") + std::strerror(errno));

    const auto start = std::chrono::steady_clock::now();
    const pid_t pid = ::fork();
    if (pid < 0) {
        ::close(report[0]);
        ::close(report[1]);
        throw EnvironmentError(std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) {
        ::setpgid(0, 0);
        const int out = ::open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        const int null = ::open("/dev/null", O_RDWR);
        if (out >= 0)
            ::dup2(out, STDOUT_FILENO);
        if (null >= 0) {
            ::dup2(null, STDIN_FILENO);
            ::dup2(null, STDERR_FILENO);
        }
        ::execvp(argv[0], argv.data());
        const int err = errno;
        [[maybe_unused]] auto n = ::write(report[1], &err, sizeof err);
        ::_exit(127);
    }
    ::setpgid(pid, pid);
    ::close(report[1]);
    int exec_errno = 0;
    const ssize_t got = ::read(report[0], &exec_errno, sizeof exec_errno);
    ::close(report[0]);
    if (got == sizeof exec_errno) {
        ::waitpid(pid, nullptr, 0);
        throw EnvironmentError("cannot run solver '" + args.front() + "': " + std::strerror(exec_errno));
    }

    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start); };
    std::string stopped_reason;
    for (;;) {
        int wstatus = 0;
        const pid_t r = ::waitpid(pid, &wstatus, WNOHANG);
        if (r == pid)
            break;
        if (r < 0 && errno != EINTR)
            throw EnvironmentError(std::string("waitpid: ") + std::strerror(errno));
        if (elapsed() >= timeout)
            stopped_reason = "timeout after " + std::to_string(timeout.count()) + " s";
        else if (stop.stop_requested())
            stopped_reason = "cancelled";
        if (!stopped_reason.empty()) {
            ::kill(-pid, SIGKILL);
            ::kill(pid, SIGKILL);
            ::waitpid(pid, nullptr, 0);
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }

    SolveOutcome outcome;
    if (!stopped_reason.empty()) {
        outcome = SolveOutcome::unknown(stopped_reason);
    } else {
        std::ifstream in(out_path);
        std::ostringstream text;
        text << in.rdbuf();
        outcome = parse_solver_output(text.str(), formula.num_vars);
        if (outcome.status == SolveStatus::Sat) {
            if (auto bad = first_falsified_clause(formula, *outcome.model))
                throw IntegrityError("solver '" + command + "' returned a model falsifying clause " +
                                     std::to_string(*bad + 1));
        }
    }
    outcome.wall_time = elapsed().count();
    outcome.solver_id = command;
    return outcome;
}

} // namespace packcolor
