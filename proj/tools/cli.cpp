#include "cli.hpp"

#include "packcolor/analysis.hpp"
#include "packcolor/cnf_io.hpp"
#include "packcolor/errors.hpp"
#include "packcolor/grid.hpp"
#include "packcolor/solver.hpp"

#include <CLI11.hpp>

#include <condition_variable>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

namespace packcolor::cli {

namespace {

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    ::gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

std::string format_seconds(double s)
{
    std::ostringstream o;
    o << std::fixed << std::setprecision(3) << s;
    return o.str();
}

int exit_for(SolveStatus s)
{
    switch (s) {
    case SolveStatus::Sat:
        return exit_code::ok;
    case SolveStatus::Unsat:
        return exit_code::unsat;
    case SolveStatus::Unknown:
        break;
    }
    return exit_code::unknown;
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw EnvironmentError("cannot write '" + path + "'");
    f << text;
    if (!f)
        throw EnvironmentError("write failed for '" + path + "'");
}

} // namespace

Plant parse_plant(const std::string& text)
{
    static const std::regex pattern(R"(^\s*(\d+)\s*@\s*(\d+)\s*,\s*(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        throw InputError("plant must look like COLOR@ROW,COL, got '" + text + "'");
    try {
        Plant p{std::stoi(m[1]), Cell{std::stoi(m[2]), std::stoi(m[3])}};
        if (p.color < 1)
            throw InputError("planted color must be >= 1 in '" + text + "'");
        return p;
    } catch (const std::out_of_range&) {
        throw InputError("number out of range in plant '" + text + "'");
    }
}

std::pair<int, int> parse_factors(const std::string& text)
{
    static const std::regex pattern(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        throw InputError("factors must look like RxC, got '" + text + "'");
    try {
        return {std::stoi(m[1]), std::stoi(m[2])};
    } catch (const std::out_of_range&) {
        throw InputError("factor out of range in '" + text + "'");
    }
}

Coloring load_grid_argument(const std::string& arg)
{
    if (!std::filesystem::exists(arg)) {
        if (auto id = fixture_by_name(arg))
            return load_fixture(*id);
    }
    return read_grid_file(arg);
}

EncodeRequest build_request(const InstanceOptions& opts)
{
    if (opts.colors < 1)
        throw InputError("--colors must be >= 1");

    std::optional<Coloring> base;
    if (!opts.plant_file.empty()) {
        base = load_grid_argument(opts.plant_file);
        if (opts.strip_keep)
            base = strip_colors(*base, *opts.strip_keep);
        if (!opts.blowup.empty()) {
            const auto [fr, fc] = parse_factors(opts.blowup);
            base = blow_up(*base, fr, fc);
        }
    } else if (opts.strip_keep || !opts.blowup.empty()) {
        throw InputError("--strip-keep and --blowup need --plant-file");
    }

    const int rows = opts.rows.value_or(base ? base->spec().rows() : 0);
    const int cols = opts.cols.value_or(base ? base->spec().cols() : 0);
    if (rows == 0 || cols == 0)
        throw InputError("grid size unknown: pass --rows and --cols or a --plant-file");
    const Topology topo = opts.topology ? parse_topology(*opts.topology)
                                        : (base ? base->spec().topology() : Topology::Toroidal);
    const GridSpec spec(rows, cols, topo);

    std::optional<Coloring> plants;
    if (base) {
        if (base->spec().rows() != rows || base->spec().cols() != cols)
            throw InputError("plant grid is " + std::to_string(base->spec().rows()) + "x" +
                             std::to_string(base->spec().cols()) + " but the instance is " + std::to_string(rows) +
                             "x" + std::to_string(cols));
        plants.emplace(spec);
        for (std::size_t i = 0; i < base->raw().size(); ++i) {
            if (const int c = base->raw()[i]; c != 0)
                plants->set(spec.cell_at(i), c);
        }
    }
    for (const std::string& text : opts.plants) {
        const Plant p = parse_plant(text);
        if (!plants)
            plants.emplace(spec);
        spec.check(p.cell);
        if (const int existing = plants->at(p.cell); existing != 0 && existing != p.color)
            throw InputError("plant " + text + " overrides color " + std::to_string(existing));
        plants->set(p.cell, p.color);
    }

    EncodeRequest req{spec, opts.colors, parse_scheme(opts.scheme), opts.group_size, std::move(plants)};
    req.validate();
    return req;
}

const std::vector<NamedInstance>& named_instances()
{
    static const std::vector<NamedInstance> table = [] {
        auto recipe = [](int n, int colors, int keep, const char* blow) {
            InstanceOptions o;
            o.rows = n;
            o.cols = n;
            o.colors = colors;
            o.scheme = "commander";
            o.plant_file = "sh17";
            o.strip_keep = keep;
            o.blowup = blow;
            return o;
        };
        auto lower = [](int rows, int cols, int colors, const char* plant) {
            InstanceOptions o;
            o.rows = rows;
            o.cols = cols;
            o.topology = "plane";
            o.colors = colors;
            o.scheme = "commander";
            o.plants = {plant};
            return o;
        };
        return std::vector<NamedInstance>{
            {"72x72-15-1-5", "72x72-15(1-5)", recipe(72, 15, 5, "3x3"), SolveStatus::Sat, false},
            {"48x48-16-1-8", "48x48-16(1-8)", recipe(48, 16, 8, "2x2"), SolveStatus::Unsat, false},
            {"48x48-16-1-7", "48x48-16(1-7)", recipe(48, 16, 7, "2x2"), SolveStatus::Sat, false},
            {"24x24-16-1-7", "24x24-16(1-7)", recipe(24, 16, 7, "1x1"), SolveStatus::Unsat, false},
            {"lb-15x9-11", "15x9 rectangle, 11 colours, 9 at (5,5)", lower(15, 9, 11, "9@5,5"), SolveStatus::Unsat,
             true},
            {"lb-12x12-11", "12x12 rectangle, 11 colours, 9 at (6,6)", lower(12, 12, 11, "9@6,6"),
             SolveStatus::Unsat, true},
            {"lb-14x14-12", "14x14 rectangle, 12 colours, 9 at (7,12)", lower(14, 14, 12, "9@7,12"),
             SolveStatus::Unsat, true},
        };
    }();
    return table;
}

const NamedInstance& find_named_instance(const std::string& name)
{
    for (const NamedInstance& p : named_instances()) {
        if (p.name == name || p.label == name)
            return p;
    }
    throw InputError("unknown instance '" + name + "' (see: packcolor reproduce --list)");
}

void RunManifest::set(const std::string& key, const std::string& value)
{
    if (key.empty() || key.find_first_of("=\n") != std::string::npos)
        throw InputError("bad manifest key '" + key + "'");
    std::string clean = value;
    for (char& ch : clean) {
        if (ch == '\n' || ch == '\r')
            ch = ' ';
    }
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = clean;
            return;
        }
    }
    entries_.emplace_back(key, clean);
}

std::optional<std::string> RunManifest::get(const std::string& key) const
{
    for (const auto& [k, v] : entries_) {
        if (k == key)
            return v;
    }
    return std::nullopt;
}

std::string RunManifest::to_string() const
{
    std::string s;
    for (const auto& [k, v] : entries_)
        s += k + "=" + v + "\n";
    return s;
}

void RunManifest::write(const std::string& path) const
{
    write_text_file(path, to_string());
}

RunManifest RunManifest::parse(const std::string& text)
{
    RunManifest m;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("manifest line without '=': " + line);
        m.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return m;
}

PortfolioResult run_portfolio(const CnfFormula& formula, const std::vector<std::string>& commands, int processes,
                              std::chrono::duration<double> timeout, const std::vector<std::string>& dimacs_comments)
{
    if (commands.empty())
        throw EnvironmentError("portfolio needs at least one solver command");
    if (processes < 1)
        throw InputError("portfolio size must be >= 1");

    std::mutex mu;
    std::condition_variable cv;
    std::stop_source stop;
    std::vector<std::optional<SolveOutcome>> results(processes);
    std::vector<std::exception_ptr> errors(processes);
    int finished = 0;
    int winner = -1;

    {
        std::vector<std::jthread> workers;
        for (int i = 0; i < processes; ++i) {
            workers.emplace_back([&, i] {
                std::optional<SolveOutcome> out;
                std::exception_ptr error;
                try {
                    out = solve_external(formula, commands[i % commands.size()], timeout, stop.get_token(),
                                         dimacs_comments);
                } catch (...) {
                    error = std::current_exception();
                }
                std::lock_guard lock(mu);
                results[i] = std::move(out);
                errors[i] = error;
                if (winner < 0 && results[i] && results[i]->status != SolveStatus::Unknown) {
                    winner = i;
                    stop.request_stop();
                }
                // A solver that lied or crashed the harness ends the whole run.
                if (error)
                    stop.request_stop();
                ++finished;
                cv.notify_all();
            });
        }
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return stop.stop_requested() || finished == processes; });
    } // joins; losers see the stop request and are killed

    if (winner >= 0)
        return {std::move(*results[winner]), winner};
    for (int i = 0; i < processes; ++i) {
        if (errors[i])
            std::rethrow_exception(errors[i]);
    }
    return {std::move(*results[0]), 0};
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

namespace {

void add_instance_flags(CLI::App* cmd, InstanceOptions& o, bool with_scheme)
{
    cmd->add_option("--rows", o.rows, "Grid rows");
    cmd->add_option("--cols", o.cols, "Grid columns");
    cmd->add_option("--topology", o.topology, "torus (default) or plane")->check(CLI::IsMember({"torus", "plane"}));
    cmd->add_option("--colors", o.colors, "Maximum color m")->required();
    if (with_scheme) {
        cmd->add_option("--scheme", o.scheme, "basic or commander")->check(CLI::IsMember({"basic", "commander"}));
        cmd->add_option("--group-size", o.group_size, "Commander group size (default: 4, or 3 when m%3==0 and m%4!=0)");
    }
    cmd->add_option("--plant-file", o.plant_file, "Grid file or fixture name (sh17, ours16, ours15) to plant");
    cmd->add_option("--strip-keep", o.strip_keep, "Keep only planted colors <= C");
    cmd->add_option("--blowup", o.blowup, "Tile the plant grid RxC times");
    cmd->add_option("--plant", o.plants, "Extra plant COLOR@ROW,COL (repeatable)");
}

struct SolveFlags {
    bool embedded = false;
    std::vector<std::string> solvers;
    double timeout = 3600.0;
    int portfolio = 1;
    std::string out_grid;
    std::string manifest;
    std::string dimacs;
    int max_vars = 5000;
    std::uint64_t max_conflicts = 0;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f)
{
    cmd->add_flag("--embedded", f.embedded, "Use the built-in DPLL solver (small instances only)");
    cmd->add_option("--solver", f.solvers, "External solver command (repeatable; default $PACKCOLOR_SOLVER)");
    cmd->add_option("--timeout", f.timeout, "Seconds before the external solver is killed")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--portfolio", f.portfolio, "Independent solver processes; first definitive answer wins")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out-grid", f.out_grid, "Write the verified coloring here on SAT");
    cmd->add_option("--manifest", f.manifest, "Run manifest path (default: <out-grid>.manifest or packcolor-run.manifest)");
    cmd->add_option("--dimacs", f.dimacs, "Also keep the CNF instance here");
    cmd->add_option("--max-vars", f.max_vars, "Embedded solver variable limit");
    cmd->add_option("--max-conflicts", f.max_conflicts, "Embedded solver conflict budget (0 = unlimited)");
}

std::string describe_plants(const EncodeRequest& req)
{
    return req.plants ? std::to_string(req.plants->assigned_count()) : "0";
}

int do_encode(const InstanceOptions& opts, const std::string& out_path, std::ostream& out, std::ostream& err)
{
    const EncodeRequest req = build_request(opts);
    const Encoding enc = encode(req);
    const std::string text = write_dimacs(enc.formula, describe_varmap(enc.varmap));
    std::ostream& info = out_path == "-" ? err : out;
    if (out_path == "-")
        out << text;
    else
        write_text_file(out_path, text);
    info << "variables: " << enc.formula.num_vars << "\n"
         << "clauses: " << enc.formula.clauses.size() << "\n"
         << "plants: " << describe_plants(req) << "\n";
    return exit_code::ok;
}

// Encode, solve, decode, verify, write. The manifest is written on every path.
int do_solve(const EncodeRequest& req, const SolveFlags& flags, std::ostream& out, RunManifest& manifest,
             const std::string& manifest_path)
{
    manifest.set("started_at", utc_timestamp());
    manifest.set("rows", std::to_string(req.spec.rows()));
    manifest.set("cols", std::to_string(req.spec.cols()));
    manifest.set("topology", std::string(to_string(req.spec.topology())));
    manifest.set("colors", std::to_string(req.max_color));
    manifest.set("scheme", std::string(to_string(req.scheme)));
    manifest.set("plants", describe_plants(req));

    auto finish = [&](const std::string& status) {
        manifest.set("status", status);
        manifest.set("finished_at", utc_timestamp());
        manifest.write(manifest_path);
    };

    try {
        const Encoding enc = encode(req);
        if (req.scheme == Scheme::Commander)
            manifest.set("group_size", std::to_string(enc.varmap.group_size()));
        manifest.set("num_vars", std::to_string(enc.formula.num_vars));
        manifest.set("num_clauses", std::to_string(enc.formula.clauses.size()));
        const auto comments = describe_varmap(enc.varmap);
        if (!flags.dimacs.empty()) {
            write_text_file(flags.dimacs, write_dimacs(enc.formula, comments));
            manifest.set("dimacs", flags.dimacs);
        }

        SolveOutcome outcome;
        if (flags.embedded) {
            outcome = solve_embedded(enc.formula, EmbeddedLimits{flags.max_vars, flags.max_conflicts});
        } else {
            std::vector<std::string> commands = flags.solvers;
            if (commands.empty()) {
                if (std::string env = default_solver_command(); !env.empty())
                    commands.push_back(env);
            }
            if (commands.empty())
                throw EnvironmentError("no solver: pass --embedded, --solver CMD, or set PACKCOLOR_SOLVER");
            manifest.set("portfolio", std::to_string(flags.portfolio));
            if (flags.portfolio > 1 || commands.size() > 1) {
                PortfolioResult pr = run_portfolio(enc.formula, commands, std::max<int>(flags.portfolio, static_cast<int>(commands.size())),
                                                   std::chrono::duration<double>(flags.timeout), comments);
                outcome = std::move(pr.outcome);
                manifest.set("portfolio_winner", std::to_string(pr.winner));
            } else {
                outcome = solve_external(enc.formula, commands.front(), std::chrono::duration<double>(flags.timeout),
                                         {}, comments);
            }
        }
        manifest.set("solver_id", outcome.solver_id);
        manifest.set("wall_time", format_seconds(outcome.wall_time));
        if (!outcome.reason.empty())
            manifest.set("reason", outcome.reason);

        out << "status: " << to_string(outcome.status) << "\n";
        if (outcome.status == SolveStatus::Sat) {
            const Coloring coloring = decode_model(*outcome.model, enc.varmap, req.plants);
            const VerifyReport report = verify_packing(coloring);
            bool agrees = true;
            if (req.plants) {
                for (std::size_t i = 0; i < coloring.raw().size(); ++i) {
                    if (req.plants->raw()[i] != 0 && req.plants->raw()[i] != coloring.raw()[i])
                        agrees = false;
                }
            }
            if (!report.valid() || !agrees) {
                manifest.set("verified", "false");
                throw IntegrityError("decoded coloring failed verification (" +
                                     std::to_string(report.violations.size()) + " violations, plants " +
                                     (agrees ? "kept" : "overridden") + ")");
            }
            manifest.set("verified", "true");
            out << "verified: true\n";
            if (!flags.out_grid.empty()) {
                write_grid_file(flags.out_grid, coloring);
                manifest.set("grid", flags.out_grid);
                out << "grid: " << flags.out_grid << "\n";
            }
        } else if (!outcome.reason.empty()) {
            out << "reason: " << outcome.reason << "\n";
        }
        finish(std::string(to_string(outcome.status)));
        out << "manifest: " << manifest_path << "\n";
        return exit_for(outcome.status);
    } catch (const std::exception& e) {
        manifest.set("error", e.what());
        finish("ERROR");
        throw;
    }
}

std::string manifest_path_for(const SolveFlags& flags)
{
    if (!flags.manifest.empty())
        return flags.manifest;
    if (!flags.out_grid.empty())
        return flags.out_grid + ".manifest";
    return "packcolor-run.manifest";
}

int do_verify(const std::string& grid, std::ostream& out)
{
    const Coloring c = load_grid_argument(grid);
    const VerifyReport report = verify_packing(c);
    if (report.valid()) {
        out << "valid: " << c.spec().rows() << "x" << c.spec().cols() << " " << to_string(c.spec().topology())
            << ", " << c.assigned_count() << " assigned cells, max color " << c.max_color() << "\n";
        return exit_code::ok;
    }
    out << "invalid: " << report.violations.size() << " violations\n";
    for (const Violation& v : report.violations) {
        out << "  color " << v.color << " at (" << v.first.row << "," << v.first.col << ") and (" << v.second.row
            << "," << v.second.col << ") distance " << v.distance << "\n";
    }
    return exit_code::failed;
}

int do_freq(const std::string& grid, std::ostream& out)
{
    const FrequencyTable t = frequency(load_grid_argument(grid));
    for (const auto& [color, count] : t.counts)
        out << std::setw(4) << color << " " << count << "\n";
    out << "total " << t.total << "\n";
    bool gaps = false;
    std::vector<std::pair<int, int>> breaks;
    try {
        breaks = monotonicity_breaks(t);
    } catch (const InputError&) {
        gaps = true;
    }
    if (gaps) {
        out << "monotone: n/a (color range has gaps)\n";
    } else {
        out << "monotone: " << (breaks.empty() ? "true" : "false") << "\n";
        for (const auto& [a, b] : breaks)
            out << "break: " << a << "->" << b << "\n";
    }
    return exit_code::ok;
}

int do_oracle(const InstanceOptions& opts, const std::string& out_path, std::ostream& out)
{
    const EncodeRequest req = build_request(opts);
    const auto found = brute_force_search(req.spec, req.max_color, req.plants);
    if (!found) {
        out << "exhausted: no packing " << req.max_color << "-coloring\n";
        return exit_code::unsat;
    }
    if (!verify_packing(*found).valid())
        throw IntegrityError("brute-force result failed verification");
    out << "found:\n" << format_grid(*found);
    if (!out_path.empty())
        write_grid_file(out_path, *found);
    return exit_code::ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Packing-coloring SAT encoder, solver bridge and verifier", "packcolor"};
    app.require_subcommand(1);

    InstanceOptions enc_opts;
    std::string enc_out = "-";
    auto* enc = app.add_subcommand("encode", "Write a DIMACS instance");
    add_instance_flags(enc, enc_opts, true);
    enc->add_option("--out", enc_out, "Output path ('-' for stdout)");

    InstanceOptions solve_opts;
    SolveFlags solve_flags;
    auto* solve = app.add_subcommand("solve", "Encode, solve, decode and verify");
    add_instance_flags(solve, solve_opts, true);
    add_solve_flags(solve, solve_flags);

    std::string verify_grid;
    auto* verify = app.add_subcommand("verify", "Check a grid for packing violations");
    verify->add_option("grid", verify_grid, "Grid file or fixture name")->required();

    std::string freq_grid;
    auto* freq = app.add_subcommand("freq", "Color frequency table and monotonicity");
    freq->add_option("grid", freq_grid, "Grid file or fixture name")->required();

    std::string blow_grid;
    std::string blow_factors;
    std::optional<int> blow_keep;
    std::string blow_out = "-";
    auto* blow = app.add_subcommand("blowup", "Tile a toroidal grid");
    blow->add_option("grid", blow_grid, "Grid file or fixture name")->required();
    blow->add_option("--factors", blow_factors, "RxC")->required();
    blow->add_option("--strip-keep", blow_keep, "Drop colors above C first");
    blow->add_option("--out", blow_out, "Output path ('-' for stdout)");

    InstanceOptions oracle_opts;
    std::string oracle_out;
    auto* oracle = app.add_subcommand("oracle", "Brute-force search (at most 25 cells, 8 colors)");
    add_instance_flags(oracle, oracle_opts, false);
    oracle->add_option("--out", oracle_out, "Write the coloring found here");

    std::string fixture_id;
    std::string fixture_out = "-";
    auto* fixture = app.add_subcommand("fixture", "Print a bundled coloring (sh17, ours16, ours15)");
    fixture->add_option("name", fixture_id)->required()->check(CLI::IsMember({"sh17", "ours16", "ours15"}));
    fixture->add_option("--out", fixture_out, "Output path ('-' for stdout)");

    std::string repro_name;
    bool repro_list = false;
    bool repro_days = false;
    std::string repro_scheme = "commander";
    std::string repro_emit;
    SolveFlags repro_flags;
    auto* repro = app.add_subcommand("reproduce", "Run a named instance from the published experiments");
    repro->add_option("name", repro_name, "Instance name (see --list)");
    repro->add_flag("--list", repro_list, "List known instances");
    repro->add_flag("--i-have-days", repro_days, "Acknowledge that lower-bound instances run for days");
    repro->add_option("--scheme", repro_scheme, "basic or commander")->check(CLI::IsMember({"basic", "commander"}));
    repro->add_option("--emit", repro_emit, "Only write the DIMACS instance to this path");
    add_solve_flags(repro, repro_flags);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, out, err);
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }

    try {
        if (*enc)
            return do_encode(enc_opts, enc_out, out, err);
        if (*solve) {
            RunManifest manifest;
            manifest.set("command", "solve");
            return do_solve(build_request(solve_opts), solve_flags, out, manifest, manifest_path_for(solve_flags));
        }
        if (*verify)
            return do_verify(verify_grid, out);
        if (*freq)
            return do_freq(freq_grid, out);
        if (*blow) {
            Coloring c = load_grid_argument(blow_grid);
            if (blow_keep)
                c = strip_colors(c, *blow_keep);
            const auto [fr, fc] = parse_factors(blow_factors);
            const Coloring b = blow_up(c, fr, fc);
            if (blow_out == "-")
                out << format_grid(b);
            else
                write_grid_file(blow_out, b);
            return exit_code::ok;
        }
        if (*oracle)
            return do_oracle(oracle_opts, oracle_out, out);
        if (*fixture) {
            const std::string text(fixture_text(*fixture_by_name(fixture_id)));
            if (fixture_out == "-")
                out << text;
            else
                write_text_file(fixture_out, text);
            return exit_code::ok;
        }
        if (*repro) {
            if (repro_list || repro_name.empty()) {
                for (const NamedInstance& p : named_instances()) {
                    out << std::left << std::setw(14) << p.name << " " << std::setw(7) << to_string(p.expected) << " "
                        << p.label << (p.takes_days ? "  [needs --i-have-days]" : "") << "\n";
                }
                return exit_code::ok;
            }
            const NamedInstance& inst = find_named_instance(repro_name);
            InstanceOptions opts = inst.options;
            opts.scheme = repro_scheme;
            const EncodeRequest req = build_request(opts);
            if (!repro_emit.empty()) {
                const Encoding e = encode(req);
                write_text_file(repro_emit, write_dimacs(e.formula, describe_varmap(e.varmap)));
                out << "instance: " << inst.label << "\nvariables: " << e.formula.num_vars
                    << "\nclauses: " << e.formula.clauses.size() << "\n";
                return exit_code::ok;
            }
            if (inst.takes_days && !repro_days) {
                err << "error: " << inst.label
                    << " is a lower-bound instance that runs for days; pass --i-have-days to proceed\n";
                return exit_code::refused;
            }
            RunManifest manifest;
            manifest.set("command", "reproduce");
            manifest.set("instance", inst.label);
            manifest.set("expected", std::string(to_string(inst.expected)));
            const int code = do_solve(req, repro_flags, out, manifest, manifest_path_for(repro_flags));
            const bool definitive = code == exit_code::ok || code == exit_code::unsat;
            if (!definitive)
                return code;
            const bool match = code == exit_for(inst.expected);
            out << "expected: " << to_string(inst.expected) << " (" << (match ? "reproduced" : "MISMATCH") << ")\n";
            return match ? code : exit_code::failed;
        }
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return exit_code::data;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_code::data;
    } catch (const RefusalError& e) {
        err << "refused: " << e.what() << "\n";
        return exit_code::refused;
    } catch (const EnvironmentError& e) {
        err << "environment error: " << e.what() << "\n";
        return exit_code::environment;
    } catch (const IntegrityError& e) {
        err << "integrity error: " << e.what() << "\n";
        return exit_code::integrity;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::environment;
    }
    return exit_code::usage;
}

} // namespace packcolor::cli
