#include "cli.hpp"

#include "packcolor/cnf_io.hpp"
#include "packcolor/errors.hpp"
#include "packcolor/grid.hpp"
#include "packcolor/solver.hpp"

#include <doctest.h>

#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>

using namespace packcolor;
using namespace packcolor::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("packcolor-cli-" + std::to_string(::getpid())))
    {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }

    std::string script(const std::string& name, const std::string& body) const
    {
        const fs::path p = path_ / name;
        std::ofstream(p) << "#!/bin/sh\n" << body;
        fs::permissions(p, fs::perms::owner_all);
        return p.string();
    }

private:
    fs::path path_;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("plant and factor syntax")
{
    const Plant p = parse_plant("9@5,5");
    CHECK(p.color == 9);
    CHECK(p.cell == Cell{5, 5});
    CHECK(parse_plant(" 12 @ 7 , 12 ").cell == Cell{7, 12});
    CHECK_THROWS_AS(parse_plant("9@5"), InputError);
    CHECK_THROWS_AS(parse_plant("0@1,1"), InputError);
    CHECK_THROWS_AS(parse_plant("x@1,1"), InputError);
    CHECK(parse_factors("2x3") == std::pair(2, 3));
    CHECK_THROWS_AS(parse_factors("2*3"), InputError);
}

TEST_CASE("encode writes DIMACS")
{
    const Run r = run_cli({"encode", "--rows", "1", "--cols", "1", "--colors", "1", "--scheme", "basic"});
    CHECK(r.code == exit_code::ok);
    CHECK(r.out.find("p cnf 1 1\n1 0\n") != std::string::npos);
    CHECK(r.err.find("clauses: 1") != std::string::npos);
}

TEST_CASE("encode the 24x24 recipe to a file")
{
    TempDir dir;
    const Run r = run_cli({"encode", "--rows", "24", "--cols", "24", "--colors", "16", "--scheme", "commander",
                           "--plant-file", "sh17", "--strip-keep", "7", "--out", dir / "i.cnf"});
    REQUIRE(r.code == exit_code::ok);
    CHECK(r.out.find("plants: 528") != std::string::npos);
    const CnfFormula f = read_dimacs(slurp(dir / "i.cnf"));
    CHECK(f.num_vars == 576 * 20);
    CHECK(f.clauses.size() == 894480);
}

TEST_CASE("encode the 15x9 lower-bound shape")
{
    const Run r = run_cli({"encode", "--rows", "15", "--cols", "9", "--topology", "plane", "--colors", "11",
                           "--plant", "9@5,5"});
    REQUIRE(r.code == exit_code::ok);
    CHECK(r.out.find("c packcolor grid 15x9 plane") != std::string::npos);
    const CnfFormula f = read_dimacs(r.out);
    CHECK(f.num_vars == 135 * 11);
    CHECK(f.clauses.back() == Clause{(4 * 9 + 4) * 11 + 9});
}

TEST_CASE("encode input errors map to exit codes")
{
    CHECK(run_cli({"encode", "--rows", "2", "--cols", "2"}).code == exit_code::usage);
    CHECK(run_cli({"bogus"}).code == exit_code::usage);
    CHECK(run_cli({"encode", "--rows", "2", "--cols", "2", "--colors", "2", "--plant", "3@1,1"}).code ==
          exit_code::data);
    CHECK(run_cli({"encode", "--rows", "2", "--cols", "2", "--colors", "2", "--plant", "1@3,1"}).code ==
          exit_code::data);
    CHECK(run_cli({"encode", "--rows", "30", "--cols", "30", "--colors", "16", "--plant-file", "sh17"}).code ==
          exit_code::data);
    CHECK(run_cli({"encode", "--colors", "2"}).code == exit_code::data);
    CHECK(run_cli({"encode", "--rows", "2", "--cols", "2", "--colors", "2", "--plant-file", "/no/such"}).code ==
          exit_code::environment);
    CHECK(run_cli({"--help"}).code == exit_code::ok);
}

TEST_CASE("embedded solve writes a verified grid and manifest")
{
    TempDir dir;
    const Run r = run_cli({"solve", "--rows", "2", "--cols", "2", "--colors", "3", "--embedded", "--out-grid",
                           dir / "g.grid"});
    REQUIRE(r.code == exit_code::ok);
    CHECK(r.out.find("status: SAT") != std::string::npos);
    CHECK(r.out.find("verified: true") != std::string::npos);
    const Coloring g = read_grid_file(dir / "g.grid");
    CHECK(verify_packing(g).valid());
    const RunManifest m = RunManifest::parse(slurp(dir / "g.grid.manifest"));
    CHECK(m.get("status") == "SAT");
    CHECK(m.get("verified") == "true");
    CHECK(m.get("solver_id") == "embedded-dpll");
    CHECK(m.get("num_vars") == "12");
    CHECK(m.get("started_at").has_value());
    CHECK(m.get("finished_at").has_value());
}

TEST_CASE("embedded solve of an unsatisfiable instance")
{
    TempDir dir;
    const Run r = run_cli({"solve", "--rows", "3", "--cols", "3", "--colors", "1", "--embedded", "--manifest",
                           dir / "m.txt"});
    CHECK(r.code == exit_code::unsat);
    CHECK(RunManifest::parse(slurp(dir / "m.txt")).get("status") == "UNSAT");
}

TEST_CASE("solve refuses to write a grid from a bad model")
{
    TempDir dir;
    // Every cell colored 1 breaks the distance-1 conflict clauses.
    const auto liar = dir.script("liar.sh", "echo 's SATISFIABLE'\necho 'v 1 2 3 4 0'\n");
    const Run r = run_cli({"solve", "--rows", "2", "--cols", "2", "--colors", "1", "--solver", liar, "--out-grid",
                           dir / "bad.grid"});
    CHECK(r.code == exit_code::integrity);
    CHECK_FALSE(fs::exists(dir / "bad.grid"));
    CHECK(RunManifest::parse(slurp(dir / "bad.grid.manifest")).get("status") == "ERROR");
}

TEST_CASE("solve without any solver is an environment error")
{
    TempDir dir;
    if (!default_solver_command().empty())
        return;
    CHECK(run_cli({"solve", "--rows", "2", "--cols", "2", "--colors", "3", "--manifest", dir / "m"}).code ==
          exit_code::environment);
}

TEST_CASE("portfolio takes the first definitive answer")
{
    TempDir dir;
    const CnfFormula f{1, {{1}}};
    const auto slow = dir.script("slow.sh", "sleep 30\n");
    const auto fast = dir.script("fast.sh", "echo 's SATISFIABLE'\necho 'v 1 0'\n");
    const PortfolioResult pr = run_portfolio(f, {slow, fast}, 2, std::chrono::seconds(20));
    CHECK(pr.outcome.status == SolveStatus::Sat);
    CHECK(pr.winner == 1);

    const auto unknown = dir.script("unknown.sh", "echo 's UNKNOWN'\n");
    const PortfolioResult none = run_portfolio(f, {unknown}, 3, std::chrono::seconds(20));
    CHECK(none.outcome.status == SolveStatus::Unknown);

    const Run r = run_cli({"solve", "--rows", "2", "--cols", "2", "--colors", "3", "--solver", slow, "--solver",
                           dir.script("s3.sh", "echo 's SATISFIABLE'\necho 'v -1 2 -3 -4 5 -6 -7 -8 9 10 -11 -12 0'\n"),
                           "--portfolio", "2", "--manifest", dir / "m"});
    // That model is not a packing coloring, so the clause check rejects it.
    CHECK(r.code == exit_code::integrity);
}

TEST_CASE("verify, freq, blowup, fixture")
{
    TempDir dir;
    CHECK(run_cli({"verify", "ours16"}).code == exit_code::ok);

    std::ofstream(dir / "bad.grid") << "2 2 torus\n1 1\n1 1\n";
    const Run bad = run_cli({"verify", dir / "bad.grid"});
    CHECK(bad.code == exit_code::failed);
    CHECK(bad.out.find("invalid: 4 violations") != std::string::npos);

    std::ofstream(dir / "ragged.grid") << "2 2 torus\n1 1\n1\n";
    CHECK(run_cli({"verify", dir / "ragged.grid"}).code == exit_code::data);

    CHECK(run_cli({"freq", "ours15"}).out.find("monotone: true") != std::string::npos);
    const Run f16 = run_cli({"freq", "ours16"});
    CHECK(f16.out.find("monotone: false") != std::string::npos);
    CHECK(f16.out.find("break: 8->9\nbreak: 14->15\n") != std::string::npos);
    std::ofstream(dir / "one.grid") << "1 1 torus\n1\n";
    const Run f1 = run_cli({"freq", dir / "one.grid"});
    CHECK(f1.out.find("   1 1\ntotal 1\nmonotone: true") != std::string::npos);

    REQUIRE(run_cli({"blowup", "sh17", "--factors", "2x2", "--strip-keep", "7", "--out", dir / "b.grid"}).code ==
            exit_code::ok);
    const Coloring b = read_grid_file(dir / "b.grid");
    CHECK(b.spec() == GridSpec(48, 48, Topology::Toroidal));
    CHECK(b.assigned_count() == 4 * 528);

    const Run fx = run_cli({"fixture", "sh17"});
    CHECK(fx.out.rfind("24 24 torus\n", 0) == 0);
}

TEST_CASE("oracle subcommand")
{
    const Run found = run_cli({"oracle", "--rows", "2", "--cols", "2", "--colors", "3"});
    CHECK(found.code == exit_code::ok);
    CHECK(found.out.find("1 2\n3 1\n") != std::string::npos);
    CHECK(run_cli({"oracle", "--rows", "3", "--cols", "3", "--colors", "1"}).code == exit_code::unsat);
    CHECK(run_cli({"oracle", "--rows", "6", "--cols", "6", "--colors", "3"}).code == exit_code::refused);
}

TEST_CASE("reproduce guards lower-bound runs and can emit instances")
{
    TempDir dir;
    const Run list = run_cli({"reproduce", "--list"});
    CHECK(list.out.find("24x24-16-1-7") != std::string::npos);
    CHECK(list.out.find("lb-14x14-12") != std::string::npos);

    CHECK(run_cli({"reproduce", "lb-14x14-12", "--embedded"}).code == exit_code::refused);
    CHECK(run_cli({"reproduce", "nope"}).code == exit_code::data);

    const Run emit = run_cli({"reproduce", "lb-15x9-11", "--emit", dir / "lb.cnf"});
    REQUIRE(emit.code == exit_code::ok);
    const CnfFormula f = read_dimacs(slurp(dir / "lb.cnf"));
    CHECK(f.num_vars == 135 * (11 + 3));
}

TEST_CASE("manifest text format")
{
    RunManifest m;
    m.set("a", "1");
    m.set("b", "two words");
    m.set("a", "3");
    m.set("c", "multi\nline");
    CHECK(m.to_string() == "a=3\nb=two words\nc=multi line\n");
    CHECK(RunManifest::parse(m.to_string()).to_string() == m.to_string());
    CHECK_THROWS_AS(m.set("x=y", "1"), InputError);
    CHECK_THROWS_AS(RunManifest::parse("novalue\n"), ParseError);
}
