#pragma once

#include "packcolor/cnf.hpp"
#include "packcolor/encoder.hpp"

#include <chrono>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace packcolor::cli {

// Stable process exit codes.
namespace exit_code {
inline constexpr int ok = 0;         // SAT, valid grid, coloring found
inline constexpr int failed = 1;     // verify found violations, reproduce mismatch
inline constexpr int unknown = 10;   // solver gave no definitive answer
inline constexpr int unsat = 20;     // UNSAT, brute force exhausted
inline constexpr int usage = 64;     // bad flags
inline constexpr int data = 65;      // malformed input (grid, DIMACS, plants)
inline constexpr int refused = 68;   // size guard or missing acknowledgment
inline constexpr int environment = 69;
inline constexpr int integrity = 70; // model or decoded grid failed a check
} // namespace exit_code

// "COLOR@ROW,COL", 1-based.
struct Plant {
    int color;
    Cell cell;
};
Plant parse_plant(const std::string& text);

// Flags shared by encode, solve and oracle.
struct InstanceOptions {
    std::optional<int> rows;
    std::optional<int> cols;
    std::optional<std::string> topology; // torus | plane
    int colors = 0;
    std::string scheme = "basic";
    int group_size = 0;
    std::string plant_file; // path or fixture name
    std::optional<int> strip_keep;
    std::string blowup; // "RxC"
    std::vector<std::string> plants;
};

// strip -> blow up -> add single plants, then checks the grid matches.
EncodeRequest build_request(const InstanceOptions& opts);

// Grid file path, or a bundled fixture name (sh17, ours16, ours15).
Coloring load_grid_argument(const std::string& arg);

std::pair<int, int> parse_factors(const std::string& text); // "RxC"

// Named instances from the published running-times table and lower-bound
// experiments.
struct NamedInstance {
    std::string name;
    std::string label;
    InstanceOptions options;
    SolveStatus expected;
    bool takes_days;
};
const std::vector<NamedInstance>& named_instances();
const NamedInstance& find_named_instance(const std::string& name);

// Line-oriented key=value run record.
class RunManifest {
public:
    void set(const std::string& key, const std::string& value);
    std::optional<std::string> get(const std::string& key) const;
    std::string to_string() const;
    void write(const std::string& path) const;
    static RunManifest parse(const std::string& text);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

struct PortfolioResult {
    SolveOutcome outcome;
    int winner = -1; // index of the process whose answer was taken
};

// Launches `processes` independent solver runs (cycling through `commands`).
// The first Sat/Unsat answer wins and the rest are killed.
PortfolioResult run_portfolio(const CnfFormula& formula, const std::vector<std::string>& commands, int processes,
                              std::chrono::duration<double> timeout,
                              const std::vector<std::string>& dimacs_comments = {});

// Full command line without argv[0]. Never throws; errors become exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace packcolor::cli
