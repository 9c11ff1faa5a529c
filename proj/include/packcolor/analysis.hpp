#pragma once

#include "packcolor/grid.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace packcolor {

// Tiles a toroidal coloring factor_rows x factor_cols times.
Coloring blow_up(const Coloring& coloring, int factor_rows, int factor_cols);

// Keeps only cells whose color is <= max_keep.
Coloring strip_colors(const Coloring& coloring, int max_keep);

// Swaps rows and columns. An isometry of the grid, so packing validity is
// preserved.
Coloring transpose(const Coloring& coloring);

struct FrequencyTable {
    std::map<int, long long> counts;
    long long total = 0;

    friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;
};

FrequencyTable frequency(const Coloring& coloring);

// Pairs (c, c+1) where the count rises from color c to color c+1.
// Throws InputError unless the table covers exactly colors 1..k.
std::vector<std::pair<int, int>> monotonicity_breaks(const FrequencyTable& table);

// Counts non-increasing in color. Same gap rule as monotonicity_breaks.
bool is_monotone(const FrequencyTable& table);

struct SearchLimits {
    int max_cells = 25;
    int max_colors = 8;
};

// Exhaustive backtracking over cells in row-major order, colors ascending.
// Returns the lexicographically first valid total coloring extending the
// plants, or nullopt when none exists. Refuses grids beyond the limits.
std::optional<Coloring> brute_force_search(const GridSpec& spec, int max_color,
                                           const std::optional<Coloring>& plants = std::nullopt,
                                           SearchLimits limits = {});

// Colorings transcribed from the published figures, stored as grid text.
enum class FixtureId { SH17_24, OURS16_48, OURS15_72 };

std::string_view fixture_name(FixtureId id); // "sh17", "ours16", "ours15"
std::optional<FixtureId> fixture_by_name(std::string_view name);
std::string_view fixture_text(FixtureId id);

// Parses and verifies; an invalid fixture is an IntegrityError.
Coloring load_fixture(FixtureId id);

} // namespace packcolor
