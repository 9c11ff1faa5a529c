#pragma once

#include "packcolor/cnf.hpp"
#include "packcolor/grid.hpp"

#include <optional>
#include <string>
#include <utility>

namespace packcolor {

enum class Scheme { Basic, Commander };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view s); // "basic" | "commander"

// 4 when m is a multiple of 4, else 3 when m is a multiple of 3, else 4.
int default_group_size(int max_color);

// Layout of the CNF variables for one encoding.
//
// Position variables P(cell, color) come first:
//   index = ((row - 1) * cols + (col - 1)) * m + color
// Commander variables C(cell, group) follow in a contiguous block, row-major
// by cell, then by group.
class VarMap {
public:
    VarMap(GridSpec spec, int max_color, Scheme scheme, int group_size);

    const GridSpec& spec() const { return spec_; }
    int max_color() const { return max_color_; }
    Scheme scheme() const { return scheme_; }
    int group_size() const { return group_size_; } // 0 for Basic
    int group_count() const { return group_count_; }
    int position_var_count() const { return static_cast<int>(spec_.cell_count()) * max_color_; }
    int total_vars() const { return position_var_count() + static_cast<int>(spec_.cell_count()) * group_count_; }

    int position_var(Cell cell, int color) const;
    int commander_var(Cell cell, int group) const; // group is 1-based

    // Colors covered by a commander group, inclusive.
    std::pair<int, int> group_colors(int group) const;

    struct Decoded {
        enum class Kind { Position, Commander } kind;
        Cell cell;
        int color_or_group;
    };
    Decoded decode(int var) const;

    bool is_position_var(int var) const { return var >= 1 && var <= position_var_count(); }

private:
    GridSpec spec_;
    int max_color_;
    Scheme scheme_;
    int group_size_;
    int group_count_;
};

struct EncodeRequest {
    GridSpec spec;
    int max_color;
    Scheme scheme = Scheme::Basic;
    int group_size = 0; // 0 selects default_group_size(max_color) for Commander
    std::optional<Coloring> plants;

    // Throws InputError unless max_color >= 1, plants live on spec, every
    // planted color <= max_color, and the plants are a valid partial packing.
    void validate() const;
};

struct Encoding {
    CnfFormula formula;
    VarMap varmap;
};

// Clause order: at-least-one per cell (row-major), then conflict clauses for
// colors 1..m (pairs at distance <= k, lower row-major index first), then one
// unit clause per planted cell. No at-most-one constraint is emitted.
Encoding encode_basic(const EncodeRequest& req);

// Same conflict and plant clauses; each at-least-one clause is replaced by a
// guard clause -C(g) v P(group colors) per group plus C(1) v ... v C(G).
Encoding encode_commander(const EncodeRequest& req);

// Dispatches on req.scheme.
Encoding encode(const EncodeRequest& req);

// Number of unordered pairs of distinct cells at distance <= radius.
long long conflict_pair_count(const GridSpec& spec, int radius);

} // namespace packcolor
