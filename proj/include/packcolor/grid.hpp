#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace packcolor {

enum class Topology { Toroidal, Planar };

std::string_view to_string(Topology t);
Topology parse_topology(std::string_view s); // "torus" | "plane"

// 1-based grid position.
struct Cell {
    int row = 1;
    int col = 1;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Grid dimensions and topology. Toroidal models C_rows x C_cols, Planar the
// finite rectangle P_rows x P_cols.
class GridSpec {
public:
    GridSpec(int rows, int cols, Topology topology);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Topology topology() const { return topology_; }
    bool toroidal() const { return topology_ == Topology::Toroidal; }
    std::size_t cell_count() const { return static_cast<std::size_t>(rows_) * cols_; }

    bool contains(Cell c) const;
    void check(Cell c) const; // throws InputError when out of range

    // Row-major, 0-based.
    std::size_t index(Cell c) const { return static_cast<std::size_t>(c.row - 1) * cols_ + (c.col - 1); }
    Cell cell_at(std::size_t idx) const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    int rows_;
    int cols_;
    Topology topology_;
};

// Graph distance: toroidal L1 (per axis min(d, n - d)) or planar Manhattan.
int distance(const GridSpec& spec, Cell a, Cell b);

// Breadth-first search on the explicitly materialized grid graph. Slow and
// obviously correct; used to check distance().
inline constexpr std::size_t kBfsMaxCells = 1'000'000;
int bfs_distance_oracle(const GridSpec& spec, Cell a, Cell b);

// Total or partial assignment of colors (>= 1) to cells. Color 0 means
// unassigned.
class Coloring {
public:
    explicit Coloring(GridSpec spec);

    const GridSpec& spec() const { return spec_; }

    int at(Cell c) const;
    bool assigned(Cell c) const { return at(c) != 0; }
    void set(Cell c, int color);
    void clear(Cell c);

    bool is_total() const;
    std::size_t assigned_count() const;
    int max_color() const;

    // Row-major raw storage, 0 = unassigned.
    const std::vector<int>& raw() const { return colors_; }

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    GridSpec spec_;
    std::vector<int> colors_;
};

struct Violation {
    Cell first;
    Cell second;
    int color;
    int distance;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerifyReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

// Checks every pair of distinct assigned cells that share a color c for
// distance > c. Unassigned cells impose nothing. Violations are exhaustive,
// ordered by row-major position of the first cell, then the second.
VerifyReport verify_packing(const Coloring& coloring);

// Grid text format:
//   rows cols torus|plane
//   <rows lines of cols tokens, each a positive color or ".">
Coloring parse_grid(std::string_view text);
std::string format_grid(const Coloring& coloring);

Coloring read_grid_file(const std::string& path);
void write_grid_file(const std::string& path, const Coloring& coloring);

} // namespace packcolor
