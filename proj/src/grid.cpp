#include "packcolor/grid.hpp"

#include "packcolor/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

namespace packcolor {

std::string_view to_string(Topology t)
{
    return t == Topology::Toroidal ? "torus" : "plane";
}

Topology parse_topology(std::string_view s)
{
    if (s == "torus" || s == "toroidal")
        return Topology::Toroidal;
    if (s == "plane" || s == "planar")
        return Topology::Planar;
    throw InputError("unknown topology '" + std::string(s) + "' (expected torus or plane)");
}

GridSpec::GridSpec(int rows, int cols, Topology topology)
    : rows_(rows), cols_(cols), topology_(topology)
{
    if (rows < 1 || cols < 1)
        throw InputError("grid dimensions must be positive, got " + std::to_string(rows) + "x" +
                         std::to_string(cols));
}

bool GridSpec::contains(Cell c) const
{
    return c.row >= 1 && c.row <= rows_ && c.col >= 1 && c.col <= cols_;
}

void GridSpec::check(Cell c) const
{
    if (!contains(c))
        throw InputError("cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                         ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_) + " grid");
}

Cell GridSpec::cell_at(std::size_t idx) const
{
    return Cell{static_cast<int>(idx / cols_) + 1, static_cast<int>(idx % cols_) + 1};
}

namespace {

int axis_distance(int a, int b, int n, bool wrap)
{
    int d = std::abs(a - b);
    return wrap ? std::min(d, n - d) : d;
}

} // namespace

int distance(const GridSpec& spec, Cell a, Cell b)
{
    spec.check(a);
    spec.check(b);
    return axis_distance(a.row, b.row, spec.rows(), spec.toroidal()) +
           axis_distance(a.col, b.col, spec.cols(), spec.toroidal());
}

int bfs_distance_oracle(const GridSpec& spec, Cell a, Cell b)
{
    spec.check(a);
    spec.check(b);
    if (spec.cell_count() > kBfsMaxCells)
        throw RefusalError("grid too large to materialize for BFS");

    // Explicit adjacency lists; a 2-cycle or 1-cycle collapses to fewer
    // distinct neighbours, which BFS handles naturally.
    const std::size_t n = spec.cell_count();
    std::vector<std::vector<std::size_t>> adj(n);
    auto link = [&](Cell u, Cell v) {
        if (u == v)
            return;
        adj[spec.index(u)].push_back(spec.index(v));
    };
    for (int r = 1; r <= spec.rows(); ++r) {
        for (int c = 1; c <= spec.cols(); ++c) {
            const Cell u{r, c};
            const int dr[] = {-1, 1, 0, 0};
            const int dc[] = {0, 0, -1, 1};
            for (int k = 0; k < 4; ++k) {
                int nr = r + dr[k];
                int nc = c + dc[k];
                if (spec.toroidal()) {
                    nr = (nr - 1 + spec.rows()) % spec.rows() + 1;
                    nc = (nc - 1 + spec.cols()) % spec.cols() + 1;
                } else if (nr < 1 || nr > spec.rows() || nc < 1 || nc > spec.cols()) {
                    continue;
                }
                link(u, Cell{nr, nc});
            }
        }
    }

    std::vector<int> dist(n, -1);
    std::deque<std::size_t> queue{spec.index(a)};
    dist[spec.index(a)] = 0;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v : adj[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist[spec.index(b)];
}

Coloring::Coloring(GridSpec spec) : spec_(spec), colors_(spec.cell_count(), 0) {}

int Coloring::at(Cell c) const
{
    spec_.check(c);
    return colors_[spec_.index(c)];
}

void Coloring::set(Cell c, int color)
{
    spec_.check(c);
    if (color < 1)
        throw InputError("colors must be >= 1, got " + std::to_string(color));
    colors_[spec_.index(c)] = color;
}

void Coloring::clear(Cell c)
{
    spec_.check(c);
    colors_[spec_.index(c)] = 0;
}

bool Coloring::is_total() const
{
    return std::none_of(colors_.begin(), colors_.end(), [](int c) { return c == 0; });
}

std::size_t Coloring::assigned_count() const
{
    return static_cast<std::size_t>(
        std::count_if(colors_.begin(), colors_.end(), [](int c) { return c != 0; }));
}

int Coloring::max_color() const
{
    return colors_.empty() ? 0 : *std::max_element(colors_.begin(), colors_.end());
}

VerifyReport verify_packing(const Coloring& coloring)
{
    const GridSpec& spec = coloring.spec();
    std::map<int, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < coloring.raw().size(); ++i) {
        if (int c = coloring.raw()[i]; c != 0)
            classes[c].push_back(i);
    }

    // Plain all-pairs within each color class.
    VerifyReport report;
    for (const auto& [color, members] : classes) {
        for (std::size_t x = 0; x < members.size(); ++x) {
            const Cell a = spec.cell_at(members[x]);
            for (std::size_t y = x + 1; y < members.size(); ++y) {
                const Cell b = spec.cell_at(members[y]);
                const int d = distance(spec, a, b);
                if (d <= color)
                    report.violations.push_back(Violation{a, b, color, d});
            }
        }
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [&](const Violation& l, const Violation& r) {
                  return std::pair(spec.index(l.first), spec.index(l.second)) <
                         std::pair(spec.index(r.first), spec.index(r.second));
              });
    return report;
}

Coloring parse_grid(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;

    auto next_content_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            if (out.find_first_not_of(" \t\r") != std::string::npos)
                return true;
        }
        return false;
    };

    if (!next_content_line(line))
        throw InputError("grid text is empty");
    std::istringstream header(line);
    long long rows = 0;
    long long cols = 0;
    std::string topo;
    if (!(header >> rows >> cols >> topo))
        throw InputError("grid header must be 'rows cols torus|plane', got '" + line + "'");
    if (std::string extra; header >> extra)
        throw InputError("trailing tokens in grid header: '" + line + "'");
    if (rows < 1 || cols < 1 || rows > 100000 || cols > 100000)
        throw InputError("grid dimensions out of range in header '" + line + "'");

    Coloring coloring(GridSpec(static_cast<int>(rows), static_cast<int>(cols), parse_topology(topo)));
    for (int r = 1; r <= rows; ++r) {
        if (!next_content_line(line))
            throw InputError("grid text has " + std::to_string(r - 1) + " rows, expected " +
                             std::to_string(rows));
        std::istringstream row(line);
        std::string tok;
        int c = 0;
        while (row >> tok) {
            ++c;
            if (c > cols)
                throw InputError("ragged grid: row " + std::to_string(r) + " has more than " +
                                 std::to_string(cols) + " entries");
            if (tok == ".")
                continue;
            char* end = nullptr;
            const long v = std::strtol(tok.c_str(), &end, 10);
            if (*end != '\0' || v < 1 || v > 1'000'000)
                throw InputError("bad grid token '" + tok + "' at row " + std::to_string(r));
            coloring.set(Cell{r, c}, static_cast<int>(v));
        }
        if (c != cols)
            throw InputError("ragged grid: row " + std::to_string(r) + " has " + std::to_string(c) +
                             " entries, expected " + std::to_string(cols));
    }
    if (next_content_line(line))
        throw InputError("grid text has more than " + std::to_string(rows) + " rows");
    return coloring;
}

std::string format_grid(const Coloring& coloring)
{
    const GridSpec& spec = coloring.spec();
    const int width = static_cast<int>(std::to_string(std::max(coloring.max_color(), 1)).size());
    std::ostringstream out;
    out << spec.rows() << ' ' << spec.cols() << ' ' << to_string(spec.topology()) << '\n';
    for (int r = 1; r <= spec.rows(); ++r) {
        for (int c = 1; c <= spec.cols(); ++c) {
            std::string tok = coloring.assigned(Cell{r, c}) ? std::to_string(coloring.at(Cell{r, c})) : ".";
            if (c > 1)
                out << ' ';
            out << std::string(width - tok.size(), ' ') << tok;
        }
        out << '\n';
    }
    return out.str();
}

Coloring read_grid_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw EnvironmentError("cannot open grid file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_grid(buf.str());
}

void write_grid_file(const std::string& path, const Coloring& coloring)
{
    std::ofstream out(path);
    if (!out)
        throw EnvironmentError("cannot write grid file '" + path + "'");
    out << format_grid(coloring);
    if (!out)
        throw EnvironmentError("write failed for '" + path + "'");
}

} // namespace packcolor
