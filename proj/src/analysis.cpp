#include "packcolor/analysis.hpp"

#include "packcolor/errors.hpp"

#include <functional>

namespace packcolor {

// Generated from fixtures/*.grid at configure time.
namespace fixture_data {
extern const char* const sh17_24;
extern const char* const ours16_48;
extern const char* const ours15_72;
} // namespace fixture_data

Coloring blow_up(const Coloring& coloring, int factor_rows, int factor_cols)
{
    if (factor_rows < 1 || factor_cols < 1)
        throw InputError("blow-up factors must be >= 1, got " + std::to_string(factor_rows) + "x" +
                         std::to_string(factor_cols));
    const GridSpec& in = coloring.spec();
    if (!in.toroidal())
        throw InputError("blow-up needs a toroidal coloring");
    const long long rows = static_cast<long long>(in.rows()) * factor_rows;
    const long long cols = static_cast<long long>(in.cols()) * factor_cols;
    if (rows > 100000 || cols > 100000)
        throw RefusalError("blow-up result " + std::to_string(rows) + "x" + std::to_string(cols) + " is too large");

    Coloring out(GridSpec(static_cast<int>(rows), static_cast<int>(cols), Topology::Toroidal));
    for (int r = 1; r <= rows; ++r) {
        for (int c = 1; c <= cols; ++c) {
            const int color = coloring.at(Cell{(r - 1) % in.rows() + 1, (c - 1) % in.cols() + 1});
            if (color != 0)
                out.set(Cell{r, c}, color);
        }
    }
    return out;
}

Coloring strip_colors(const Coloring& coloring, int max_keep)
{
    if (max_keep < 0)
        throw InputError("strip threshold must be >= 0");
    Coloring out(coloring.spec());
    for (std::size_t i = 0; i < coloring.raw().size(); ++i) {
        if (const int c = coloring.raw()[i]; c != 0 && c <= max_keep)
            out.set(coloring.spec().cell_at(i), c);
    }
    return out;
}

Coloring transpose(const Coloring& coloring)
{
    const GridSpec& in = coloring.spec();
    Coloring out(GridSpec(in.cols(), in.rows(), in.topology()));
    for (int r = 1; r <= in.rows(); ++r) {
        for (int c = 1; c <= in.cols(); ++c) {
            if (const int color = coloring.at(Cell{r, c}); color != 0)
                out.set(Cell{c, r}, color);
        }
    }
    return out;
}

FrequencyTable frequency(const Coloring& coloring)
{
    FrequencyTable t;
    for (int c : coloring.raw()) {
        if (c != 0) {
            ++t.counts[c];
            ++t.total;
        }
    }
    return t;
}

std::vector<std::pair<int, int>> monotonicity_breaks(const FrequencyTable& table)
{
    int expected = 1;
    for (const auto& [color, count] : table.counts) {
        if (color != expected)
            throw InputError("frequency table skips color " + std::to_string(expected));
        ++expected;
    }
    std::vector<std::pair<int, int>> breaks;
    for (auto it = table.counts.begin(); it != table.counts.end(); ++it) {
        auto next = std::next(it);
        if (next != table.counts.end() && next->second > it->second)
            breaks.emplace_back(it->first, next->first);
    }
    return breaks;
}

bool is_monotone(const FrequencyTable& table)
{
    return monotonicity_breaks(table).empty();
}

std::optional<Coloring> brute_force_search(const GridSpec& spec, int max_color, const std::optional<Coloring>& plants,
                                           SearchLimits limits)
{
    if (spec.cell_count() > static_cast<std::size_t>(limits.max_cells) || max_color > limits.max_colors)
        throw RefusalError("brute-force search is limited to " + std::to_string(limits.max_cells) + " cells and " +
                           std::to_string(limits.max_colors) + " colors");
    if (max_color < 1)
        throw InputError("max color must be >= 1");
    if (plants) {
        if (!(plants->spec() == spec))
            throw InputError("plants do not match the search grid");
        if (plants->max_color() > max_color)
            throw InputError("planted color exceeds max color");
    }

    const std::size_t n = spec.cell_count();
    std::vector<Cell> cells(n);
    for (std::size_t i = 0; i < n; ++i)
        cells[i] = spec.cell_at(i);
    std::vector<int> colors(n, 0);

    auto fits = [&](std::size_t i, int c) {
        for (std::size_t j = 0; j < i; ++j) {
            if (colors[j] == c && distance(spec, cells[i], cells[j]) <= c)
                return false;
        }
        return true;
    };

    std::function<bool(std::size_t)> place = [&](std::size_t i) {
        if (i == n)
            return true;
        const int planted = plants ? plants->raw()[i] : 0;
        const int lo = planted != 0 ? planted : 1;
        const int hi = planted != 0 ? planted : max_color;
        for (int c = lo; c <= hi; ++c) {
            if (!fits(i, c))
                continue;
            colors[i] = c;
            if (place(i + 1))
                return true;
        }
        colors[i] = 0;
        return false;
    };

    if (!place(0))
        return std::nullopt;
    Coloring out(spec);
    for (std::size_t i = 0; i < n; ++i)
        out.set(cells[i], colors[i]);
    return out;
}

std::string_view fixture_name(FixtureId id)
{
    switch (id) {
    case FixtureId::SH17_24:
        return "sh17";
    case FixtureId::OURS16_48:
        return "ours16";
    case FixtureId::OURS15_72:
        return "ours15";
    }
    return "";
}

std::optional<FixtureId> fixture_by_name(std::string_view name)
{
    for (FixtureId id : {FixtureId::SH17_24, FixtureId::OURS16_48, FixtureId::OURS15_72}) {
        if (fixture_name(id) == name)
            return id;
    }
    return std::nullopt;
}

std::string_view fixture_text(FixtureId id)
{
    switch (id) {
    case FixtureId::SH17_24:
        return fixture_data::sh17_24;
    case FixtureId::OURS16_48:
        return fixture_data::ours16_48;
    case FixtureId::OURS15_72:
        return fixture_data::ours15_72;
    }
    return "";
}

Coloring load_fixture(FixtureId id)
{
    Coloring c = parse_grid(fixture_text(id));
    const VerifyReport report = verify_packing(c);
    if (!report.valid())
        throw IntegrityError("bundled fixture " + std::string(fixture_name(id)) + " has " +
                             std::to_string(report.violations.size()) + " packing violations");
    return c;
}

} // namespace packcolor
