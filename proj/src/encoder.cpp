#include "packcolor/encoder.hpp"

#include "packcolor/errors.hpp"

#include <algorithm>
#include <limits>

namespace packcolor {

std::string_view to_string(Scheme s)
{
    return s == Scheme::Basic ? "basic" : "commander";
}

Scheme parse_scheme(std::string_view s)
{
    if (s == "basic")
        return Scheme::Basic;
    if (s == "commander" || s == "cmdr")
        return Scheme::Commander;
    throw InputError("unknown scheme '" + std::string(s) + "' (expected basic or commander)");
}

int default_group_size(int max_color)
{
    if (max_color % 4 == 0)
        return 4;
    if (max_color % 3 == 0)
        return 3;
    return 4;
}

VarMap::VarMap(GridSpec spec, int max_color, Scheme scheme, int group_size)
    : spec_(spec), max_color_(max_color), scheme_(scheme), group_size_(0), group_count_(0)
{
    if (max_color < 1)
        throw InputError("max color must be >= 1");
    if (scheme == Scheme::Commander) {
        if (group_size < 2)
            throw InputError("commander group size must be >= 2, got " + std::to_string(group_size));
        group_size_ = group_size;
        group_count_ = (max_color + group_size - 1) / group_size;
    }
    const long long total = static_cast<long long>(spec.cell_count()) * (max_color + group_count_);
    if (total > std::numeric_limits<int>::max())
        throw RefusalError("encoding needs " + std::to_string(total) + " variables, beyond DIMACS int range");
}

int VarMap::position_var(Cell cell, int color) const
{
    spec_.check(cell);
    if (color < 1 || color > max_color_)
        throw InputError("color " + std::to_string(color) + " outside 1.." + std::to_string(max_color_));
    return static_cast<int>(spec_.index(cell)) * max_color_ + color;
}

int VarMap::commander_var(Cell cell, int group) const
{
    spec_.check(cell);
    if (group < 1 || group > group_count_)
        throw InputError("commander group " + std::to_string(group) + " outside 1.." +
                         std::to_string(group_count_));
    return position_var_count() + static_cast<int>(spec_.index(cell)) * group_count_ + group;
}

std::pair<int, int> VarMap::group_colors(int group) const
{
    if (group < 1 || group > group_count_)
        throw InputError("commander group " + std::to_string(group) + " outside 1.." +
                         std::to_string(group_count_));
    const int lo = (group - 1) * group_size_ + 1;
    return {lo, std::min(lo + group_size_ - 1, max_color_)};
}

VarMap::Decoded VarMap::decode(int var) const
{
    if (var < 1 || var > total_vars())
        throw InputError("variable " + std::to_string(var) + " outside 1.." + std::to_string(total_vars()));
    if (is_position_var(var)) {
        const int zero = var - 1;
        return {Decoded::Kind::Position, spec_.cell_at(static_cast<std::size_t>(zero / max_color_)),
                zero % max_color_ + 1};
    }
    const int zero = var - position_var_count() - 1;
    return {Decoded::Kind::Commander, spec_.cell_at(static_cast<std::size_t>(zero / group_count_)),
            zero % group_count_ + 1};
}

void EncodeRequest::validate() const
{
    if (max_color < 1)
        throw InputError("max color must be >= 1");
    if (scheme == Scheme::Commander && group_size != 0 && group_size < 2)
        throw InputError("commander group size must be >= 2");
    if (!plants)
        return;
    if (!(plants->spec() == spec))
        throw InputError("plants live on a " + std::to_string(plants->spec().rows()) + "x" +
                         std::to_string(plants->spec().cols()) + " " +
                         std::string(to_string(plants->spec().topology())) + " grid, request is " +
                         std::to_string(spec.rows()) + "x" + std::to_string(spec.cols()) + " " +
                         std::string(to_string(spec.topology())));
    if (plants->max_color() > max_color)
        throw InputError("planted color " + std::to_string(plants->max_color()) + " exceeds max color " +
                         std::to_string(max_color));
    const VerifyReport report = verify_packing(*plants);
    if (!report.valid()) {
        const Violation& v = report.violations.front();
        throw InputError("plants contradict each other: color " + std::to_string(v.color) + " at (" +
                         std::to_string(v.first.row) + "," + std::to_string(v.first.col) + ") and (" +
                         std::to_string(v.second.row) + "," + std::to_string(v.second.col) +
                         ") at distance " + std::to_string(v.distance) + " (" +
                         std::to_string(report.violations.size()) + " conflicts total)");
    }
}

namespace {

struct AxisStep {
    int offset; // added to the 0-based coordinate, modulo n on a torus
    int dist;
};

// Distinct reachable coordinates along one axis within `radius`, as offsets
// from the origin. On a torus every residue appears at most once, so small
// cycles never produce duplicate partners.
std::vector<AxisStep> axis_steps(int n, bool wrap, int radius)
{
    std::vector<AxisStep> steps;
    if (wrap) {
        for (int r = 0; r < n; ++r) {
            const int d = std::min(r, n - r);
            if (d <= radius)
                steps.push_back({r, d});
        }
    } else {
        const int reach = std::min(radius, n - 1);
        for (int r = -reach; r <= reach; ++r)
            steps.push_back({r, std::abs(r)});
    }
    return steps;
}

// Calls fn(a, b) for every unordered pair of distinct cells with
// distance <= radius, a < b in row-major order, sorted by (a, b).
template <typename Fn>
void for_each_close_pair(const GridSpec& spec, int radius, Fn&& fn)
{
    const bool wrap = spec.toroidal();
    const auto row_steps = axis_steps(spec.rows(), wrap, radius);
    const auto col_steps = axis_steps(spec.cols(), wrap, radius);
    std::vector<std::size_t> partners;
    for (std::size_t a = 0; a < spec.cell_count(); ++a) {
        const int r0 = static_cast<int>(a / spec.cols());
        const int c0 = static_cast<int>(a % spec.cols());
        partners.clear();
        for (const AxisStep& rs : row_steps) {
            int r = r0 + rs.offset;
            if (wrap)
                r %= spec.rows();
            else if (r < 0 || r >= spec.rows())
                continue;
            for (const AxisStep& cs : col_steps) {
                if (rs.dist + cs.dist > radius)
                    continue;
                int c = c0 + cs.offset;
                if (wrap)
                    c %= spec.cols();
                else if (c < 0 || c >= spec.cols())
                    continue;
                const std::size_t b = static_cast<std::size_t>(r) * spec.cols() + c;
                if (b > a)
                    partners.push_back(b);
            }
        }
        std::sort(partners.begin(), partners.end());
        for (std::size_t b : partners)
            fn(a, b);
    }
}

void emit_conflicts_and_plants(const EncodeRequest& req, const VarMap& vm, CnfFormula& f)
{
    const int m = req.max_color;
    for (int k = 1; k <= m; ++k) {
        for_each_close_pair(req.spec, k, [&](std::size_t a, std::size_t b) {
            f.clauses.push_back({-static_cast<int>(a * m + k), -static_cast<int>(b * m + k)});
        });
    }
    if (req.plants) {
        for (std::size_t i = 0; i < req.spec.cell_count(); ++i) {
            if (int c = req.plants->raw()[i]; c != 0)
                f.clauses.push_back({vm.position_var(req.spec.cell_at(i), c)});
        }
    }
}

} // namespace

long long conflict_pair_count(const GridSpec& spec, int radius)
{
    long long n = 0;
    for_each_close_pair(spec, radius, [&](std::size_t, std::size_t) { ++n; });
    return n;
}

Encoding encode_basic(const EncodeRequest& req)
{
    req.validate();
    VarMap vm(req.spec, req.max_color, Scheme::Basic, 0);
    CnfFormula f;
    f.num_vars = vm.total_vars();
    for (std::size_t i = 0; i < req.spec.cell_count(); ++i) {
        const Cell cell = req.spec.cell_at(i);
        Clause alo;
        alo.reserve(req.max_color);
        for (int k = 1; k <= req.max_color; ++k)
            alo.push_back(vm.position_var(cell, k));
        f.clauses.push_back(std::move(alo));
    }
    emit_conflicts_and_plants(req, vm, f);
    return {std::move(f), vm};
}

Encoding encode_commander(const EncodeRequest& req)
{
    req.validate();
    const int group_size = req.group_size != 0 ? req.group_size : default_group_size(req.max_color);
    VarMap vm(req.spec, req.max_color, Scheme::Commander, group_size);
    CnfFormula f;
    f.num_vars = vm.total_vars();
    for (std::size_t i = 0; i < req.spec.cell_count(); ++i) {
        const Cell cell = req.spec.cell_at(i);
        Clause commanders;
        for (int g = 1; g <= vm.group_count(); ++g) {
            const auto [lo, hi] = vm.group_colors(g);
            Clause guard{-vm.commander_var(cell, g)};
            for (int k = lo; k <= hi; ++k)
                guard.push_back(vm.position_var(cell, k));
            f.clauses.push_back(std::move(guard));
            commanders.push_back(vm.commander_var(cell, g));
        }
        f.clauses.push_back(std::move(commanders));
    }
    emit_conflicts_and_plants(req, vm, f);
    return {std::move(f), vm};
}

Encoding encode(const EncodeRequest& req)
{
    return req.scheme == Scheme::Basic ? encode_basic(req) : encode_commander(req);
}

} // namespace packcolor
