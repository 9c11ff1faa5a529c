#include "packcolor/errors.hpp"
#include "packcolor/grid.hpp"

#include <doctest.h>

#include <random>

using namespace packcolor;

TEST_CASE("distance examples")
{
    const GridSpec t24(24, 24, Topology::Toroidal);
    CHECK(distance(t24, {1, 1}, {1, 1}) == 0);
    CHECK(distance(t24, {1, 1}, {24, 24}) == 2);
    CHECK(distance(GridSpec(15, 9, Topology::Planar), {1, 1}, {15, 9}) == 22);
    CHECK(distance(GridSpec(5, 5, Topology::Toroidal), {1, 1}, {3, 4}) == 4);
}

TEST_CASE("distance rejects cells outside the grid")
{
    const GridSpec g(4, 4, Topology::Toroidal);
    CHECK_THROWS_AS((distance(g, {0, 1}, {1, 1})), InputError);
    CHECK_THROWS_AS((distance(g, {1, 1}, {1, 5})), InputError);
    CHECK_THROWS_AS((bfs_distance_oracle(g, {5, 1}, {1, 1})), InputError);
}

TEST_CASE("grid spec rejects empty dimensions")
{
    CHECK_THROWS_AS(GridSpec(0, 3, Topology::Toroidal), InputError);
    CHECK_THROWS_AS(GridSpec(3, -1, Topology::Planar), InputError);
}

TEST_CASE("bfs oracle examples")
{
    CHECK(bfs_distance_oracle(GridSpec(4, 4, Topology::Toroidal), {1, 1}, {3, 3}) == 4);
    CHECK(bfs_distance_oracle(GridSpec(3, 3, Topology::Planar), {1, 1}, {3, 3}) == 4);
    for (int n = 1; n <= 6; ++n) {
        const GridSpec g(n, n, Topology::Toroidal);
        CHECK(bfs_distance_oracle(g, {n, 1}, {n, 1}) == 0);
    }
    CHECK_THROWS_AS((bfs_distance_oracle(GridSpec(1001, 1000, Topology::Planar), {1, 1}, {2, 2})), RefusalError);
}

TEST_CASE("distance agrees with bfs on small non-square grids")
{
    // The exhaustive 12x12 sweep lives in the acceptance suite.
    for (Topology topo : {Topology::Toroidal, Topology::Planar}) {
        for (int r = 1; r <= 5; ++r) {
            for (int c = 1; c <= 5; ++c) {
                const GridSpec g(r, c, topo);
                for (std::size_t a = 0; a < g.cell_count(); ++a)
                    for (std::size_t b = 0; b < g.cell_count(); ++b)
                        REQUIRE(distance(g, g.cell_at(a), g.cell_at(b)) ==
                                bfs_distance_oracle(g, g.cell_at(a), g.cell_at(b)));
            }
        }
    }
}

TEST_CASE("distance is a metric on sampled cells")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        std::uniform_int_distribution<int> dim(1, 30);
        const GridSpec g(dim(rng), dim(rng), trial % 2 ? Topology::Toroidal : Topology::Planar);
        auto pick = [&] {
            return Cell{std::uniform_int_distribution<int>(1, g.rows())(rng),
                        std::uniform_int_distribution<int>(1, g.cols())(rng)};
        };
        const Cell a = pick(), b = pick(), c = pick();
        CHECK(distance(g, a, b) == distance(g, b, a));
        CHECK((distance(g, a, b) == 0) == (a == b));
        CHECK(distance(g, a, c) <= distance(g, a, b) + distance(g, b, c));
    }
}

TEST_CASE("verify_packing examples")
{
    SUBCASE("2x2 torus all ones has violations")
    {
        Coloring c(GridSpec(2, 2, Topology::Toroidal));
        for (int r = 1; r <= 2; ++r)
            for (int k = 1; k <= 2; ++k)
                c.set({r, k}, 1);
        const VerifyReport rep = verify_packing(c);
        CHECK_FALSE(rep.valid());
        // Four adjacent pairs at distance 1; the two diagonals sit at distance 2.
        CHECK(rep.violations.size() == 4);
        CHECK(rep.violations.front() == Violation{{1, 1}, {1, 2}, 1, 1});
    }
    SUBCASE("single cell")
    {
        Coloring c(GridSpec(1, 1, Topology::Toroidal));
        c.set({1, 1}, 1);
        CHECK(verify_packing(c).valid());
    }
    SUBCASE("distance exactly k conflicts")
    {
        Coloring c(GridSpec(1, 10, Topology::Planar));
        c.set({1, 1}, 3);
        c.set({1, 4}, 3);
        CHECK_FALSE(verify_packing(c).valid());
        c.clear({1, 4});
        c.set({1, 5}, 3);
        CHECK(verify_packing(c).valid());
    }
}

TEST_CASE("violations are exhaustive and ordered row-major")
{
    Coloring c(GridSpec(3, 3, Topology::Planar));
    c.set({3, 3}, 2);
    c.set({2, 3}, 2);
    c.set({1, 1}, 2);
    c.set({1, 2}, 2);
    const auto v = verify_packing(c).violations;
    REQUIRE(v.size() == 3);
    CHECK(v[0].first == Cell{1, 1});
    CHECK(v[0].second == Cell{1, 2});
    CHECK(v[1].first == Cell{1, 2});
    CHECK(v[1].second == Cell{2, 3});
    CHECK(v[2].first == Cell{2, 3});
    CHECK(v[2].second == Cell{3, 3});
}

namespace {

Coloring random_coloring(std::mt19937& rng, const GridSpec& g, int k, double fill)
{
    Coloring c(g);
    std::uniform_int_distribution<int> color(1, k);
    std::bernoulli_distribution assigned(fill);
    for (std::size_t i = 0; i < g.cell_count(); ++i)
        if (assigned(rng))
            c.set(g.cell_at(i), color(rng));
    return c;
}

// Greedy packing coloring in random cell order; total and valid by construction.
Coloring greedy_valid(std::mt19937& rng, const GridSpec& g)
{
    Coloring c(g);
    std::vector<std::size_t> order(g.cell_count());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
        for (int k = 1;; ++k) {
            c.set(g.cell_at(i), k);
            if (verify_packing(c).valid())
                break;
        }
    }
    return c;
}

} // namespace

TEST_CASE("torus validity matches validity of the planar 3x3 tiling")
{
    std::mt19937 rng(11);
    for (int n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 8; ++trial) {
            const GridSpec torus(n, n, Topology::Toroidal);
            const Coloring c = trial < 4 ? random_coloring(rng, torus, n, 1.0) : greedy_valid(rng, torus);
            // A colour >= n would clash with its own copy in the tiling.
            if (c.max_color() >= n)
                continue;

            // Tile 3n x 3n on the plane; check only pairs with both cells
            // in the central block, plus every partner of a central cell.
            const GridSpec plane(3 * n, 3 * n, Topology::Planar);
            bool tiled_valid = true;
            for (int r = n + 1; r <= 2 * n && tiled_valid; ++r) {
                for (int col = n + 1; col <= 2 * n && tiled_valid; ++col) {
                    const int k = c.at({(r - 1) % n + 1, (col - 1) % n + 1});
                    for (int r2 = 1; r2 <= 3 * n && tiled_valid; ++r2) {
                        for (int c2 = 1; c2 <= 3 * n; ++c2) {
                            if (Cell{r2, c2} == Cell{r, col})
                                continue;
                            if (c.at({(r2 - 1) % n + 1, (c2 - 1) % n + 1}) == k &&
                                distance(plane, {r, col}, {r2, c2}) <= k) {
                                tiled_valid = false;
                                break;
                            }
                        }
                    }
                }
            }
            CHECK(verify_packing(c).valid() == tiled_valid);
        }
    }
}

TEST_CASE("removing assignments keeps a valid coloring valid")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Coloring c = greedy_valid(rng, GridSpec(5 + trial % 4, 6, Topology::Toroidal));
        REQUIRE(verify_packing(c).valid());
        for (std::size_t i = 0; i < c.spec().cell_count(); i += 3) {
            c.clear(c.spec().cell_at(i));
            CHECK(verify_packing(c).valid());
        }
    }
}

TEST_CASE("grid text round trip")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const GridSpec g(1 + trial % 7, 1 + trial % 5, trial % 2 ? Topology::Planar : Topology::Toroidal);
        const Coloring c = random_coloring(rng, g, 17, 0.7);
        CHECK(parse_grid(format_grid(c)) == c);
    }
}

TEST_CASE("grid parser errors")
{
    CHECK_THROWS_AS(parse_grid(""), InputError);
    CHECK_THROWS_AS(parse_grid("2 2 donut\n1 2\n2 1\n"), InputError);
    CHECK_THROWS_AS(parse_grid("2 2 torus\n1 2\n2\n"), InputError);
    CHECK_THROWS_AS(parse_grid("2 2 torus\n1 2 3\n2 1\n"), InputError);
    CHECK_THROWS_AS(parse_grid("2 2 torus\n1 2\n"), InputError);
    CHECK_THROWS_AS(parse_grid("2 2 torus\n1 0\n2 1\n"), InputError);
    CHECK_THROWS_AS(parse_grid("2 2 torus\n1 x\n2 1\n"), InputError);
    CHECK_THROWS_AS(parse_grid("1 1 torus\n1\n1\n"), InputError);

    const Coloring c = parse_grid("2 3 plane\n1 . 2\n. . 3\n");
    CHECK(c.spec() == GridSpec(2, 3, Topology::Planar));
    CHECK(c.at({1, 3}) == 2);
    CHECK_FALSE(c.assigned({2, 1}));
    CHECK(c.assigned_count() == 3);
    CHECK_FALSE(c.is_total());
}
