#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "laxgrid/grid.hpp"
#include "laxgrid/oracle.hpp"
#include "laxgrid/rational.hpp"
#include "laxgrid/refined_set.hpp"

using namespace laxgrid;

TEST(Grid, CellCountIsTwoToTheNm) {
    auto g = build_grid(2, 1, Topology::cube);
    EXPECT_EQ(g.cell_count(), 4u);
    EXPECT_DOUBLE_EQ(g.cell_measure(), 0.25);
    EXPECT_EQ(build_grid(2, 0, Topology::cube).cell_count(), 1u);
    EXPECT_EQ(build_grid(3, 2, Topology::torus).cell_count(), 64u);
}

TEST(Grid, OrderZeroIsWholeCube) {
    auto g = build_grid(2, 0, Topology::cube);
    EXPECT_DOUBLE_EQ(g.cell_width(), 1.0);
    EXPECT_EQ(g.cell_of(Point{0.9, 0.1}), 0u);
    EXPECT_DOUBLE_EQ(g.center(0)[0], 0.5);
}

TEST(Grid, CellGeometry) {
    auto g = build_grid(2, 1, Topology::cube);
    auto geo = g.geometry(0);
    EXPECT_DOUBLE_EQ(geo.center[0], 0.25);
    EXPECT_DOUBLE_EQ(geo.center[1], 0.25);
    EXPECT_DOUBLE_EQ(geo.diameter, std::sqrt(2.0) / 2.0);

    auto g1 = build_grid(1, 2, Topology::cube);
    EXPECT_DOUBLE_EQ(g1.geometry(3).center[0], 0.875);
    EXPECT_DOUBLE_EQ(g1.geometry(3).diameter, 0.25);

    auto g2 = build_grid(2, 2, Topology::cube);
    std::array<std::uint32_t, 2> k{3, 3};
    auto c = g2.center(g2.index_of(k));
    EXPECT_DOUBLE_EQ(c[0], 0.875);
    EXPECT_DOUBLE_EQ(c[1], 0.875);
}

TEST(Grid, TorusDiameterUsesQuotientMetric) {
    // one cell of width 1 on the circle: farthest points are 1/2 apart
    EXPECT_DOUBLE_EQ(build_grid(1, 0, Topology::torus).cell_diameter(), 0.5);
    EXPECT_DOUBLE_EQ(build_grid(1, 0, Topology::cube).cell_diameter(), 1.0);
}

TEST(Grid, IndexRoundTripAxisZeroFastest) {
    auto g = build_grid(3, 2, Topology::cube);
    for (CellIndex i = 0; i < g.cell_count(); ++i) {
        auto k = g.multi_index(i);
        EXPECT_EQ(g.index_of(std::span<const std::uint32_t>(k.data(), 3)), i);
        EXPECT_EQ(g.cell_of(g.center(i)), i);
    }
    std::array<std::uint32_t, 3> k{1, 0, 0};
    EXPECT_EQ(g.index_of(k), 1u);
    k = {0, 1, 0};
    EXPECT_EQ(g.index_of(k), 4u);
}

TEST(Grid, CapacityAndDomainErrors) {
    EXPECT_THROW(DyadicGrid(5, 1, Topology::cube), Error);
    try {
        DyadicGrid(2, 13, Topology::cube);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CapacityExceeded);
    }
    try {
        DyadicGrid(2, 10, Topology::cube, 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CapacityExceeded);
    }
    EXPECT_NO_THROW(DyadicGrid(2, 10, Topology::cube, 4));
}

TEST(Grid, ErrorWhatCarriesKindName) {
    try {
        DyadicGrid(2, 13, Topology::cube);
    } catch (const Error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("CapacityExceeded: ", 0), 0u);
    }
}

TEST(Snake, FourCellCycle) {
    auto g = build_grid(2, 1, Topology::cube);
    auto s = snake_order(g);
    ASSERT_EQ(s.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(oracle::face_adjacent(g, s[i], s[(i + 1) % 4]));
    EXPECT_TRUE(is_hamiltonian_cycle(g, s));
}

TEST(Snake, SixteenCellCycle) {
    auto g = build_grid(2, 2, Topology::cube);
    auto s = snake_order(g);
    ASSERT_EQ(s.size(), 16u);
    std::vector<int> seen(16, 0);
    for (auto c : s) ++seen[c];
    for (int x : seen) EXPECT_EQ(x, 1);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_TRUE(oracle::face_adjacent(g, s[i], s[(i + 1) % 16]));
}

TEST(Snake, SingleCell) {
    auto s = snake_order(build_grid(1, 0, Topology::cube));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0], 0u);
}

TEST(Snake, AgreesWithGeometricAdjacencyOnManyShapes) {
    for (auto topo : {Topology::cube, Topology::torus})
        for (int n = 2; n <= 4; ++n)
            for (int m = 1; m <= (n == 2 ? 5 : 2); ++m) {
                auto g = build_grid(n, m, topo);
                auto s = snake_order(g);
                ASSERT_EQ(s.size(), g.cell_count());
                std::vector<int> seen(s.size(), 0);
                for (auto c : s) ++seen[c];
                for (int x : seen) ASSERT_EQ(x, 1);
                for (std::size_t i = 0; i < s.size(); ++i)
                    ASSERT_TRUE(oracle::face_adjacent(g, s[i], s[(i + 1) % s.size()]))
                        << "n=" << n << " m=" << m << " step " << i;
                EXPECT_TRUE(is_hamiltonian_cycle(g, s));
            }
}

TEST(Snake, OneDimensionalClosesOnlyOnTheCircle) {
    auto torus = build_grid(1, 3, Topology::torus);
    EXPECT_TRUE(is_hamiltonian_cycle(torus, snake_order(torus)));
    auto cube = build_grid(1, 3, Topology::cube);
    auto s = snake_order(cube);
    EXPECT_EQ(s.size(), 8u);
    EXPECT_FALSE(is_hamiltonian_cycle(cube, s));
    auto two = build_grid(1, 1, Topology::cube);
    EXPECT_TRUE(is_hamiltonian_cycle(two, snake_order(two)));
}

TEST(RefinedSet, MeasureIsPopcountOverSize) {
    auto a = RefinedSet::empty(2, 1, 2);
    EXPECT_EQ(a.size(), 64u);
    a.set(0);
    a.set(5);
    EXPECT_EQ(a.measure(), Rational(2, 64));
    EXPECT_EQ(RefinedSet::full(2, 1, 2).measure(), Rational(1));
}

TEST(RefinedSet, SetOpsExamples) {
    auto grid = build_grid(2, 1, Topology::cube);
    auto A = RefinedSet::of_cell(grid, 1, 2);
    EXPECT_EQ(set_ops(A, A).measure_symdiff, Rational(0));
    auto full = RefinedSet::full(2, 1, 2), none = RefinedSet::empty(2, 1, 2);
    EXPECT_EQ(set_ops(full, none).measure_symdiff, Rational(1));
    // left and right halves
    auto left = RefinedSet::of_cell(grid, 0, 2) | RefinedSet::of_cell(grid, 2, 2);
    auto right = RefinedSet::of_cell(grid, 1, 2) | RefinedSet::of_cell(grid, 3, 2);
    auto ops = set_ops(left, right);
    EXPECT_EQ(ops.intersection.measure(), Rational(0));
    EXPECT_EQ(ops.measure_union, Rational(1));
}

TEST(RefinedSet, SymdiffIsAMetricOnRandomSets) {
    std::mt19937_64 rng(3);
    std::bernoulli_distribution coin(0.4);
    auto rnd = [&] {
        auto s = RefinedSet::empty(2, 1, 2);
        for (std::uint64_t i = 0; i < s.size(); ++i)
            if (coin(rng)) s.set(i);
        return s;
    };
    for (int k = 0; k < 50; ++k) {
        auto a = rnd(), b = rnd(), c = rnd();
        auto d = [](const RefinedSet& x, const RefinedSet& y) { return (x ^ y).measure(); };
        EXPECT_EQ(d(a, b), d(b, a));
        EXPECT_LE(d(a, c), d(a, b) + d(b, c));
        EXPECT_EQ(d(a, a), Rational(0));
    }
}

TEST(RefinedSet, ResolutionMismatchIsAnError) {
    auto a = RefinedSet::empty(2, 1, 2), b = RefinedSet::empty(2, 1, 3);
    try {
        (void)(a | b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GridMismatch);
    }
    EXPECT_TRUE(a.lift(1).same_resolution(b));
}

TEST(RefinedSet, CellsPartitionTheCube) {
    auto grid = build_grid(2, 2, Topology::torus);
    auto acc = RefinedSet::empty(2, 2, 2);
    for (CellIndex i = 0; i < grid.cell_count(); ++i) {
        auto c = RefinedSet::of_cell(grid, i, 2);
        EXPECT_EQ(c.intersection_count(acc), 0u);
        EXPECT_EQ(c.measure(), Rational(1, 16));
        acc |= c;
    }
    EXPECT_EQ(acc, RefinedSet::full(2, 2, 2));
}

TEST(RefinedSet, LiftKeepsMeasure) {
    auto grid = build_grid(2, 1, Topology::cube);
    auto a = RefinedSet::of_cell(grid, 3, 1);
    auto b = a.lift(2);
    EXPECT_EQ(b.measure(), a.measure());
    EXPECT_EQ(b, RefinedSet::of_cell(grid, 3, 3));
}

TEST(Rational, ArithmeticAndOrdering) {
    Rational a(1, 3), b(1, 6);
    EXPECT_EQ(a + b, Rational(1, 2));
    EXPECT_EQ(a - b, Rational(1, 6));
    EXPECT_EQ(a * b, Rational(1, 18));
    EXPECT_EQ(a / b, Rational(2));
    EXPECT_LT(b, a);
    EXPECT_EQ(Rational(2, -4), Rational(-1, 2));
    EXPECT_EQ(Rational(6, 4).str(), "3/2");
}

TEST(Rational, OverflowIsReported) {
    Rational big(std::int64_t{1} << 62, 1);
    try {
        (void)(big * big);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Overflow);
    }
}
