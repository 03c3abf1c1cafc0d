#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "laxgrid/assignment.hpp"
#include "laxgrid/lax.hpp"
#include "laxgrid/oracle.hpp"

using namespace laxgrid;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::IoError;
}

} // namespace

TEST(Matching, IdentityWeights) {
    std::vector<std::vector<std::int64_t>> u(5, std::vector<std::int64_t>(5, 0));
    for (int i = 0; i < 5; ++i) u[i][i] = 1;
    auto s = hall_matching(OverlapMatrix::from_dense_units(u, 1));
    EXPECT_EQ(s, CellPermutation::identity(5));
}

TEST(Matching, AllEqualTiesBreakToIdentity) {
    std::vector<std::vector<std::int64_t>> u(3, std::vector<std::int64_t>(3, 1));
    EXPECT_EQ(hall_matching(OverlapMatrix::from_dense_units(u, 3)), CellPermutation::identity(3));
}

TEST(Matching, HallViolationHasNoPerfectMatching) {
    std::vector<std::vector<std::int64_t>> u{{1, 0, 0}, {1, 0, 0}, {1, 1, 1}};
    auto w = OverlapMatrix::from_dense_units(u, 3);
    EXPECT_EQ(kind_of([&] { hall_matching(w); }), ErrorKind::NoPerfectMatching);
    EXPECT_EQ(max_matching_size(w), 2u);
    EXPECT_FALSE(oracle::best_matching(u).has_value());
}

TEST(Matching, AgreesWithExhaustiveSearch) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 400; ++trial) {
        std::uniform_int_distribution<int> Q(1, 6), V(0, 4);
        const int q = Q(rng);
        std::vector<std::vector<std::int64_t>> u(q, std::vector<std::int64_t>(q));
        // few distinct values so that ties are common
        for (auto& row : u)
            for (auto& x : row) x = V(rng) == 0 ? 0 : V(rng);
        auto want = oracle::best_matching(u);
        auto w = OverlapMatrix::from_dense_units(u, 4);
        if (!want) {
            EXPECT_EQ(kind_of([&] { hall_matching(w); }), ErrorKind::NoPerfectMatching);
            continue;
        }
        auto got = hall_matching(w);
        EXPECT_EQ(got.image(), *want) << "trial " << trial;
        EXPECT_EQ(max_matching_size(w), static_cast<std::size_t>(q));
    }
}

TEST(Cyclicize, IdentityOnFourCells) {
    auto c = cyclicize(CellPermutation::identity(4));
    EXPECT_EQ(oracle::cycle_count(c.result.image()), 1u);
    for (CellIndex k = 0; k < 4; ++k) EXPECT_LE(std::abs(static_cast<long>(c.tau[k]) - static_cast<long>(k)), 2);
}

TEST(Cyclicize, CyclicInputStaysCyclic) {
    auto s = CellPermutation({1, 2, 3, 4, 0});
    auto c = cyclicize(s);
    EXPECT_EQ(c.tau, CellPermutation::identity(5));
    EXPECT_EQ(c.result, s);
}

TEST(Cyclicize, RandomSmallPermutations) {
    std::mt19937_64 rng(22);
    for (std::size_t q = 2; q <= 9; ++q)
        for (int k = 0; k < 200; ++k) {
            auto s = oracle::random_permutation(q, rng);
            auto c = cyclicize(s);
            ASSERT_EQ(oracle::cycle_count(c.result.image()), 1u);
            std::vector<CellIndex> order(q);
            std::iota(order.begin(), order.end(), CellIndex{0});
            EXPECT_LE(cyclic_displacement(c.tau, order), 2u);
        }
}

TEST(Cyclicize, FollowsAGivenOrdering) {
    auto g = build_grid(2, 2, Topology::torus);
    auto order = snake_order(g);
    std::mt19937_64 rng(23);
    for (int k = 0; k < 100; ++k) {
        auto s = oracle::random_permutation(16, rng);
        auto c = cyclicize(s, order);
        EXPECT_TRUE(c.result.is_cyclic());
        EXPECT_LE(cyclic_displacement(c.tau, order), 2u);
        // tau only swaps snake neighbours, so it moves cells to adjacent cells
        for (CellIndex i = 0; i < 16; ++i)
            if (c.tau[i] != i) {
                auto dist = distance(g.center(i), g.center(c.tau[i]), Topology::torus);
                EXPECT_LE(dist, 2 * g.cell_width() + 1e-12);
            }
    }
}

TEST(Cyclicize, RejectsBadOrdering) {
    EXPECT_EQ(kind_of([] { cyclicize(CellPermutation::identity(3), {0, 1, 1}); }), ErrorKind::NotAPermutation);
}

TEST(Bicyclize, SnakeFourCycle) {
    auto g = build_grid(2, 1, Topology::torus);
    auto order = snake_order(g);
    auto s = CellPermutation::cycle_along(order);
    auto b = bicyclize(s, order);
    EXPECT_EQ(oracle::cycle_lengths(b.result.image()), (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(b.transition % 2, 1u);
}

TEST(Bicyclize, TwoCycleSplitsIntoFixedPoints) {
    auto b = bicyclize(CellPermutation({1, 0}), {0, 1});
    EXPECT_EQ(oracle::cycle_lengths(b.result.image()), (std::vector<std::size_t>{1, 1}));
}

TEST(Bicyclize, RandomSnakeCyclesOfSixteen) {
    auto g = build_grid(2, 2, Topology::torus);
    auto order = snake_order(g);
    std::mt19937_64 rng(24);
    for (int k = 0; k < 200; ++k) {
        auto b = bicyclize(oracle::random_cycle(16, rng), order);
        auto l = oracle::cycle_lengths(b.result.image());
        ASSERT_EQ(l.size(), 2u);
        EXPECT_EQ(l[0] + l[1], 16u);
        EXPECT_EQ(l[0] % 2, 1u);
        EXPECT_EQ(l[1] % 2, 1u);
        EXPECT_EQ(std::gcd(l[0], l[1]), 1u);
        // the swapped pair is a snake neighbour pair
        auto pa = std::find(order.begin(), order.end(), b.a) - order.begin();
        auto pb = std::find(order.begin(), order.end(), b.b) - order.begin();
        EXPECT_EQ((pa + 1) % 16, pb);
    }
}

TEST(Bicyclize, Preconditions) {
    EXPECT_EQ(kind_of([] { bicyclize(CellPermutation::identity(4), {0, 1, 2, 3}); }), ErrorKind::NotCyclic);
    EXPECT_EQ(kind_of([] { bicyclize(CellPermutation({1, 2, 0}), {0, 1, 2}); }), ErrorKind::OddOrder);
}

TEST(Lax, IdentityPlain) {
    for (int m = 0; m <= 3; ++m) {
        auto g = build_grid(2, m, Topology::torus);
        auto r = lax_approximate(MeasureMap::identity(2), g, 4, LaxMode::plain);
        EXPECT_EQ(r.perm, CellPermutation::identity(g.cell_count()));
        EXPECT_NEAR(r.certificate.strong_bound, 2.0 * g.cell_diameter(), 1e-12);
    }
}

TEST(Lax, HalfShiftIsReproducedExactly) {
    auto g = build_grid(2, 1, Topology::torus);
    auto f = MeasureMap::translation(Point{0.5, 0.0});
    auto w = overlap_matrix(f, g, 8);
    auto r = lax_approximate(f, g, 8, LaxMode::plain);
    EXPECT_EQ(r.perm, CellPermutation({1, 0, 3, 2}));
    for (CellIndex i = 0; i < 4; ++i) EXPECT_EQ(w.units(i, r.perm[i]), w.unit_den);
    EXPECT_TRUE(r.certificate.all_matched_ok());
}

TEST(Lax, CatMapCyclicMostlyOverlapping) {
    auto f = MeasureMap::cat_map();
    for (int m = 1; m <= 5; ++m) {
        auto g = build_grid(2, m, Topology::torus);
        auto r = lax_approximate(f, g, 8, LaxMode::cyclic);
        EXPECT_TRUE(r.perm.is_cyclic());
        EXPECT_TRUE(r.certificate.all_matched_ok());
        auto fine = overlap_matrix(f, g, 64);
        std::size_t ok = 0;
        for (CellIndex i = 0; i < g.cell_count(); ++i) ok += fine.units(i, r.perm[i]) > 0;
        double frac = static_cast<double>(ok) / static_cast<double>(g.cell_count());
        EXPECT_GE(frac, 1.0 - 4.0 / std::ldexp(1.0, m)) << "m=" << m;
    }
}

TEST(Lax, BicyclicModeGivesTwoOddCycles) {
    auto f = MeasureMap::cat_map();
    for (int m = 1; m <= 4; ++m) {
        auto g = build_grid(2, m, Topology::torus);
        auto r = lax_approximate(f, g, 8, LaxMode::bicyclic);
        auto l = r.perm.cycle_lengths();
        ASSERT_EQ(l.size(), 2u);
        EXPECT_EQ(std::gcd(l[0], l[1]), 1u);
        EXPECT_EQ(l[0] % 2 + l[1] % 2, 2u);
    }
}

TEST(Lax, PermutationInvariants) {
    std::mt19937_64 rng(25);
    auto s = oracle::random_permutation(50, rng);
    auto lens = s.cycle_lengths();
    EXPECT_EQ(std::accumulate(lens.begin(), lens.end(), std::size_t{0}), 50u);
    EXPECT_EQ(s * s.inverse(), CellPermutation::identity(50));
    EXPECT_EQ(s.power(s.order()), CellPermutation::identity(50));
    EXPECT_EQ(kind_of([] { CellPermutation({0, 0, 1}); }), ErrorKind::NotAPermutation);
}
