#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "laxgrid/oracle.hpp"
#include "laxgrid/spectral.hpp"

using namespace laxgrid;

namespace {

CellPermutation with_cycles(const std::vector<std::size_t>& lens) {
    std::vector<CellIndex> img;
    CellIndex start = 0;
    for (auto L : lens) {
        for (std::size_t k = 0; k < L; ++k) img.push_back(start + static_cast<CellIndex>((k + 1) % L));
        start += static_cast<CellIndex>(L);
    }
    return CellPermutation(img);
}

SpectralMeasure roots(std::initializer_list<std::pair<std::int64_t, std::int64_t>> fr) {
    SpectralMeasure m;
    for (auto [n, d] : fr) m.atoms.push_back({n, d, 1.0});
    return m;
}

} // namespace

TEST(SpectralVector, IndicatorOnCycleIsUniform) {
    for (std::size_t q : {1u, 2u, 5u, 8u}) {
        std::vector<double> v(q, 0.0);
        v[q / 2] = 1.0;
        auto m = spectral_measure_of_vector(with_cycles({q}), v);
        ASSERT_EQ(m.atoms.size(), q);
        for (std::size_t j = 0; j < q; ++j) {
            EXPECT_EQ(Rational(m.atoms[j].num, m.atoms[j].den), Rational(static_cast<std::int64_t>(j), static_cast<std::int64_t>(q)));
            EXPECT_NEAR(m.atoms[j].weight, 1.0 / static_cast<double>(q), 1e-15);
        }
    }
}

TEST(SpectralVector, ConstantIsInvariant) {
    const std::size_t q = 12;
    std::vector<double> v(q, 1.0 / std::sqrt(static_cast<double>(q)));
    auto m = spectral_measure_of_vector(with_cycles({5, 7}), v);
    ASSERT_EQ(m.atoms.size(), 1u);
    EXPECT_EQ(m.atoms[0].num, 0);
    EXPECT_NEAR(m.atoms[0].weight, 1.0, 1e-14);
}

TEST(SpectralVector, TwoTranspositions) {
    auto m = spectral_measure_of_vector(with_cycles({2, 2}), std::vector<double>{1, 0, 0, 0});
    ASSERT_EQ(m.atoms.size(), 2u);
    EXPECT_EQ(m.atoms[0].num, 0);
    EXPECT_EQ(m.atoms[1].num, 1);
    EXPECT_EQ(m.atoms[1].den, 2);
    EXPECT_NEAR(m.atoms[0].weight, 0.5, 1e-15);
    EXPECT_NEAR(m.atoms[1].weight, 0.5, 1e-15);
}

TEST(SpectralVector, MatchesProjectorFormula) {
    std::mt19937_64 rng(61);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int k = 0; k < 30; ++k) {
        std::uniform_int_distribution<std::size_t> Q(1, 10);
        auto s = oracle::random_permutation(Q(rng), rng);
        std::vector<std::complex<double>> v(s.size());
        double norm2 = 0.0;
        for (auto& x : v) {
            x = {N(rng), N(rng)};
            norm2 += std::norm(x);
        }
        auto m = spectral_measure_of_vector(s, v);
        EXPECT_NEAR(m.total_mass(), norm2, 1e-10 * norm2);
        for (auto& a : m.atoms) EXPECT_NEAR(a.weight, oracle::atom_weight_from_powers(s, v, a.num, a.den), 1e-9);
    }
}

TEST(SpectralType, Identity) {
    auto m = spectral_type(CellPermutation::identity(6));
    ASSERT_EQ(m.atoms.size(), 1u);
    EXPECT_EQ(m.atoms[0].num, 0);
    EXPECT_NEAR(m.atoms[0].weight, 1.0, 1e-15);
}

TEST(SpectralType, SingleCycleHitsEveryRoot) {
    const std::size_t q = 9;
    auto m = spectral_type(with_cycles({q}));
    ASSERT_EQ(m.atoms.size(), q);
    for (std::size_t j = 0; j < q; ++j) {
        EXPECT_GT(m.atoms[j].weight, 0.0);
        EXPECT_EQ(Rational(m.atoms[j].num, m.atoms[j].den), Rational(static_cast<std::int64_t>(j), 9));
    }
    EXPECT_NEAR(m.total_mass(), 1.0, 1e-14);
}

TEST(SpectralType, TwoTranspositions) {
    auto m = spectral_type(with_cycles({2, 2}));
    ASSERT_EQ(m.atoms.size(), 2u);
    EXPECT_EQ(m.atoms[1].den, 2);
    EXPECT_NEAR(m.total_mass(), 1.0, 1e-14);
}

TEST(Cesaro, IdentityWithEqualSets) {
    const std::size_t q = 8;
    std::vector<CellIndex> E{0, 3, 5};
    auto d = cesaro_mixing_diagnostic(CellPermutation::identity(q), E, E, 10);
    const Rational mu(3, 8);
    for (auto& a : d.signed_gap_average) EXPECT_EQ(a, mu - mu * mu);
}

TEST(Cesaro, SingleCellOnCycle) {
    std::mt19937_64 rng(62);
    for (std::size_t q : {1u, 3u, 7u, 16u}) {
        auto s = oracle::random_cycle(q, rng);
        std::vector<CellIndex> E{0};
        auto d = cesaro_mixing_diagnostic(s, E, E, q);
        const auto Q = static_cast<std::int64_t>(q);
        std::int64_t gap = 0;
        for (std::size_t i = 0; i < q; ++i) {
            auto k = oracle::orbit_overlap(s, E, E, i);
            EXPECT_EQ(d.overlap_counts[i], k);
            gap += std::llabs(Q * k - 1);
        }
        EXPECT_EQ(d.signed_gap_average.back(), Rational(gap, Q * Q * Q));
        EXPECT_EQ(d.unsigned_average.back(), Rational(1, Q * Q));
    }
}

TEST(Cesaro, CyclicAverageIsProduct) {
    std::mt19937_64 rng(63);
    std::bernoulli_distribution coin(0.4);
    for (int k = 0; k < 50; ++k) {
        const std::size_t q = 12;
        auto s = oracle::random_cycle(q, rng);
        std::vector<CellIndex> E1, E2;
        for (CellIndex c = 0; c < q; ++c) {
            if (coin(rng)) E1.push_back(c);
            if (coin(rng)) E2.push_back(c);
        }
        auto d = cesaro_mixing_diagnostic(s, E1, E2, q);
        EXPECT_EQ(d.unsigned_average.back(), Rational(static_cast<std::int64_t>(E1.size() * E2.size()), 144));
    }
}

TEST(Cesaro, RejectsBadInput) {
    EXPECT_THROW(cesaro_mixing_diagnostic(CellPermutation::identity(3), {0}, {0}, 0), Error);
    EXPECT_THROW(cesaro_mixing_diagnostic(CellPermutation::identity(3), {3}, {0}, 2), Error);
}

TEST(Rigidity, Periods) {
    auto g = build_grid(1, 4, Topology::torus);
    auto r = rigidity_detector(with_cycles({16}), g);
    EXPECT_EQ(r.period, 16u);
    EXPECT_EQ(r.d_weak, 0.0);
    r = rigidity_detector(with_cycles({3, 5}));
    EXPECT_EQ(r.period, 15u);
    EXPECT_EQ(r.d_weak, 0.0);
    r = rigidity_detector(CellPermutation::identity(4));
    EXPECT_EQ(r.period, 1u);
    EXPECT_EQ(r.d_weak, 0.0);
}

TEST(MutualSingularity, Examples) {
    auto thirds = roots({{0, 1}, {1, 3}, {2, 3}});
    auto quarters = roots({{0, 1}, {1, 4}, {1, 2}, {3, 4}});
    EXPECT_FALSE(mutual_singularity(thirds, quarters, 1e-9));
    EXPECT_TRUE(mutual_singularity(roots({{1, 3}, {2, 3}}), roots({{1, 4}, {3, 4}}), 1e-9));
    EXPECT_FALSE(mutual_singularity(thirds, thirds, 1e-9));
    EXPECT_TRUE(mutual_singularity(SpectralMeasure{}, SpectralMeasure{}, 1e-9));
    // 0 and just below 2*pi are close on the circle
    EXPECT_FALSE(mutual_singularity(roots({{0, 1}}), roots({{999, 1000}}), 0.01));
}

TEST(Koopman, ComposesWithPermutation) {
    auto s = CellPermutation({2, 0, 1});
    auto u = koopman_apply(s, std::vector<double>{10, 20, 30});
    EXPECT_EQ(u, (std::vector<double>{30, 10, 20}));
    EXPECT_EQ(koopman_apply(s, koopman_apply(s, koopman_apply(s, u))), u);
}
