#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "laxgrid/maps.hpp"
#include "laxgrid/overlap.hpp"

using namespace laxgrid;

namespace {

void expect_point(const Point& a, std::initializer_list<double> b, double tol = 1e-15) {
    ASSERT_EQ(a.n, static_cast<int>(b.size()));
    int i = 0;
    for (double v : b) EXPECT_NEAR(a[i++], v, tol);
}

std::vector<MeasureMap> catalog() {
    auto g = build_grid(2, 2, Topology::torus);
    std::vector<CellIndex> img(16);
    for (CellIndex i = 0; i < 16; ++i) img[i] = (i * 5 + 3) % 16;
    return {MeasureMap::identity(2),
            MeasureMap::translation(Point{0.3, 0.71}),
            MeasureMap::cat_map(),
            MeasureMap::torus_linear(2, {1, 1, 0, 1}),
            MeasureMap::k_baker(2),
            MeasureMap::k_baker(3),
            MeasureMap::twist(TwistMap(0.5, 0.5, 0.6)),
            MeasureMap::cell_translation(g, CellPermutation(img)),
            MeasureMap::composition({MeasureMap::cat_map(), MeasureMap::translation(Point{0.25, 0.1})})};
}

} // namespace

TEST(Maps, EvalExamples) {
    expect_point(MeasureMap::identity(2)(Point{0.3, 0.7}), {0.3, 0.7});
    expect_point(MeasureMap::torus_linear(2, {2, 1, 1, 1})(Point{0.5, 0.5}), {0.5, 0.0});
    expect_point(MeasureMap::translation(Point{0.5, 0.0})(Point{0.75, 0.2}), {0.25, 0.2});
}

TEST(Maps, EvalRejectsPointsOutsideTheCube) {
    auto f = MeasureMap::identity(2);
    try {
        (void)f(Point{1.0, 0.5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DomainError);
    }
    EXPECT_THROW((void)f(Point{0.5}), Error);
}

TEST(Maps, InverseUndoesEveryKind) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (auto& f : catalog()) {
        auto g = f.inverse();
        for (int k = 0; k < 200; ++k) {
            Point p{U(rng), U(rng)};
            Point back = g.apply(f.apply(p));
            double d = distance(p, back, Topology::torus);
            EXPECT_LT(d, 1e-9) << f.describe();
        }
    }
}

TEST(Maps, SingularMatrixRejected) {
    EXPECT_THROW(MeasureMap::torus_linear(2, {2, 0, 0, 1}), Error);
    EXPECT_THROW(MeasureMap::torus_linear(2, {1, 1, 1, 1}), Error);
    EXPECT_NO_THROW(MeasureMap::torus_linear(3, {1, 1, 0, 0, 1, 1, 0, 0, 1}));
}

TEST(Maps, PreservesMeasureOnSamples) {
    // Every catalog map pushes a fine uniform sample to an (almost) uniform
    // histogram on a coarse grid.
    auto coarse = build_grid(2, 2, Topology::torus);
    for (auto& f : catalog()) {
        std::vector<int> hist(coarse.cell_count(), 0);
        const int s = 128;
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) ++hist[coarse.cell_of(f.apply(Point{(i + 0.5) / s, (j + 0.5) / s}))];
        for (int h : hist) EXPECT_NEAR(h, s * s / 16.0, 0.1 * s * s / 16.0) << f.describe();
    }
}

TEST(Maps, ParseMapCatalog) {
    EXPECT_EQ(parse_map("identity").kind(), MapKind::identity);
    EXPECT_EQ(parse_map("identity:3").dim(), 3);
    EXPECT_EQ(parse_map("cat").kind(), MapKind::torus_linear);
    EXPECT_EQ(parse_map("torus_linear:2,1,1,1").matrix(), (std::vector<std::int64_t>{2, 1, 1, 1}));
    EXPECT_EQ(parse_map("translation:0.5,0.25").translation_vector()[1], 0.25);
    EXPECT_EQ(parse_map("baker:3").baker_k(), 3);
    EXPECT_EQ(parse_map("twist:0.5,0.5,0.4").twist_map().R, 0.4);
    auto c = parse_map("cat|translation:0.5,0");
    EXPECT_EQ(c.kind(), MapKind::composition);
    EXPECT_EQ(c.parts().size(), 2u);
    expect_point(c(Point{0.25, 0.25}), {0.25, 0.5});
}

TEST(Maps, ParseErrorsAreConfigErrors) {
    for (const char* bad : {"", "bogus", "translation:", "translation:a,b", "torus_linear:1,2,3", "torus_linear:1,1,1,1",
                            "baker:0", "twist:0.5,0.5", "identity:2|identity:3"}) {
        try {
            parse_map(bad);
            ADD_FAILURE() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::ConfigError) << bad;
        }
    }
    EXPECT_THROW(parse_map("cat", 3), Error);
}

TEST(Maps, DescribeRoundTrips) {
    for (const char* s : {"translation:0.5,0.25", "torus_linear:2,1,1,1", "baker:2", "identity:2"}) {
        auto f = parse_map(s);
        EXPECT_EQ(parse_map(f.describe()).describe(), f.describe());
    }
}

TEST(Overlap, IdentityIsScaledIdentity) {
    auto g = build_grid(2, 2, Topology::torus);
    for (auto mode : {OverlapMode::sampled, OverlapMode::exact}) {
        auto w = overlap_matrix(MeasureMap::identity(2), g, 4, mode);
        for (CellIndex i = 0; i < 16; ++i)
            for (CellIndex j = 0; j < 16; ++j) EXPECT_EQ(w.weight_exact(i, j), i == j ? Rational(1, 16) : Rational(0));
    }
}

TEST(Overlap, HalfShiftIsAPermutationMatrix) {
    auto g = build_grid(2, 1, Topology::torus);
    auto f = MeasureMap::translation(Point{0.5, 0.0});
    for (auto mode : {OverlapMode::sampled, OverlapMode::exact}) {
        auto w = overlap_matrix(f, g, 8, mode);
        // cells 0 <-> 1 and 2 <-> 3 swap along axis 0
        const CellIndex target[4] = {1, 0, 3, 2};
        for (CellIndex i = 0; i < 4; ++i)
            for (CellIndex j = 0; j < 4; ++j) EXPECT_EQ(w.weight_exact(i, j), j == target[i] ? Rational(1, 4) : Rational(0));
    }
}

TEST(Overlap, ExactTranslationSplitsByArea) {
    auto g = build_grid(1, 2, Topology::torus);
    auto w = overlap_matrix(MeasureMap::translation(Point{0.125}), g, 1, OverlapMode::exact);
    EXPECT_EQ(w.weight_exact(0, 0), Rational(1, 8));
    EXPECT_EQ(w.weight_exact(0, 1), Rational(1, 8));
    EXPECT_EQ(w.weight_exact(3, 0), Rational(1, 8));
    auto g2 = build_grid(2, 1, Topology::torus);
    auto w2 = overlap_matrix(MeasureMap::translation(Point{0.25, 0.25}), g2, 1, OverlapMode::exact);
    for (CellIndex j = 0; j < 4; ++j) EXPECT_EQ(w2.weight_exact(0, j), Rational(1, 16));
}

TEST(Overlap, ExactModeNeedsClosedForm) {
    auto g = build_grid(2, 1, Topology::torus);
    try {
        overlap_matrix(MeasureMap::cat_map(), g, 4, OverlapMode::exact);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotExact);
    }
}

TEST(Overlap, RowsSumToOneCellExactly) {
    for (auto& f : catalog()) {
        auto g = build_grid(2, 2, Topology::torus);
        auto w = overlap_matrix(f, g, 8);
        for (CellIndex i = 0; i < g.cell_count(); ++i) EXPECT_EQ(w.row_units(i), w.unit_den);
    }
}

TEST(Overlap, CatColumnSumsNearQuarter) {
    auto g = build_grid(2, 1, Topology::torus);
    auto f = MeasureMap::cat_map();
    auto coarse = overlap_matrix(f, g, 16).column_sums();
    auto fine = overlap_matrix(f, g, 256).column_sums();
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_NEAR(fine[j], 0.25, 1e-12);
        EXPECT_NEAR(coarse[j], 0.25, 1.0 / (4.0 * 16 * 16));
    }
}

TEST(Overlap, SampledImageDiameterOfIdentityIsCellDiameter) {
    for (auto topo : {Topology::cube, Topology::torus}) {
        auto g = build_grid(2, 3, topo);
        EXPECT_NEAR(sampled_image_diameter(MeasureMap::identity(2), g, 5, 8), g.cell_diameter(), 1e-12);
    }
}
