#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/maps.hpp"
#include "laxgrid/rational.hpp"

namespace laxgrid {

enum class OverlapMode { sampled, exact };

inline OverlapMode parse_overlap_mode(std::string_view s) {
    if (s == "sampled") return OverlapMode::sampled;
    if (s == "exact") return OverlapMode::exact;
    fail(ErrorKind::ConfigError, "unknown sampling mode '" + std::string(s) + "'");
}

// Sparse q x q matrix of w_ij ~ mu(f(C_i) & C_j). Entries are integer units;
// each row carries exactly unit_den units, so w_ij = units / (unit_den * q)
// and every row sums to 1/q with no rounding.
struct OverlapMatrix {
    struct Entry {
        CellIndex col;
        std::int64_t units;
    };

    std::size_t q = 0;
    std::int64_t unit_den = 1;
    int sampling = 1;
    bool exact = false;
    std::vector<std::vector<Entry>> rows;

    double weight(CellIndex i, CellIndex j) const {
        return static_cast<double>(units(i, j)) / (static_cast<double>(unit_den) * static_cast<double>(q));
    }

    std::int64_t units(CellIndex i, CellIndex j) const {
        const auto& r = rows[i];
        auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, CellIndex c) { return e.col < c; });
        return it != r.end() && it->col == j ? it->units : 0;
    }

    Rational weight_exact(CellIndex i, CellIndex j) const {
        return Rational(units(i, j), unit_den) / Rational(static_cast<std::int64_t>(q));
    }

    std::int64_t row_units(CellIndex i) const {
        std::int64_t s = 0;
        for (auto& e : rows[i]) s += e.units;
        return s;
    }

    std::vector<double> column_sums() const {
        std::vector<long double> acc(q, 0.0L);
        for (auto& r : rows)
            for (auto& e : r) acc[e.col] += static_cast<long double>(e.units);
        std::vector<double> out(q);
        for (std::size_t j = 0; j < q; ++j)
            out[j] = static_cast<double>(acc[j] / (static_cast<long double>(unit_den) * static_cast<long double>(q)));
        return out;
    }

    // Dense weights, for tests and oracles on small grids.
    std::vector<std::vector<double>> dense() const {
        std::vector<std::vector<double>> d(q, std::vector<double>(q, 0.0));
        for (std::size_t i = 0; i < q; ++i)
            for (auto& e : rows[i]) d[i][e.col] = weight(static_cast<CellIndex>(i), e.col);
        return d;
    }

    static OverlapMatrix from_dense_units(const std::vector<std::vector<std::int64_t>>& u, std::int64_t den) {
        OverlapMatrix m;
        m.q = u.size();
        m.unit_den = den;
        m.rows.resize(m.q);
        for (std::size_t i = 0; i < m.q; ++i) {
            require(u[i].size() == m.q, ErrorKind::DomainError, "overlap matrix must be square");
            for (std::size_t j = 0; j < m.q; ++j) {
                require(u[i][j] >= 0, ErrorKind::DomainError, "overlap weights must be nonnegative");
                if (u[i][j] > 0) m.rows[i].push_back({static_cast<CellIndex>(j), u[i][j]});
            }
        }
        return m;
    }
};

namespace detail {

// Midpoints of the s^n sub-grid of `cell`, axis 0 fastest.
template <class F>
void for_each_cell_sample(const DyadicGrid& grid, CellIndex cell, int s, F&& fn) {
    const int n = grid.dim();
    auto k = grid.multi_index(cell);
    const double w = grid.cell_width();
    std::array<int, kMaxDim> off{};
    Point p(n);
    while (true) {
        for (int a = 0; a < n; ++a) p[a] = (k[a] + (off[a] + 0.5) / s) * w;
        fn(p);
        int a = 0;
        while (a < n && ++off[a] == s) off[a++] = 0;
        if (a == n) return;
    }
}

inline OverlapMatrix exact_translation_overlap(const DyadicGrid& grid, const Point& v) {
    const int n = grid.dim();
    const std::uint32_t side = grid.side();
    // Per-axis overlap fractions are quantized to 2^-bits so the row total
    // 2^{n*bits} stays within 40 bits.
    const int bits = 40 / n;
    const std::int64_t axis_den = std::int64_t{1} << bits;
    std::array<std::uint32_t, kMaxDim> shift{};
    std::array<std::int64_t, kMaxDim> hi{};
    for (int a = 0; a < n; ++a) {
        double t = v[a] * side;
        double fl = std::floor(t);
        auto units = static_cast<std::int64_t>(std::llround((t - fl) * static_cast<double>(axis_den)));
        auto sh = static_cast<std::uint64_t>(fl);
        if (units == axis_den) {
            units = 0;
            ++sh;
        }
        shift[a] = static_cast<std::uint32_t>(sh % side);
        hi[a] = units;  // share landing one cell further along the axis
    }
    OverlapMatrix m;
    m.q = grid.cell_count();
    m.unit_den = std::int64_t{1} << (bits * n);
    m.exact = true;
    m.sampling = 0;
    m.rows.resize(m.q);
    for (CellIndex i = 0; i < m.q; ++i) {
        auto k = grid.multi_index(i);
        std::vector<OverlapMatrix::Entry> row;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::int64_t units = 1;
            std::array<std::uint32_t, kMaxDim> t{};
            for (int a = 0; a < n; ++a) {
                bool up = (mask >> a) & 1u;
                units *= up ? hi[a] : axis_den - hi[a];
                t[a] = (k[a] + shift[a] + (up ? 1u : 0u)) % side;
            }
            if (units == 0) continue;
            CellIndex j = grid.index_of(std::span<const std::uint32_t>(t.data(), n));
            row.push_back({j, units});
        }
        std::sort(row.begin(), row.end(), [](auto& x, auto& y) { return x.col < y.col; });
        std::vector<OverlapMatrix::Entry> merged;
        for (auto& e : row) {
            if (!merged.empty() && merged.back().col == e.col)
                merged.back().units += e.units;
            else
                merged.push_back(e);
        }
        m.rows[i] = std::move(merged);
    }
    return m;
}

} // namespace detail

// Exact mode needs a map with closed-form overlaps (identity, translation,
// cell translation); sampled mode pushes s^n stratified midpoints per cell.
inline OverlapMatrix overlap_matrix(const MeasureMap& f, const DyadicGrid& grid, int sampling,
                                    OverlapMode mode = OverlapMode::sampled) {
    require(f.dim() == grid.dim(), ErrorKind::GridMismatch, "map and grid dimensions differ");
    require(sampling >= 1, ErrorKind::DomainError, "sampling density must be >= 1");
    const std::size_t q = grid.cell_count();
    if (mode == OverlapMode::exact) {
        require(f.exact(), ErrorKind::NotExact, "map '" + f.describe() + "' has no closed-form overlaps");
        if (f.kind() == MapKind::translation) return detail::exact_translation_overlap(grid, f.translation_vector());
        OverlapMatrix m;
        m.q = q;
        m.unit_den = 1;
        m.exact = true;
        m.sampling = 0;
        m.rows.resize(q);
        if (f.kind() == MapKind::identity) {
            for (CellIndex i = 0; i < q; ++i) m.rows[i].push_back({i, 1});
        } else {
            require(f.cell_order() == grid.order(), ErrorKind::GridMismatch, "cell translation built on another grid");
            for (CellIndex i = 0; i < q; ++i) m.rows[i].push_back({f.cell_permutation()[i], 1});
        }
        return m;
    }
    const int n = grid.dim();
    double per = std::pow(static_cast<double>(sampling), n);
    require(per * static_cast<double>(q) <= 1e9, ErrorKind::CapacityExceeded, "too many overlap samples");
    OverlapMatrix m;
    m.q = q;
    m.unit_den = static_cast<std::int64_t>(per);
    m.sampling = sampling;
    m.exact = false;
    m.rows.resize(q);
    std::vector<CellIndex> hits;
    hits.reserve(static_cast<std::size_t>(per));
    for (CellIndex i = 0; i < q; ++i) {
        hits.clear();
        detail::for_each_cell_sample(grid, i, sampling, [&](const Point& p) { hits.push_back(grid.cell_of(f.apply(p))); });
        std::sort(hits.begin(), hits.end());
        auto& row = m.rows[i];
        for (std::size_t a = 0; a < hits.size();) {
            std::size_t b = a;
            while (b < hits.size() && hits[b] == hits[a]) ++b;
            row.push_back({hits[a], static_cast<std::int64_t>(b - a)});
            a = b;
        }
    }
    return m;
}

// Sampled diameter of f(C): largest pairwise distance among images of the
// min(s,16)^n sub-cell midpoints, padded by diam(C)/s_eff to account for
// the spacing of the samples and capped by the diameter of the space. The
// identity map gives diam(C) exactly.
inline double sampled_image_diameter(const MeasureMap& f, const DyadicGrid& grid, CellIndex cell, int sampling) {
    const int s = std::min(sampling, 16);
    std::vector<Point> img;
    detail::for_each_cell_sample(grid, cell, s, [&](const Point& p) { img.push_back(f.apply(p)); });
    double best = 0.0;
    for (std::size_t a = 0; a < img.size(); ++a)
        for (std::size_t b = a + 1; b < img.size(); ++b) best = std::max(best, grid.distance(img[a], img[b]));
    // no set is wider than the space itself
    const double space = std::sqrt(static_cast<double>(grid.dim())) * (grid.topology() == Topology::torus ? 0.5 : 1.0);
    return std::min(best + grid.cell_diameter() / s, space);
}

} // namespace laxgrid
