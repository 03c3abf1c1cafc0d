#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "laxgrid/assignment.hpp"
#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/maps.hpp"
#include "laxgrid/overlap.hpp"
#include "laxgrid/permutation.hpp"

namespace laxgrid {

enum class LaxMode { plain, cyclic, bicyclic };

constexpr std::string_view lax_mode_name(LaxMode m) {
    switch (m) {
    case LaxMode::plain: return "plain";
    case LaxMode::cyclic: return "cyclic";
    case LaxMode::bicyclic: return "bicyclic";
    }
    return "plain";
}

inline LaxMode parse_lax_mode(std::string_view s) {
    if (s == "plain") return LaxMode::plain;
    if (s == "cyclic") return LaxMode::cyclic;
    if (s == "bicyclic") return LaxMode::bicyclic;
    fail(ErrorKind::ConfigError, "unknown mode '" + std::string(s) + "'");
}

namespace detail {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

inline void check_ordering(const std::vector<CellIndex>& order, std::size_t q) {
    require(order.size() == q, ErrorKind::DomainError, "ordering length differs from permutation size");
    std::vector<char> seen(q, 0);
    for (auto c : order) {
        require(c < q && !seen[c], ErrorKind::NotAPermutation, "ordering is not a permutation of the cells");
        seen[c] = 1;
    }
}

} // namespace detail

struct Cyclicization {
    CellPermutation tau;
    CellPermutation result;  // tau * sigma
};

// Merges the cycles of sigma into one by left-multiplying transpositions of
// neighbouring positions along `order`: first the pairs (2i, 2i+1), then
// (2i+1, 2i+2), each applied only when its two cells lie in different
// cycles of the current product. Every cell moves by at most two positions.
inline Cyclicization cyclicize(const CellPermutation& sigma, const std::vector<CellIndex>& order) {
    const std::size_t q = sigma.size();
    detail::check_ordering(order, q);
    detail::UnionFind uf(q);
    for (auto& cyc : sigma.cycles())
        for (std::size_t k = 1; k < cyc.size(); ++k) uf.unite(cyc[0], cyc[k]);
    auto tau = CellPermutation::identity(q).image();
    auto tau_inv = tau;
    auto apply_pair = [&](std::size_t a, std::size_t b) {
        CellIndex x = order[a], y = order[b];
        if (!uf.unite(x, y)) return;
        // tau <- (x y) * tau
        CellIndex kx = tau_inv[x], ky = tau_inv[y];
        tau[kx] = y;
        tau[ky] = x;
        std::swap(tau_inv[x], tau_inv[y]);
    };
    for (std::size_t a = 0; a + 1 < q; a += 2) apply_pair(a, a + 1);
    for (std::size_t a = 1; a + 1 < q; a += 2) apply_pair(a, a + 1);
    CellPermutation t(std::move(tau));
    return {t, t * sigma};
}

inline Cyclicization cyclicize(const CellPermutation& sigma) {
    std::vector<CellIndex> order(sigma.size());
    std::iota(order.begin(), order.end(), CellIndex{0});
    return cyclicize(sigma, order);
}

// Largest |position(tau(k)) - position(k)| along `order`, in the cyclic
// metric of Z/q.
inline std::size_t cyclic_displacement(const CellPermutation& tau, const std::vector<CellIndex>& order) {
    const std::size_t q = tau.size();
    std::vector<std::size_t> pos(q);
    for (std::size_t k = 0; k < q; ++k) pos[order[k]] = k;
    std::size_t worst = 0;
    for (std::size_t k = 0; k < q; ++k) {
        std::size_t a = pos[order[k]], b = pos[tau[order[k]]];
        std::size_t d = a > b ? a - b : b - a;
        worst = std::max(worst, std::min(d, q - d));
    }
    return worst;
}

struct Bicyclization {
    CellPermutation result;
    CellIndex a = 0, b = 0;  // the swapped pair
    std::size_t transition = 0;
};

// Splits a single cycle into two cycles of odd length by composing with the
// transposition of the first consecutive pair (order[p], order[p+1]) whose
// transition time along sigma is odd.
inline Bicyclization bicyclize(const CellPermutation& sigma, const std::vector<CellIndex>& order) {
    const std::size_t q = sigma.size();
    detail::check_ordering(order, q);
    require(sigma.is_cyclic(), ErrorKind::NotCyclic,
            "bicyclize needs a single cycle, got " + std::to_string(sigma.cycle_count()));
    require(q % 2 == 0, ErrorKind::OddOrder, "bicyclize needs an even number of cells, got " + std::to_string(q));
    std::vector<std::size_t> time(q);  // position of each cell along the cycle
    CellIndex c = 0;
    for (std::size_t t = 0; t < q; ++t, c = sigma[c]) time[c] = t;
    for (std::size_t p = 0; p < q; ++p) {
        CellIndex x = order[p], y = order[(p + 1) % q];
        std::size_t dt = (time[y] + q - time[x]) % q;
        if (dt % 2 == 1) {
            auto t = CellPermutation::transposition(q, x, y);
            return {t * sigma, x, y, dt};
        }
    }
    // Unreachable: cycle positions of consecutive cells cannot all share a parity.
    fail(ErrorKind::NotCyclic, "no consecutive pair with odd transition time");
}

struct LaxCertificate {
    LaxMode mode = LaxMode::plain;
    std::vector<bool> matched_overlap_ok;  // w(i, sigma(i)) > 0 for the matching
    std::vector<bool> final_overlap_ok;    // w(i, f_m(i)) > 0 for the returned permutation
    std::vector<double> cell_bound;        // per-cell strong-distance bound
    std::vector<double> image_diameter;    // sampled diam f(C_i)
    double cell_diameter = 0.0;
    double max_image_diameter = 0.0;
    double strong_bound = 0.0;

    bool all_matched_ok() const {
        return std::all_of(matched_overlap_ok.begin(), matched_overlap_ok.end(), [](bool b) { return b; });
    }
    double final_ok_fraction() const {
        if (final_overlap_ok.empty()) return 1.0;
        auto n = std::count(final_overlap_ok.begin(), final_overlap_ok.end(), true);
        return static_cast<double>(n) / static_cast<double>(final_overlap_ok.size());
    }
};

struct LaxResult {
    CellPermutation matching;  // the max-weight matching sigma
    CellPermutation perm;      // output f_m
    LaxCertificate certificate;
};

// overlap -> matching -> (cyclicize along the snake) -> (bicyclize).
// Cell bound: diam(C) + sampled diam f(C_i) + |center(sigma(i)) - center(f_m(i))|.
inline LaxResult lax_approximate(const MeasureMap& f, const DyadicGrid& grid, int sampling, LaxMode mode,
                                 OverlapMode overlap_mode = OverlapMode::sampled) {
    auto w = overlap_matrix(f, grid, sampling, overlap_mode);
    auto sigma = hall_matching(w);
    const std::size_t q = grid.cell_count();
    CellPermutation out = sigma;
    if (mode != LaxMode::plain) {
        auto order = snake_order(grid);
        out = cyclicize(sigma, order).result;
        if (mode == LaxMode::bicyclic) out = bicyclize(out, order).result;
    }
    LaxCertificate cert;
    cert.mode = mode;
    cert.cell_diameter = grid.cell_diameter();
    cert.matched_overlap_ok.resize(q);
    cert.final_overlap_ok.resize(q);
    cert.cell_bound.resize(q);
    cert.image_diameter.resize(q);
    const int diam_sampling = overlap_mode == OverlapMode::exact ? 16 : sampling;
    for (CellIndex i = 0; i < q; ++i) {
        cert.matched_overlap_ok[i] = w.units(i, sigma[i]) > 0;
        cert.final_overlap_ok[i] = w.units(i, out[i]) > 0;
        double di = sampled_image_diameter(f, grid, i, diam_sampling);
        cert.image_diameter[i] = di;
        cert.max_image_diameter = std::max(cert.max_image_diameter, di);
        double shift = grid.distance(grid.center(sigma[i]), grid.center(out[i]));
        cert.cell_bound[i] = cert.cell_diameter + di + shift;
        cert.strong_bound = std::max(cert.strong_bound, cert.cell_bound[i]);
    }
    return {sigma, out, std::move(cert)};
}

} // namespace laxgrid
