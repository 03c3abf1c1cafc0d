#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/lax.hpp"
#include "laxgrid/maps.hpp"
#include "laxgrid/permutation.hpp"
#include "laxgrid/refined_set.hpp"

namespace laxgrid {

enum class Padding { none, diameter };

namespace detail {

inline void check_same_grid(const CellPermutation& a, const CellPermutation& b, const DyadicGrid& grid) {
    require(a.size() == grid.cell_count() && b.size() == grid.cell_count(), ErrorKind::GridMismatch,
            "permutations do not live on this grid");
}

} // namespace detail

// Per-cell bound on |a(x) - b(x)| for x in cell i, for the two cell
// translations: distance of the image centres, optionally padded by diam.
inline std::vector<double> cell_distance_bounds(const CellPermutation& a, const CellPermutation& b,
                                                const DyadicGrid& grid, Padding pad) {
    detail::check_same_grid(a, b, grid);
    const double extra = pad == Padding::diameter ? grid.cell_diameter() : 0.0;
    std::vector<double> out(grid.cell_count());
    for (CellIndex i = 0; i < out.size(); ++i) out[i] = grid.distance(grid.center(a[i]), grid.center(b[i])) + extra;
    return out;
}

inline double d_strong_bound(const CellPermutation& a, const CellPermutation& b, const DyadicGrid& grid,
                             Padding pad = Padding::diameter) {
    auto d = cell_distance_bounds(a, b, grid, pad);
    return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

// inf{alpha : mass{d > alpha} < alpha} for values carrying the given masses.
// Sorted descending, the answer is min_k max(d_{k+1}, mass of the top k),
// with d_{q+1} = 0.
inline double weak_distance(std::vector<std::pair<double, double>> value_mass) {
    std::sort(value_mass.begin(), value_mass.end(), [](auto& x, auto& y) { return x.first > y.first; });
    double best = value_mass.empty() ? 0.0 : value_mass.front().first;
    long double top = 0.0L;
    for (std::size_t k = 0; k < value_mass.size(); ++k) {
        top += value_mass[k].second;
        double next = k + 1 < value_mass.size() ? value_mass[k + 1].first : 0.0;
        best = std::min(best, std::max(next, static_cast<double>(top)));
    }
    return std::max(best, 0.0);
}

inline double weak_distance_uniform(const std::vector<double>& values) {
    std::vector<std::pair<double, double>> vm;
    vm.reserve(values.size());
    const double w = values.empty() ? 0.0 : 1.0 / static_cast<double>(values.size());
    for (double v : values) vm.push_back({v, w});
    // Uniform masses: use k/q exactly instead of a running float sum.
    std::sort(vm.begin(), vm.end(), [](auto& x, auto& y) { return x.first > y.first; });
    const std::size_t q = vm.size();
    double best = q ? vm.front().first : 0.0;
    for (std::size_t k = 1; k <= q; ++k) {
        double next = k < q ? vm[k].first : 0.0;
        best = std::min(best, std::max(next, static_cast<double>(k) / static_cast<double>(q)));
    }
    return best;
}

inline double d_weak(const CellPermutation& a, const CellPermutation& b, const DyadicGrid& grid,
                     Padding pad = Padding::none) {
    return weak_distance_uniform(cell_distance_bounds(a, b, grid, pad));
}

// Weak distance between a map and the cell translation of a permutation,
// estimated on the midpoints of the refined grid of order m + refine.
inline double d_weak_map(const MeasureMap& f, const CellPermutation& perm, const DyadicGrid& grid, int refine) {
    require(perm.size() == grid.cell_count(), ErrorKind::GridMismatch, "permutation does not live on this grid");
    require(f.dim() == grid.dim(), ErrorKind::GridMismatch, "map and grid dimensions differ");
    RefinedSet probe(grid.dim(), grid.order(), refine);
    auto g = MeasureMap::cell_translation(grid, perm);
    std::vector<double> d(probe.size());
    for (std::uint64_t x = 0; x < probe.size(); ++x) {
        Point p = probe.midpoint(x);
        d[x] = grid.distance(f.apply(p), g.apply(p));
    }
    return weak_distance_uniform(d);
}

// Declared tolerance of the refined estimators: q * n * 2^-r.
inline double refinement_tolerance(const DyadicGrid& grid, int refine) {
    return static_cast<double>(grid.cell_count()) * grid.dim() * std::ldexp(1.0, -refine);
}

// sum_i mu(f^p(C_i) delta f_k^p(C_i)). f^p(C_i) has measure 1/q, as does
// C_{sigma^p(i)}, so each term is 2 * (1/q) * (share of f^p(C_i) outside
// C_{sigma^p(i)}); the share is measured on the sub-cell midpoints of C_i.
inline double delta_sum_iterate(const MeasureMap& f, const CellPermutation& fk, int p, const DyadicGrid& grid,
                                int refine) {
    require(p >= 1, ErrorKind::DomainError, "iterate count must be >= 1");
    require(refine >= 1, ErrorKind::DomainError, "refinement must be >= 1");
    require(fk.size() == grid.cell_count(), ErrorKind::GridMismatch, "permutation does not live on this grid");
    require(f.dim() == grid.dim(), ErrorKind::GridMismatch, "map and grid dimensions differ");
    RefinedSet probe(grid.dim(), grid.order(), refine);  // capacity check
    const std::size_t q = grid.cell_count();
    auto fkp = fk.power(static_cast<std::uint64_t>(p));
    const std::uint64_t per = probe.size() / q;
    long double total = 0.0L;
    for (CellIndex i = 0; i < q; ++i) {
        std::uint64_t outside = 0;
        const CellIndex target = fkp[i];
        probe.for_each_fine_in_cell(i, [&](std::uint64_t x) {
            Point pt = probe.midpoint(x);
            for (int k = 0; k < p; ++k) pt = f.apply(pt);
            if (grid.cell_of(pt) != target) ++outside;
        });
        total += 2.0L * static_cast<long double>(outside) / (static_cast<long double>(per) * q);
    }
    return static_cast<double>(total);
}

inline double delta_sum(const MeasureMap& f, const CellPermutation& fk, const DyadicGrid& grid, int refine) {
    return delta_sum_iterate(f, fk, 1, grid, refine);
}

enum class SpeedFamily { inv_q, inv_q_log2, inv_q2, table };

// Named decreasing speed functions theta(q).
struct SpeedSpec {
    SpeedFamily family = SpeedFamily::inv_q;
    double c = 1.0;
    std::vector<std::pair<std::uint64_t, double>> table;  // step function: value at the largest key <= q

    double operator()(std::uint64_t q) const {
        const double dq = static_cast<double>(q);
        switch (family) {
        case SpeedFamily::inv_q: return c / dq;
        case SpeedFamily::inv_q_log2: {
            if (q <= 1) return std::numeric_limits<double>::infinity();
            double l = std::log(dq);
            return c / (dq * l * l);
        }
        case SpeedFamily::inv_q2: return c / (dq * dq);
        case SpeedFamily::table: {
            double v = std::numeric_limits<double>::infinity();
            for (auto& [k, t] : table)
                if (k <= q) v = t;
            return v;
        }
        }
        return 0.0;
    }

    std::string describe() const {
        switch (family) {
        case SpeedFamily::inv_q: return "inv_q:" + detail::fmt_double(c);
        case SpeedFamily::inv_q_log2: return "inv_q_log2:" + detail::fmt_double(c);
        case SpeedFamily::inv_q2: return "inv_q2:" + detail::fmt_double(c);
        case SpeedFamily::table: {
            std::string s = "table:";
            for (std::size_t i = 0; i < table.size(); ++i)
                s += (i ? "," : "") + std::to_string(table[i].first) + "=" + detail::fmt_double(table[i].second);
            return s;
        }
        }
        return "";
    }
};

// "inv_q:1.0", "inv_q_log2:2", "inv_q2", "table:4=0.5,16=0.1".
inline SpeedSpec parse_speed(std::string_view s) {
    SpeedSpec spec;
    auto colon = s.find(':');
    auto name = s.substr(0, colon);
    auto arg = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
    if (name == "table") {
        spec.family = SpeedFamily::table;
        std::size_t pos = 0;
        while (pos < arg.size()) {
            auto comma = arg.find(',', pos);
            auto item = arg.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
            auto eq = item.find('=');
            require(eq != std::string_view::npos, ErrorKind::ConfigError, "theta table entries are q=value");
            auto qv = detail::parse_ints(item.substr(0, eq), "theta table");
            auto tv = detail::parse_doubles(item.substr(eq + 1), "theta table");
            require(qv[0] >= 1 && tv[0] > 0.0, ErrorKind::ConfigError, "theta table needs q >= 1 and value > 0");
            spec.table.push_back({static_cast<std::uint64_t>(qv[0]), tv[0]});
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        require(!spec.table.empty(), ErrorKind::ConfigError, "empty theta table");
        for (std::size_t i = 1; i < spec.table.size(); ++i)
            require(spec.table[i].first > spec.table[i - 1].first && spec.table[i].second <= spec.table[i - 1].second,
                    ErrorKind::ConfigError, "theta table must have increasing q and nonincreasing values");
        return spec;
    }
    if (name == "inv_q")
        spec.family = SpeedFamily::inv_q;
    else if (name == "inv_q_log2")
        spec.family = SpeedFamily::inv_q_log2;
    else if (name == "inv_q2")
        spec.family = SpeedFamily::inv_q2;
    else
        fail(ErrorKind::ConfigError, "unknown theta family '" + std::string(name) + "'");
    if (!arg.empty()) {
        spec.c = detail::parse_doubles(arg, "theta")[0];
        require(spec.c > 0.0, ErrorKind::ConfigError, "theta constant must be positive");
    }
    return spec;
}

struct ApproxRecord {
    int order = 0;
    std::uint64_t q = 0;
    LaxMode mode = LaxMode::plain;
    double delta_sum = 0.0;
    double d_weak = 0.0;
    double d_strong_bound = 0.0;
    double theta = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SpeedOptions {
    Topology topology = Topology::torus;
    int sampling = 8;
    int refine = 3;
    OverlapMode overlap = OverlapMode::sampled;
};

inline ApproxRecord approx_record(const MeasureMap& f, const DyadicGrid& grid, const LaxResult& lax, int refine,
                                  const SpeedSpec& theta) {
    ApproxRecord r;
    r.order = grid.order();
    r.q = grid.cell_count();
    r.mode = lax.certificate.mode;
    r.delta_sum = delta_sum(f, lax.perm, grid, refine);
    r.d_weak = d_weak_map(f, lax.perm, grid, refine);
    r.d_strong_bound = lax.certificate.strong_bound;
    r.theta = theta(r.q);
    r.tolerance = refinement_tolerance(grid, refine);
    r.pass = r.delta_sum <= r.theta;
    return r;
}

inline std::vector<ApproxRecord> speed_profile(const MeasureMap& f, const std::vector<int>& orders, LaxMode mode,
                                               const SpeedSpec& theta, const SpeedOptions& opt = {}) {
    require(!orders.empty(), ErrorKind::DomainError, "no orders given");
    for (std::size_t i = 1; i < orders.size(); ++i)
        require(orders[i] > orders[i - 1], ErrorKind::DomainError, "orders must be increasing");
    std::vector<ApproxRecord> out;
    for (int m : orders) {
        DyadicGrid grid(f.dim(), m, opt.topology, opt.refine);
        auto lax = lax_approximate(f, grid, opt.sampling, mode, opt.overlap);
        out.push_back(approx_record(f, grid, lax, opt.refine, theta));
    }
    return out;
}

} // namespace laxgrid
