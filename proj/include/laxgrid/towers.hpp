#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/maps.hpp"
#include "laxgrid/permutation.hpp"
#include "laxgrid/rational.hpp"
#include "laxgrid/refined_set.hpp"

namespace laxgrid {

struct BezoutSplit {
    std::int64_t alpha = 0;
    std::int64_t beta = 0;
    friend bool operator==(const BezoutSplit&, const BezoutSplit&) = default;
};

namespace detail {

// x with a*x = 1 mod m, m >= 1, gcd(a, m) = 1.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = a % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t qt = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
    }
    std::int64_t x = old_s % m;
    return x < 0 ? x + m : x;
}

} // namespace detail

// k = alpha*p + beta*q2 with 0 <= alpha < q2 and beta >= 0.
inline BezoutSplit bezout_split(std::int64_t k, std::int64_t p, std::int64_t q2) {
    require(p >= 1 && q2 >= 1, ErrorKind::DomainError, "column heights must be >= 1");
    require(std::gcd(p, q2) == 1, ErrorKind::NotCoprime,
            "heights " + std::to_string(p) + " and " + std::to_string(q2) + " are not coprime");
    require(k >= p * q2, ErrorKind::TooSmall,
            std::to_string(k) + " is below " + std::to_string(p) + "*" + std::to_string(q2));
    std::int64_t alpha = static_cast<std::int64_t>(
        (static_cast<__int128>(k % q2) * detail::mod_inverse(p % q2, q2)) % q2);
    return {alpha, (k - alpha * p) / q2};
}

struct Tower {
    std::vector<CellIndex> base;
    std::size_t height = 0;
    std::size_t q = 0;

    // levels[l] = sigma^l(base)
    std::vector<std::vector<CellIndex>> levels(const CellPermutation& sigma) const {
        std::vector<std::vector<CellIndex>> out;
        std::vector<CellIndex> cur = base;
        for (std::size_t l = 0; l < height; ++l) {
            out.push_back(cur);
            for (auto& c : cur) c = sigma[c];
        }
        return out;
    }
    Rational coverage() const {
        return Rational(static_cast<std::int64_t>(height * base.size()), static_cast<std::int64_t>(q));
    }
};

// Bases every `height` steps along each cycle, starting at its smallest cell.
inline Tower rokhlin_tower(const CellPermutation& sigma, std::size_t height) {
    require(height >= 1, ErrorKind::DomainError, "tower height must be >= 1");
    Tower t;
    t.height = height;
    t.q = sigma.size();
    for (auto& cyc : sigma.cycles()) {
        require(cyc.size() >= height, ErrorKind::CycleTooShort,
                "cycle of length " + std::to_string(cyc.size()) + " is shorter than height " + std::to_string(height));
        for (std::size_t k = 0; k + height <= cyc.size(); k += height) t.base.push_back(cyc[k]);
    }
    std::sort(t.base.begin(), t.base.end());
    return t;
}

struct TwoColumnTower {
    std::vector<CellIndex> t1, t2;
    std::size_t p = 0, q2 = 0;
    std::size_t q = 0;

    // Every cell as (column, base index, level); used to check exact cover.
    std::vector<std::size_t> cover_counts(const CellPermutation& sigma) const {
        std::vector<std::size_t> hits(q, 0);
        auto lay = [&](const std::vector<CellIndex>& bases, std::size_t h) {
            for (CellIndex b : bases) {
                CellIndex c = b;
                for (std::size_t l = 0; l < h; ++l, c = sigma[c]) ++hits[c];
            }
        };
        lay(t1, p);
        lay(t2, q2);
        return hits;
    }
    bool exact_cover(const CellPermutation& sigma) const {
        auto h = cover_counts(sigma);
        return std::all_of(h.begin(), h.end(), [](std::size_t x) { return x == 1; });
    }
};

// Per cycle of length L = alpha*p + beta*q2: alpha blocks of height p, then
// beta blocks of height q2, laid out from the cycle's smallest cell. With
// equal_bases the per-cycle splits are shifted along (alpha + t*q2,
// beta - t*p) until |t1| = |t2|.
inline TwoColumnTower two_column_partition(const CellPermutation& sigma, std::size_t p, std::size_t q2,
                                           bool equal_bases = false) {
    const auto P = static_cast<std::int64_t>(p), Q = static_cast<std::int64_t>(q2);
    require(P >= 1 && Q >= 1, ErrorKind::DomainError, "column heights must be >= 1");
    require(std::gcd(P, Q) == 1, ErrorKind::NotCoprime,
            "heights " + std::to_string(p) + " and " + std::to_string(q2) + " are not coprime");
    auto cycles = sigma.cycles();
    std::vector<BezoutSplit> split;
    for (auto& cyc : cycles) {
        require(cyc.size() >= p * q2, ErrorKind::CycleTooShort,
                "cycle of length " + std::to_string(cyc.size()) + " is shorter than " + std::to_string(p * q2));
        split.push_back(bezout_split(static_cast<std::int64_t>(cyc.size()), P, Q));
    }
    if (equal_bases) {
        std::int64_t sa = 0, sb = 0;
        for (auto& s : split) {
            sa += s.alpha;
            sb += s.beta;
        }
        // each unit step t changes (sum a - sum b) by p + q2
        std::int64_t gap = sb - sa;
        require(gap % (P + Q) == 0, ErrorKind::EqualSizeInfeasible,
                "no integer split gives equal base sizes (q not divisible by p+q')");
        std::int64_t steps = gap / (P + Q);
        for (auto& s : split) {
            if (steps == 0) break;
            // t ranges over [-alpha/q2, beta/p]
            std::int64_t room = steps > 0 ? s.beta / P : s.alpha / Q;
            std::int64_t t = std::min(room, steps > 0 ? steps : -steps);
            if (steps < 0) t = -t;
            s.alpha += t * Q;
            s.beta -= t * P;
            steps -= t;
        }
        require(steps == 0, ErrorKind::EqualSizeInfeasible, "cycle lengths do not admit equal base sizes");
    }
    TwoColumnTower out;
    out.p = p;
    out.q2 = q2;
    out.q = sigma.size();
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        const auto& cyc = cycles[c];
        std::size_t pos = 0;
        for (std::int64_t a = 0; a < split[c].alpha; ++a, pos += p) out.t1.push_back(cyc[pos]);
        for (std::int64_t b = 0; b < split[c].beta; ++b, pos += q2) out.t2.push_back(cyc[pos]);
    }
    std::sort(out.t1.begin(), out.t1.end());
    std::sort(out.t2.begin(), out.t2.end());
    return out;
}

struct RankOneCertificate {
    RefinedSet A;
    std::size_t tau = 0;
    Rational measure_A;
    Rational measure_C;
    bool disjointness_ok = false;
    Rational return_overlap;                // tau * mu(A & f^tau A)
    std::vector<Rational> partition_error;  // mu(C_i delta f^{j_i} A), f_m^{j_i}(C) = C_i
    Rational max_partition_error;
};

// C = cell 0; A = fine cells of C whose midpoint orbit follows the cycle of
// f_m for q steps: f^i(x) in f_m^i(C) for i < q. All images are midpoint
// pushes at the refined resolution.
inline RankOneCertificate rank_one_base(const MeasureMap& f, const CellPermutation& fm, const DyadicGrid& grid,
                                        int refine) {
    require(fm.size() == grid.cell_count(), ErrorKind::GridMismatch, "permutation does not live on this grid");
    require(f.dim() == grid.dim(), ErrorKind::GridMismatch, "map and grid dimensions differ");
    require(fm.is_cyclic(), ErrorKind::NotCyclic, "rank-one base needs a cyclic permutation");
    const std::size_t q = grid.cell_count();
    RankOneCertificate cert;
    cert.tau = q;
    cert.A = RefinedSet(grid.dim(), grid.order(), refine);
    const CellIndex C = 0;
    std::vector<CellIndex> path(q);  // f_m^i(C)
    path[0] = C;
    for (std::size_t i = 1; i < q; ++i) path[i] = fm[path[i - 1]];

    std::vector<std::uint64_t> members;
    cert.A.for_each_fine_in_cell(C, [&](std::uint64_t x) {
        Point p = cert.A.midpoint(x);
        for (std::size_t i = 1; i < q; ++i) {
            p = f.apply(p);
            if (grid.cell_of(p) != path[i]) return;
        }
        cert.A.set(x);
        members.push_back(x);
    });
    cert.measure_A = cert.A.measure();
    cert.measure_C = Rational(1, static_cast<std::int64_t>(q));

    // images f^i(A), i = 0..q, as fine-cell sets
    const std::uint64_t fine = cert.A.size();
    std::vector<std::int64_t> owner(fine, -1);
    cert.disjointness_ok = true;
    std::vector<RefinedSet> images(q + 1, RefinedSet(grid.dim(), grid.order(), refine));
    std::vector<Point> pts;
    for (auto x : members) pts.push_back(cert.A.midpoint(x));
    for (std::size_t i = 0; i <= q; ++i) {
        for (auto& p : pts) {
            std::uint64_t c = cert.A.fine_cell_of(p);
            images[i].set(c);
            if (i < q) {
                if (owner[c] >= 0 && owner[c] != static_cast<std::int64_t>(i)) cert.disjointness_ok = false;
                owner[c] = static_cast<std::int64_t>(i);
            }
            p = f.apply(p);
        }
    }
    // Collisions inside one level also break disjointness of the pushes.
    for (std::size_t i = 0; i < q; ++i)
        if (images[i].count() != members.size()) cert.disjointness_ok = false;

    cert.return_overlap = Rational(static_cast<std::int64_t>(q)) *
                          Rational(static_cast<std::int64_t>(cert.A.intersection_count(images[q])),
                                   static_cast<std::int64_t>(fine));
    cert.partition_error.resize(q);
    cert.max_partition_error = Rational(0);
    for (std::size_t i = 0; i < q; ++i) {
        auto cell = RefinedSet::of_cell(grid, path[i], refine);
        Rational e(static_cast<std::int64_t>(cell.symdiff_count(images[i])), static_cast<std::int64_t>(fine));
        cert.partition_error[path[i]] = e;
        cert.max_partition_error = std::max(cert.max_partition_error, e);
    }
    return cert;
}

} // namespace laxgrid
