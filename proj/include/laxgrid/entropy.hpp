#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/lax.hpp"
#include "laxgrid/maps.hpp"
#include "laxgrid/permutation.hpp"
#include "laxgrid/rational.hpp"
#include "laxgrid/refined_set.hpp"

namespace laxgrid {

using Partition = std::vector<RefinedSet>;

// Throws NotAPartition unless the parts share a resolution, are pairwise
// disjoint and cover everything.
inline void check_partition(const Partition& P) {
    require(!P.empty(), ErrorKind::NotAPartition, "partition has no parts");
    std::uint64_t total = 0;
    RefinedSet acc = RefinedSet::empty(P[0].dim(), P[0].base_order(), P[0].refine());
    for (auto& part : P) {
        require(part.same_resolution(P[0]), ErrorKind::NotAPartition, "parts live on different refined grids");
        require(acc.intersection_count(part) == 0, ErrorKind::NotAPartition, "parts overlap");
        acc |= part;
        total += part.count();
    }
    require(total == acc.size(), ErrorKind::NotAPartition, "parts do not cover the space");
}

// Natural-log entropy of a histogram of counts summing to N:
// H = log N - sum (c/N) log c, which is exact for equal counts.
inline double entropy_of_counts(const std::vector<std::uint64_t>& counts) {
    long double N = 0.0L;
    for (auto c : counts) N += static_cast<long double>(c);
    if (N == 0.0L) return 0.0;
    long double s = 0.0L;
    for (auto c : counts)
        if (c > 1) s += static_cast<long double>(c) * std::log(static_cast<long double>(c));
    long double h = std::log(N) - s / N;
    return h < 0.0L ? 0.0 : static_cast<double>(h);
}

inline double partition_entropy(const Partition& P) {
    check_partition(P);
    std::vector<std::uint64_t> counts;
    for (auto& part : P) counts.push_back(part.count());
    return entropy_of_counts(counts);
}

inline Partition join(const Partition& P, const Partition& Q) {
    require(!P.empty() && !Q.empty(), ErrorKind::NotAPartition, "empty partition");
    require(P[0].same_resolution(Q[0]), ErrorKind::GridMismatch, "partitions live on different refined grids");
    Partition out;
    for (auto& a : P)
        for (auto& b : Q) {
            auto c = a & b;
            if (!c.none()) out.push_back(std::move(c));
        }
    return out;
}

inline Partition cell_partition(const DyadicGrid& grid, int refine) {
    Partition P;
    for (CellIndex i = 0; i < grid.cell_count(); ++i) P.push_back(RefinedSet::of_cell(grid, i, refine));
    return P;
}

// H(P v f^-1 P v ... v f^-(terms-1) P): each fine cell is labelled by the
// parts visited by its midpoint orbit.
inline double join_entropy(const MeasureMap& f, const Partition& P, int terms) {
    require(terms >= 1, ErrorKind::DomainError, "need at least one term");
    check_partition(P);
    require(f.dim() == P[0].dim(), ErrorKind::GridMismatch, "map and partition dimensions differ");
    const RefinedSet& ref = P[0];
    const std::uint64_t N = ref.size();
    std::vector<std::uint32_t> label(N);
    for (std::uint32_t k = 0; k < P.size(); ++k) P[k].for_each_set([&](std::uint64_t x) { label[x] = k; });
    std::vector<std::vector<std::uint32_t>> words(N, std::vector<std::uint32_t>(static_cast<std::size_t>(terms)));
    for (std::uint64_t x = 0; x < N; ++x) {
        Point p = ref.midpoint(x);
        for (int t = 0; t < terms; ++t) {
            words[x][t] = label[ref.fine_cell_of(p)];
            if (t + 1 < terms) p = f.apply(p);
        }
    }
    std::sort(words.begin(), words.end());
    std::vector<std::uint64_t> counts;
    for (std::size_t a = 0; a < words.size();) {
        std::size_t b = a;
        while (b < words.size() && words[b] == words[a]) ++b;
        counts.push_back(b - a);
        a = b;
    }
    return entropy_of_counts(counts);
}

inline double entropy_rate_estimate(const MeasureMap& f, const Partition& P, int l) {
    require(l >= 1, ErrorKind::DomainError, "l must be >= 1");
    return join_entropy(f, P, l) / l;
}

// The permutation acts through its cell translation.
inline double entropy_rate_estimate(const CellPermutation& sigma, const DyadicGrid& grid, const Partition& P, int l) {
    return entropy_rate_estimate(MeasureMap::cell_translation(grid, sigma), P, l);
}

// -l*mu*log(l*mu / q^l): the most entropy that mass l*mu spread over at
// most q^l sets can carry. Zero when mu = 0.
inline double katok_stepin_gap_bound(int l, double mu, std::uint64_t q) {
    if (mu <= 0.0) return 0.0;
    double lm = l * mu;
    return -lm * (std::log(lm) - l * std::log(static_cast<double>(q)));
}

// ---------------------------------------------------------------------------
// Piecewise-affine rectangle models.

struct Rect {
    Rational x0, x1, y0, y1;

    bool empty() const { return !(x0 <= x1 && y0 <= y1); }
    bool has_area() const { return x0 < x1 && y0 < y1; }
    friend bool operator==(const Rect&, const Rect&) = default;

    friend Rect intersect(const Rect& a, const Rect& b) {
        return {std::max(a.x0, b.x0), std::min(a.x1, b.x1), std::max(a.y0, b.y0), std::min(a.y1, b.y1)};
    }
    // Closed rectangles meet (possibly along an edge or corner).
    friend bool touches(const Rect& a, const Rect& b) { return !intersect(a, b).empty(); }

    // Euclidean gap between closed rectangles.
    friend double gap(const Rect& a, const Rect& b) {
        auto axis = [](const Rational& a0, const Rational& a1, const Rational& b0, const Rational& b1) {
            if (a1 < b0) return (b0 - a1).to_double();
            if (b1 < a0) return (a0 - b1).to_double();
            return 0.0;
        };
        return std::hypot(axis(a.x0, a.x1, b.x0, b.x1), axis(a.y0, a.y1, b.y0, b.y1));
    }
};

// Affine branch (x, y) -> (a11 x + a12 y + b1, a21 x + a22 y + b2) on a
// closed rectangular domain. Only diagonal branches can be analysed.
struct Branch {
    Rect domain;
    Rational a11{1}, a12{0}, a21{0}, a22{1}, b1{0}, b2{0};

    bool diagonal() const { return a12 == Rational(0) && a21 == Rational(0); }

    void require_diagonal() const {
        require(diagonal(), ErrorKind::UnsupportedGeometry, "branch is not axis-aligned (off-diagonal linear part)");
    }

    Rect image(const Rect& r) const {
        require_diagonal();
        Rational xa = a11 * r.x0 + b1, xb = a11 * r.x1 + b1;
        Rational ya = a22 * r.y0 + b2, yb = a22 * r.y1 + b2;
        return {std::min(xa, xb), std::max(xa, xb), std::min(ya, yb), std::max(ya, yb)};
    }
    Rect preimage(const Rect& r) const {
        require_diagonal();
        Rational xa = (r.x0 - b1) / a11, xb = (r.x1 - b1) / a11;
        Rational ya = (r.y0 - b2) / a22, yb = (r.y1 - b2) / a22;
        return {std::min(xa, xb), std::max(xa, xb), std::min(ya, yb), std::max(ya, yb)};
    }
    // (g after this)
    Branch then(const Branch& g) const {
        require_diagonal();
        g.require_diagonal();
        Branch out;
        out.domain = intersect(domain, preimage(g.domain));
        out.a11 = g.a11 * a11;
        out.a22 = g.a22 * a22;
        out.b1 = g.a11 * b1 + g.b1;
        out.b2 = g.a22 * b2 + g.b2;
        return out;
    }
};

struct RectModel {
    std::vector<Branch> branches;
    Rect core{Rational(0), Rational(1), Rational(0), Rational(1)};

    void validate() const {
        for (auto& b : branches) {
            Rational det = b.a11 * b.a22 - b.a12 * b.a21;
            require(abs(det) == Rational(1), ErrorKind::DomainError, "branch is not area-preserving");
        }
    }

    static RectModel identity() {
        RectModel m;
        m.branches.push_back(Branch{m.core});
        return m;
    }

    // Linear horseshoe with k branches: with K = 2k+1 the horizontal strip
    // [0,1] x [(2j+1)/K, (2j+2)/K] is squeezed by 1/K in x, stretched by K in
    // y and placed as the vertical strip [(2j+1)/K, (2j+2)/K] x [0,1].
    static RectModel baker(int k) {
        require(k >= 1, ErrorKind::DomainError, "horseshoe needs k >= 1");
        RectModel m;
        const std::int64_t K = 2 * k + 1;
        for (std::int64_t j = 0; j < k; ++j) {
            Branch b;
            Rational lo(2 * j + 1, K), hi(2 * j + 2, K);
            b.domain = {Rational(0), Rational(1), lo, hi};
            b.a11 = Rational(1, K);
            b.b1 = lo;
            b.a22 = Rational(K);
            b.b2 = -Rational(K) * lo;
            m.branches.push_back(b);
        }
        m.validate();
        return m;
    }

    // Apply this model, then g.
    RectModel then(const RectModel& g) const {
        RectModel out;
        out.core = core;
        for (auto& bf : branches)
            for (auto& bg : g.branches) {
                Branch c = bf.then(bg);
                if (c.domain.has_area()) out.branches.push_back(c);
            }
        return out;
    }

    RectModel power(int l) const {
        require(l >= 1, ErrorKind::DomainError, "power needs l >= 1");
        RectModel out = *this;
        for (int i = 1; i < l; ++i) out = out.then(*this);
        return out;
    }
};

struct MarkovComponent {
    Rect horizontal;  // in R1, full width
    Rect vertical;    // in R2, full height
};

// Connected pieces of f(R1) & R2 that are full-height vertical strict
// sub-rectangles of R2 and images of full-width horizontal strict
// sub-rectangles of R1.
inline std::vector<MarkovComponent> markov_component_list(const RectModel& model, const Rect& R1, const Rect& R2) {
    struct Piece {
        Rect img, pre;
    };
    std::vector<Piece> pieces;
    for (auto& b : model.branches) {
        b.require_diagonal();
        Rect dom = intersect(b.domain, R1);
        if (dom.empty()) continue;
        Rect img = intersect(b.image(dom), R2);
        if (img.empty()) continue;
        pieces.push_back({img, b.preimage(img)});
    }
    detail::UnionFind uf(pieces.size());
    for (std::size_t a = 0; a < pieces.size(); ++a)
        for (std::size_t c = a + 1; c < pieces.size(); ++c)
            if (touches(pieces[a].img, pieces[c].img)) uf.unite(a, c);
    std::vector<std::size_t> group_size(pieces.size(), 0);
    for (std::size_t a = 0; a < pieces.size(); ++a) ++group_size[uf.find(a)];
    std::vector<MarkovComponent> out;
    for (std::size_t a = 0; a < pieces.size(); ++a) {
        if (group_size[uf.find(a)] != 1) continue;
        const Rect& v = pieces[a].img;
        const Rect& h = pieces[a].pre;
        bool vertical = v.has_area() && v.y0 == R2.y0 && v.y1 == R2.y1 && R2.x0 < v.x0 && v.x1 < R2.x1;
        bool horizontal = h.has_area() && h.x0 == R1.x0 && h.x1 == R1.x1 && R1.y0 < h.y0 && h.y1 < R1.y1;
        if (vertical && horizontal) out.push_back({h, v});
    }
    return out;
}

inline std::size_t markov_components(const RectModel& model, const Rect& R1, const Rect& R2) {
    return markov_component_list(model, R1, R2).size();
}

// (1/m) log(number of admissible itineraries of length m through the Markov
// components of the core). Distinct itineraries stay eps-apart provided eps
// is below the smallest gap between components.
inline double horseshoe_entropy_lower(const RectModel& model, int m, double eps) {
    require(m >= 1, ErrorKind::DomainError, "m must be >= 1");
    require(eps > 0.0, ErrorKind::DomainError, "eps must be positive");
    auto comps = markov_component_list(model, model.core, model.core);
    const std::size_t k = comps.size();
    if (k == 0) return 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            min_gap = std::min(min_gap, gap(comps[a].vertical, comps[b].vertical));
            min_gap = std::min(min_gap, gap(comps[a].horizontal, comps[b].horizontal));
        }
    require(eps < min_gap, ErrorKind::GapTooSmall,
            "eps " + detail::fmt_double(eps) + " is not below the component gap " + detail::fmt_double(min_gap));
    // T[a][b] = 1 when the vertical strip of a crosses the horizontal strip of b
    std::vector<std::vector<int>> T(k, std::vector<int>(k, 0));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) T[a][b] = intersect(comps[a].vertical, comps[b].horizontal).has_area();
    std::vector<long double> ways(k, 1.0L);
    for (int step = 1; step < m; ++step) {
        std::vector<long double> next(k, 0.0L);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                if (T[a][b]) next[b] += ways[a];
        ways = std::move(next);
    }
    long double count = std::accumulate(ways.begin(), ways.end(), 0.0L);
    if (count <= 0.0L) return 0.0;
    return static_cast<double>(std::log(count) / m);
}

} // namespace laxgrid
