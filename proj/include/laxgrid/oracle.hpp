#pragma once

// Slow reference implementations. Each one recomputes a quantity from its
// definition, sharing as little code as possible with the fast path.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "laxgrid/grid.hpp"
#include "laxgrid/permutation.hpp"

namespace laxgrid::oracle {

// Orbit-walking cycle count on a raw image vector.
inline std::size_t cycle_count(const std::vector<CellIndex>& img) {
    std::set<CellIndex> left;
    for (CellIndex i = 0; i < img.size(); ++i) left.insert(i);
    std::size_t n = 0;
    while (!left.empty()) {
        CellIndex s = *left.begin();
        ++n;
        CellIndex c = s;
        do {
            left.erase(c);
            c = img[c];
        } while (c != s);
    }
    return n;
}

inline std::vector<std::size_t> cycle_lengths(const std::vector<CellIndex>& img) {
    std::vector<char> seen(img.size(), 0);
    std::vector<std::size_t> out;
    for (CellIndex s = 0; s < img.size(); ++s) {
        if (seen[s]) continue;
        std::size_t L = 0;
        for (CellIndex c = s; !seen[c]; c = img[c]) {
            seen[c] = 1;
            ++L;
        }
        out.push_back(L);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Face adjacency from cell corners: the cells' coordinate boxes share an
// (n-1)-face. Works with real coordinates, independent of index arithmetic.
inline bool face_adjacent(const DyadicGrid& g, CellIndex a, CellIndex b) {
    const Point ca = g.center(a), cb = g.center(b);
    const double w = g.cell_width();
    int touching = 0, equal = 0;
    for (int i = 0; i < g.dim(); ++i) {
        double d = std::abs(ca[i] - cb[i]);
        if (g.topology() == Topology::torus) d = std::min(d, 1.0 - d);
        if (std::abs(d) < 1e-12)
            ++equal;
        else if (std::abs(d - w) < 1e-12)
            ++touching;
    }
    return touching == 1 && equal == g.dim() - 1;
}

// Exhaustive max-weight perfect matching over positive entries; ties go to
// the lexicographically smallest image sequence. q <= 9.
inline std::optional<std::vector<CellIndex>> best_matching(const std::vector<std::vector<std::int64_t>>& units) {
    const std::size_t q = units.size();
    std::vector<CellIndex> p(q);
    std::iota(p.begin(), p.end(), CellIndex{0});
    std::optional<std::vector<CellIndex>> best;
    std::int64_t best_w = -1;
    do {
        std::int64_t w = 0;
        bool ok = true;
        for (std::size_t i = 0; i < q && ok; ++i) {
            if (units[i][p[i]] <= 0) ok = false;
            w += units[i][p[i]];
        }
        if (ok && w > best_w) {  // strict: first (lex-smallest) optimum wins
            best_w = w;
            best = p;
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

// Smallest alpha in [0, q2) with alpha*p = k mod q2, by search.
inline std::optional<std::pair<std::int64_t, std::int64_t>> bezout_search(std::int64_t k, std::int64_t p,
                                                                          std::int64_t q2) {
    for (std::int64_t a = 0; a < q2; ++a) {
        std::int64_t rest = k - a * p;
        if (rest >= 0 && rest % q2 == 0) return std::make_pair(a, rest / q2);
    }
    return std::nullopt;
}

// Weight of the atom at z0 = e^{2 pi i num/den} from Koopman powers:
// E({z0}) = (1/d) sum_{k<d} z0^k U^k for U = integral z^-1 dE, d = order.
inline double atom_weight_from_powers(const CellPermutation& sigma, const std::vector<std::complex<double>>& v,
                                      std::int64_t num, std::int64_t den) {
    const std::uint64_t d = sigma.order();
    const std::size_t q = v.size();
    std::complex<long double> acc = 0.0L;
    std::vector<std::complex<double>> uk = v;  // U^k v
    for (std::uint64_t k = 0; k < d; ++k) {
        std::complex<long double> inner = 0.0L;
        for (std::size_t i = 0; i < q; ++i)
            inner += std::complex<long double>(uk[i].real(), uk[i].imag()) *
                     std::conj(std::complex<long double>(v[i].real(), v[i].imag()));
        long double ph = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>((num * static_cast<std::int64_t>(k % static_cast<std::uint64_t>(den))) % den) / den;
        acc += std::complex<long double>(std::cos(ph), std::sin(ph)) * inner;
        std::vector<std::complex<double>> next(q);
        for (std::size_t i = 0; i < q; ++i) next[i] = uk[sigma[i]];
        uk = std::move(next);
    }
    return static_cast<double>(acc.real() / static_cast<long double>(d));
}

// |sigma^i(E1) & E2| by applying sigma to each element i times.
inline std::int64_t orbit_overlap(const CellPermutation& sigma, const std::vector<CellIndex>& E1,
                                  const std::vector<CellIndex>& E2, std::size_t i) {
    std::set<CellIndex> s2(E2.begin(), E2.end());
    std::int64_t n = 0;
    for (CellIndex e : E1) {
        CellIndex c = e;
        for (std::size_t k = 0; k < i; ++k) c = sigma[c];
        n += s2.count(c) ? 1 : 0;
    }
    return n;
}

inline CellPermutation random_permutation(std::size_t q, std::mt19937_64& rng) {
    std::vector<CellIndex> v(q);
    std::iota(v.begin(), v.end(), CellIndex{0});
    for (std::size_t i = q; i > 1; --i) {
        std::uniform_int_distribution<std::size_t> d(0, i - 1);
        std::swap(v[i - 1], v[d(rng)]);
    }
    return CellPermutation(std::move(v));
}

// Uniform random q-cycle (Sattolo).
inline CellPermutation random_cycle(std::size_t q, std::mt19937_64& rng) {
    std::vector<CellIndex> v(q);
    std::iota(v.begin(), v.end(), CellIndex{0});
    for (std::size_t i = q; i > 1; --i) {
        std::uniform_int_distribution<std::size_t> d(0, i - 2);
        std::swap(v[i - 1], v[d(rng)]);
    }
    return CellPermutation(std::move(v));
}

} // namespace laxgrid::oracle
