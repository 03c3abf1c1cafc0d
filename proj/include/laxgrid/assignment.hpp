#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "laxgrid/error.hpp"
#include "laxgrid/overlap.hpp"
#include "laxgrid/permutation.hpp"

namespace laxgrid {

namespace detail {

using wide = __int128;

// Sparse min-cost perfect assignment by successive shortest paths with
// node potentials. Only listed edges exist. Returns col_of_row and leaves
// optimal duals in `pot` (rows 0..q-1, columns q..2q-1) so that
// cost(i,j) + pot[i] - pot[q+j] >= 0 on every edge, with equality on the
// matching.
struct SparseAssignment {
    struct Arc {
        CellIndex col;
        std::int64_t cost;
    };

    std::size_t q;
    const std::vector<std::vector<Arc>>& adj;
    std::vector<wide> pot;
    std::vector<std::int64_t> col_of_row, row_of_col;

    SparseAssignment(std::size_t q_, const std::vector<std::vector<Arc>>& adj_)
        : q(q_), adj(adj_), pot(2 * q_, 0), col_of_row(q_, -1), row_of_col(q_, -1) {}

    wide reduced(std::size_t row, const Arc& a) const { return a.cost + pot[row] - pot[q + a.col]; }

    void solve() {
        const wide inf = std::numeric_limits<wide>::max() / 4;
        std::vector<wide> dist(2 * q, inf);
        std::vector<std::int64_t> prev_row(q, -1);  // for columns: row that reached it
        std::vector<char> done(2 * q, 0);
        std::vector<std::size_t> touched;
        using Item = std::pair<wide, std::size_t>;
        for (std::size_t r = 0; r < q; ++r) {
            for (auto v : touched) {
                dist[v] = inf;
                done[v] = 0;
            }
            touched.clear();
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            dist[r] = 0;
            touched.push_back(r);
            pq.push({0, r});
            std::int64_t free_col = -1;
            wide D = 0;
            while (!pq.empty()) {
                auto [d, v] = pq.top();
                pq.pop();
                if (done[v] || d != dist[v]) continue;
                done[v] = 1;
                if (v >= q) {
                    std::size_t c = v - q;
                    if (row_of_col[c] < 0) {
                        free_col = static_cast<std::int64_t>(c);
                        D = d;
                        break;
                    }
                    std::size_t nr = static_cast<std::size_t>(row_of_col[c]);
                    // matched arc reversed, reduced cost 0
                    if (d < dist[nr]) {
                        if (dist[nr] == inf) touched.push_back(nr);
                        dist[nr] = d;
                        pq.push({d, nr});
                    }
                    continue;
                }
                for (const Arc& a : adj[v]) {
                    if (col_of_row[v] == static_cast<std::int64_t>(a.col)) continue;
                    std::size_t cv = q + a.col;
                    wide nd = d + reduced(v, a);
                    if (nd < dist[cv]) {
                        if (dist[cv] == inf) touched.push_back(cv);
                        dist[cv] = nd;
                        prev_row[a.col] = static_cast<std::int64_t>(v);
                        pq.push({nd, cv});
                    }
                }
            }
            if (free_col < 0)
                fail(ErrorKind::NoPerfectMatching,
                     "row " + std::to_string(r) +
                         " cannot be matched on the positive-overlap support (Hall's condition fails; raise sampling)");
            for (auto v : touched) pot[v] += std::min(dist[v], D);
            // Rows and columns never reached keep their potential plus D.
            // Shifting every node by the same constant is harmless, so
            // instead subtract D from the reached ones.
            for (auto v : touched) pot[v] -= D;
            std::int64_t c = free_col;
            while (c >= 0) {
                std::int64_t row = prev_row[c];
                std::int64_t old = col_of_row[row];
                col_of_row[row] = c;
                row_of_col[c] = row;
                c = (static_cast<std::size_t>(row) == r) ? -1 : old;
            }
        }
    }

    bool tight(std::size_t row, const Arc& a) const { return reduced(row, a) == 0; }
};

} // namespace detail

// Perfect matching of rows to columns supported on positive weights, of
// maximum total weight; among optimal matchings the one whose image
// sequence (sigma(0), sigma(1), ...) is lexicographically smallest.
inline CellPermutation hall_matching(const OverlapMatrix& w) {
    const std::size_t q = w.q;
    require(w.rows.size() == q, ErrorKind::DomainError, "overlap matrix must be square");
    std::int64_t max_units = 0;
    for (auto& r : w.rows)
        for (auto& e : r) {
            require(e.units >= 0 && e.col < q, ErrorKind::DomainError, "invalid overlap entry");
            max_units = std::max(max_units, e.units);
        }
    using Arc = detail::SparseAssignment::Arc;
    std::vector<std::vector<Arc>> adj(q);
    for (std::size_t i = 0; i < q; ++i)
        for (auto& e : w.rows[i])
            if (e.units > 0) adj[i].push_back({e.col, max_units - e.units});
    for (auto& a : adj) std::sort(a.begin(), a.end(), [](const Arc& x, const Arc& y) { return x.col < y.col; });

    detail::SparseAssignment sa(q, adj);
    sa.solve();

    // Tight subgraph: exactly the edges usable by some optimal matching.
    std::vector<std::vector<CellIndex>> tight(q);
    for (std::size_t i = 0; i < q; ++i)
        for (auto& a : adj[i])
            if (sa.tight(i, a)) tight[i].push_back(a.col);

    auto& col_of = sa.col_of_row;
    auto& row_of = sa.row_of_col;
    std::vector<char> fixed_col(q, 0);
    std::vector<std::int64_t> seen_stamp(q, -1), via_row(q, -1);
    std::int64_t stamp = 0;
    for (std::size_t i = 0; i < q; ++i) {
        const auto target = static_cast<CellIndex>(col_of[i]);
        for (CellIndex j : tight[i]) {
            if (j == target) break;
            if (fixed_col[j]) continue;
            // Give j to i: rowOf(j) must move along tight edges through
            // unfixed rows until some row takes i's old column.
            ++stamp;
            std::queue<std::size_t> bfs;
            std::size_t start = static_cast<std::size_t>(row_of[j]);
            bfs.push(start);
            seen_stamp[j] = stamp;
            std::int64_t hit = -1;
            while (!bfs.empty() && hit < 0) {
                std::size_t x = bfs.front();
                bfs.pop();
                for (CellIndex y : tight[x]) {
                    if (y == static_cast<CellIndex>(col_of[x]) || fixed_col[y] || seen_stamp[y] == stamp) continue;
                    seen_stamp[y] = stamp;
                    via_row[y] = static_cast<std::int64_t>(x);
                    if (y == target) {
                        hit = y;
                        break;
                    }
                    bfs.push(static_cast<std::size_t>(row_of[y]));
                }
            }
            if (hit < 0) continue;
            // Walk back: each row on the path takes the column it reached.
            CellIndex y = static_cast<CellIndex>(hit);
            while (true) {
                std::size_t x = static_cast<std::size_t>(via_row[y]);
                CellIndex prev = static_cast<CellIndex>(col_of[x]);
                col_of[x] = y;
                row_of[y] = static_cast<std::int64_t>(x);
                if (x == start) break;
                y = prev;
            }
            col_of[i] = j;
            row_of[j] = static_cast<std::int64_t>(i);
            break;
        }
        fixed_col[static_cast<std::size_t>(col_of[i])] = 1;
    }

    std::vector<CellIndex> image(q);
    for (std::size_t i = 0; i < q; ++i) image[i] = static_cast<CellIndex>(col_of[i]);
    return CellPermutation(std::move(image));
}

// Size of a maximum matching on the positive-support relation (Hall check).
inline std::size_t max_matching_size(const OverlapMatrix& w) {
    const std::size_t q = w.q;
    std::vector<std::int64_t> row_of(q, -1);
    std::size_t size = 0;
    std::vector<std::int64_t> stamp(q, -1);
    for (std::size_t r = 0; r < q; ++r) {
        // iterative augmenting-path DFS
        std::vector<std::pair<std::size_t, std::size_t>> stack{{r, 0}};
        std::vector<std::pair<std::size_t, CellIndex>> path;
        bool found = false;
        while (!stack.empty() && !found) {
            auto& [x, k] = stack.back();
            if (k >= w.rows[x].size()) {
                stack.pop_back();
                if (!path.empty()) path.pop_back();
                continue;
            }
            auto e = w.rows[x][k++];
            if (e.units <= 0 || stamp[e.col] == static_cast<std::int64_t>(r)) continue;
            stamp[e.col] = static_cast<std::int64_t>(r);
            path.push_back({x, e.col});
            if (row_of[e.col] < 0) {
                found = true;
                break;
            }
            stack.push_back({static_cast<std::size_t>(row_of[e.col]), 0});
        }
        if (!found) continue;
        for (auto& [x, c] : path) row_of[c] = static_cast<std::int64_t>(x);
        ++size;
    }
    return size;
}

} // namespace laxgrid
