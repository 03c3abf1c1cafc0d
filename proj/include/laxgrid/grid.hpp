#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "laxgrid/error.hpp"

namespace laxgrid {

inline constexpr int kMaxDim = 4;
// Cell indices are 32-bit; grids above 2^24 cells are rejected outright.
inline constexpr int kMaxCellBits = 24;
// Default budget for refined bit-vectors: 2^28 bits (32 MiB).
inline constexpr int kDefaultBitBudgetLog2 = 28;

using CellIndex = std::uint32_t;

enum class Topology { cube, torus };

constexpr std::string_view topology_name(Topology t) { return t == Topology::cube ? "cube" : "torus"; }

inline Topology parse_topology(std::string_view s) {
    if (s == "cube") return Topology::cube;
    if (s == "torus") return Topology::torus;
    fail(ErrorKind::ConfigError, "unknown topology '" + std::string(s) + "'");
}

// A point of R^n for n <= kMaxDim, stored inline.
struct Point {
    std::array<double, kMaxDim> x{};
    int n = 0;

    Point() = default;
    explicit Point(int dim) : n(dim) {}
    Point(std::initializer_list<double> v) : n(static_cast<int>(v.size())) {
        int i = 0;
        for (double c : v) x[i++] = c;
    }

    double& operator[](int i) { return x[i]; }
    double operator[](int i) const { return x[i]; }
    int dim() const { return n; }
    std::span<const double> coords() const { return {x.data(), static_cast<std::size_t>(n)}; }
};

inline double wrap01(double v) {
    double r = v - std::floor(v);
    // floor can leave r == 1.0 for tiny negative v
    return r >= 1.0 ? 0.0 : r;
}

inline bool in_unit_cube(const Point& p) {
    for (int i = 0; i < p.n; ++i)
        if (!(p[i] >= 0.0 && p[i] < 1.0)) return false;
    return true;
}

// Euclidean distance on the cube, quotient distance on the torus.
inline double distance(const Point& a, const Point& b, Topology topo) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i) {
        double d = std::abs(a[i] - b[i]);
        if (topo == Topology::torus) {
            d = d - std::floor(d);
            d = std::min(d, 1.0 - d);
        }
        s += d * d;
    }
    return std::sqrt(s);
}

struct CellGeometry {
    Point center;
    double diameter = 0.0;
};

// Dyadic subdivision of [0,1]^n of order m: 2^{n m} cells of side 2^{-m}.
// Cell index is row-major with axis 0 varying fastest: idx = sum k_i * side^i.
class DyadicGrid {
public:
    DyadicGrid(int dim, int order, Topology topology, int max_refine = 0,
               int bit_budget_log2 = kDefaultBitBudgetLog2)
        : dim_(dim), order_(order), topology_(topology) {
        require(dim >= 1 && dim <= kMaxDim, ErrorKind::DomainError,
                "grid dimension must be in [1," + std::to_string(kMaxDim) + "]");
        require(order >= 0, ErrorKind::DomainError, "grid order must be >= 0");
        require(max_refine >= 0, ErrorKind::DomainError, "refinement must be >= 0");
        require(dim * order <= kMaxCellBits, ErrorKind::CapacityExceeded,
                "2^" + std::to_string(dim * order) + " cells exceed the cell index range");
        require(dim * (order + max_refine) <= bit_budget_log2, ErrorKind::CapacityExceeded,
                "refined grid needs 2^" + std::to_string(dim * (order + max_refine)) + " bits, budget is 2^" +
                    std::to_string(bit_budget_log2));
        side_ = std::uint32_t{1} << order;
        cells_ = std::uint64_t{1} << (dim * order);
    }

    int dim() const noexcept { return dim_; }
    int order() const noexcept { return order_; }
    Topology topology() const noexcept { return topology_; }
    std::uint32_t side() const noexcept { return side_; }
    std::uint64_t cell_count() const noexcept { return cells_; }
    double cell_width() const noexcept { return std::ldexp(1.0, -order_); }
    double cell_measure() const noexcept { return std::ldexp(1.0, -dim_ * order_); }

    bool same_shape(const DyadicGrid& o) const noexcept {
        return dim_ == o.dim_ && order_ == o.order_ && topology_ == o.topology_;
    }

    std::array<std::uint32_t, kMaxDim> multi_index(CellIndex idx) const {
        check_index(idx);
        std::array<std::uint32_t, kMaxDim> k{};
        for (int i = 0; i < dim_; ++i) {
            k[i] = idx % side_;
            idx /= side_;
        }
        return k;
    }

    CellIndex index_of(std::span<const std::uint32_t> k) const {
        require(static_cast<int>(k.size()) == dim_, ErrorKind::DomainError, "multi-index has wrong length");
        std::uint64_t idx = 0;
        for (int i = dim_ - 1; i >= 0; --i) {
            require(k[i] < side_, ErrorKind::DomainError, "multi-index component out of range");
            idx = idx * side_ + k[i];
        }
        return static_cast<CellIndex>(idx);
    }

    CellIndex cell_of(const Point& p) const {
        require(p.n == dim_, ErrorKind::DomainError, "point dimension does not match grid");
        std::uint64_t idx = 0;
        for (int i = dim_ - 1; i >= 0; --i) {
            double c = p[i] * side_;
            auto k = c <= 0.0 ? std::uint32_t{0} : static_cast<std::uint32_t>(c);
            if (k >= side_) k = side_ - 1;
            idx = idx * side_ + k;
        }
        return static_cast<CellIndex>(idx);
    }

    Point center(CellIndex idx) const {
        auto k = multi_index(idx);
        Point c(dim_);
        for (int i = 0; i < dim_; ++i) c[i] = (k[i] + 0.5) / side_;
        return c;
    }

    double cell_diameter() const noexcept {
        double w = cell_width();
        if (topology_ == Topology::torus) w = std::min(w, 0.5);
        return std::sqrt(static_cast<double>(dim_)) * w;
    }

    CellGeometry geometry(CellIndex idx) const { return {center(idx), cell_diameter()}; }

    double distance(const Point& a, const Point& b) const { return laxgrid::distance(a, b, topology_); }

    // Face adjacency; on the torus the wraparound neighbours count.
    bool adjacent(CellIndex a, CellIndex b) const {
        auto ka = multi_index(a);
        auto kb = multi_index(b);
        int differing = 0;
        bool unit_step = true;
        for (int i = 0; i < dim_; ++i) {
            if (ka[i] == kb[i]) continue;
            ++differing;
            std::uint32_t d = ka[i] > kb[i] ? ka[i] - kb[i] : kb[i] - ka[i];
            bool step = d == 1 || (topology_ == Topology::torus && d == side_ - 1);
            unit_step = unit_step && step;
        }
        return differing == 1 && unit_step;
    }

private:
    void check_index(CellIndex idx) const {
        require(idx < cells_, ErrorKind::DomainError, "cell index " + std::to_string(idx) + " out of range");
    }

    int dim_;
    int order_;
    Topology topology_;
    std::uint32_t side_ = 1;
    std::uint64_t cells_ = 1;
};

inline DyadicGrid build_grid(int dim, int order, Topology topology, int max_refine = 0,
                             int bit_budget_log2 = kDefaultBitBudgetLog2) {
    return DyadicGrid(dim, order, topology, max_refine, bit_budget_log2);
}

namespace detail {

// Boustrophedon Hamiltonian path over `axes` axes of radix `side`,
// first axis fastest, direction flipped on every step of a slower axis.
inline std::vector<std::array<std::uint32_t, kMaxDim>> boustrophedon(int axes, std::uint32_t side) {
    std::vector<std::array<std::uint32_t, kMaxDim>> path(1);
    for (int a = 0; a < axes; ++a) {
        std::vector<std::array<std::uint32_t, kMaxDim>> next;
        next.reserve(path.size() * side);
        for (std::uint32_t t = 0; t < side; ++t) {
            if (t % 2 == 0) {
                for (auto k : path) {
                    k[a] = t;
                    next.push_back(k);
                }
            } else {
                for (auto it = path.rbegin(); it != path.rend(); ++it) {
                    auto k = *it;
                    k[a] = t;
                    next.push_back(k);
                }
            }
        }
        path = std::move(next);
    }
    return path;
}

} // namespace detail

// Deterministic ordering of all cells in which consecutive cells share a
// face. For n >= 2 and order >= 1 the last cell is adjacent to the first as
// well (a Hamiltonian cycle of the grid graph): axis 0 is swept row by row
// along a boustrophedon path of the remaining axes, with column 0 reserved
// for the return leg. For n = 1 the ordering is the line 0..side-1, which
// closes up only on the torus or when side <= 2.
inline std::vector<CellIndex> snake_order(const DyadicGrid& grid) {
    const std::uint32_t s = grid.side();
    const int n = grid.dim();
    std::vector<CellIndex> out;
    out.reserve(grid.cell_count());
    if (grid.cell_count() == 1) {
        out.push_back(0);
        return out;
    }
    if (n == 1) {
        for (std::uint32_t i = 0; i < s; ++i) out.push_back(i);
        return out;
    }
    auto rows = detail::boustrophedon(n - 1, s);
    auto cell = [&](std::uint32_t x, const std::array<std::uint32_t, kMaxDim>& row) {
        std::array<std::uint32_t, kMaxDim> k{};
        k[0] = x;
        for (int i = 1; i < n; ++i) k[i] = row[i - 1];
        return grid.index_of(std::span<const std::uint32_t>(k.data(), n));
    };
    out.push_back(cell(0, rows[0]));
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (j % 2 == 0)
            for (std::uint32_t x = 1; x < s; ++x) out.push_back(cell(x, rows[j]));
        else
            for (std::uint32_t x = s - 1; x >= 1; --x) out.push_back(cell(x, rows[j]));
    }
    for (std::size_t j = rows.size() - 1; j >= 1; --j) out.push_back(cell(0, rows[j]));
    return out;
}

// True when `order` visits every cell once and consecutive cells, including
// the last/first pair, are adjacent in the grid's topology.
inline bool is_hamiltonian_cycle(const DyadicGrid& grid, std::span<const CellIndex> order) {
    if (order.size() != grid.cell_count()) return false;
    std::vector<bool> seen(order.size(), false);
    for (CellIndex c : order) {
        if (c >= order.size() || seen[c]) return false;
        seen[c] = true;
    }
    if (order.size() == 1) return true;
    for (std::size_t i = 0; i < order.size(); ++i) {
        CellIndex a = order[i];
        CellIndex b = order[(i + 1) % order.size()];
        if (!grid.adjacent(a, b)) return false;
    }
    return true;
}

} // namespace laxgrid
