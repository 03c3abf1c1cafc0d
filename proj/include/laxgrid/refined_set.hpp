#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/rational.hpp"

namespace laxgrid {

// Subset of the cube stored as one bit per cell of the dyadic grid of order
// base_order + refine. Measures are exact: popcount / 2^{n(m+r)}.
class RefinedSet {
public:
    RefinedSet() = default;
    RefinedSet(int dim, int base_order, int refine, int bit_budget_log2 = kDefaultBitBudgetLog2)
        : dim_(dim), base_(base_order), refine_(refine) {
        require(dim >= 1 && dim <= kMaxDim, ErrorKind::DomainError, "refined set dimension out of range");
        require(base_order >= 0 && refine >= 0, ErrorKind::DomainError, "refined set orders must be >= 0");
        require(dim * (base_order + refine) <= bit_budget_log2, ErrorKind::CapacityExceeded,
                "refined set needs 2^" + std::to_string(dim * (base_order + refine)) + " bits, budget is 2^" +
                    std::to_string(bit_budget_log2));
        size_ = std::uint64_t{1} << (dim * (base_order + refine));
        words_.assign((size_ + 63) / 64, 0);
    }

    static RefinedSet empty(int dim, int base_order, int refine) { return RefinedSet(dim, base_order, refine); }
    static RefinedSet full(int dim, int base_order, int refine) {
        RefinedSet s(dim, base_order, refine);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    // All fine cells inside the coarse cell `cell` of `grid`.
    static RefinedSet of_cell(const DyadicGrid& grid, CellIndex cell, int refine) {
        RefinedSet s(grid.dim(), grid.order(), refine);
        s.for_each_fine_in_cell(cell, [&](std::uint64_t f) { s.set(f); });
        return s;
    }

    int dim() const noexcept { return dim_; }
    int base_order() const noexcept { return base_; }
    int refine() const noexcept { return refine_; }
    int fine_order() const noexcept { return base_ + refine_; }
    std::uint64_t size() const noexcept { return size_; }
    std::uint32_t fine_side() const noexcept { return std::uint32_t{1} << fine_order(); }

    bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint64_t i, bool v = true) {
        if (v)
            words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    std::uint64_t count() const noexcept {
        std::uint64_t c = 0;
        for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
        return c;
    }
    Rational measure() const { return Rational(static_cast<std::int64_t>(count()), static_cast<std::int64_t>(size_)); }
    double measure_d() const { return static_cast<double>(count()) / static_cast<double>(size_); }
    bool none() const noexcept {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool same_resolution(const RefinedSet& o) const noexcept {
        return dim_ == o.dim_ && fine_order() == o.fine_order();
    }

    RefinedSet& operator|=(const RefinedSet& o) { return combine(o, [](auto a, auto b) { return a | b; }); }
    RefinedSet& operator&=(const RefinedSet& o) { return combine(o, [](auto a, auto b) { return a & b; }); }
    RefinedSet& operator^=(const RefinedSet& o) { return combine(o, [](auto a, auto b) { return a ^ b; }); }
    RefinedSet& subtract(const RefinedSet& o) { return combine(o, [](auto a, auto b) { return a & ~b; }); }

    friend RefinedSet operator|(RefinedSet a, const RefinedSet& b) { return a |= b; }
    friend RefinedSet operator&(RefinedSet a, const RefinedSet& b) { return a &= b; }
    friend RefinedSet operator^(RefinedSet a, const RefinedSet& b) { return a ^= b; }

    RefinedSet complement() const {
        RefinedSet c = *this;
        for (auto& w : c.words_) w = ~w;
        c.trim();
        return c;
    }

    // popcount(a & b) without materializing the intersection.
    std::uint64_t intersection_count(const RefinedSet& o) const {
        check_compatible(o);
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::uint64_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }
    std::uint64_t symdiff_count(const RefinedSet& o) const {
        check_compatible(o);
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::uint64_t>(std::popcount(words_[i] ^ o.words_[i]));
        return c;
    }

    friend bool operator==(const RefinedSet& a, const RefinedSet& b) {
        return a.same_resolution(b) && a.words_ == b.words_;
    }

    // Same set at `extra` more levels of refinement.
    RefinedSet lift(int extra) const {
        require(extra >= 0, ErrorKind::DomainError, "lift needs extra >= 0");
        RefinedSet out(dim_, base_, refine_ + extra);
        if (extra == 0) return *this;
        const std::uint32_t s0 = fine_side();
        const std::uint32_t k = std::uint32_t{1} << extra;
        const std::uint32_t s1 = out.fine_side();
        for (std::uint64_t i = 0; i < size_; ++i) {
            if (!test(i)) continue;
            std::array<std::uint32_t, kMaxDim> c{};
            std::uint64_t t = i;
            for (int a = 0; a < dim_; ++a) {
                c[a] = static_cast<std::uint32_t>(t % s0) * k;
                t /= s0;
            }
            for_each_offset(dim_, k, [&](const std::array<std::uint32_t, kMaxDim>& off) {
                std::uint64_t idx = 0;
                for (int a = dim_ - 1; a >= 0; --a) idx = idx * s1 + (c[a] + off[a]);
                out.set(idx);
            });
        }
        return out;
    }

    Point midpoint(std::uint64_t fine) const {
        Point p(dim_);
        const std::uint32_t s = fine_side();
        for (int a = 0; a < dim_; ++a) {
            p[a] = (static_cast<double>(fine % s) + 0.5) / s;
            fine /= s;
        }
        return p;
    }

    std::uint64_t fine_cell_of(const Point& p) const {
        const std::uint32_t s = fine_side();
        std::uint64_t idx = 0;
        for (int a = dim_ - 1; a >= 0; --a) {
            double c = p[a] * s;
            auto k = c <= 0.0 ? std::uint32_t{0} : static_cast<std::uint32_t>(c);
            if (k >= s) k = s - 1;
            idx = idx * s + k;
        }
        return idx;
    }

    // Coarse (base-order) cell containing fine cell `fine`.
    CellIndex coarse_cell_of(std::uint64_t fine) const {
        const std::uint32_t s = fine_side();
        const std::uint32_t cs = std::uint32_t{1} << base_;
        std::array<std::uint32_t, kMaxDim> c{};
        for (int a = 0; a < dim_; ++a) {
            c[a] = static_cast<std::uint32_t>(fine % s) >> refine_;
            fine /= s;
        }
        std::uint64_t idx = 0;
        for (int a = dim_ - 1; a >= 0; --a) idx = idx * cs + c[a];
        return static_cast<CellIndex>(idx);
    }

    template <class F>
    void for_each_fine_in_cell(CellIndex cell, F&& fn) const {
        const std::uint32_t cs = std::uint32_t{1} << base_;
        const std::uint32_t k = std::uint32_t{1} << refine_;
        const std::uint32_t s = fine_side();
        std::array<std::uint32_t, kMaxDim> c{};
        std::uint64_t t = cell;
        for (int a = 0; a < dim_; ++a) {
            c[a] = static_cast<std::uint32_t>(t % cs) * k;
            t /= cs;
        }
        require(t == 0, ErrorKind::DomainError, "cell index out of range");
        for_each_offset(dim_, k, [&](const std::array<std::uint32_t, kMaxDim>& off) {
            std::uint64_t idx = 0;
            for (int a = dim_ - 1; a >= 0; --a) idx = idx * s + (c[a] + off[a]);
            fn(idx);
        });
    }

    template <class F>
    void for_each_set(F&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                int b = std::countr_zero(bits);
                fn(static_cast<std::uint64_t>(w) * 64 + static_cast<std::uint64_t>(b));
                bits &= bits - 1;
            }
        }
    }

    // Visits every offset vector in [0,k)^n, axis 0 fastest.
    template <class F>
    static void for_each_offset(int n, std::uint32_t k, F&& fn) {
        std::array<std::uint32_t, kMaxDim> off{};
        while (true) {
            fn(off);
            int a = 0;
            while (a < n && ++off[a] == k) off[a++] = 0;
            if (a == n) return;
        }
    }

private:
    template <class Op>
    RefinedSet& combine(const RefinedSet& o, Op op) {
        check_compatible(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = op(words_[i], o.words_[i]);
        return *this;
    }

    void check_compatible(const RefinedSet& o) const {
        require(same_resolution(o), ErrorKind::GridMismatch,
                "refined sets differ in dimension or resolution (" + std::to_string(dim_) + "," +
                    std::to_string(fine_order()) + ") vs (" + std::to_string(o.dim_) + "," +
                    std::to_string(o.fine_order()) + ")");
    }

    void trim() {
        if (size_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    int dim_ = 1;
    int base_ = 0;
    int refine_ = 0;
    std::uint64_t size_ = 1;
    std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>(1, 0);
};

struct SetOps {
    RefinedSet union_set;
    RefinedSet intersection;
    RefinedSet symdiff;
    Rational measure_union;
    Rational measure_intersection;
    Rational measure_symdiff;
};

inline SetOps set_ops(const RefinedSet& a, const RefinedSet& b) {
    SetOps r{a | b, a & b, a ^ b, {}, {}, {}};
    r.measure_union = r.union_set.measure();
    r.measure_intersection = r.intersection.measure();
    r.measure_symdiff = r.symdiff.measure();
    return r;
}

} // namespace laxgrid
