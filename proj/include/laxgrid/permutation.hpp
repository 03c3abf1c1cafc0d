#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"

namespace laxgrid {

// Bijection of {0..q-1}; image[i] is where cell i goes.
class CellPermutation {
public:
    CellPermutation() = default;
    explicit CellPermutation(std::vector<CellIndex> image) : image_(std::move(image)) { validate(); }

    static CellPermutation identity(std::size_t q) {
        std::vector<CellIndex> v(q);
        std::iota(v.begin(), v.end(), CellIndex{0});
        return CellPermutation(std::move(v), trusted{});
    }

    static CellPermutation transposition(std::size_t q, CellIndex a, CellIndex b) {
        auto p = identity(q);
        require(a < q && b < q, ErrorKind::DomainError, "transposition index out of range");
        std::swap(p.image_[a], p.image_[b]);
        return p;
    }

    // Cyclic permutation sending order[k] to order[k+1] (and the last to the first).
    static CellPermutation cycle_along(const std::vector<CellIndex>& order) {
        std::vector<CellIndex> v(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) v[order[k]] = order[(k + 1) % order.size()];
        return CellPermutation(std::move(v));
    }

    std::size_t size() const noexcept { return image_.size(); }
    CellIndex operator()(CellIndex i) const { return image_[i]; }
    CellIndex operator[](std::size_t i) const { return image_[i]; }
    const std::vector<CellIndex>& image() const noexcept { return image_; }

    friend bool operator==(const CellPermutation&, const CellPermutation&) = default;

    // (a * b)(i) = a(b(i)): b acts first.
    friend CellPermutation operator*(const CellPermutation& a, const CellPermutation& b) {
        require(a.size() == b.size(), ErrorKind::GridMismatch, "composing permutations of different sizes");
        std::vector<CellIndex> v(a.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.image_[b.image_[i]];
        return CellPermutation(std::move(v), trusted{});
    }

    CellPermutation inverse() const {
        std::vector<CellIndex> v(size());
        for (std::size_t i = 0; i < v.size(); ++i) v[image_[i]] = static_cast<CellIndex>(i);
        return CellPermutation(std::move(v), trusted{});
    }

    CellPermutation power(std::uint64_t k) const {
        auto result = identity(size());
        auto base = *this;
        while (k) {
            if (k & 1) result = base * result;
            base = base * base;
            k >>= 1;
        }
        return result;
    }

    // Cycles listed from their smallest element, ordered by that element.
    std::vector<std::vector<CellIndex>> cycles() const {
        std::vector<std::vector<CellIndex>> out;
        std::vector<bool> seen(size(), false);
        for (std::size_t s = 0; s < size(); ++s) {
            if (seen[s]) continue;
            std::vector<CellIndex> c;
            for (CellIndex i = static_cast<CellIndex>(s); !seen[i]; i = image_[i]) {
                seen[i] = true;
                c.push_back(i);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    std::vector<std::size_t> cycle_lengths() const {
        std::vector<std::size_t> out;
        for (auto& c : cycles()) out.push_back(c.size());
        return out;
    }

    std::size_t cycle_count() const {
        std::vector<bool> seen(size(), false);
        std::size_t n = 0;
        for (std::size_t s = 0; s < size(); ++s) {
            if (seen[s]) continue;
            ++n;
            for (CellIndex i = static_cast<CellIndex>(s); !seen[i]; i = image_[i]) seen[i] = true;
        }
        return n;
    }

    bool is_cyclic() const { return size() > 0 && cycle_count() == 1; }

    // lcm of cycle lengths.
    std::uint64_t order() const {
        std::uint64_t l = 1;
        for (auto len : cycle_lengths()) {
            std::uint64_t g = std::gcd(l, static_cast<std::uint64_t>(len));
            unsigned __int128 next = static_cast<unsigned __int128>(l / g) * len;
            require(next <= UINT64_MAX, ErrorKind::Overflow, "permutation order exceeds 64 bits");
            l = static_cast<std::uint64_t>(next);
        }
        return l;
    }

private:
    struct trusted {};
    CellPermutation(std::vector<CellIndex> image, trusted) : image_(std::move(image)) {}

    void validate() const {
        std::vector<bool> seen(image_.size(), false);
        for (CellIndex j : image_) {
            require(j < image_.size(), ErrorKind::NotAPermutation, "image " + std::to_string(j) + " out of range");
            require(!seen[j], ErrorKind::NotAPermutation, "image " + std::to_string(j) + " repeated");
            seen[j] = true;
        }
    }

    std::vector<CellIndex> image_;
};

} // namespace laxgrid
