#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/permutation.hpp"
#include "laxgrid/twist.hpp"

namespace laxgrid {

enum class MapKind { identity, translation, torus_linear, k_baker, twist, composition, cell_translation };

constexpr std::string_view map_kind_name(MapKind k) {
    switch (k) {
    case MapKind::identity: return "identity";
    case MapKind::translation: return "translation";
    case MapKind::torus_linear: return "torus_linear";
    case MapKind::k_baker: return "baker";
    case MapKind::twist: return "twist";
    case MapKind::composition: return "composition";
    case MapKind::cell_translation: return "cell_translation";
    }
    return "unknown";
}

namespace detail {

// Integer inverse of a unimodular matrix (row-major, n <= 4) by Gauss-Jordan
// in long double with rounding; the result is verified exactly.
inline std::vector<std::int64_t> unimodular_inverse(int n, const std::vector<std::int64_t>& m) {
    std::vector<long double> a(static_cast<std::size_t>(n * 2 * n), 0.0L);
    auto at = [&](int r, int c) -> long double& { return a[static_cast<std::size_t>(r * 2 * n + c)]; };
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) at(r, c) = static_cast<long double>(m[r * n + c]);
        at(r, n + r) = 1.0L;
    }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(at(r, c)) > std::abs(at(piv, c))) piv = r;
        require(std::abs(at(piv, c)) > 1e-12L, ErrorKind::DomainError, "torus_linear matrix is singular");
        if (piv != c)
            for (int k = 0; k < 2 * n; ++k) std::swap(at(c, k), at(piv, k));
        long double d = at(c, c);
        for (int k = 0; k < 2 * n; ++k) at(c, k) /= d;
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            long double f = at(r, c);
            if (f == 0.0L) continue;
            for (int k = 0; k < 2 * n; ++k) at(r, k) -= f * at(c, k);
        }
    }
    std::vector<std::int64_t> inv(static_cast<std::size_t>(n * n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv[r * n + c] = static_cast<std::int64_t>(std::llround(at(r, n + c)));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            __int128 s = 0;
            for (int k = 0; k < n; ++k) s += static_cast<__int128>(m[r * n + k]) * inv[k * n + c];
            require(s == (r == c ? 1 : 0), ErrorKind::DomainError, "torus_linear matrix is not unimodular");
        }
    return inv;
}

inline std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace detail

// Measure-preserving map of [0,1)^n (read on the torus: outputs are reduced
// mod 1). Immutable; copies share the underlying description.
class MeasureMap {
public:
    static MeasureMap identity(int dim) {
        require(dim >= 1 && dim <= kMaxDim, ErrorKind::DomainError, "map dimension out of range");
        auto n = std::make_shared<Node>();
        n->kind = MapKind::identity;
        n->dim = dim;
        return MeasureMap(std::move(n));
    }

    static MeasureMap translation(const Point& v) {
        require(v.n >= 1 && v.n <= kMaxDim, ErrorKind::DomainError, "translation dimension out of range");
        auto n = std::make_shared<Node>();
        n->kind = MapKind::translation;
        n->dim = v.n;
        n->vec = v;
        for (int i = 0; i < v.n; ++i) {
            require(std::isfinite(v[i]), ErrorKind::DomainError, "translation vector must be finite");
            n->vec[i] = wrap01(v[i]);
        }
        return MeasureMap(std::move(n));
    }

    static MeasureMap torus_linear(int dim, std::vector<std::int64_t> matrix) {
        require(dim >= 1 && dim <= kMaxDim, ErrorKind::DomainError, "map dimension out of range");
        require(matrix.size() == static_cast<std::size_t>(dim * dim), ErrorKind::DomainError,
                "torus_linear needs dim*dim entries");
        auto n = std::make_shared<Node>();
        n->kind = MapKind::torus_linear;
        n->dim = dim;
        n->inv = detail::unimodular_inverse(dim, matrix);
        n->mat = std::move(matrix);
        return MeasureMap(std::move(n));
    }

    static MeasureMap cat_map() { return torus_linear(2, {2, 1, 1, 1}); }

    static MeasureMap k_baker(int k) {
        require(k >= 1, ErrorKind::DomainError, "baker needs k >= 1");
        auto n = std::make_shared<Node>();
        n->kind = MapKind::k_baker;
        n->dim = 2;
        n->k = k;
        return MeasureMap(std::move(n));
    }

    static MeasureMap twist(const TwistMap& t) {
        auto n = std::make_shared<Node>();
        n->kind = MapKind::twist;
        n->dim = 2;
        n->tw = t;
        return MeasureMap(std::move(n));
    }

    // Applied first to last: composition({f, g})(x) = g(f(x)).
    static MeasureMap composition(std::vector<MeasureMap> parts) {
        require(!parts.empty(), ErrorKind::DomainError, "composition of no maps; use identity");
        int dim = parts.front().dim();
        for (auto& p : parts) require(p.dim() == dim, ErrorKind::DomainError, "composition mixes dimensions");
        auto n = std::make_shared<Node>();
        n->kind = MapKind::composition;
        n->dim = dim;
        n->parts = std::move(parts);
        return MeasureMap(std::move(n));
    }

    // The automorphism that translates cell i rigidly onto cell perm(i).
    static MeasureMap cell_translation(const DyadicGrid& grid, const CellPermutation& perm) {
        require(perm.size() == grid.cell_count(), ErrorKind::GridMismatch, "permutation size differs from grid");
        auto n = std::make_shared<Node>();
        n->kind = MapKind::cell_translation;
        n->dim = grid.dim();
        n->grid_order = grid.order();
        n->perm = perm;
        return MeasureMap(std::move(n));
    }

    MapKind kind() const noexcept { return node_->kind; }
    int dim() const noexcept { return node_->dim; }
    int baker_k() const noexcept { return node_->k; }
    const Point& translation_vector() const noexcept { return node_->vec; }
    const std::vector<std::int64_t>& matrix() const noexcept { return node_->mat; }
    const TwistMap& twist_map() const noexcept { return node_->tw; }
    const std::vector<MeasureMap>& parts() const noexcept { return node_->parts; }
    const CellPermutation& cell_permutation() const noexcept { return node_->perm; }
    int cell_order() const noexcept { return node_->grid_order; }

    // Overlaps with grid cells have a closed form.
    bool exact() const noexcept {
        return kind() == MapKind::identity || kind() == MapKind::translation || kind() == MapKind::cell_translation;
    }

    Point eval(const Point& p) const {
        require(p.n == dim(), ErrorKind::DomainError, "point dimension does not match map");
        require(in_unit_cube(p), ErrorKind::DomainError, "point outside [0,1)^n");
        return apply(p);
    }

    // No domain check; callers guarantee p in [0,1)^n.
    Point apply(const Point& p) const {
        const Node& n = *node_;
        switch (n.kind) {
        case MapKind::identity: return p;
        case MapKind::translation: {
            Point out(n.dim);
            for (int i = 0; i < n.dim; ++i) out[i] = wrap01(p[i] + n.vec[i]);
            return out;
        }
        case MapKind::torus_linear: return linear(n.mat, p);
        case MapKind::k_baker: {
            if (n.inverted) return baker_inverse(p);
            double kx = n.k * p[0];
            double j = std::floor(kx);
            if (j > n.k - 1) j = n.k - 1;
            Point out(2);
            out[0] = wrap01(kx - j);
            out[1] = wrap01((p[1] + j) / n.k);
            return out;
        }
        case MapKind::twist: {
            Point out = n.tw(p);
            out[0] = wrap01(out[0]);
            out[1] = wrap01(out[1]);
            return out;
        }
        case MapKind::composition: {
            Point x = p;
            for (auto& part : n.parts) x = part.apply(x);
            return x;
        }
        case MapKind::cell_translation: {
            const std::uint32_t side = std::uint32_t{1} << n.grid_order;
            std::uint64_t src = 0;
            std::array<std::uint32_t, kMaxDim> k{};
            for (int i = n.dim - 1; i >= 0; --i) {
                double c = p[i] * side;
                k[i] = c <= 0.0 ? 0u : std::min(static_cast<std::uint32_t>(c), side - 1);
                src = src * side + k[i];
            }
            std::uint64_t dst = n.perm[src];
            Point out(n.dim);
            for (int i = 0; i < n.dim; ++i) {
                auto kd = static_cast<std::uint32_t>(dst % side);
                dst /= side;
                out[i] = wrap01(p[i] + (static_cast<double>(kd) - static_cast<double>(k[i])) / side);
            }
            return out;
        }
        }
        return p;
    }

    Point operator()(const Point& p) const { return eval(p); }

    MeasureMap inverse() const {
        const Node& n = *node_;
        switch (n.kind) {
        case MapKind::identity: return *this;
        case MapKind::translation: {
            Point v(n.dim);
            for (int i = 0; i < n.dim; ++i) v[i] = -n.vec[i];
            return translation(v);
        }
        case MapKind::torus_linear: return torus_linear(n.dim, n.inv);
        case MapKind::k_baker: {
            auto m = std::make_shared<Node>(n);
            m->inverted = !n.inverted;
            return MeasureMap(std::move(m));
        }
        case MapKind::twist: return twist(n.tw.inverse());
        case MapKind::composition: {
            std::vector<MeasureMap> rev;
            for (auto it = n.parts.rbegin(); it != n.parts.rend(); ++it) rev.push_back(it->inverse());
            return composition(std::move(rev));
        }
        case MapKind::cell_translation: {
            auto m = std::make_shared<Node>(n);
            m->perm = n.perm.inverse();
            return MeasureMap(std::move(m));
        }
        }
        return *this;
    }

    std::string describe() const {
        const Node& n = *node_;
        std::string s(map_kind_name(n.kind));
        switch (n.kind) {
        case MapKind::identity: s += ":" + std::to_string(n.dim); break;
        case MapKind::translation:
            s += ":";
            for (int i = 0; i < n.dim; ++i) s += (i ? "," : "") + detail::fmt_double(n.vec[i]);
            break;
        case MapKind::torus_linear:
            s += ":";
            for (std::size_t i = 0; i < n.mat.size(); ++i) s += (i ? "," : "") + std::to_string(n.mat[i]);
            break;
        case MapKind::k_baker: s += ":" + std::to_string(n.k) + (n.inverted ? ":inverse" : ""); break;
        case MapKind::twist:
            s += ":" + detail::fmt_double(n.tw.cx) + "," + detail::fmt_double(n.tw.cy) + "," +
                 detail::fmt_double(n.tw.R) + "," + std::to_string(n.tw.sign);
            break;
        case MapKind::composition:
            s += "[";
            for (std::size_t i = 0; i < n.parts.size(); ++i) s += (i ? "|" : "") + n.parts[i].describe();
            s += "]";
            break;
        case MapKind::cell_translation: s += ":order=" + std::to_string(n.grid_order); break;
        }
        return s;
    }

private:
    struct Node {
        MapKind kind = MapKind::identity;
        int dim = 1;
        Point vec;
        std::vector<std::int64_t> mat, inv;
        int k = 2;
        bool inverted = false;
        TwistMap tw;
        std::vector<MeasureMap> parts;
        int grid_order = 0;
        CellPermutation perm;
    };

    explicit MeasureMap(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static Point linear(const std::vector<std::int64_t>& m, const Point& p) {
        const int n = p.n;
        Point out(n);
        for (int r = 0; r < n; ++r) {
            long double s = 0.0L;
            for (int c = 0; c < n; ++c) s += static_cast<long double>(m[r * n + c]) * p[c];
            s -= std::floor(s);
            double d = static_cast<double>(s);
            out[r] = d >= 1.0 ? 0.0 : d;
        }
        return out;
    }

    Point baker_inverse(const Point& p) const {
        const int k = node_->k;
        double ky = k * p[1];
        double j = std::floor(ky);
        if (j > k - 1) j = k - 1;
        Point out(2);
        out[1] = wrap01(ky - j);
        out[0] = wrap01((p[0] + j) / k);
        return out;
    }

    std::shared_ptr<const Node> node_;
};

namespace detail {

inline std::vector<double> parse_doubles(std::string_view s, std::string_view what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        auto tok = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        double v = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        require(!tok.empty() && res.ec == std::errc() && res.ptr == tok.data() + tok.size(), ErrorKind::ConfigError,
                "bad number '" + std::string(tok) + "' in " + std::string(what));
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline std::vector<std::int64_t> parse_ints(std::string_view s, std::string_view what) {
    std::vector<std::int64_t> out;
    for (double d : parse_doubles(s, what)) {
        require(d == std::floor(d) && std::abs(d) < 1e15, ErrorKind::ConfigError,
                "non-integer entry in " + std::string(what));
        out.push_back(static_cast<std::int64_t>(d));
    }
    return out;
}

} // namespace detail

// Map specifications: "identity", "translation:0.5,0", "torus_linear:2,1,1,1",
// "baker:3", "twist:cx,cy,R[,sign]"; "a|b" composes a then b.
// dim_hint <= 0 lets the spec decide; otherwise the dimensions must agree.
inline MeasureMap parse_map(std::string_view spec, int dim_hint = 0) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '"')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '"')) s.remove_suffix(1);
        return s;
    };
    spec = trim(spec);
    require(!spec.empty(), ErrorKind::ConfigError, "empty map specification");
    if (spec.find('|') != std::string_view::npos) {
        std::vector<MeasureMap> parts;
        std::size_t pos = 0;
        while (true) {
            auto bar = spec.find('|', pos);
            parts.push_back(parse_map(spec.substr(pos, bar == std::string_view::npos ? bar : bar - pos), dim_hint));
            if (bar == std::string_view::npos) break;
            pos = bar + 1;
        }
        try {
            return MeasureMap::composition(std::move(parts));
        } catch (const Error& e) {
            fail(ErrorKind::ConfigError, e.what());
        }
    }
    auto colon = spec.find(':');
    std::string_view name = trim(spec.substr(0, colon));
    std::string_view args = colon == std::string_view::npos ? std::string_view{} : trim(spec.substr(colon + 1));
    auto check_dim = [&](int d) {
        require(dim_hint <= 0 || dim_hint == d, ErrorKind::ConfigError,
                "map '" + std::string(spec) + "' has dimension " + std::to_string(d) + ", config says " +
                    std::to_string(dim_hint));
        require(d >= 1 && d <= kMaxDim, ErrorKind::ConfigError, "map dimension out of range");
    };
    if (name == "identity") {
        int d = dim_hint > 0 ? dim_hint : 2;
        if (!args.empty()) {
            auto v = detail::parse_ints(args, "identity");
            require(v.size() == 1, ErrorKind::ConfigError, "identity takes one optional dimension");
            d = static_cast<int>(v[0]);
        }
        check_dim(d);
        return MeasureMap::identity(d);
    }
    if (name == "translation") {
        auto v = detail::parse_doubles(args, "translation");
        check_dim(static_cast<int>(v.size()));
        Point p(static_cast<int>(v.size()));
        for (std::size_t i = 0; i < v.size(); ++i) p[static_cast<int>(i)] = v[i];
        return MeasureMap::translation(p);
    }
    if (name == "torus_linear" || name == "cat") {
        std::vector<std::int64_t> m = name == "cat" ? std::vector<std::int64_t>{2, 1, 1, 1}
                                                    : detail::parse_ints(args, "torus_linear");
        int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m.size()))));
        require(d * d == static_cast<int>(m.size()), ErrorKind::ConfigError, "torus_linear needs a square matrix");
        check_dim(d);
        try {
            return MeasureMap::torus_linear(d, std::move(m));
        } catch (const Error& e) {
            fail(ErrorKind::ConfigError, e.what());
        }
    }
    if (name == "baker") {
        auto v = detail::parse_ints(args, "baker");
        require(v.size() == 1 && v[0] >= 1 && v[0] <= 1'000'000, ErrorKind::ConfigError, "baker takes one k >= 1");
        check_dim(2);
        return MeasureMap::k_baker(static_cast<int>(v[0]));
    }
    if (name == "twist") {
        auto v = detail::parse_doubles(args, "twist");
        require(v.size() == 3 || v.size() == 4, ErrorKind::ConfigError, "twist takes cx,cy,R[,sign]");
        check_dim(2);
        int sign = v.size() == 4 ? static_cast<int>(v[3]) : 1;
        require(v[2] > 0.0 && (sign == 1 || sign == -1), ErrorKind::ConfigError, "twist needs R > 0, sign +-1");
        return MeasureMap::twist(TwistMap(v[0], v[1], v[2], sign));
    }
    fail(ErrorKind::ConfigError, "unknown map kind '" + std::string(name) + "'");
}

} // namespace laxgrid
