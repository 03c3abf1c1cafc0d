#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/metrics.hpp"
#include "laxgrid/permutation.hpp"
#include "laxgrid/rational.hpp"

namespace laxgrid {

// Atom at angle 2*pi*num/den, num/den reduced with 0 <= num < den.
struct SpectralAtom {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double weight = 0.0;
    double angle() const { return 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den); }
};

struct SpectralMeasure {
    std::vector<SpectralAtom> atoms;  // sorted by angle

    double total_mass() const {
        long double s = 0.0L;
        for (auto& a : atoms) s += a.weight;
        return static_cast<double>(s);
    }
};

namespace detail {

// Accumulates weights keyed by the reduced fraction j/L.
class AtomAccumulator {
public:
    void add(std::int64_t j, std::int64_t L, long double w) {
        std::int64_t g = std::gcd(j, L);
        Rational key(j / g, L / g);
        acc_[{key.num(), key.den()}] += w;
    }

    SpectralMeasure finish() const {
        long double total = 0.0L;
        for (auto& [k, w] : acc_) total += w;
        SpectralMeasure m;
        for (auto& [k, w] : acc_) {
            if (w <= 1e-14L * total) continue;
            m.atoms.push_back({k.first, k.second, static_cast<double>(w)});
        }
        std::sort(m.atoms.begin(), m.atoms.end(), [](const SpectralAtom& a, const SpectralAtom& b) {
            return Rational(a.num, a.den) < Rational(b.num, b.den);
        });
        return m;
    }

private:
    std::map<std::pair<std::int64_t, std::int64_t>, long double> acc_;
};

} // namespace detail

// (U v)(i) = v(sigma(i)).
template <class T>
std::vector<T> koopman_apply(const CellPermutation& sigma, const std::vector<T>& v) {
    require(v.size() == sigma.size(), ErrorKind::GridMismatch, "vector length differs from permutation size");
    std::vector<T> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[sigma[i]];
    return out;
}

// Spectral measure of v for U_sigma written as U = integral of z^-1 dE(z).
// Along a cycle (c_0, ..., c_{L-1}) with w_t = v(c_t), the atom at angle
// 2*pi*j/L carries |sum_t w_t e^{2 pi i j t / L}|^2 / L.
inline SpectralMeasure spectral_measure_of_vector(const CellPermutation& sigma,
                                                  const std::vector<std::complex<double>>& v) {
    require(v.size() == sigma.size(), ErrorKind::GridMismatch, "vector length differs from permutation size");
    detail::AtomAccumulator acc;
    for (auto& cyc : sigma.cycles()) {
        const auto L = static_cast<std::int64_t>(cyc.size());
        for (std::int64_t j = 0; j < L; ++j) {
            std::complex<long double> s = 0.0L;
            for (std::int64_t t = 0; t < L; ++t) {
                // reduce j*t mod L before scaling keeps the phase accurate
                long double ph = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>((j * t) % L) / L;
                std::complex<long double> w(v[cyc[t]].real(), v[cyc[t]].imag());
                s += w * std::complex<long double>(std::cos(ph), std::sin(ph));
            }
            acc.add(j, L, std::norm(s) / L);
        }
    }
    return acc.finish();
}

inline SpectralMeasure spectral_measure_of_vector(const CellPermutation& sigma, const std::vector<double>& v) {
    std::vector<std::complex<double>> c(v.begin(), v.end());
    return spectral_measure_of_vector(sigma, c);
}

// sum_i 2^-(i+1) m_{U, e_i} / (1 - 2^-q) over the cell indicators e_i. The
// measure of one indicator on a cycle of length L is uniform on the L-th
// roots of unity.
inline SpectralMeasure spectral_type(const CellPermutation& sigma) {
    const std::size_t q = sigma.size();
    require(q >= 1, ErrorKind::DomainError, "empty permutation");
    std::vector<std::size_t> len_of(q);
    for (auto& cyc : sigma.cycles())
        for (auto c : cyc) len_of[c] = cyc.size();
    const long double norm = 1.0L - std::ldexp(1.0L, -static_cast<int>(std::min<std::size_t>(q, 16000)));
    // Group basis weights by cycle length before spreading them.
    std::map<std::size_t, long double> by_len;
    for (std::size_t i = 0; i < q; ++i) by_len[len_of[i]] += std::ldexp(1.0L, -static_cast<int>(i + 1)) / norm;
    detail::AtomAccumulator acc;
    for (auto& [L, w] : by_len)
        for (std::size_t j = 0; j < L; ++j)
            acc.add(static_cast<std::int64_t>(j), static_cast<std::int64_t>(L), w / static_cast<long double>(L));
    return acc.finish();
}

struct CesaroDiagnostic {
    std::vector<Rational> signed_gap_average;  // a_n = (1/n) sum_{i<n} |mu(s^i E1 & E2) - mu E1 mu E2|
    std::vector<Rational> unsigned_average;    // (1/n) sum_{i<n} mu(s^i E1 & E2)
    std::vector<std::int64_t> overlap_counts;  // |s^i E1 & E2|
};

inline CesaroDiagnostic cesaro_mixing_diagnostic(const CellPermutation& sigma, const std::vector<CellIndex>& E1,
                                                 const std::vector<CellIndex>& E2, std::size_t N) {
    require(N >= 1, ErrorKind::DomainError, "N must be >= 1");
    const std::size_t q = sigma.size();
    std::vector<char> in1(q, 0), in2(q, 0);
    for (auto c : E1) {
        require(c < q, ErrorKind::DomainError, "set element out of range");
        in1[c] = 1;
    }
    for (auto c : E2) {
        require(c < q, ErrorKind::DomainError, "set element out of range");
        in2[c] = 1;
    }
    const auto n1 = static_cast<std::int64_t>(std::count(in1.begin(), in1.end(), 1));
    const auto n2 = static_cast<std::int64_t>(std::count(in2.begin(), in2.end(), 1));
    const auto Q = static_cast<std::int64_t>(q);
    CesaroDiagnostic out;
    std::vector<char> cur = in1;  // indicator of sigma^i(E1)
    std::int64_t abs_sum = 0, plain_sum = 0;
    for (std::size_t i = 0; i < N; ++i) {
        std::int64_t k = 0;
        for (std::size_t c = 0; c < q; ++c) k += (cur[c] && in2[c]);
        out.overlap_counts.push_back(k);
        // in units of 1/q^2
        abs_sum += std::llabs(Q * k - n1 * n2);
        plain_sum += k;
        const auto n = static_cast<std::int64_t>(i + 1);
        out.signed_gap_average.push_back(Rational(abs_sum, Q * Q) / Rational(n));
        out.unsigned_average.push_back(Rational(plain_sum, Q) / Rational(n));
        std::vector<char> next(q, 0);
        for (std::size_t c = 0; c < q; ++c)
            if (cur[c]) next[sigma[c]] = 1;
        cur = std::move(next);
    }
    return out;
}

struct Rigidity {
    std::uint64_t period = 1;
    double d_weak = 0.0;
};

// sigma^d = id for d = lcm of the cycle lengths; d_weak is measured on the grid.
inline Rigidity rigidity_detector(const CellPermutation& sigma, const DyadicGrid& grid) {
    Rigidity r;
    r.period = sigma.order();
    r.d_weak = d_weak(sigma.power(r.period), CellPermutation::identity(sigma.size()), grid);
    return r;
}

// Without a grid, cells are compared with the discrete metric.
inline Rigidity rigidity_detector(const CellPermutation& sigma) {
    Rigidity r;
    r.period = sigma.order();
    auto p = sigma.power(r.period);
    std::vector<double> d(sigma.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = p[i] == i ? 0.0 : 1.0;
    r.d_weak = weak_distance_uniform(d);
    return r;
}

inline double circular_distance(double a, double b) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

// True iff no atom of m1 lies within tol of an atom of m2 (both weights > 0).
inline bool mutual_singularity(const SpectralMeasure& m1, const SpectralMeasure& m2, double tol) {
    for (auto& a : m1.atoms) {
        if (a.weight <= 0.0) continue;
        for (auto& b : m2.atoms)
            if (b.weight > 0.0 && circular_distance(a.angle(), b.angle()) <= tol) return false;
    }
    return true;
}

} // namespace laxgrid
