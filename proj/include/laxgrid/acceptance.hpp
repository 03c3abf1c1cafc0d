#pragma once

// Property suites with a pass/fail verdict each. Shared by the acceptance
// test binary and `laxgrid oracle <suite>`.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "laxgrid/entropy.hpp"
#include "laxgrid/extension.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/lax.hpp"
#include "laxgrid/maps.hpp"
#include "laxgrid/metrics.hpp"
#include "laxgrid/oracle.hpp"
#include "laxgrid/report.hpp"
#include "laxgrid/spectral.hpp"
#include "laxgrid/towers.hpp"

namespace laxgrid::acceptance {

using laxgrid::detail::fmt_double;

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

namespace detail {

// Collects failures; keeps the first message for the report line.
class Tally {
public:
    void check(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        if (failures_++ == 0) first_ = what;
    }
    template <class F>
    void guard(F&& body, const std::string& what) {
        try {
            body();
        } catch (const std::exception& e) {
            check(false, what + ": " + e.what());
        }
    }
    bool ok() const { return failures_ == 0; }
    std::string summary() const {
        std::ostringstream s;
        s << checks_ << " checks, " << failures_ << " failures";
        if (failures_) s << "; first: " << first_;
        return s.str();
    }

private:
    std::size_t checks_ = 0, failures_ = 0;
    std::string first_;
};

template <class F>
CriterionResult timed(int id, std::string name, double limit, F&& body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.limit_seconds = limit;
    Tally t;
    auto t0 = std::chrono::steady_clock::now();
    t.guard([&] { body(t); }, "uncaught");
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = t.ok() && r.seconds < limit;
    r.detail = t.summary();
    if (r.seconds >= limit) r.detail += "; over time limit";
    return r;
}

// Random permutation whose cycles all have length >= min_len.
inline CellPermutation random_perm_min_cycle(std::size_t q, std::size_t min_len, std::mt19937_64& rng) {
    std::vector<std::size_t> sizes;
    std::size_t left = q;
    while (left > 0) {
        std::vector<std::size_t> ok;
        for (std::size_t s = min_len; s <= left; ++s)
            if (left - s == 0 || left - s >= min_len) ok.push_back(s);
        std::uniform_int_distribution<std::size_t> pick(0, ok.size() - 1);
        sizes.push_back(ok[pick(rng)]);
        left -= sizes.back();
    }
    std::vector<CellIndex> elems(q);
    std::iota(elems.begin(), elems.end(), CellIndex{0});
    std::shuffle(elems.begin(), elems.end(), rng);
    std::vector<CellIndex> img(q);
    std::size_t pos = 0;
    for (auto s : sizes) {
        for (std::size_t k = 0; k < s; ++k) img[elems[pos + k]] = elems[pos + (k + 1) % s];
        pos += s;
    }
    return CellPermutation(std::move(img));
}

template <class F>
void for_each_permutation(std::size_t q, F&& fn) {
    std::vector<CellIndex> p(q);
    std::iota(p.begin(), p.end(), CellIndex{0});
    do {
        fn(CellPermutation(p));
    } while (std::next_permutation(p.begin(), p.end()));
}

inline std::string str_q(std::size_t q) { return "q=" + std::to_string(q); }

} // namespace detail

inline CriterionResult cyclicization() {
    return detail::timed(1, "cyclicization", 10.0, [](detail::Tally& t) {
        auto check_one = [&](const CellPermutation& s) {
            const std::size_t q = s.size();
            auto c = cyclicize(s);
            t.check(oracle::cycle_count(c.result.image()) == 1, detail::str_q(q) + " product is not one cycle");
            for (CellIndex k = 0; k < q; ++k) {
                auto d = c.tau[k] > k ? c.tau[k] - k : k - c.tau[k];
                if (d > 2) t.check(false, detail::str_q(q) + " tau moves " + std::to_string(k) + " by " + std::to_string(d));
            }
            t.check(c.result == c.tau * s, detail::str_q(q) + " result differs from tau*sigma");
        };
        for (std::size_t q = 1; q <= 7; ++q) detail::for_each_permutation(q, check_one);
        std::mt19937_64 rng(1);
        for (std::size_t q = 8; q <= 64; ++q)
            for (int k = 0; k < 500; ++k) check_one(oracle::random_permutation(q, rng));
    });
}

inline CriterionResult bicyclization() {
    return detail::timed(2, "bicyclization", 5.0, [](detail::Tally& t) {
        std::mt19937_64 rng(2);
        const std::pair<int, int> shapes[] = {{2, 1}, {3, 1}, {2, 2}, {2, 3}};  // q = 4, 8, 16, 64
        for (auto [n, m] : shapes) {
            DyadicGrid g(n, m, Topology::torus);
            auto order = snake_order(g);
            const std::size_t q = g.cell_count();
            for (int k = 0; k < 200; ++k) {
                auto s = oracle::random_cycle(q, rng);
                auto b = bicyclize(s, order);
                auto lens = oracle::cycle_lengths(b.result.image());
                bool ok = lens.size() == 2 && lens[0] % 2 == 1 && lens[1] % 2 == 1 && lens[0] + lens[1] == q &&
                          std::gcd(lens[0], lens[1]) == 1;
                t.check(ok, detail::str_q(q) + " bad cycle structure");
            }
        }
    });
}

inline CriterionResult lax_bound() {
    return detail::timed(3, "lax_bound", 30.0, [](detail::Tally& t) {
        for (int m = 1; m <= 5; ++m) {
            DyadicGrid g(2, m, Topology::torus, 3);
            const std::uint32_t side = g.side();
            const std::uint32_t sx = 1 % side, sy = 3 % side;
            Point v{static_cast<double>(sx) / side, static_cast<double>(sy) / side};
            std::vector<std::pair<std::string, MeasureMap>> maps{
                {"identity", MeasureMap::identity(2)},
                {"translation", MeasureMap::translation(v)},
                {"cat", MeasureMap::cat_map()}};
            for (auto& [name, f] : maps)
                for (LaxMode mode : {LaxMode::plain, LaxMode::cyclic}) {
                    const std::string tag = name + " m=" + std::to_string(m) + " " + std::string(lax_mode_name(mode));
                    t.guard(
                        [&] {
                            auto r = lax_approximate(f, g, 8, mode);
                            auto& c = r.certificate;
                            t.check(c.all_matched_ok(), tag + ": matched pair with zero overlap");
                            double cap = 2.0 * std::max(c.cell_diameter, c.max_image_diameter) + 2.0 * c.cell_diameter;
                            t.check(c.strong_bound <= cap + 1e-12, tag + ": strong bound above cap");
                            if (name != "identity" && name != "translation") return;
                            std::vector<CellIndex> expect(g.cell_count());
                            for (CellIndex i = 0; i < g.cell_count(); ++i) {
                                auto k = g.multi_index(i);
                                if (name == "translation") {
                                    k[0] = (k[0] + sx) % side;
                                    k[1] = (k[1] + sy) % side;
                                }
                                expect[i] = g.index_of(std::span<const std::uint32_t>(k.data(), 2));
                            }
                            t.check(r.matching.image() == expect, tag + ": matching is not the exact permutation");
                            if (mode == LaxMode::plain) {
                                t.check(r.perm.image() == expect, tag + ": output is not the exact permutation");
                                t.check(delta_sum(f, r.perm, g, 3) == 0.0, tag + ": delta_sum is not zero");
                            }
                        },
                        tag);
                }
        }
    });
}

inline CriterionResult iterate_inequality() {
    return detail::timed(4, "iterate_inequality", 60.0, [](detail::Tally& t) {
        const int m = 3, r = 4;
        DyadicGrid g(2, m, Topology::torus, r);
        auto f = MeasureMap::cat_map();
        auto lax = lax_approximate(f, g, 8, LaxMode::cyclic);
        t.check(lax.perm.is_cyclic(), "cyclic Lax permutation is not cyclic");
        const double ds = delta_sum(f, lax.perm, g, r);
        const double eps = static_cast<double>(g.cell_count()) * g.dim() * std::ldexp(1.0, -r);
        for (int p = 1; p <= 10; ++p) {
            double lhs = delta_sum_iterate(f, lax.perm, p, g, r);
            t.check(lhs <= p * ds + eps + 1e-12, "p=" + std::to_string(p) + ": " + fmt_double(lhs) + " > " +
                                                     fmt_double(p * ds + eps));
        }
    });
}

inline CriterionResult towers() {
    return detail::timed(5, "towers", 10.0, [](detail::Tally& t) {
        std::mt19937_64 rng(5);
        auto rokhlin_checks = [&](const CellPermutation& s) {
            const std::size_t q = s.size();
            auto lens = s.cycle_lengths();
            const std::size_t min_len = *std::min_element(lens.begin(), lens.end());
            for (std::size_t h = 1; h <= min_len; ++h) {
                auto tw = rokhlin_tower(s, h);
                std::vector<int> hits(q, 0);
                for (auto& level : tw.levels(s))
                    for (auto c : level) ++hits[c];
                t.check(std::all_of(hits.begin(), hits.end(), [](int x) { return x <= 1; }),
                        detail::str_q(q) + " Rokhlin levels overlap");
                Rational need = Rational(1) - Rational(static_cast<std::int64_t>((h - 1) * lens.size()),
                                                       static_cast<std::int64_t>(q));
                t.check(tw.coverage() >= need, detail::str_q(q) + " Rokhlin coverage too small");
            }
        };
        auto column_checks = [&](const CellPermutation& s, std::size_t p, std::size_t q2) {
            auto two = two_column_partition(s, p, q2);
            t.check(two.exact_cover(s), detail::str_q(s.size()) + " two-column cover is not exact");
            if (s.size() % (p + q2) == 0) {
                try {
                    auto eq = two_column_partition(s, p, q2, true);
                    t.check(eq.exact_cover(s) && eq.t1.size() == eq.t2.size(),
                            detail::str_q(s.size()) + " equal-base partition is wrong");
                } catch (const Error& e) {
                    t.check(e.kind() == ErrorKind::EqualSizeInfeasible, e.what());
                }
            }
        };
        for (std::size_t q = 1; q <= 8; ++q)
            detail::for_each_permutation(q, [&](const CellPermutation& s) {
                rokhlin_checks(s);
                auto lens = s.cycle_lengths();
                if (*std::min_element(lens.begin(), lens.end()) >= 6) column_checks(s, 2, 3);
            });
        for (std::size_t q = 9; q <= 12; ++q)
            for (int k = 0; k < 2000; ++k) {
                std::uniform_int_distribution<std::size_t> L(1, q);
                rokhlin_checks(detail::random_perm_min_cycle(q, L(rng), rng));
                column_checks(detail::random_perm_min_cycle(q, 6, rng), 2, 3);
            }
        // cycles of length >= 15 need more than 12 cells
        for (std::size_t q = 15; q <= 60; ++q)
            for (int k = 0; k < 40; ++k) column_checks(detail::random_perm_min_cycle(q, 15, rng), 3, 5);
        std::uniform_int_distribution<std::int64_t> H(1, 40), extra(0, 500);
        int triples = 0;
        while (triples < 10000) {
            std::int64_t p = H(rng), q2 = H(rng);
            if (std::gcd(p, q2) != 1) continue;
            std::int64_t k = p * q2 + extra(rng);
            auto fast = bezout_split(k, p, q2);
            auto slow = oracle::bezout_search(k, p, q2);
            t.check(slow && fast.alpha == slow->first && fast.beta == slow->second,
                    "bezout mismatch at k=" + std::to_string(k));
            t.check(fast.alpha * p + fast.beta * q2 == k, "bezout identity fails");
            ++triples;
        }
    });
}

inline CriterionResult rank_one() {
    return detail::timed(6, "rank_one", 30.0, [](detail::Tally& t) {
        auto exact_case = [&](const std::string& tag, const MeasureMap& f, const CellPermutation& fm,
                              const DyadicGrid& g, int r) {
            auto c = rank_one_base(f, fm, g, r);
            t.check(c.measure_C - c.measure_A == Rational(0), tag + ": mu(C) - mu(A) = " + (c.measure_C - c.measure_A).str());
            t.check(c.disjointness_ok, tag + ": iterates of A overlap");
            t.check(c.max_partition_error == Rational(0), tag + ": partition error nonzero");
        };
        {
            DyadicGrid g(1, 2, Topology::torus, 4);
            exact_case("quarter shift", MeasureMap::translation(Point{0.25}),
                       CellPermutation({1, 2, 3, 0}), g, 4);
        }
        {
            DyadicGrid g(1, 3, Topology::torus, 4);
            exact_case("3/8 shift", MeasureMap::translation(Point{0.375}),
                       CellPermutation({3, 4, 5, 6, 7, 0, 1, 2}), g, 4);
        }
        {
            DyadicGrid g(2, 2, Topology::torus, 3);
            auto s = CellPermutation::cycle_along(snake_order(g));
            exact_case("snake cycle", MeasureMap::cell_translation(g, s), s, g, 3);
            std::mt19937_64 rng(6);
            auto rc = oracle::random_cycle(g.cell_count(), rng);
            exact_case("random cycle", MeasureMap::cell_translation(g, rc), rc, g, 3);
        }
        {
            const int m = 2, r = 6;
            DyadicGrid g(1, m, Topology::torus, r);
            auto f = MeasureMap::translation(Point{158.0 / 256.0});
            auto lax = lax_approximate(f, g, 8, LaxMode::cyclic);
            auto c = rank_one_base(f, lax.perm, g, r);
            double ds = delta_sum(f, lax.perm, g, r);
            double eps = static_cast<double>(g.cell_count()) * g.dim() * std::ldexp(1.0, -r);
            double gap = (c.measure_C - c.measure_A).to_double();
            t.check(gap <= ds / 2.0 + eps + 1e-12,
                    "golden: " + fmt_double(gap) + " > " + fmt_double(ds / 2.0 + eps));
        }
    });
}

inline CriterionResult entropy() {
    return detail::timed(7, "entropy", 60.0, [](detail::Tally& t) {
        for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 5}, {2, 1}, {2, 3}, {3, 2}}) {
            DyadicGrid g(n, m, Topology::torus, 1);
            double h = partition_entropy(cell_partition(g, 1));
            t.check(std::abs(h - std::log(static_cast<double>(g.cell_count()))) <= 1e-12,
                    "uniform partition entropy off at q=" + std::to_string(g.cell_count()));
        }
        std::mt19937_64 rng(7);
        for (int k = 0; k < 100; ++k) {
            std::uniform_int_distribution<int> parts(1, 6);
            const int a = parts(rng), b = parts(rng);
            auto random_partition = [&](int count) {
                Partition P(static_cast<std::size_t>(count), RefinedSet(2, 2, 2));
                std::uniform_int_distribution<int> lab(0, count - 1);
                for (std::uint64_t x = 0; x < P[0].size(); ++x) P[static_cast<std::size_t>(lab(rng))].set(x);
                P.erase(std::remove_if(P.begin(), P.end(), [](const RefinedSet& s) { return s.none(); }), P.end());
                return P;
            };
            auto P = random_partition(a), Q = random_partition(b);
            double hp = partition_entropy(P), hq = partition_entropy(Q), hj = partition_entropy(join(P, Q));
            t.check(hj <= hp + hq + 1e-12, "join entropy exceeds the sum");
            t.check(hj + 1e-12 >= std::max(hp, hq), "join entropy below a factor");
        }
        for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}}) {
            DyadicGrid g(n, m, Topology::torus, 1);
            auto P = cell_partition(g, 1);
            for (int rep = 0; rep < 3; ++rep) {
                auto s = oracle::random_permutation(g.cell_count(), rng);
                for (int l = 1; l <= 4; ++l) {
                    double rate = entropy_rate_estimate(s, g, P, l);
                    t.check(std::abs(rate - std::log(static_cast<double>(g.cell_count())) / l) <= 1e-12,
                            "permutation entropy rate is not log(q)/l");
                }
            }
        }
        for (int k = 2; k <= 4; ++k) {
            auto model = RectModel::baker(k);
            double eps = 0.5 / (2 * k + 1);
            double h = horseshoe_entropy_lower(model, 10, eps);
            t.check(h >= std::log(static_cast<double>(k)) - 1e-9, "horseshoe bound below log k for k=" + std::to_string(k));
            std::uint64_t need = 1;
            for (int l = 1; l <= 4; ++l) {
                need *= static_cast<std::uint64_t>(k);
                auto count = markov_components(model.power(l), model.core, model.core);
                t.check(count >= need, "k=" + std::to_string(k) + " l=" + std::to_string(l) + ": " +
                                           std::to_string(count) + " components < " + std::to_string(need));
            }
        }
    });
}

inline CriterionResult spectral() {
    return detail::timed(8, "spectral", 30.0, [](detail::Tally& t) {
        std::mt19937_64 rng(8);
        std::uniform_int_distribution<std::size_t> Q(1, 64);
        std::normal_distribution<double> gauss;
        for (int k = 0; k < 100; ++k) {
            const std::size_t q = Q(rng);
            auto s = oracle::random_permutation(q, rng);
            std::vector<std::complex<double>> v(q);
            double norm2 = 0.0;
            for (auto& x : v) {
                x = {gauss(rng), gauss(rng)};
                norm2 += std::norm(x);
            }
            double mass = spectral_measure_of_vector(s, v).total_mass();
            t.check(std::abs(mass - norm2) <= 1e-12 * std::max(1.0, norm2), "mass not conserved at q=" + std::to_string(q));
            double ty = spectral_type(s).total_mass();
            t.check(std::abs(ty - 1.0) <= 1e-12, "spectral type not normalized at q=" + std::to_string(q));
        }
        for (std::size_t q = 1; q <= 32; ++q) {
            for (int rep = 0; rep < 4; ++rep) {
                auto s = oracle::random_cycle(q, rng);
                for (int pair = 0; pair < 50; ++pair) {
                    std::vector<CellIndex> E1, E2;
                    std::bernoulli_distribution coin(0.5);
                    for (CellIndex c = 0; c < q; ++c) {
                        if (coin(rng)) E1.push_back(c);
                        if (coin(rng)) E2.push_back(c);
                    }
                    auto d = cesaro_mixing_diagnostic(s, E1, E2, q);
                    Rational want(static_cast<std::int64_t>(E1.size() * E2.size()), static_cast<std::int64_t>(q * q));
                    t.check(d.unsigned_average.back() == want, "Cesaro identity fails at q=" + std::to_string(q));
                    std::size_t i = pair % q;
                    t.check(d.overlap_counts[i] == oracle::orbit_overlap(s, E1, E2, i), "overlap count mismatch");
                }
            }
        }
        for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 3}, {2, 1}, {2, 2}, {3, 2}, {2, 3}}) {
            DyadicGrid g(n, m, Topology::torus);
            for (int rep = 0; rep < 10; ++rep) {
                auto s = oracle::random_permutation(g.cell_count(), rng);
                auto r = rigidity_detector(s, g);
                auto lens = oracle::cycle_lengths(s.image());
                std::uint64_t l = 1;
                for (auto x : lens) l = std::lcm(l, static_cast<std::uint64_t>(x));
                t.check(r.period == l, "rigidity period is not the lcm of cycle lengths");
                t.check(r.d_weak == 0.0, "d_weak nonzero at the period");
                t.check(rigidity_detector(s).d_weak == 0.0, "discrete d_weak nonzero at the period");
            }
        }
    });
}

inline CriterionResult twist_maps() {
    return detail::timed(9, "twist_maps", 30.0, [](detail::Tally& t) {
        TwistMap unit(0.0, 0.0, 1.0);
        Point z = unit(Point{0.25, 0.0});
        t.check(std::hypot(z[0] + 0.25, z[1]) <= 1e-12, "unit twist does not send 1/4 to -1/4");
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        TwistMap tw(0.5, 0.5, 0.8);
        for (int k = 0; k < 1000; ++k) {
            double ang = 2.0 * std::numbers::pi * U(rng), rad = 0.4 + 0.6 * U(rng);
            Point p{0.5 + rad * std::cos(ang), 0.5 + rad * std::sin(ang)};
            Point out = tw(p);
            if (out[0] != p[0] || out[1] != p[1]) t.check(false, "twist moves a point outside its support");
        }
        auto jac_points = [&](const MeasureMap& f, double margin) {
            std::vector<Point> pts;
            while (pts.size() < 1000) {
                Point p{0.02 + 0.96 * U(rng), 0.02 + 0.96 * U(rng)};
                if (twist_breakpoint_distance(f, p) >= margin) pts.push_back(p);
            }
            return pts;
        };
        auto single = MeasureMap::twist(tw);
        t.check(jacobian_check(single, jac_points(single, 1e-3)) <= 1e-4, "single twist Jacobian off");

        const double delta = 0.1;
        std::vector<PointPair> pairs{{Point{0.2, 0.2}, Point{0.25, 0.23}},
                                     {Point{0.7, 0.3}, Point{0.66, 0.36}},
                                     {Point{0.5, 0.8}, Point{0.55, 0.8}}};
        auto plan = move_points_plan(pairs, delta);
        for (auto& [x, y] : pairs) {
            Point got = plan.map.apply(x);
            t.check(std::hypot(got[0] - y[0], got[1] - y[1]) <= 1e-9, "move_points misses a target");
        }
        t.check(jacobian_check(plan.map, jac_points(plan.map, 1e-3)) <= 1e-4, "composed Jacobian off");
        double sup = 0.0;
        for (int k = 0; k < 20000; ++k) {
            Point p{U(rng), U(rng)};
            Point q = plan.map.apply(p);
            sup = std::max(sup, std::hypot(q[0] - p[0], q[1] - p[1]));
        }
        t.check(sup < delta, "sampled displacement " + fmt_double(sup) + " not below delta");

        // Cyclic relabelling of four grid centres.
        DyadicGrid g(2, 3, Topology::cube);
        std::vector<CellIndex> ring{g.index_of(std::array<std::uint32_t, 2>{3, 3}),
                                    g.index_of(std::array<std::uint32_t, 2>{4, 3}),
                                    g.index_of(std::array<std::uint32_t, 2>{4, 4}),
                                    g.index_of(std::array<std::uint32_t, 2>{3, 4})};
        std::vector<PointPair> cyc;
        for (std::size_t i = 0; i < ring.size(); ++i)
            cyc.push_back({g.center(ring[i]), g.center(ring[(i + 1) % ring.size()])});
        auto staged = move_points_staged(cyc, 0.2);
        for (auto& [x, y] : cyc) {
            Point got = staged.map.apply(x);
            t.check(std::hypot(got[0] - y[0], got[1] - y[1]) <= 1e-9, "staged move misses a target");
        }
        sup = 0.0;
        for (int k = 0; k < 20000; ++k) {
            Point p{U(rng), U(rng)};
            Point q = staged.map.apply(p);
            sup = std::max(sup, std::hypot(q[0] - p[0], q[1] - p[1]));
        }
        t.check(sup < 0.2, "staged displacement " + fmt_double(sup) + " not below delta");
    });
}

inline ExperimentConfig determinism_config() {
    return parse_config(
        "map = cat\n"
        "orders = 1..3\n"
        "mode = cyclic\n"
        "analyses = speed,towers,rank_one,entropy,spectral,cesaro\n"
        "seed = 42\n"
        "entropy_l = 2\n");
}

inline CriterionResult determinism() {
    return detail::timed(10, "determinism", 5.0, [](detail::Tally& t) {
        auto cfg = determinism_config();
        auto a = report_fingerprint(run_experiment(cfg));
        auto b = report_fingerprint(run_experiment(cfg));
        t.check(a == b, "reports differ between runs");
        t.check(a.find("\"timing\"") == std::string::npos, "timing block leaked into the comparison");
    });
}

struct Suite {
    const char* key;
    std::function<CriterionResult()> run;
};

inline const std::vector<Suite>& suites() {
    static const std::vector<Suite> v{{"cyclicize", cyclicization}, {"bicyclize", bicyclization},
                                      {"lax", lax_bound},           {"iterate", iterate_inequality},
                                      {"towers", towers},           {"rank_one", rank_one},
                                      {"entropy", entropy},         {"spectral", spectral},
                                      {"twist", twist_maps},        {"determinism", determinism}};
    return v;
}

inline std::string format_line(const CriterionResult& r) {
    std::ostringstream s;
    s << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << " " << r.name << ": " << r.detail << " ("
      << std::fixed;
    s.precision(2);
    s << r.seconds << " s, limit " << r.limit_seconds << " s)";
    return s.str();
}

} // namespace laxgrid::acceptance
