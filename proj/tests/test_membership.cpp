#include <catch2/catch_amalgamated.hpp>

#include "grid.hpp"
#include "svtan/membership.hpp"

#include <random>
#include <set>

using namespace svtan;

namespace {

std::set<Point> generator_sums(const AffineSemigroup& s, std::int64_t cap) {
    std::set<Point> seen{Point(s.n(), 0)};
    std::vector<Point> frontier{Point(s.n(), 0)};
    while (!frontier.empty()) {
        std::vector<Point> next;
        for (const auto& x : frontier)
            for (const auto& g : s.generator_points()) {
                Point y = x;
                std::int64_t total = 0;
                for (int c = 0; c < s.n(); ++c) total += (y[c] += g[c]);
                if (total <= cap && seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen;
}

bool member(const AffineSemigroup& s, std::initializer_list<long> v) { return semigroup_member(s, LatticeVector(v)); }

bool expected_normal(const SVParams& p) {
    if (p.all_a_one()) return true;
    if (p.k() == 1 && p.a()[0] == 2) return true;
    return false;
}

}  // namespace

TEST_CASE("semigroup membership fixtures") {
    AffineSemigroup s22(SVParams({2, 2}, {1, 1}));
    REQUIRE_FALSE(member(s22, {1, 0}));
    REQUIRE_FALSE(member(s22, {3, 0}));
    REQUIRE(member(s22, {1, 1}));
    REQUIRE(member(s22, {2, 0}));
    REQUIRE(member(s22, {0, 0}));
    AffineSemigroup s12(SVParams({1, 2}, {1, 1}));
    REQUIRE_FALSE(member(s12, {0, 3}));
    REQUIRE(member(s12, {1, 2}));
    REQUIRE_FALSE(member(s12, {-1, 3}));
    REQUIRE_THROWS_AS(member(s12, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("semigroup membership equals generator-sum enumeration") {
    for (const auto& p : testgrid::sweep_grid()) {
        if (p.n() > 4) continue;
        AffineSemigroup s(p);
        const std::int64_t m = p.n() <= 2 ? 6 : (p.n() == 3 ? 4 : 3);
        const auto sums = generator_sums(s, 2 * m * p.n());
        Point x(p.n(), 0);
        for (;;) {
            INFO(p.to_string() << " " << LatticeVector::from_int64(x).to_string());
            REQUIRE(s.in_semigroup(x) == (sums.count(x) > 0));
            int c = 0;
            for (; c < p.n(); ++c) {
                if (x[c] < m) {
                    ++x[c];
                    break;
                }
                x[c] = 0;
            }
            if (c == p.n()) break;
        }
    }
}

TEST_CASE("semigroup is closed under addition") {
    std::mt19937_64 rng(3);
    for (const auto& p : testgrid::sweep_grid()) {
        AffineSemigroup s(p);
        std::uniform_int_distribution<std::int64_t> coord(0, 5);
        for (int t = 0; t < 100; ++t) {
            Point u(p.n()), v(p.n()), w(p.n());
            for (int c = 0; c < p.n(); ++c) {
                u[c] = coord(rng);
                v[c] = coord(rng);
                w[c] = u[c] + v[c];
            }
            if (s.in_semigroup(u) && s.in_semigroup(v)) REQUIRE(s.in_semigroup(w));
        }
    }
}

TEST_CASE("decompositions re-sum to the input") {
    AffineSemigroup s(SVParams({1, 2}, {1, 2}));
    auto d = decompose(s, {1, 1, 1});
    REQUIRE(d);
    REQUIRE(d->size() == 1);
    REQUIRE((*d)[0] == LatticeVector{1, 1, 1});
    REQUIRE(decompose(s, {0, 0, 0})->empty());
    REQUIRE_FALSE(decompose(s, {0, 1, 0}));

    std::mt19937_64 rng(5);
    for (const auto& p : testgrid::sweep_grid()) {
        AffineSemigroup sg(p);
        std::set<LatticeVector> gens(sg.generators().begin(), sg.generators().end());
        std::uniform_int_distribution<std::int64_t> coord(0, 6);
        for (int t = 0; t < 40; ++t) {
            LatticeVector v(static_cast<std::size_t>(p.n()));
            for (int c = 0; c < p.n(); ++c) v[c] = static_cast<long>(coord(rng));
            auto parts = decompose(sg, v);
            REQUIRE(parts.has_value() == semigroup_member(sg, v));
            if (!parts) continue;
            LatticeVector sum(static_cast<std::size_t>(p.n()));
            for (const auto& g : *parts) {
                REQUIRE(gens.count(g));
                sum += g;
            }
            REQUIRE(sum == v);
        }
    }
}

TEST_CASE("hole fixtures") {
    AffineSemigroup s3(SVParams({3}, {1}));
    auto h3 = find_holes(s3, Window{6});
    REQUIRE(h3.ambient == std::vector<LatticeVector>{{1}});
    REQUIRE(h3.group == std::vector<LatticeVector>{{1}});

    AffineSemigroup s22(SVParams({2}, {2}));
    auto h22 = find_holes(s22, Window{4});
    REQUIRE(h22.group.empty());
    std::set<LatticeVector> odd;
    for (long x = 0; x <= 4; ++x)
        for (long y = 0; y <= 4; ++y)
            if ((x + y) % 2) odd.insert(LatticeVector{x, y});
    REQUIRE(std::set<LatticeVector>(h22.ambient.begin(), h22.ambient.end()) == odd);

    AffineSemigroup s111(SVParams({1, 1, 1}, {1, 1, 1}));
    REQUIRE(find_holes(s111, Window{4}).group.empty());
}

TEST_CASE("holes lie in the cone and outside S") {
    for (const auto& p : testgrid::sweep_grid()) {
        if (p.n() > 6) continue;
        AffineSemigroup s(p);
        auto holes = find_holes(s, Window{2 * p.max_a()}, 5000);
        std::set<LatticeVector> ambient(holes.ambient.begin(), holes.ambient.end());
        for (const auto& h : holes.ambient) {
            REQUIRE(s.cone().contains(h));
            REQUIRE_FALSE(semigroup_member(s, h));
        }
        for (const auto& h : holes.group) {
            REQUIRE(ambient.count(h));
            REQUIRE(s.group().contains(h));
        }
        // Axis holes: e_{i,j} when a_i >= 3 and odd axis points when a_i = 2.
        if (s.trivial()) continue;
        for (int i = 0; i < p.k(); ++i) {
            LatticeVector e(static_cast<std::size_t>(p.n()));
            if (p.a()[i] >= 3) {
                e[p.index(i, 0)] = 1;
                INFO(p.to_string());
                REQUIRE(ambient.count(e));
            } else if (p.a()[i] == 2) {
                e[p.index(i, 0)] = 3;
                if (!holes.truncated) REQUIRE(ambient.count(e));
            }
        }
    }
}

TEST_CASE("normality matches the known list on the grid") {
    for (const auto& p : testgrid::sweep_grid()) {
        AffineSemigroup s(p);
        auto v = is_normal(s, default_window(p));
        INFO(p.to_string() << " " << v.reason);
        REQUIRE((v.status == Status::Yes) == expected_normal(p));
        if (v.status == Status::No) {
            REQUIRE(v.witness);
            REQUIRE(s.cone().contains(*v.witness));
            REQUIRE(s.group().contains(*v.witness));
            REQUIRE_FALSE(semigroup_member(s, *v.witness));
        }
    }
    AffineSemigroup s12(SVParams({1, 2}, {1, 1}));
    auto v = is_normal(s12, default_window(s12.params()));
    REQUIRE(*v.witness == LatticeVector{0, 1});
    REQUIRE_THROWS_AS(is_normal(s12, Window{3}), std::invalid_argument);
    AffineSemigroup s11(SVParams({1, 1}, {2, 3}));
    REQUIRE(is_normal(s11, default_window(s11.params())).certified_by == std::optional<std::string>("N1"));
}

TEST_CASE("smoothness fixtures") {
    auto smooth = [](std::vector<int> a, std::vector<int> b) {
        AffineSemigroup s(SVParams(a, b));
        return is_smooth(s, default_window(s.params())).status;
    };
    REQUIRE(smooth({1, 1}, {1, 3}) == Status::Yes);
    REQUIRE(smooth({2}, {1}) == Status::Yes);
    REQUIRE(smooth({1}, {4}) == Status::Yes);
    REQUIRE(smooth({2}, {2}) == Status::No);
    REQUIRE(smooth({1, 1}, {2, 2}) == Status::No);
    REQUIRE(smooth({2, 2}, {1, 1}) == Status::No);
}

TEST_CASE("smoothness matches the known list on the grid") {
    for (const auto& p : testgrid::sweep_grid()) {
        AffineSemigroup s(p);
        const bool expected = (p.k() == 2 && p.a() == std::vector<int>{1, 1} && p.b()[0] == 1) ||
                              (p.k() == 1 && (p.a()[0] == 1 || (p.a()[0] == 2 && p.b()[0] == 1)));
        INFO(p.to_string());
        REQUIRE((is_smooth(s, default_window(p)).status == Status::Yes) == expected);
    }
}
