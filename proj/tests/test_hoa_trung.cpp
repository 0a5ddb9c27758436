#include <catch2/catch_amalgamated.hpp>

#include "grid.hpp"
#include "svtan/hoa_trung.hpp"

#include <functional>
#include <random>
#include <set>

using namespace svtan;

namespace {

FacetId F(int i, int j) { return FacetId::coordinate(i - 1, j - 1); }
FacetId F(int i) { return FacetId::balance(i - 1); }

Point pt(std::initializer_list<std::int64_t> v) { return Point(v); }

// Elements of S with coordinate sum <= cap, by closure over generator sums.
std::set<Point> semigroup_ball(const AffineSemigroup& s, std::int64_t cap) {
    std::set<Point> seen{Point(s.n(), 0)};
    std::vector<Point> frontier{Point(s.n(), 0)};
    while (!frontier.empty()) {
        std::vector<Point> next;
        for (const auto& x : frontier) {
            for (const auto& g : s.generator_points()) {
                Point y = x;
                std::int64_t total = 0;
                for (int c = 0; c < s.n(); ++c) total += (y[c] += g[c]);
                if (total > cap) continue;
                if (seen.insert(y).second) next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

std::int64_t dot(const Point& a, const Point& b) {
    std::int64_t out = 0;
    for (std::size_t c = 0; c < a.size(); ++c) out += a[c] * b[c];
    return out;
}

// Definition of S_F read literally: some y in S on F with x + y in S.
bool sf_by_definition(const AffineSemigroup& s, const std::set<Point>& ball, std::size_t facet, const Point& x) {
    for (const auto& y : ball) {
        if (dot(s.functional(facet), y) != 0) continue;
        Point z(x.size());
        for (std::size_t c = 0; c < x.size(); ++c) z[c] = x[c] + y[c];
        if (ball.count(z)) return true;
    }
    return false;
}

void for_each_box_point(int n, std::int64_t m, const std::function<void(const Point&)>& f) {
    Point x(n, -m);
    for (;;) {
        f(x);
        int c = 0;
        for (; c < n; ++c) {
            if (x[c] < m) {
                ++x[c];
                break;
            }
            x[c] = -m;
        }
        if (c == n) return;
    }
}

std::set<std::vector<int>> maximal_vertex_sets(const AbstractComplex& c) {
    std::set<std::vector<int>> out;
    for (auto f : c.maximal_faces()) out.insert(c.vertices_of(f));
    return out;
}

}  // namespace

TEST_CASE("face generators") {
    AffineSemigroup s12(SVParams({1, 2}, {1, 2}));
    auto g = face_generators(s12, F(1, 1));
    REQUIRE(g.size() == 3);
    for (const auto& v : g) {
        REQUIRE(v[0] == 0);
        REQUIRE(v[1] + v[2] == 2);
    }
    // The cone of a=(1,1), b=(1,1) is a ray; its only facet is the origin.
    AffineSemigroup s11(SVParams({1, 1}, {1, 1}));
    REQUIRE(face_generators(s11, F(1, 1)).empty());
    REQUIRE_THROWS_AS(face_generators(s11, F(1)), std::invalid_argument);
    AffineSemigroup s22(SVParams({2, 2}, {1, 1}));
    REQUIRE(face_generators(s22, F(2, 1)) == std::vector<LatticeVector>{{2, 0}});
    REQUIRE_THROWS_AS(face_generators(s22, F(1)), std::invalid_argument);
}

TEST_CASE("sf_member fixtures") {
    AffineSemigroup s(SVParams({2, 2}, {1, 1}));
    const auto B = default_bound(s.params(), default_window(s.params()));
    REQUIRE_FALSE(sf_member(s, F(1, 1), {0, 1}, B).member);
    REQUIRE_FALSE(sf_member(s, F(1, 1), {0, 1}, 10 * B).member);
    auto r = sf_member(s, F(1, 1), {1, -2}, B);
    REQUIRE(r.member);
    REQUIRE(r.witness);
    REQUIRE(semigroup_member(s, *r.witness));
    REQUIRE((*r.witness)[0] == 0);
    REQUIRE(semigroup_member(s, LatticeVector{1, -2} + *r.witness));
    REQUIRE_FALSE(sf_member(s, F(1, 1), {-1, 2}, B).member);

    AffineSemigroup s2(SVParams({2, 2}, {1, 2}));
    auto e11 = sf_member(s2, F(1, 1), {1, 0, 0}, B);
    REQUIRE(e11.member);
    REQUIRE(e11.witness);

    AffineSemigroup line(SVParams({1, 1}, {1, 1}));
    REQUIRE_THROWS_AS(sf_member(line, F(1, 1), {1, 0}, B), std::domain_error);
}

TEST_CASE("S_F closed forms for a=(1,2), b=(1,2)") {
    AffineSemigroup s(SVParams({1, 2}, {1, 2}));
    const std::size_t f11 = s.facet_index(F(1, 1)), f21 = s.facet_index(F(2, 1)), f22 = s.facet_index(F(2, 2)),
                      f1 = s.facet_index(F(1));
    for_each_box_point(3, 5, [&](const Point& x) {
        REQUIRE(s.in_group(x));
        const bool in11 = x[0] > 0 || (x[0] == 0 && (x[1] + x[2]) % 2 == 0);
        REQUIRE(s.quotient(f11).contains(x) == in11);
        REQUIRE(s.quotient(f21).contains(x) == (x[1] >= 0));
        REQUIRE(s.quotient(f22).contains(x) == (x[2] >= 0));
        REQUIRE(s.quotient(f1).contains(x) == (x[0] <= x[1] + x[2]));
    });
}

TEST_CASE("S_F closed forms for k=1, a=2") {
    for (int b : {2, 3}) {
        AffineSemigroup s(SVParams({2}, {b}));
        for_each_box_point(b, 4, [&](const Point& x) {
            std::int64_t total = 0;
            for (auto v : x) total += v;
            REQUIRE(s.in_group(x) == (total % 2 == 0));
            if (total % 2 != 0) return;
            for (int j = 1; j <= b; ++j) REQUIRE(s.quotient(s.facet_index(F(1, j))).contains(x) == (x[j - 1] >= 0));
        });
    }
}

TEST_CASE("quotient test of S_F agrees with the literal definition") {
    for (const auto& p : testgrid::sweep_grid(2, 3)) {
        if (p.n() > 4) continue;
        AffineSemigroup s(p);
        if (s.trivial()) continue;
        const std::int64_t m = 2;
        const auto ball = semigroup_ball(s, p.n() <= 3 ? 18 : 14);
        for (std::size_t f = 0; f < s.facets().size(); ++f) {
            for_each_box_point(p.n(), m, [&](const Point& x) {
                if (!s.in_group(x)) return;
                const bool exact = s.quotient(f).contains(x);
                const bool literal = sf_by_definition(s, ball, f, x);
                // The literal search is bounded, so it can only miss members.
                if (literal) REQUIRE(exact);
                if (exact) REQUIRE(literal);
                auto r = sf_member(s, s.facets()[f], LatticeVector::from_int64(x), 60);
                REQUIRE(r.member == exact);
                if (r.member) REQUIRE(r.witness);
            });
        }
    }
}

TEST_CASE("S is contained in every S_F and S_F is closed under adding S") {
    std::mt19937_64 rng(11);
    for (const auto& p : testgrid::sweep_grid(2, 3)) {
        AffineSemigroup s(p);
        if (s.trivial() || p.n() > 5) continue;
        std::uniform_int_distribution<std::int64_t> coord(-4, 4);
        std::uniform_int_distribution<std::size_t> gen(0, s.generator_points().size() - 1);
        for (int trial = 0; trial < 200; ++trial) {
            Point x(p.n());
            for (auto& v : x) v = coord(rng);
            if (!s.in_group(x)) continue;
            Point y = x;
            for (int t = 0; t < 3; ++t) {
                const auto& g = s.generator_points()[gen(rng)];
                for (int c = 0; c < p.n(); ++c) y[c] += g[c];
            }
            Point nn(p.n());
            for (int c = 0; c < p.n(); ++c) nn[c] = std::abs(x[c]);
            for (std::size_t f = 0; f < s.facets().size(); ++f) {
                if (s.quotient(f).contains(x)) REQUIRE(s.quotient(f).contains(y));
                if (s.in_semigroup(nn)) REQUIRE(s.quotient(f).contains(nn));
            }
        }
    }
}

TEST_CASE("S' = S fixtures") {
    auto run = [](std::vector<int> a, std::vector<int> b) {
        AffineSemigroup s(SVParams(a, b));
        auto w = default_window(s.params());
        return s_prime_equals_s(s, w, default_bound(s.params(), w));
    };
    auto r2 = run({2, 2}, {1, 2});
    REQUIRE_FALSE(r2.holds);
    REQUIRE(*r2.witness == LatticeVector{1, 0, 0});
    REQUIRE(run({2, 2}, {1, 1}).holds);
    for (int a = 3; a <= 4; ++a)
        for (int b = 2; b <= 3; ++b) {
            auto r = run({a}, {b});
            REQUIRE_FALSE(r.holds);
            LatticeVector e(static_cast<std::size_t>(b));
            e[0] = 1;
            REQUIRE(*r.witness == e);
        }
}

TEST_CASE("pi_J fixtures for a=(1,2), b=(1,2)") {
    AffineSemigroup s(SVParams({1, 2}, {1, 2}));
    using V = std::set<std::vector<int>>;
    REQUIRE(maximal_vertex_sets(build_pi_J(s, {F(1, 1), F(2, 1)})) == V{{0, 1}});
    REQUIRE(maximal_vertex_sets(build_pi_J(s, {F(1, 1), F(1)})) == V{{0}, {1}});
    REQUIRE(maximal_vertex_sets(build_pi_J(s, {F(2, 1), F(2, 2)})) == V{{0}, {1}});
    REQUIRE(maximal_vertex_sets(build_pi_J(s, {F(1, 1), F(2, 1), F(2, 2)})) == V{{0, 1}, {0, 2}});
    REQUIRE(maximal_vertex_sets(build_pi_J(s, {F(2, 1), F(2, 2), F(1)})) == V{{0, 2}, {1, 2}});
    REQUIRE_THROWS_AS(build_pi_J(s, {}), std::invalid_argument);
}

TEST_CASE("the ten J cases of a=(1,2), b=(1,2)") {
    AffineSemigroup s(SVParams({1, 2}, {1, 2}));
    const auto w = default_window(s.params());
    scan::SignatureAtlas atlas(s, w.radius);
    struct Case {
        std::vector<FacetId> J;
        bool nonempty;
        bool acyclic;
        std::optional<Point> sample;
    };
    const std::vector<Case> cases = {
        {{F(1, 1), F(2, 1)}, true, true, pt({-1, -1, 5})},
        {{F(1, 1), F(2, 2)}, true, true, pt({-1, 5, -1})},
        {{F(1, 1), F(1)}, false, false, std::nullopt},
        {{F(2, 1), F(2, 2)}, false, false, std::nullopt},
        {{F(2, 1), F(1)}, true, true, pt({1, -1, 1})},
        {{F(2, 2), F(1)}, true, true, pt({1, 1, -1})},
        {{F(1, 1), F(2, 1), F(2, 2)}, true, true, pt({-2, -1, -1})},
        {{F(1, 1), F(2, 1), F(1)}, true, true, pt({-1, -4, 1})},
        {{F(1, 1), F(2, 2), F(1)}, true, true, pt({-1, 1, -4})},
        {{F(2, 1), F(2, 2), F(1)}, true, true, pt({1, -1, -1})},
    };
    std::uint64_t full = 0xF;
    for (const auto& c : cases) {
        INFO(to_string(c.J));
        auto r = gj_empty(atlas, c.J);
        REQUIRE(r.nonempty == c.nonempty);
        REQUIRE(r.acyclic == c.acyclic);
        REQUIRE_FALSE(r.violates);
        if (c.sample) {
            std::uint64_t j = 0;
            for (const auto& f : c.J) j |= std::uint64_t{1} << s.facet_index(f);
            REQUIRE(scan::localization_signature(s, *c.sample) == (full & ~j));
            auto wit = r.witness->to_int64();
            REQUIRE(scan::localization_signature(s, wit) == (full & ~j));
        }
    }
}

TEST_CASE("signature atlas matches a pointwise window scan") {
    for (const auto& p : testgrid::sweep_grid()) {
        if (p.n() > 5) continue;
        AffineSemigroup s(p);
        if (s.trivial()) continue;
        const std::int64_t m = p.n() <= 3 ? 4 : (p.n() == 4 ? 3 : 2);
        scan::SignatureAtlas atlas(s, m);
        std::set<std::uint64_t> sigs;
        bool any = false;
        std::int64_t best = 0;
        std::uint64_t count = 0;
        Point sup(p.n(), 0);
        for_each_box_point(p.n(), m, [&](const Point& x) {
            if (!s.in_group(x) || s.in_semigroup(x)) return;
            auto sg = scan::localization_signature(s, x);
            sigs.insert(sg);
            if (sg != 0) return;
            std::int64_t total = 0;
            for (auto v : x) total += v;
            if (!any || total > best) {
                best = total;
                count = 0;
            }
            if (total == best) ++count;
            for (int c = 0; c < p.n(); ++c) sup[c] = any ? std::max(sup[c], x[c]) : x[c];
            any = true;
        });
        INFO(p.to_string());
        REQUIRE(atlas.signature_count() == sigs.size());
        for (auto sg : sigs) {
            REQUIRE(atlas.realized(sg));
            REQUIRE(atlas.witness(sg));
        }
        REQUIRE(atlas.top().empty == !any);
        if (any) {
            REQUIRE(atlas.top().max_sum == best);
            REQUIRE(atlas.top().count_at_max == count);
            REQUIRE(atlas.top().sup == sup);
        }
    }
}

TEST_CASE("block states count every window point once") {
    for (int b = 1; b <= 3; ++b) {
        const std::int64_t m = 3;
        std::uint64_t total = 0;
        for (const auto& st : scan::block_states(b, m)) {
            total += st.count;
            std::int64_t pos = 0, neg = 0;
            int c = 0;
            for (auto v : st.rep) {
                REQUIRE(std::abs(v) <= m);
                if (v < 0) {
                    neg -= v;
                    ++c;
                } else {
                    pos += v;
                }
            }
            REQUIRE(c == st.neg);
            REQUIRE(pos == st.pos);
            REQUIRE(neg == st.negsum);
            REQUIRE(*std::max_element(st.rep_low_max.begin(), st.rep_low_max.end()) == st.low_max);
        }
        std::uint64_t expected = 1;
        for (int j = 0; j < b; ++j) expected *= 2 * m + 1;
        REQUIRE(total == expected);
    }
}

TEST_CASE("Cohen-Macaulay verdicts on the worked examples") {
    auto cm = [](std::vector<int> a, std::vector<int> b) {
        AffineSemigroup s(SVParams(a, b));
        auto w = default_window(s.params());
        return cm_verdict(s, w, default_bound(s.params(), w));
    };
    REQUIRE(cm({2, 2}, {1, 1}).status == Status::Yes);
    REQUIRE(cm({2, 2}, {1, 2}).status == Status::No);
    REQUIRE(cm({2}, {3}).status == Status::Yes);
    REQUIRE(cm({1, 2}, {1, 2}).status == Status::Yes);
    REQUIRE(cm({3}, {1}).status == Status::Yes);
    REQUIRE(cm({1, 3}, {1, 1}).status == Status::No);

    AffineSemigroup big(SVParams({1, 1}, {8, 8}));
    auto w = default_window(big.params());
    auto r = cm_verdict(big, w, default_bound(big.params(), w));
    REQUIRE(r.status == Status::Undetermined);
}

TEST_CASE("full evidence keeps every J") {
    AffineSemigroup s(SVParams({1, 2}, {1, 2}));
    auto w = default_window(s.params());
    CMOptions opts;
    opts.full_evidence = true;
    auto r = cm_verdict(s, w, default_bound(s.params(), w), opts);
    REQUIRE(r.status == Status::Yes);
    REQUIRE(r.evidence.size() == 14);
    REQUIRE(r.subsets_checked == 14);
}

TEST_CASE("Gorenstein witnesses on the worked examples") {
    auto gor = [](std::vector<int> a, std::vector<int> b) {
        AffineSemigroup s(SVParams(a, b));
        auto w = default_window(s.params());
        return gorenstein_witness(s, w, default_bound(s.params(), w));
    };
    auto g3 = gor({1, 2}, {1, 1});
    REQUIRE(g3.status == Status::Yes);
    REQUIRE(*g3.x0 == LatticeVector{0, -1});
    auto g5 = gor({3}, {1});
    REQUIRE(g5.status == Status::Yes);
    REQUIRE(*g5.x0 == LatticeVector{1});
    auto g6 = gor({2}, {2});
    REQUIRE(g6.status == Status::Yes);
    REQUIRE(*g6.x0 == LatticeVector{-1, -1});
    auto g7 = gor({2}, {3});
    REQUIRE(g7.status == Status::No);
    REQUIRE(*g7.supremum == LatticeVector{-1, -1, -1});
    REQUIRE_FALSE(*g7.supremum_in_group);
    auto g4 = gor({1, 2}, {1, 2});
    REQUIRE(g4.status == Status::No);
    REQUIRE(*g4.supremum == LatticeVector{0, -1, -1});
    REQUIRE(gor({2, 2}, {1, 2}).status == Status::No);
}

TEST_CASE("a consistent Gorenstein point and its generator shifts lie in G_F") {
    for (const auto& p : testgrid::sweep_grid()) {
        AffineSemigroup s(p);
        if (s.trivial() || p.n() > 6) continue;
        auto w = default_window(p);
        auto g = gorenstein_witness(s, w, default_bound(p, w));
        if (g.status != Status::Yes) continue;
        INFO(p.to_string());
        auto x0 = g.x0->to_int64();
        REQUIRE(scan::localization_signature(s, x0) == 0);
        for (const auto& gen : s.generator_points()) {
            Point y(p.n());
            for (int c = 0; c < p.n(); ++c) y[c] = x0[c] - gen[c];
            REQUIRE(scan::localization_signature(s, y) == 0);
        }
    }
}
