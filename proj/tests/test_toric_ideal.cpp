#include <catch2/catch_amalgamated.hpp>

#include "svtan/toric_ideal.hpp"

#include <random>

using namespace svtan;

namespace {

LabeledComplex left_complex() { return parse_complex("1,2\n1,4\n2,3,4\n"); }
LabeledComplex right_complex() { return parse_complex("1,2\n1,3\n2,3,3\n"); }

bool listed(const std::vector<BinomialRelation>& rels, const BinomialRelation& r) {
    for (const auto& x : rels)
        if ((x.plus == r.plus && x.minus == r.minus) || (x.plus == r.minus && x.minus == r.plus)) return true;
    return false;
}

LatticeVector difference(const BinomialRelation& r) {
    LatticeVector v(r.plus.size());
    for (std::size_t c = 0; c < r.plus.size(); ++c) v[c] = static_cast<long>(r.plus[c] - r.minus[c]);
    return v;
}

}  // namespace

TEST_CASE("relation lattice fixtures") {
    auto left = left_complex();
    auto lat = relation_lattice(left);
    REQUIRE(lat.contains(difference(parse_relation(left, "x_{14}x_{23} - x_{12}x_{34}"))));
    REQUIRE(lat.contains(difference(parse_relation(left, "x^{2}_{234}-x_{23}x_{24}x_{34}"))));
    REQUIRE(relation_lattice(parse_complex("1,2\n")).rank() == 0);
}

TEST_CASE("kernel rank is columns minus rank") {
    std::vector<LabeledComplex> complexes = {left_complex(), right_complex(), build_sv_complex(SVParams({2, 2}, {1, 2})),
                                             build_sv_complex(SVParams({1, 1, 1}, {1, 1, 2}))};
    for (const auto& c : complexes) {
        auto m = exponent_map(c, true);
        REQUIRE(relation_lattice(c).rank() == m.cols() - matrix_rank(m));
    }
}

TEST_CASE("left complex relations") {
    auto left = left_complex();
    auto rels = enumerate_binomials(left, 6);
    for (const char* text : {"x_{14}x_{23}-x_{12}x_{34}", "x^{2}_{234}-x_{23}x_{24}x_{34}",
                             "x_{14}x^{2}_{234}-x_{12}x_{24}x_{34}^2"}) {
        INFO(text);
        auto r = parse_relation(left, text);
        REQUIRE(verify_relation(left, r));
        REQUIRE(listed(rels, r));
    }
    REQUIRE_FALSE(verify_relation(left, parse_relation(left, "x_{14}x_{23} - x_{12}x_{24}")));
    REQUIRE_THROWS_AS(parse_relation(left, "x_{15} - x_{12}"), FormatError);
    REQUIRE_THROWS_AS(parse_relation(left, "x_{14}x_{23}"), FormatError);
}

TEST_CASE("right complex relations") {
    auto right = right_complex();
    auto rels = enumerate_binomials(right, 6);
    for (const char* text : {"x_{233}^2 - x_{23}^2x_{33}", "x_{13}x_{23} - x_{12}x_{33}"}) {
        INFO(text);
        auto r = parse_relation(right, text);
        REQUIRE(verify_relation(right, r));
        REQUIRE(listed(rels, r));
    }
    // Listed for this complex in the source but not balanced by its parameterization.
    for (const char* text : {"x_{233}-x_{23}^2", "x_{13}x_{233}-x_{12}x_{23}x_{33}", "x_{13}^2x_{233}-x_{12}^2x_{33}^2"}) {
        INFO(text);
        auto r = parse_relation(right, text);
        REQUIRE_FALSE(verify_relation(right, r));
        REQUIRE_FALSE(listed(rels, r));
    }
}

TEST_CASE("enumerated binomials are sound, normalized and ordered") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> tv(1, 5);
    for (const auto& c : {left_complex(), right_complex(), build_sv_complex(SVParams({1, 2}, {1, 2}))}) {
        auto rels = enumerate_binomials(c, 4);
        auto lat = relation_lattice(c);
        auto cols = exponent_columns(c, true);
        for (std::size_t t = 0; t < rels.size(); ++t) {
            const auto& r = rels[t];
            REQUIRE(verify_relation(c, r));
            REQUIRE(lat.contains(difference(r)));
            REQUIRE(r.plus > r.minus);
            for (std::size_t col = 0; col < r.plus.size(); ++col) REQUIRE((r.plus[col] == 0 || r.minus[col] == 0));
            if (t) REQUIRE(rels[t - 1].degree <= r.degree);
            // Evaluate the monomial map at random integer points.
            for (int trial = 0; trial < 3; ++trial) {
                std::vector<Integer> tvals(c.label_count());
                for (auto& v : tvals) v = tv(rng);
                Integer lhs = 1, rhs = 1;
                for (std::size_t col = 0; col < cols.size(); ++col) {
                    Integer mono = 1;
                    for (int l : cols[col].labels) mono *= tvals[l];
                    for (std::int64_t e = 0; e < r.plus[col]; ++e) lhs *= mono;
                    for (std::int64_t e = 0; e < r.minus[col]; ++e) rhs *= mono;
                }
                REQUIRE(lhs == rhs);
            }
        }
    }
    REQUIRE(enumerate_binomials(build_sv_complex(SVParams({1, 1}, {1, 1})), 6).empty());
    REQUIRE_THROWS_AS(enumerate_binomials(left_complex(), 1), std::invalid_argument);
}

TEST_CASE("relations print in subscript notation") {
    auto left = left_complex();
    auto r = parse_relation(left, "x^{2}_{234}-x_{23}x_{24}x_{34}");
    REQUIRE(format_relation(left, r) == "x_{234}^2 - x_{23}x_{24}x_{34}");
    REQUIRE(format_relation(left, parse_relation(left, format_relation(left, r))) == format_relation(left, r));
}
