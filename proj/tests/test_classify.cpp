#include <catch2/catch_amalgamated.hpp>

#include "svtan/classify.hpp"
#include "svtan/report.hpp"

using namespace svtan;

namespace {

ClassificationReport strip_time(ClassificationReport r) {
    r.seconds = 0;
    return r;
}

long binom(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("clause table fixtures") {
    auto e = expected_verdicts(SVParams({1, 2}, {1, 1}));
    REQUIRE(e.clause() == "CM3+G2");
    REQUIRE(e.cohen_macaulay);
    REQUIRE(e.gorenstein);
    REQUIRE_FALSE(e.normal);
    REQUIRE_FALSE(e.smooth);

    REQUIRE(expected_verdicts(SVParams({2, 2}, {1, 2})).clause() == "none");
    REQUIRE(expected_verdicts(SVParams({1}, {3})).clause() == "S2+N1");
    REQUIRE(expected_verdicts(SVParams({2}, {1})).clause() == "S2+N2");
    REQUIRE(expected_verdicts(SVParams({1, 1}, {1, 4})).clause() == "S1+N1");
    REQUIRE(expected_verdicts(SVParams({1, 1}, {3, 3})).clause() == "CM4+G3+N1");
    REQUIRE(expected_verdicts(SVParams({1, 1}, {2, 3})).clause() == "CM4+N1");
    REQUIRE(expected_verdicts(SVParams({1, 1, 1}, {1, 1, 1})).clause() == "CM1+G1+N1");
    REQUIRE(expected_verdicts(SVParams({1, 1, 1}, {1, 1, 2})).clause() == "CM1+N1");
    REQUIRE(expected_verdicts(SVParams({2}, {4})).gorenstein);
    REQUIRE_FALSE(expected_verdicts(SVParams({2}, {3})).gorenstein);
    REQUIRE_FALSE(expected_verdicts(SVParams({1, 3}, {1, 1})).cohen_macaulay);
    // Order of the input blocks does not matter.
    REQUIRE(expected_verdicts(SVParams({2, 1}, {1, 1})) == e);
}

TEST_CASE("expected verdicts are consistent across a wide grid") {
    for (const auto& p : sweep_params(4, 5, 5)) {
        auto e = expected_verdicts(p);
        INFO(p.to_string() << " " << e.clause());
        REQUIRE((!e.smooth || (e.normal && e.cohen_macaulay && e.gorenstein)));
        REQUIRE((!e.gorenstein || e.cohen_macaulay));
        // Every normal instance is Cohen-Macaulay (Hochster).
        REQUIRE((!e.normal || e.cohen_macaulay));
    }
}

TEST_CASE("sweep parameters are the normalized multisets") {
    auto ps = sweep_params(3, 3, 3);
    REQUIRE(ps.size() == static_cast<std::size_t>(binom(9, 1) + binom(10, 2) + binom(11, 3)));
    for (std::size_t t = 1; t < ps.size(); ++t) REQUIRE(ps[t - 1].k() <= ps[t].k());
    for (std::size_t t = 0; t < ps.size(); ++t)
        for (std::size_t u = t + 1; u < ps.size(); ++u) REQUIRE_FALSE(ps[t] == ps[u]);
    REQUIRE(sweep_params(1, 2, 2).size() == 4);
    REQUIRE_THROWS_AS(sweep_params(0, 1, 1), ParameterError);
}

TEST_CASE("classification of the worked examples") {
    struct Row {
        std::vector<int> a, b;
        Status normal, cm, gor;
    };
    const std::vector<Row> rows = {
        {{2, 2}, {1, 1}, Status::No, Status::Yes, Status::No},  {{2, 2}, {1, 2}, Status::No, Status::No, Status::No},
        {{1, 2}, {1, 1}, Status::No, Status::Yes, Status::Yes}, {{1, 2}, {1, 2}, Status::No, Status::Yes, Status::No},
        {{3}, {1}, Status::No, Status::Yes, Status::Yes},       {{2}, {2}, Status::Yes, Status::Yes, Status::Yes},
        {{2}, {3}, Status::Yes, Status::Yes, Status::No},
    };
    for (const auto& row : rows) {
        auto r = classify(SVParams(row.a, row.b));
        INFO(r.k << " " << join_ints(r.a) << " / " << join_ints(r.b));
        REQUIRE(r.normal.status == row.normal);
        REQUIRE(r.cohen_macaulay.status == row.cm);
        REQUIRE(r.gorenstein.status == row.gor);
        REQUIRE(r.smooth.status == Status::No);
        REQUIRE(r.agreement == Agreement::Agree);
        REQUIRE(r.dim_tangential == r.n + r.rank);
    }
    auto r3 = classify(SVParams({1, 2}, {1, 1}));
    REQUIRE(r3.x0 == LatticeVector{0, -1});
    REQUIRE(r3.gorenstein.witness == LatticeVector{0, -1});
    auto r2 = classify(SVParams({2, 2}, {1, 2}));
    REQUIRE(r2.cohen_macaulay.witness == LatticeVector{1, 0, 0});
    REQUIRE(r2.j_records.empty());
}

TEST_CASE("normalization is reported but does not change verdicts") {
    auto r1 = classify(SVParams({2, 1}, {1, 1}));
    auto r2 = classify(SVParams({1, 2}, {1, 1}));
    REQUIRE(r1.original_a == std::vector<int>{2, 1});
    REQUIRE(r2.original_a == std::vector<int>{1, 2});
    r1.original_a = r2.original_a;
    REQUIRE(strip_time(r1) == strip_time(r2));
}

TEST_CASE("explicit windows below twice the generator size are rejected") {
    ClassifyOptions opts;
    opts.window = 3;
    REQUIRE_THROWS_AS(classify(SVParams({1, 2}, {1, 1}), opts), std::invalid_argument);
}

TEST_CASE("subset cap makes large instances undetermined") {
    ClassifyOptions opts;
    opts.subset_cap = 3;
    auto r = classify(SVParams({1, 2}, {1, 2}), opts);
    REQUIRE(r.cohen_macaulay.status == Status::Undetermined);
    REQUIRE(r.gorenstein.status == Status::Undetermined);
    REQUIRE(r.agreement == Agreement::Undetermined);
    REQUIRE(exit_code({r}) == 3);
}

TEST_CASE("sweep on a small grid agrees and keeps input order") {
    auto ps = sweep_params(2, 2, 2);
    auto one = sweep(ps, {}, 1);
    auto many = sweep(ps, {}, 3);
    REQUIRE(one.summary.instances == ps.size());
    REQUIRE(one.summary.agree == ps.size());
    REQUIRE(exit_code(one.reports) == 0);
    for (std::size_t t = 0; t < ps.size(); ++t) {
        REQUIRE(one.reports[t].a == ps[t].a());
        REQUIRE(one.reports[t].b == ps[t].b());
        REQUIRE(strip_time(one.reports[t]) == strip_time(many.reports[t]));
    }
}

TEST_CASE("exit codes") {
    ClassificationReport agree, disagree, open;
    agree.agreement = Agreement::Agree;
    disagree.agreement = Agreement::Disagree;
    open.agreement = Agreement::Undetermined;
    REQUIRE(exit_code({}) == 0);
    REQUIRE(exit_code({agree, agree}) == 0);
    REQUIRE(exit_code({agree, open}) == 3);
    REQUIRE(exit_code({open, disagree}) == 2);
}

TEST_CASE("report JSON round-trips") {
    ClassifyOptions full;
    full.full_evidence = true;
    std::vector<ClassificationReport> reports = {classify(SVParams({1, 2}, {1, 2}), full),
                                                 classify(SVParams({2, 2}, {1, 2})), classify(SVParams({2}, {3})),
                                                 classify(SVParams({1}, {1})), classify(SVParams({2, 1}, {1, 1}))};
    for (const auto& r : reports) {
        REQUIRE(report_from_json(report_to_json(r)) == r);
        REQUIRE(report_from_json(report_to_json(r, -1)) == r);
    }
    REQUIRE(reports[0].j_records.size() == 14);
    REQUIRE_THROWS_AS(report_from_json("{}"), FormatError);
    REQUIRE_THROWS_AS(report_from_json("not json"), FormatError);
}

TEST_CASE("CSV rows") {
    REQUIRE(csv_header() == "k,a,b,n,rank,smooth,normal,cm,gorenstein,clause,agreement");
    REQUIRE(csv_row(classify(SVParams({1, 2}, {1, 1}))) == "2,\"1,2\",\"1,1\",2,2,no,no,yes,yes,CM3+G2,yes");
    REQUIRE(csv_row(classify(SVParams({2, 2}, {1, 2}))) == "2,\"2,2\",\"1,2\",3,3,no,no,no,no,none,yes");
}

TEST_CASE("worked example suite passes") {
    auto suite = run_paper_examples();
    for (const auto& c : suite.checks) {
        INFO(c.example << " " << c.name << ": " << c.detail);
        CHECK(c.passed);
    }
    REQUIRE(suite.passed());
    REQUIRE(suite.reports.size() == 7);
}
