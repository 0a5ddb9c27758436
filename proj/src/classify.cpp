#include "svtan/classify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace svtan {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool all_equal(const std::vector<int>& v, int x) {
    return std::all_of(v.begin(), v.end(), [x](int y) { return y == x; });
}

VerdictRecord record(const Verdict& v) { return {v.status, v.label, v.reason, v.witness, v.certified_by}; }

}  // namespace

const std::vector<TheoremClause>& theorem_clauses() {
    using K = TheoremClause::Kind;
    static const std::vector<TheoremClause> table = {
        {"S1", K::Smooth, [](const SVParams& p) { return p.k() == 2 && all_equal(p.a(), 1) && p.b()[0] == 1; }},
        {"S2", K::Smooth,
         [](const SVParams& p) { return p.k() == 1 && (p.a()[0] == 1 || (p.a()[0] == 2 && p.b()[0] == 1)); }},
        {"CM1", K::CohenMacaulay, [](const SVParams& p) { return p.k() >= 3 && all_equal(p.a(), 1); }},
        {"CM2", K::CohenMacaulay,
         [](const SVParams& p) { return p.k() == 2 && all_equal(p.a(), 2) && all_equal(p.b(), 1); }},
        {"CM3", K::CohenMacaulay,
         [](const SVParams& p) { return p.k() == 2 && p.a() == std::vector<int>{1, 2} && p.b()[0] == 1; }},
        {"CM4", K::CohenMacaulay,
         [](const SVParams& p) { return p.k() == 2 && all_equal(p.a(), 1) && p.b()[0] > 1 && p.b()[1] > 1; }},
        {"CM5", K::CohenMacaulay, [](const SVParams& p) { return p.k() == 1 && p.a()[0] >= 3 && p.b()[0] == 1; }},
        {"CM6", K::CohenMacaulay, [](const SVParams& p) { return p.k() == 1 && p.a()[0] == 2 && p.b()[0] > 1; }},
        {"G1", K::Gorenstein,
         [](const SVParams& p) { return p.k() == 3 && all_equal(p.a(), 1) && all_equal(p.b(), 1); }},
        {"G2", K::Gorenstein,
         [](const SVParams& p) {
             return p.k() == 2 && p.a() == std::vector<int>{1, 2} && all_equal(p.b(), 1);
         }},
        {"G3", K::Gorenstein,
         [](const SVParams& p) {
             return p.k() == 2 && all_equal(p.a(), 1) && p.b()[0] == p.b()[1] && p.b()[0] > 1;
         }},
        {"G4", K::Gorenstein, [](const SVParams& p) { return p.k() == 1 && p.a()[0] >= 3 && p.b()[0] == 1; }},
        {"G5", K::Gorenstein,
         [](const SVParams& p) { return p.k() == 1 && p.a()[0] == 2 && p.b()[0] % 2 == 0; }},
        {"N1", K::Normal, [](const SVParams& p) { return all_equal(p.a(), 1); }},
        {"N2", K::Normal, [](const SVParams& p) { return p.k() == 1 && p.a()[0] == 2; }},
    };
    return table;
}

std::string ExpectedVerdicts::clause() const {
    if (clauses.empty()) return "none";
    std::string out;
    for (std::size_t t = 0; t < clauses.size(); ++t) out += (t ? "+" : "") + clauses[t];
    return out;
}

ExpectedVerdicts expected_verdicts(const SVParams& p) {
    using K = TheoremClause::Kind;
    ExpectedVerdicts e;
    for (const auto& c : theorem_clauses()) {
        if (!c.holds(p)) continue;
        e.clauses.push_back(c.name);
        switch (c.kind) {
            case K::Smooth: e.smooth = true; break;
            case K::CohenMacaulay: e.cohen_macaulay = true; break;
            case K::Gorenstein: e.gorenstein = true; break;
            case K::Normal: e.normal = true; break;
        }
    }
    e.normal = e.normal || e.smooth;
    e.cohen_macaulay = e.cohen_macaulay || e.smooth;
    e.gorenstein = e.gorenstein || e.smooth;
    return e;
}

std::string to_string(Agreement a) {
    switch (a) {
        case Agreement::Agree: return "yes";
        case Agreement::Disagree: return "no";
        case Agreement::Undetermined: return "undetermined";
    }
    return "undetermined";
}

ClassificationReport classify(const SVParams& p, const ClassifyOptions& opts) {
    const auto t0 = Clock::now();
    ClassificationReport r;
    r.k = p.k();
    r.a = p.a();
    r.b = p.b();
    r.original_a = p.original_a();
    r.original_b = p.original_b();

    AffineSemigroup s(p, opts.model);
    const Window w{opts.window.value_or(default_window(p).radius)};
    const std::int64_t bound = opts.bound.value_or(default_bound(p, w));
    r.n = s.n();
    r.rank = s.rank();
    r.dim_tangential = r.n + r.rank;
    for (const auto& f : s.facets()) r.facets.push_back(f.to_string());
    r.window = w.radius;
    r.bound = bound;
    r.subset_cap = opts.subset_cap;

    auto normal = is_normal(s, w);
    auto smooth = is_smooth(s, w, &normal);
    r.normal = record(normal);
    r.smooth = record(smooth);

    CMOptions cmo;
    cmo.subset_cap = opts.subset_cap;
    cmo.full_evidence = opts.full_evidence;
    auto cm = cm_verdict(s, w, bound, cmo);
    r.cohen_macaulay = {cm.status, cm.label, cm.reason, std::nullopt, std::nullopt};
    r.s_prime_witness = cm.s_prime.witness;
    if (cm.s_prime.witness) r.cohen_macaulay.witness = cm.s_prime.witness;
    for (const auto& g : cm.evidence) {
        JRecord j;
        for (const auto& f : g.J) j.J.push_back(f.to_string());
        j.nonempty = g.nonempty;
        j.witness = g.witness;
        for (auto face : g.pi->maximal_faces()) {
            std::vector<std::string> names;
            for (int v : g.pi->vertices_of(face)) names.push_back(g.pi->vertex_names()[v]);
            j.pi_faces.push_back(std::move(names));
        }
        j.homology = g.homology;
        j.acyclic = g.acyclic;
        if (cm.violating_J && g.J == *cm.violating_J) r.cohen_macaulay.witness = g.witness;
        r.j_records.push_back(std::move(j));
    }

    auto gor = gorenstein_witness(s, w, bound, &cm);
    r.gorenstein = {gor.status, gor.label, gor.reason, gor.status == Status::Yes ? gor.x0 : gor.counterexample,
                    std::nullopt};
    r.x0 = gor.x0;
    r.supremum = gor.supremum;
    r.supremum_in_group = gor.supremum_in_group;

    r.expected = expected_verdicts(p);
    const std::pair<Status, bool> pairs[] = {{r.smooth.status, r.expected.smooth},
                                             {r.normal.status, r.expected.normal},
                                             {r.cohen_macaulay.status, r.expected.cohen_macaulay},
                                             {r.gorenstein.status, r.expected.gorenstein}};
    bool mismatch = false, open = false;
    for (const auto& [status, want] : pairs) {
        if (status == Status::Undetermined)
            open = true;
        else if ((status == Status::Yes) != want)
            mismatch = true;
    }
    r.agreement = mismatch ? Agreement::Disagree : open ? Agreement::Undetermined : Agreement::Agree;
    r.seconds = since(t0);
    return r;
}

std::vector<SVParams> sweep_params(int max_k, int max_a, int max_b) {
    if (max_k < 1 || max_a < 1 || max_b < 1) throw ParameterError("sweep bounds must be at least 1");
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= max_a; ++a)
        for (int b = 1; b <= max_b; ++b) pairs.emplace_back(a, b);
    std::vector<SVParams> out;
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (!pick.empty()) {
            std::vector<int> a, b;
            for (auto t : pick) {
                a.push_back(pairs[t].first);
                b.push_back(pairs[t].second);
            }
            out.emplace_back(a, b);
        }
        if (static_cast<int>(pick.size()) == max_k) return;
        for (std::size_t t = from; t < pairs.size(); ++t) {
            pick.push_back(t);
            self(self, t);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    std::stable_sort(out.begin(), out.end(), [](const SVParams& x, const SVParams& y) { return x.k() < y.k(); });
    return out;
}

SweepResult sweep(const std::vector<SVParams>& params, const ClassifyOptions& opts, unsigned threads) {
    const auto t0 = Clock::now();
    SweepResult res;
    res.reports.resize(params.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, params.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(params.size());
    auto work = [&]() {
        for (std::size_t t; (t = next.fetch_add(1)) < params.size();) {
            try {
                res.reports[t] = classify(params[t], opts);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    res.summary.instances = params.size();
    for (const auto& r : res.reports) {
        switch (r.agreement) {
            case Agreement::Agree: ++res.summary.agree; break;
            case Agreement::Disagree: ++res.summary.disagree; break;
            case Agreement::Undetermined: ++res.summary.undetermined; break;
        }
    }
    res.summary.seconds = since(t0);
    return res;
}

int exit_code(const std::vector<ClassificationReport>& reports) {
    bool open = false;
    for (const auto& r : reports) {
        if (r.agreement == Agreement::Disagree) return 2;
        if (r.agreement == Agreement::Undetermined) open = true;
    }
    return open ? 3 : 0;
}

bool ExampleSuite::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const FixtureCheck& c) { return c.passed; });
}

namespace {

class SuiteBuilder {
public:
    explicit SuiteBuilder(ExampleSuite& suite) : suite_(suite) {}

    void example(std::string tag) { tag_ = std::move(tag); }

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        suite_.checks.push_back({tag_, name, ok, detail});
    }

    template <class A, class B>
    void equal(const std::string& name, const A& got, const B& want, const std::function<std::string(const A&)>& show) {
        check(name, got == want, "got " + show(got));
    }

    // Compares a region of G with a closed form on [-m, m]^n.
    void region(const std::string& name, const AffineSemigroup& s, std::int64_t m,
                const std::function<bool(const Point&)>& actual, const std::function<bool(const Point&)>& closed) {
        Point x(s.n(), -m);
        for (;;) {
            if (s.in_group(x) && actual(x) != closed(x)) {
                check(name, false, "differs at " + LatticeVector::from_int64(x).to_string());
                return;
            }
            int c = 0;
            for (; c < s.n(); ++c) {
                if (x[c] < m) {
                    ++x[c];
                    break;
                }
                x[c] = -m;
            }
            if (c == s.n()) break;
        }
        check(name, true, "checked on [-" + std::to_string(m) + "," + std::to_string(m) + "]^" + std::to_string(s.n()));
    }

    void verdicts(const ClassificationReport& r, Status normal, Status cm, Status gor) {
        check("normal " + to_string(normal), r.normal.status == normal, r.normal.reason);
        check("cohen-macaulay " + to_string(cm), r.cohen_macaulay.status == cm, r.cohen_macaulay.reason);
        check("gorenstein " + to_string(gor), r.gorenstein.status == gor, r.gorenstein.reason);
        check("agrees with the classification", r.agreement == Agreement::Agree, r.clause());
    }

    void facets(const ClassificationReport& r, const std::vector<std::string>& want) {
        std::string got;
        for (const auto& f : r.facets) got += (got.empty() ? "" : ",") + f;
        check("facets", r.facets == want, got);
    }

    void vector(const std::string& name, const std::optional<LatticeVector>& got, const LatticeVector& want) {
        check(name, got && *got == want, got ? got->to_string() : "absent");
    }

private:
    ExampleSuite& suite_;
    std::string tag_;
};

bool in_sf(const AffineSemigroup& s, const FacetId& f, const Point& x) {
    return s.quotient(static_cast<std::size_t>(s.facet_index(f))).contains(x);
}

bool in_gf(const AffineSemigroup& s, const Point& x) { return scan::localization_signature(s, x) == 0; }

bool even(std::int64_t v) { return v % 2 == 0; }

}  // namespace

ExampleSuite run_paper_examples() {
    const auto t0 = Clock::now();
    ExampleSuite suite;
    SuiteBuilder b(suite);
    ClassifyOptions opts;
    opts.full_evidence = true;
    const auto F = [](int i, int j) { return FacetId::coordinate(i - 1, j - 1); };
    const auto Fb = [](int i) { return FacetId::balance(i - 1); };

    {
        b.example("(1)");
        SVParams p({2, 2}, {1, 1});
        AffineSemigroup s(p);
        auto r = classify(p, opts);
        suite.reports.push_back(r);
        b.facets(r, {"F_{1,1}", "F_{2,1}"});
        b.check("G is Z^2", r.rank == 2 && s.group().contains({1, 0}) && s.group().contains({0, 1}));
        b.region("S closed form", s, 6, [&](const Point& x) { return s.in_semigroup(x); },
                 [](const Point& x) {
                     return x[0] >= 0 && x[1] >= 0 && !(!even(x[0]) && x[1] == 0) && !(x[0] == 0 && !even(x[1]));
                 });
        b.region("S_{1,1} closed form", s, 6, [&](const Point& x) { return in_sf(s, F(1, 1), x); },
                 [](const Point& x) { return x[0] > 0 || (x[0] == 0 && even(x[1])); });
        b.region("S_{2,1} closed form", s, 6, [&](const Point& x) { return in_sf(s, F(2, 1), x); },
                 [](const Point& x) { return x[1] > 0 || (x[1] == 0 && even(x[0])); });
        b.region("G_F closed form", s, 6, [&](const Point& x) { return in_gf(s, x); },
                 [](const Point& x) {
                     return (x[0] < 0 && x[1] < 0) || (x[1] == 0 && x[0] < 0 && !even(x[0])) ||
                            (x[0] == 0 && x[1] < 0 && !even(x[1]));
                 });
        b.check("S' = S", !r.s_prime_witness);
        auto member = sf_member(s, F(1, 1), {1, -2}, r.bound);
        b.check("(1,-2) in S_{1,1} with a witness", member.member && member.witness.has_value(),
                member.witness ? "y = " + member.witness->to_string() : "no witness");
        b.check("(0,1) not in S_{1,1}", !sf_member(s, F(1, 1), {0, 1}, r.bound).member);
        b.verdicts(r, Status::No, Status::Yes, Status::No);
    }
    {
        b.example("(2)");
        SVParams p({2, 2}, {1, 2});
        auto r = classify(p, opts);
        suite.reports.push_back(r);
        b.facets(r, {"F_{1,1}", "F_{2,1}", "F_{2,2}"});
        b.vector("S' witness e_{1,1}", r.s_prime_witness, {1, 0, 0});
        b.verdicts(r, Status::No, Status::No, Status::No);
    }
    {
        b.example("(3)");
        SVParams p({1, 2}, {1, 1});
        AffineSemigroup s(p);
        auto r = classify(p, opts);
        suite.reports.push_back(r);
        b.facets(r, {"F_{1,1}", "F_1"});
        b.region("S_{1,1} closed form", s, 6, [&](const Point& x) { return in_sf(s, F(1, 1), x); },
                 [](const Point& x) { return x[0] > 0 || (x[0] == 0 && even(x[1])); });
        b.region("S_1 closed form", s, 6, [&](const Point& x) { return in_sf(s, Fb(1), x); },
                 [](const Point& x) { return x[0] <= x[1]; });
        b.region("G_F closed form", s, 6, [&](const Point& x) { return in_gf(s, x); },
                 [](const Point& x) {
                     return (x[0] < 0 && x[1] < 0 && x[0] > x[1]) || (x[0] == 0 && x[1] < 0 && !even(x[1]));
                 });
        b.region("G_F = (0,-1) - S", s, 5, [&](const Point& x) { return in_gf(s, x); },
                 [&](const Point& x) { return s.in_semigroup(Point{-x[0], -1 - x[1]}); });
        b.vector("x0 = (0,-1)", r.x0, {0, -1});
        b.vector("hole (0,1)", r.normal.witness, {0, 1});
        b.verdicts(r, Status::No, Status::Yes, Status::Yes);
    }
    {
        b.example("(4)");
        SVParams p({1, 2}, {1, 2});
        AffineSemigroup s(p);
        auto r = classify(p, opts);
        suite.reports.push_back(r);
        b.facets(r, {"F_{1,1}", "F_{2,1}", "F_{2,2}", "F_1"});
        b.region("S_{1,1} closed form", s, 4, [&](const Point& x) { return in_sf(s, F(1, 1), x); },
                 [](const Point& x) { return x[0] > 0 || (x[0] == 0 && even(x[1] + x[2])); });
        b.region("S_{2,1} closed form", s, 4, [&](const Point& x) { return in_sf(s, F(2, 1), x); },
                 [](const Point& x) { return x[1] >= 0; });
        b.region("S_{2,2} closed form", s, 4, [&](const Point& x) { return in_sf(s, F(2, 2), x); },
                 [](const Point& x) { return x[2] >= 0; });
        b.region("S_1 closed form", s, 4, [&](const Point& x) { return in_sf(s, Fb(1), x); },
                 [](const Point& x) { return x[0] <= x[1] + x[2]; });
        b.check("S' = S", !r.s_prime_witness);
        struct Row {
            std::vector<std::string> J;
            bool nonempty;
            bool acyclic;
            std::vector<std::vector<std::string>> pi;
            std::optional<Point> sample;
        };
        const std::string f11 = "F_{1,1}", f21 = "F_{2,1}", f22 = "F_{2,2}", f1 = "F_1";
        const std::vector<Row> rows = {
            {{f11, f21}, true, true, {{f11, f21}}, Point{-1, -1, 5}},
            {{f11, f22}, true, true, {{f11, f22}}, Point{-1, 5, -1}},
            {{f11, f1}, false, false, {{f11}, {f1}}, std::nullopt},
            {{f21, f22}, false, false, {{f21}, {f22}}, std::nullopt},
            {{f21, f1}, true, true, {{f21, f1}}, Point{1, -1, 1}},
            {{f22, f1}, true, true, {{f22, f1}}, Point{1, 1, -1}},
            {{f11, f21, f22}, true, true, {{f11, f21}, {f11, f22}}, Point{-2, -1, -1}},
            {{f11, f21, f1}, true, true, {{f11, f21}, {f21, f1}}, Point{-1, -4, 1}},
            {{f11, f22, f1}, true, true, {{f11, f22}, {f22, f1}}, Point{-1, 1, -4}},
            {{f21, f22, f1}, true, true, {{f21, f1}, {f22, f1}}, Point{1, -1, -1}},
        };
        for (const auto& row : rows) {
            std::string name = "J = {";
            for (std::size_t t = 0; t < row.J.size(); ++t) name += (t ? "," : "") + row.J[t];
            name += "}";
            auto it = std::find_if(r.j_records.begin(), r.j_records.end(),
                                   [&](const JRecord& j) { return j.J == row.J; });
            if (it == r.j_records.end()) {
                b.check(name, false, "no record");
                continue;
            }
            auto pi = it->pi_faces;
            auto want = row.pi;
            std::sort(pi.begin(), pi.end());
            std::sort(want.begin(), want.end());
            bool ok = it->nonempty == row.nonempty && it->acyclic == row.acyclic && pi == want;
            std::string detail = std::string(it->nonempty ? "G_J nonempty" : "G_J empty") +
                                 (it->acyclic ? ", pi_J acyclic" : ", pi_J not acyclic");
            if (row.sample) {
                std::uint64_t jmask = 0;
                for (const auto& f : row.J) {
                    for (std::size_t t = 0; t < s.facets().size(); ++t)
                        if (s.facets()[t].to_string() == f) jmask |= std::uint64_t{1} << t;
                }
                const bool sample_ok = scan::localization_signature(s, *row.sample) == (0xFu & ~jmask);
                ok = ok && sample_ok;
                detail += ", sample " + LatticeVector::from_int64(*row.sample).to_string() +
                          (sample_ok ? " in G_J" : " NOT in G_J");
            }
            b.check(name, ok, detail);
        }
        b.vector("supremum of G_F maximizers", r.supremum, {0, -1, -1});
        b.verdicts(r, Status::No, Status::Yes, Status::No);
    }
    {
        b.example("(5)");
        SVParams p({3}, {1});
        AffineSemigroup s(p);
        auto r = classify(p, opts);
        suite.reports.push_back(r);
        b.facets(r, {"F_{1,1}"});
        b.region("S = N \\ {1}", s, 10, [&](const Point& x) { return s.in_semigroup(x); },
                 [](const Point& x) { return x[0] >= 0 && x[0] != 1; });
        b.check("G is Z", s.group().contains({1}));
        b.region("G_F = {-1-n} u {1}", s, 10, [&](const Point& x) { return in_gf(s, x); },
                 [](const Point& x) { return x[0] <= -1 || x[0] == 1; });
        b.vector("x0 = 1", r.x0, {1});
        b.verdicts(r, Status::No, Status::Yes, Status::Yes);
    }
    {
        b.example("(6)");
        SVParams p({2}, {2});
        AffineSemigroup s(p);
        auto r = classify(p, opts);
        suite.reports.push_back(r);
        b.facets(r, {"F_{1,1}", "F_{1,2}"});
        b.check("G is the even-sum lattice", s.group().contains({1, 1}) && s.group().contains({2, 0}) &&
                                                   !s.group().contains({1, 0}));
        b.region("S_{1,1} closed form", s, 6, [&](const Point& x) { return in_sf(s, F(1, 1), x); },
                 [](const Point& x) { return x[0] >= 0; });
        b.region("S_{1,2} closed form", s, 6, [&](const Point& x) { return in_sf(s, F(1, 2), x); },
                 [](const Point& x) { return x[1] >= 0; });
        b.region("G_F closed form", s, 6, [&](const Point& x) { return in_gf(s, x); },
                 [](const Point& x) { return x[0] < 0 && x[1] < 0; });
        b.vector("x0 = (-1,-1)", r.x0, {-1, -1});
        bool points = true;
        for (const auto& j : r.j_records)
            if (j.J.size() == 1) points = points && j.acyclic && j.pi_faces.size() == 1;
        b.check("pi_I is a point for singletons", points);
        b.verdicts(r, Status::Yes, Status::Yes, Status::Yes);
    }
    {
        b.example("(7)");
        SVParams p({2}, {3});
        AffineSemigroup s(p);
        auto r = classify(p, opts);
        suite.reports.push_back(r);
        b.facets(r, {"F_{1,1}", "F_{1,2}", "F_{1,3}"});
        for (int j = 1; j <= 3; ++j)
            b.region("S_{1," + std::to_string(j) + "} closed form", s, 4,
                     [&](const Point& x) { return in_sf(s, F(1, j), x); },
                     [j](const Point& x) { return x[j - 1] >= 0; });
        b.check("S' = S", !r.s_prime_witness);
        b.vector("only candidate (-1,-1,-1)", r.supremum, {-1, -1, -1});
        b.check("(-1,-1,-1) is not in G", r.supremum_in_group.has_value() && !*r.supremum_in_group);
        b.verdicts(r, Status::Yes, Status::Yes, Status::No);
    }
    suite.seconds = since(t0);
    return suite;
}

}  // namespace svtan
