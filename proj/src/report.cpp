#include "svtan/report.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace svtan {

using nlohmann::json;

namespace {

json vec(const std::optional<LatticeVector>& v) { return v ? json(v->to_int64()) : json(nullptr); }

std::optional<LatticeVector> vec_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return LatticeVector::from_int64(j.get<std::vector<std::int64_t>>());
}

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

Status status_from(const std::string& s) {
    if (s == "yes") return Status::Yes;
    if (s == "no") return Status::No;
    if (s == "undetermined") return Status::Undetermined;
    throw FormatError("unknown verdict '" + s + "'");
}

json verdict_json(const VerdictRecord& v, std::int64_t window) {
    return {{"verdict", to_string(v.status)}, {"label", v.label},         {"reason", v.reason},
            {"witness", vec(v.witness)},      {"window", window},         {"certified_by", opt(v.certified_by)}};
}

VerdictRecord verdict_from(const json& j) {
    return {status_from(j.at("verdict").get<std::string>()), j.at("label").get<std::string>(),
            j.at("reason").get<std::string>(), vec_from(j.at("witness")),
            opt_from<std::string>(j.at("certified_by"))};
}

json agreement_json(Agreement a) {
    switch (a) {
        case Agreement::Agree: return true;
        case Agreement::Disagree: return false;
        case Agreement::Undetermined: return nullptr;
    }
    return nullptr;
}

json report_json(const ClassificationReport& r) {
    json jr = json::array();
    for (const auto& j : r.j_records)
        jr.push_back({{"J", j.J},
                      {"pi_J_faces", j.pi_faces},
                      {"homology", j.homology},
                      {"acyclic", j.acyclic},
                      {"G_J", j.nonempty ? "nonempty" : "empty"},
                      {"witness", vec(j.witness)}});
    return {
        {"params", {{"k", r.k}, {"a", r.a}, {"b", r.b}, {"original", {{"a", r.original_a}, {"b", r.original_b}}}}},
        {"dims", {{"n", r.n}, {"rank", r.rank}, {"dim_tangential", r.dim_tangential}}},
        {"facets", r.facets},
        {"verdicts",
         {{"smooth", verdict_json(r.smooth, r.window)},
          {"normal", verdict_json(r.normal, r.window)},
          {"cohen_macaulay", verdict_json(r.cohen_macaulay, r.window)},
          {"gorenstein", verdict_json(r.gorenstein, r.window)}}},
        {"evidence",
         {{"s_prime_witness", vec(r.s_prime_witness)},
          {"x0", vec(r.x0)},
          {"supremum", vec(r.supremum)},
          {"supremum_in_group", opt(r.supremum_in_group)},
          {"j_records", jr}}},
        {"expected",
         {{"clause", r.clause()},
          {"clauses", r.expected.clauses},
          {"smooth", r.expected.smooth},
          {"normal", r.expected.normal},
          {"cohen_macaulay", r.expected.cohen_macaulay},
          {"gorenstein", r.expected.gorenstein}}},
        {"agreement", agreement_json(r.agreement)},
        {"window", r.window},
        {"bound", r.bound},
        {"subset_cap", r.subset_cap},
        {"seconds", r.seconds},
    };
}

std::string dump(const json& j, int indent) { return j.dump(indent < 0 ? -1 : indent); }

std::string csv_quote(const std::vector<int>& v) { return "\"" + join_ints(v) + "\""; }

}  // namespace

std::string report_to_json(const ClassificationReport& r, int indent) { return dump(report_json(r), indent); }

ClassificationReport report_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        ClassificationReport r;
        const auto& p = j.at("params");
        r.k = p.at("k").get<int>();
        r.a = p.at("a").get<std::vector<int>>();
        r.b = p.at("b").get<std::vector<int>>();
        r.original_a = p.at("original").at("a").get<std::vector<int>>();
        r.original_b = p.at("original").at("b").get<std::vector<int>>();
        const auto& d = j.at("dims");
        r.n = d.at("n").get<int>();
        r.rank = d.at("rank").get<int>();
        r.dim_tangential = d.at("dim_tangential").get<int>();
        r.facets = j.at("facets").get<std::vector<std::string>>();
        const auto& v = j.at("verdicts");
        r.smooth = verdict_from(v.at("smooth"));
        r.normal = verdict_from(v.at("normal"));
        r.cohen_macaulay = verdict_from(v.at("cohen_macaulay"));
        r.gorenstein = verdict_from(v.at("gorenstein"));
        const auto& e = j.at("evidence");
        r.s_prime_witness = vec_from(e.at("s_prime_witness"));
        r.x0 = vec_from(e.at("x0"));
        r.supremum = vec_from(e.at("supremum"));
        r.supremum_in_group = opt_from<bool>(e.at("supremum_in_group"));
        for (const auto& jr : e.at("j_records")) {
            JRecord rec;
            rec.J = jr.at("J").get<std::vector<std::string>>();
            rec.pi_faces = jr.at("pi_J_faces").get<std::vector<std::vector<std::string>>>();
            rec.homology = jr.at("homology").get<std::vector<std::size_t>>();
            rec.acyclic = jr.at("acyclic").get<bool>();
            rec.nonempty = jr.at("G_J").get<std::string>() == "nonempty";
            rec.witness = vec_from(jr.at("witness"));
            r.j_records.push_back(std::move(rec));
        }
        const auto& x = j.at("expected");
        r.expected.clauses = x.at("clauses").get<std::vector<std::string>>();
        r.expected.smooth = x.at("smooth").get<bool>();
        r.expected.normal = x.at("normal").get<bool>();
        r.expected.cohen_macaulay = x.at("cohen_macaulay").get<bool>();
        r.expected.gorenstein = x.at("gorenstein").get<bool>();
        const auto& ag = j.at("agreement");
        r.agreement = ag.is_null() ? Agreement::Undetermined : ag.get<bool>() ? Agreement::Agree : Agreement::Disagree;
        r.window = j.at("window").get<std::int64_t>();
        r.bound = j.at("bound").get<std::int64_t>();
        r.subset_cap = j.at("subset_cap").get<std::size_t>();
        r.seconds = j.at("seconds").get<double>();
        return r;
    } catch (const json::exception& ex) {
        throw FormatError(std::string("malformed report JSON: ") + ex.what());
    }
}

std::string sweep_to_json(const SweepResult& s, int indent) {
    json reports = json::array();
    for (const auto& r : s.reports) reports.push_back(report_json(r));
    return dump({{"summary",
                  {{"instances", s.summary.instances},
                   {"agree", s.summary.agree},
                   {"disagree", s.summary.disagree},
                   {"undetermined", s.summary.undetermined},
                   {"seconds", s.summary.seconds}}},
                 {"reports", reports}},
                indent);
}

std::string examples_to_json(const ExampleSuite& suite, int indent) {
    json checks = json::array();
    for (const auto& c : suite.checks)
        checks.push_back({{"example", c.example}, {"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    json reports = json::array();
    for (const auto& r : suite.reports) reports.push_back(report_json(r));
    return dump({{"passed", suite.passed()}, {"checks", checks}, {"reports", reports}, {"seconds", suite.seconds}},
                indent);
}

std::string relations_to_json(const LabeledComplex& c, const std::vector<BinomialRelation>& relations, int indent) {
    std::vector<std::string> columns;
    for (const auto& s : exponent_columns(c, true)) columns.push_back(c.coordinate_name(s));
    json rel = json::array();
    for (const auto& r : relations)
        rel.push_back({{"plus", r.plus},
                       {"minus", r.minus},
                       {"degree", r.degree},
                       {"x_degree", r.x_degree},
                       {"text", format_relation(c, r)}});
    return dump({{"coordinates", columns}, {"relations", rel}}, indent);
}

std::string csv_header() { return "k,a,b,n,rank,smooth,normal,cm,gorenstein,clause,agreement"; }

std::string csv_row(const ClassificationReport& r) {
    std::ostringstream out;
    out << r.k << ',' << csv_quote(r.a) << ',' << csv_quote(r.b) << ',' << r.n << ',' << r.rank << ','
        << to_string(r.smooth.status) << ',' << to_string(r.normal.status) << ','
        << to_string(r.cohen_macaulay.status) << ',' << to_string(r.gorenstein.status) << ',' << r.clause() << ','
        << to_string(r.agreement);
    return out.str();
}

std::string report_to_text(const ClassificationReport& r) {
    std::ostringstream out;
    out << "k = " << r.k << ", a = (" << join_ints(r.a) << "), b = (" << join_ints(r.b) << ")";
    if (r.a != r.original_a || r.b != r.original_b)
        out << "  [given as a = (" << join_ints(r.original_a) << "), b = (" << join_ints(r.original_b) << ")]";
    out << "\n";
    out << "n = " << r.n << ", rank G = " << r.rank << ", dim tangential cone = " << r.dim_tangential << "\n";
    out << "facets:";
    for (const auto& f : r.facets) out << ' ' << f;
    out << "\nwindow M = " << r.window << ", bound B = " << r.bound << "\n";
    auto line = [&](const char* name, const VerdictRecord& v) {
        out << "  " << std::left << std::setw(15) << name << std::setw(13) << to_string(v.status) << v.reason;
        if (v.certified_by) out << " [" << *v.certified_by << "]";
        out << "\n";
    };
    line("smooth", r.smooth);
    line("normal", r.normal);
    line("cohen-macaulay", r.cohen_macaulay);
    line("gorenstein", r.gorenstein);
    if (r.x0) out << "x0 = " << r.x0->to_string() << "\n";
    if (r.supremum)
        out << "supremum of maximal G_F points = " << r.supremum->to_string()
            << (r.supremum_in_group.value_or(false) ? " (in G)" : " (not in G)") << "\n";
    out << "expected: " << r.clause() << ", agreement: " << to_string(r.agreement) << "\n";
    return out.str();
}

std::string summary_to_text(const SweepSummary& s) {
    std::ostringstream out;
    out << s.instances << " instances: " << s.agree << " agree, " << s.disagree << " disagree, " << s.undetermined
        << " undetermined (" << std::fixed << std::setprecision(2) << s.seconds << " s)";
    return out.str();
}

std::string examples_to_text(const ExampleSuite& suite) {
    std::ostringstream out;
    for (const auto& c : suite.checks) {
        out << (c.passed ? "ok   " : "FAIL ") << c.example << ' ' << c.name;
        if (!c.detail.empty()) out << ": " << c.detail;
        out << "\n";
    }
    std::size_t failed = 0;
    for (const auto& c : suite.checks) failed += !c.passed;
    out << suite.checks.size() - failed << "/" << suite.checks.size() << " checks passed\n";
    return out.str();
}

}  // namespace svtan
