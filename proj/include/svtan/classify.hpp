#pragma once

#include "svtan/hoa_trung.hpp"
#include "svtan/membership.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace svtan {

// Clauses of the classification theorem as predicates on normalized parameters.
struct TheoremClause {
    enum class Kind { Smooth, CohenMacaulay, Gorenstein, Normal };
    std::string name;  // "S1", "CM3", "G5", "N2", ...
    Kind kind;
    std::function<bool(const SVParams&)> holds;
};

const std::vector<TheoremClause>& theorem_clauses();

struct ExpectedVerdicts {
    bool smooth = false;
    bool normal = false;
    bool cohen_macaulay = false;
    bool gorenstein = false;
    std::vector<std::string> clauses;  // matching clause names in table order

    // Clause names joined with '+', or "none".
    std::string clause() const;
    friend bool operator==(const ExpectedVerdicts&, const ExpectedVerdicts&) = default;
};

ExpectedVerdicts expected_verdicts(const SVParams& p);

struct VerdictRecord {
    Status status = Status::Undetermined;
    std::string label;
    std::string reason;
    std::optional<LatticeVector> witness;
    std::optional<std::string> certified_by;
    friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

struct JRecord {
    std::vector<std::string> J;
    bool nonempty = false;
    std::optional<LatticeVector> witness;
    std::vector<std::vector<std::string>> pi_faces;  // maximal faces of pi_J
    std::vector<std::size_t> homology;
    bool acyclic = false;
    friend bool operator==(const JRecord&, const JRecord&) = default;
};

enum class Agreement { Agree, Disagree, Undetermined };
std::string to_string(Agreement a);

struct ClassificationReport {
    int k = 0;
    std::vector<int> a, b;                    // normalized
    std::vector<int> original_a, original_b;  // as given
    int n = 0;
    int rank = 0;
    int dim_tangential = 0;  // n + rank
    std::vector<std::string> facets;

    VerdictRecord smooth, normal, cohen_macaulay, gorenstein;

    std::optional<LatticeVector> s_prime_witness;
    std::optional<LatticeVector> x0;
    std::optional<LatticeVector> supremum;
    std::optional<bool> supremum_in_group;
    std::vector<JRecord> j_records;

    ExpectedVerdicts expected;
    Agreement agreement = Agreement::Undetermined;

    std::int64_t window = 0;
    std::int64_t bound = 0;
    std::size_t subset_cap = 0;
    double seconds = 0;

    std::string clause() const { return expected.clause(); }
    friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

struct ClassifyOptions {
    std::optional<std::int64_t> window;
    std::optional<std::int64_t> bound;
    std::size_t subset_cap = 14;
    bool full_evidence = false;
    ModelOptions model;
};

// Throws std::invalid_argument when an explicit window is below twice the
// largest generator coordinate.
ClassificationReport classify(const SVParams& p, const ClassifyOptions& opts = {});

// Normalized triples with k <= max_k, a_i <= max_a, b_i <= max_b: multisets of (a_i, b_i) pairs.
std::vector<SVParams> sweep_params(int max_k, int max_a, int max_b);

struct SweepSummary {
    std::size_t instances = 0;
    std::size_t agree = 0;
    std::size_t disagree = 0;
    std::size_t undetermined = 0;
    double seconds = 0;
};

struct SweepResult {
    std::vector<ClassificationReport> reports;  // in input order
    SweepSummary summary;
};

// threads = 0 uses the hardware concurrency.
SweepResult sweep(const std::vector<SVParams>& params, const ClassifyOptions& opts = {}, unsigned threads = 0);

// 0 when everything agrees, 2 on any disagreement, 3 when something is undetermined.
int exit_code(const std::vector<ClassificationReport>& reports);

struct FixtureCheck {
    std::string example;  // "(1)" ... "(7)"
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ExampleSuite {
    std::vector<FixtureCheck> checks;
    std::vector<ClassificationReport> reports;
    bool passed() const;
    double seconds = 0;
};

// The seven worked examples with every stated intermediate artifact.
ExampleSuite run_paper_examples();

}  // namespace svtan
