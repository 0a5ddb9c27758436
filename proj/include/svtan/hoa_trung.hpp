#pragma once

#include "svtan/membership.hpp"
#include "svtan/model.hpp"
#include "svtan/scan.hpp"
#include "svtan/simplicial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace svtan {

// Generators lying on the facet. Throws std::invalid_argument when f is not a facet.
std::vector<LatticeVector> face_generators(const AffineSemigroup& s, const FacetId& f);

struct SFMembershipResult {
    bool member = false;
    // y in S cap F with x + y in S; absent when the quotient test proves
    // membership but no y was found with coordinate sum <= bound.
    std::optional<LatticeVector> witness;
    std::int64_t bound = 0;
    // "quotient" when the answer comes from the exact quotient test alone,
    // "search" when a witness was found.
    std::string decided_by;
};

// Throws std::domain_error when x is not in G.
SFMembershipResult sf_member(const AffineSemigroup& s, const FacetId& f, const LatticeVector& x, std::int64_t bound);

struct SPrimeResult {
    bool holds = true;
    std::optional<LatticeVector> witness;  // in every S_F but not in S
    std::int64_t window = 0;
    std::int64_t bound = 0;
    std::size_t classes_checked = 0;
};

SPrimeResult s_prime_equals_s(const AffineSemigroup& s, Window w, std::int64_t bound);

// Vertices are the facets of J in the given order.
AbstractComplex build_pi_J(const AffineSemigroup& s, const std::vector<FacetId>& J);

struct GJResult {
    std::vector<FacetId> J;
    bool nonempty = false;
    std::optional<LatticeVector> witness;
    std::optional<AbstractComplex> pi;
    std::vector<std::size_t> homology;  // reduced Betti numbers of pi_J, when computed
    bool acyclic = false;
    bool violates = false;  // nonempty and pi_J not acyclic
};

// Builds a signature atlas for the window; reuse one atlas for many J.
GJResult gj_empty(const AffineSemigroup& s, const std::vector<FacetId>& J, Window w, std::int64_t bound);
GJResult gj_empty(const scan::SignatureAtlas& atlas, const std::vector<FacetId>& J);

struct CMOptions {
    std::size_t subset_cap = 14;
    // Compute pi_J for every J and keep going after a violation.
    bool full_evidence = false;
};

struct CMResult {
    Status status = Status::Undetermined;
    std::string label;  // "cohen-macaulay-within-window", "not-cohen-macaulay", "undetermined"
    std::string reason;
    SPrimeResult s_prime;
    std::vector<GJResult> evidence;  // every J with nonempty G_J, or all J with full_evidence
    std::optional<std::vector<FacetId>> violating_J;
    std::size_t subsets_checked = 0;
    std::int64_t window = 0;
    std::int64_t bound = 0;
    std::shared_ptr<const scan::SignatureAtlas> atlas;  // absent when the subset scan did not run
};

CMResult cm_verdict(const AffineSemigroup& s, Window w, std::int64_t bound, CMOptions opts = {});

struct GorensteinResult {
    Status status = Status::Undetermined;
    std::string label;  // "gorenstein-within-window", "not-gorenstein", "undetermined"
    std::string reason;
    std::optional<LatticeVector> x0;
    std::optional<LatticeVector> counterexample;
    // Coordinatewise supremum of G_F in the window when x0 is not unique.
    std::optional<LatticeVector> supremum;
    std::optional<bool> supremum_in_group;
    std::uint64_t candidates = 0;  // points of G_F with maximal coordinate sum, saturating
    std::int64_t window = 0;
    std::int64_t checked_window = 0;
    std::int64_t bound = 0;
};

// Runs cm_verdict first unless a result is passed in.
GorensteinResult gorenstein_witness(const AffineSemigroup& s, Window w, std::int64_t bound,
                                    const CMResult* cm = nullptr);

std::string to_string(const std::vector<FacetId>& facets);

}  // namespace svtan
