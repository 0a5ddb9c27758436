#pragma once

#include "svtan/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace svtan {

// Box {|x_ij| <= radius}; scans restricted to the positive orthant use [0, radius]^n.
struct Window {
    std::int64_t radius = 0;
};

Window default_window(const SVParams& p);
std::int64_t default_bound(const SVParams& p, Window w);

enum class Status { Yes, No, Undetermined };
std::string to_string(Status s);

struct Verdict {
    Status status = Status::Undetermined;
    std::string label;  // e.g. "normal-within-window", "not-normal"
    std::string reason;
    std::optional<LatticeVector> witness;
    std::int64_t window = 0;
    std::optional<std::string> certified_by;
};

bool semigroup_member(const AffineSemigroup& s, const LatticeVector& v);
std::optional<std::vector<LatticeVector>> decompose(const AffineSemigroup& s, const LatticeVector& v);

struct HoleSet {
    std::vector<LatticeVector> ambient;  // (C cap Z^n) \ S in [0, M]^n
    std::vector<LatticeVector> group;    // (C cap G) \ S in [0, M]^n
    std::int64_t window = 0;
    bool truncated = false;  // point lists stop at max_points each
};

HoleSet find_holes(const AffineSemigroup& s, Window w, std::size_t max_points = 200000);

// Throws std::invalid_argument when the window is below twice the largest
// generator coordinate.
Verdict is_normal(const AffineSemigroup& s, Window w);
// Reuses a normality verdict when given.
Verdict is_smooth(const AffineSemigroup& s, Window w, const Verdict* normal = nullptr);

// Paper normality list: N1 (all a_i = 1) or N2 (k = 1, a = 2).
std::optional<std::string> normality_certificate(const SVParams& p);

namespace detail {

// Block-sum vectors of [0, M]^n ordered by total ascending, then
// lexicographically descending.
std::vector<Point> ordered_block_sums(const SVParams& p, std::int64_t m);
// Points of [0, M]^n with the given block sums, first coordinates filled
// first (an axis point when a block sum is at most M).
Point fill_block_sums(const SVParams& p, const Point& sums, std::int64_t m);
// Every point of [0, M]^n with the given block sums, in descending lex order.
void expand_block_sums(const SVParams& p, const Point& sums, std::int64_t m, std::size_t limit,
                       std::vector<LatticeVector>& out, bool& truncated);
bool block_sums_in_cone(const AffineSemigroup& s, const Point& sums);

}  // namespace detail

}  // namespace svtan
