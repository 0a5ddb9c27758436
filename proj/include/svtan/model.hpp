#pragma once

#include "svtan/lattice.hpp"
#include "svtan/params.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace svtan {

using Point = std::vector<std::int64_t>;

struct FacetId {
    enum class Kind { Coordinate, Balance };
    Kind kind = Kind::Coordinate;
    int block = 0;  // 0-based
    int coord = 0;  // 0-based within the block; unused for Balance

    static FacetId coordinate(int i, int j) { return {Kind::Coordinate, i, j}; }
    static FacetId balance(int i) { return {Kind::Balance, i, 0}; }

    // F_{1,2} or F_1 (1-based, normalized block order).
    std::string to_string() const;
    friend auto operator<=>(const FacetId&, const FacetId&) = default;
};

// Accepts "F_{1,2}", "F12" style is not accepted; throws ParameterError.
FacetId parse_facet_id(const std::string& text);

struct ConeHRep {
    std::vector<LatticeVector> nonnegativity_rows;
    std::vector<LatticeVector> balance_rows;
    std::vector<int> balance_blocks;
    Sublattice span{0};  // integer points of the rational span

    bool contains(const LatticeVector& x) const;
};

// Submonoid of N^k generated by {c : c_i <= a_i, sum c >= 2}. An x >= 0 lies
// in S exactly when its block-sum vector lies here, since a block total can
// be spread over the block's coordinates in any way.
class BlockMonoid {
public:
    explicit BlockMonoid(std::vector<int> caps);

    int k() const { return static_cast<int>(caps_.size()); }
    // Sorted by decreasing sum.
    const std::vector<Point>& generators() const { return gens_; }
    // Thread-safe; memoized.
    bool contains(std::span<const std::int64_t> s) const;
    // Generator sequence summing to s, or nullopt. only_sum > 0 restricts to
    // generators of that coordinate sum.
    std::optional<std::vector<Point>> decompose(std::span<const std::int64_t> s, int only_sum = 0) const;

    // Immutable lookup table for all s with 0 <= s_i <= box_i.
    class Table {
    public:
        bool contains(std::span<const std::int64_t> s) const;
        const Point& box() const { return box_; }

    private:
        friend class BlockMonoid;
        Point box_, stride_;
        std::vector<std::uint8_t> cells_;
    };
    Table table(const Point& box) const;

private:
    bool search(const Point& s, int only_sum) const;

    std::vector<int> caps_;
    std::vector<Point> gens_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::string, bool> memo_;
};

class AffineSemigroup;

// Quotient of G by the subgroup generated by the generators on one facet:
// one free coordinate (a positive multiple of the facet functional) plus a
// finite part. S_F = S + G_F, so x is in S_F iff its image lies in the
// image monoid of S, which is tracked level by level.
class FacetQuotient {
public:
    FacetQuotient(const Sublattice& group, const std::vector<LatticeVector>& generators, const Point& functional);

    // Linear image data: component t of the image of x is
    // (sum_c x_c * numerator(c, t)) / denominator(); component 0 is free.
    std::size_t dims() const { return moduli_.size() + 1; }
    std::int64_t numerator(std::size_t coord, std::size_t t) const { return num_[coord * dims() + t]; }
    std::int64_t denominator() const { return den_; }
    const std::vector<std::int64_t>& moduli() const { return moduli_; }
    std::size_t torsion_size() const { return torsion_size_; }

    struct Image {
        std::int64_t level;
        std::uint64_t torsion;
    };
    // From accumulated numerators (length dims()); x must lie in G.
    Image image_from_numerators(std::span<const std::int64_t> acc) const;
    Image image(std::span<const std::int64_t> x) const;
    bool member(const Image& im) const;
    bool contains(std::span<const std::int64_t> x) const { return member(image(x)); }

    const std::vector<std::size_t>& face_generator_indices() const { return face_gens_; }

private:
    void extend(std::int64_t level) const;

    std::size_t n_;
    std::int64_t den_ = 1;
    std::vector<std::int64_t> num_;
    std::vector<std::int64_t> moduli_;
    std::size_t torsion_size_ = 1;
    std::vector<std::size_t> face_gens_;
    // Distinct images of the off-face generators.
    std::vector<std::int64_t> step_level_;
    std::vector<std::vector<std::uint32_t>> step_shift_;

    static constexpr std::int64_t kMaxLevels = 1 << 15;
    std::unique_ptr<std::uint8_t[]> table_;
    mutable std::atomic<std::int64_t> ready_{0};
    mutable std::mutex mu_;
};

struct ModelOptions {
    int oracle_cap = 6;
};

class AffineSemigroup {
public:
    explicit AffineSemigroup(SVParams params, ModelOptions opts = {});

    const SVParams& params() const { return params_; }
    const ModelOptions& options() const { return opts_; }
    int n() const { return params_.n(); }
    const std::vector<LatticeVector>& generators() const { return generators_; }
    const std::vector<Point>& generator_points() const { return generator_points_; }
    const Sublattice& group() const { return group_; }
    int rank() const { return static_cast<int>(group_.rank()); }
    const ConeHRep& cone() const { return cone_; }
    const std::vector<FacetId>& facets() const { return facets_; }
    // Index in facets(), or -1.
    int facet_index(const FacetId& f) const;
    const Point& functional(std::size_t facet) const { return functionals_[facet]; }
    const FacetQuotient& quotient(std::size_t facet) const { return *quotients_[facet]; }
    const BlockMonoid& block_monoid() const { return *monoid_; }
    // Block-sum lattice of G; x is in G iff its block sums lie here.
    const Sublattice& block_group() const { return block_group_; }
    // Integer points of the rational span of block_group().
    const Sublattice& block_span() const { return block_span_; }

    // k = 1, a = 1: the zero semigroup.
    bool trivial() const { return generators_.empty(); }
    int max_generator_coordinate() const { return max_gen_coord_; }
    int max_generator_sum() const { return max_gen_sum_; }

    Point block_sums(std::span<const std::int64_t> x) const;
    bool in_group(std::span<const std::int64_t> x) const;
    bool in_semigroup(std::span<const std::int64_t> x) const;
    bool in_cone(std::span<const std::int64_t> x) const;

private:
    SVParams params_;
    ModelOptions opts_;
    std::vector<LatticeVector> generators_;
    std::vector<Point> generator_points_;
    Sublattice group_{0};
    Sublattice block_group_{0};
    Sublattice block_span_{0};
    ConeHRep cone_;
    std::vector<FacetId> facets_;
    std::vector<Point> functionals_;
    std::vector<std::shared_ptr<const FacetQuotient>> quotients_;
    std::shared_ptr<const BlockMonoid> monoid_;
    int max_gen_coord_ = 0;
    int max_gen_sum_ = 0;
};

std::vector<LatticeVector> enumerate_generators(const SVParams& p);
Sublattice compute_group(const AffineSemigroup& s);
// Closed form of the group by case (used as a cross-check).
Sublattice group_closed_form(const SVParams& p);
std::vector<FacetId> facet_list(const AffineSemigroup& s);
std::vector<FacetId> derive_facets(const SVParams& p);
Point facet_functional(const SVParams& p, const FacetId& f);

// Coordinates of a functional restricted to G (primitive).
LatticeVector restrict_to_group(const AffineSemigroup& s, const Point& functional);

struct SupportingHyperplane {
    LatticeVector normal;  // primitive, in coordinates of the group basis
    std::vector<std::size_t> tight_generators;
};

struct OracleResult {
    bool available = false;
    std::string reason;
    std::vector<SupportingHyperplane> facets;
};

// Double description on the dual cone inside the group coordinates.
OracleResult facet_oracle(const AffineSemigroup& s);
OracleResult facet_oracle(const AffineSemigroup& s, int cap);

struct RaysResult {
    std::vector<LatticeVector> rays;  // primitive in G, ambient coordinates
    std::string facet_source;         // "oracle" or "derived"
};
RaysResult extreme_rays(const AffineSemigroup& s);

}  // namespace svtan
