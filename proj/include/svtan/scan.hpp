#pragma once

#include "svtan/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

// Window scans over G by block classes. A point x of [-M, M]^n is summarized
// per block by (number of negative coordinates, sum of positive parts, sum of
// negative parts). Membership of x in G, in S and in every S_F depends only on
// these summaries and on which coordinates are negative, so one class stands
// for all points that share them.
namespace svtan::scan {

struct BlockState {
    int neg = 0;
    std::int64_t pos = 0;     // sum of the nonnegative coordinates
    std::int64_t negsum = 0;  // sum of |negative coordinates|
    // Negatives first (the first ones as negative as possible, the last ones
    // near -1), then nonnegatives filled greedily up to M. It is also the
    // realization with the largest maximum coordinate.
    Point rep;
    Point rep_low_max;  // evenly spread; smallest maximum coordinate
    std::int64_t low_max = 0, high_max = 0;
    std::uint64_t count = 0;  // realizations in the window, saturating
};

std::vector<BlockState> block_states(int b, std::int64_t m);

constexpr std::uint64_t kSaturated = std::uint64_t{1} << 62;
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);

// Integer lattice test in int64 for the short block-sum vectors.
class SmallLattice {
public:
    SmallLattice() = default;
    explicit SmallLattice(const Sublattice& l);
    bool contains(std::span<const std::int64_t> v) const;

private:
    std::size_t dim_ = 0;
    std::vector<Point> rows_;
    std::vector<std::size_t> pivots_;
};

struct ClassView {
    std::span<const std::size_t> states;  // per block, index into ClassScanner::states(i)
    std::span<const std::int64_t> sums;   // block sums of x (pos - negsum)
    std::uint64_t phi = 0;      // bit i: x in S_F for the coordinate facets of block i at a nonnegative coordinate
    std::uint64_t balance = 0;  // bit t: x in S_F for the t-th balance facet
    bool in_semigroup = false;
    std::int64_t l1 = 0;
};

class ClassScanner {
public:
    ClassScanner(const AffineSemigroup& s, std::int64_t m);

    const AffineSemigroup& semigroup() const { return s_; }
    std::int64_t window() const { return m_; }
    const std::vector<BlockState>& states(int block) const { return states_[block]; }
    bool has_coordinate_facets(int block) const { return coord_facet_[block].size() > 0; }
    // Facet index of F_{i,j}, or -1.
    int coordinate_facet(int block, int j) const { return coord_facet_[block].empty() ? -1 : coord_facet_[block][j]; }
    const std::vector<std::size_t>& balance_facets() const { return balance_facets_; }

    // Calls visit for every class of G inside the window until it returns false.
    void for_each(const std::function<bool(const ClassView&)>& visit) const;

    // A point of the class with the negatives of block i placed on the
    // coordinates in neg_masks[i] (empty: first coordinates).
    Point materialize(std::span<const std::size_t> states, std::span<const std::uint32_t> neg_masks = {},
                      bool low_max = false) const;

private:
    struct Probe {
        std::size_t facet;
        int block;  // -1 for balance facets
        std::size_t dims;
        std::size_t offset;  // into the accumulator
    };

    const AffineSemigroup& s_;
    std::int64_t m_;
    std::vector<std::vector<BlockState>> states_;
    std::vector<std::vector<int>> coord_facet_;
    std::vector<std::size_t> balance_facets_;
    std::vector<Probe> probes_;
    std::size_t acc_width_ = 0;
    // contrib_[block][state * acc_width_ + u]
    std::vector<Point> contrib_;
    SmallLattice group_;
    BlockMonoid::Table monoid_;
};

// Facets F with x in S_F, as a bit mask over facet indices. x must lie in G.
std::uint64_t localization_signature(const AffineSemigroup& s, std::span<const std::int64_t> x);

// Every realized facet signature of G cap [-M, M]^n outside S, with a witness.
class SignatureAtlas {
public:
    SignatureAtlas(const AffineSemigroup& s, std::int64_t m);

    std::int64_t window() const { return m_; }
    bool realized(std::uint64_t signature) const { return sigs_.count(signature) > 0; }
    // Smallest-l1 witness outside S, verified pointwise.
    std::optional<Point> witness(std::uint64_t signature) const;
    std::size_t signature_count() const { return sigs_.size(); }
    std::size_t class_count() const { return classes_; }

    // Points of G_F (empty signature) in the window.
    struct TopStats {
        bool empty = true;
        std::int64_t max_sum = 0;
        std::uint64_t count_at_max = 0;  // saturating
        Point rep;                       // one point of maximal sum
        std::vector<std::size_t> rep_states;
        Point sup;                       // coordinatewise supremum
    };
    const TopStats& top() const { return top_; }
    const ClassScanner& scanner() const { return scanner_; }

private:
    struct TypeRecord {
        std::vector<std::size_t> states;
        std::int64_t l1;
        std::uint64_t phi, balance;
    };
    struct SigEntry {
        std::size_t type;
        std::vector<std::uint32_t> masks;
    };

    const AffineSemigroup& s_;
    std::int64_t m_;
    ClassScanner scanner_;
    std::vector<TypeRecord> types_;
    std::unordered_map<std::uint64_t, SigEntry> sigs_;
    std::size_t classes_ = 0;
    TopStats top_;
};

}  // namespace svtan::scan
