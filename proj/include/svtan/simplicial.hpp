#pragma once

#include "svtan/lattice.hpp"
#include "svtan/params.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace svtan {

// Sorted label indices with repetition; equal multisets are the same coordinate.
struct MultisetSimplex {
    std::vector<int> labels;

    std::size_t cardinality() const { return labels.size(); }
    std::map<int, int> multiplicities() const;
    friend bool operator==(const MultisetSimplex&, const MultisetSimplex&) = default;
};

// Graded lexicographic: cardinality first, then sorted label lists.
bool graded_less(const MultisetSimplex& lhs, const MultisetSimplex& rhs);

// Simplicial complex whose vertices carry labels, possibly repeated.
// Either an explicit list of maximal faces or, for the Segre-Veronese
// complex, per-group capacity bounds (a face may use at most cap vertices of
// each group).
class LabeledComplex {
public:
    struct CapacityGroup {
        std::vector<int> vertices;
        int cap;
    };

    static LabeledComplex from_maximal_faces(std::vector<std::string> label_names, std::vector<int> vertex_labels,
                                             std::vector<std::vector<int>> maximal_faces);
    static LabeledComplex from_capacities(std::vector<std::string> label_names, std::vector<int> vertex_labels,
                                          std::vector<CapacityGroup> groups);

    const std::vector<std::string>& label_names() const { return label_names_; }
    const std::vector<int>& vertex_labels() const { return vertex_labels_; }
    std::size_t vertex_count() const { return vertex_labels_.size(); }
    std::size_t label_count() const { return label_names_.size(); }
    bool is_capacity_form() const { return capacity_form_; }
    const std::vector<std::vector<int>>& maximal_faces() const { return maximal_faces_; }
    const std::vector<CapacityGroup>& groups() const { return groups_; }

    // Vertex subset (any order) is a simplex.
    bool contains(const std::vector<int>& vertices) const;
    // Coordinate name of a simplex: concatenated label names, or joined with
    // ',' when some label name is longer than one character.
    std::string coordinate_name(const MultisetSimplex& s) const;

private:
    std::vector<std::string> label_names_;
    std::vector<int> vertex_labels_;
    bool capacity_form_ = false;
    std::vector<std::vector<int>> maximal_faces_;
    std::vector<CapacityGroup> groups_;
};

LabeledComplex build_sv_complex(const SVParams& p);
// Includes the empty simplex; graded lexicographic order.
std::vector<MultisetSimplex> distinct_simplices(const LabeledComplex& c);
// Rows = labels, columns = distinct simplices (cardinality >= 2 if restricted).
IntegerMatrix exponent_map(const LabeledComplex& c, bool dims_at_least_one);
std::vector<MultisetSimplex> exponent_columns(const LabeledComplex& c, bool dims_at_least_one);

struct ComplexParseError : std::runtime_error {
    ComplexParseError(int line, const std::string& what);
    int line;
};

// One simplex per line, comma-separated labels, '#' starts a comment line.
LabeledComplex parse_complex(const std::string& text);

// Finite abstract complex on at most 64 vertices; faces are bitmasks and the
// empty face is always present.
class AbstractComplex {
public:
    using Face = std::uint64_t;

    AbstractComplex(std::size_t vertex_count, std::vector<Face> generating_faces,
                    std::vector<std::string> vertex_names = {});

    std::size_t vertex_count() const { return vertex_count_; }
    const std::vector<std::string>& vertex_names() const { return names_; }
    // Inclusion-maximal faces, sorted.
    const std::vector<Face>& maximal_faces() const { return maximal_; }
    bool contains(Face f) const;
    // Every face including the empty one, ordered by size then value.
    std::vector<Face> faces() const;
    int dimension() const;
    // A vertex shared by every maximal face, if any.
    std::optional<int> apex() const;

    std::vector<int> vertices_of(Face f) const;

private:
    std::size_t vertex_count_;
    std::vector<std::string> names_;
    std::vector<Face> maximal_;
};

struct HomologyOptions {
    // Cone shortcut and mod-p prefilter; both are exact.
    bool shortcuts = true;
};

// Ranks of reduced homology over Q for q = -1, 0, ..., dim.
std::vector<std::size_t> reduced_homology_ranks(const AbstractComplex& c, HomologyOptions opts = {});
bool is_acyclic(const AbstractComplex& c);
// Reduced Euler characteristic from face counts: sum_q (-1)^q f_q, q >= -1.
long reduced_euler_characteristic(const AbstractComplex& c);

// Exact rank over Q of a small integer matrix (rows of int64).
std::size_t rational_rank(std::vector<std::vector<std::int64_t>> rows);

}  // namespace svtan
