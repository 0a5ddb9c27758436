#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace svtan {

using Integer = mpz_class;

// Exact integer vector. Coordinates follow the global lexicographic order of
// the index set {(i,j)}; the owner of the vector knows the block layout.
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(std::size_t n) : coords_(n) {}
    LatticeVector(std::initializer_list<long> values);
    explicit LatticeVector(std::vector<Integer> values) : coords_(std::move(values)) {}

    static LatticeVector from_int64(std::span<const std::int64_t> values);

    std::size_t size() const { return coords_.size(); }
    Integer& operator[](std::size_t i) { return coords_[i]; }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<Integer>& coords() const { return coords_; }

    bool is_zero() const;
    Integer sum() const;
    // Throws std::overflow_error when a coordinate does not fit.
    std::vector<std::int64_t> to_int64() const;

    LatticeVector& operator+=(const LatticeVector& other);
    LatticeVector& operator-=(const LatticeVector& other);
    friend LatticeVector operator+(LatticeVector lhs, const LatticeVector& rhs) { return lhs += rhs; }
    friend LatticeVector operator-(LatticeVector lhs, const LatticeVector& rhs) { return lhs -= rhs; }
    LatticeVector operator-() const;

    friend bool operator==(const LatticeVector& lhs, const LatticeVector& rhs) {
        return lhs.coords_ == rhs.coords_;
    }
    friend bool operator<(const LatticeVector& lhs, const LatticeVector& rhs) {
        return lhs.coords_ < rhs.coords_;
    }

    // "(1,-2,0)"
    std::string to_string() const;

private:
    std::vector<Integer> coords_;
};

class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix from_rows(const std::vector<LatticeVector>& rows, std::size_t cols);
    static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    LatticeVector row(std::size_t r) const;
    LatticeVector column(std::size_t c) const;
    IntegerMatrix transpose() const;
    IntegerMatrix operator*(const IntegerMatrix& rhs) const;
    // Matrix times column vector.
    LatticeVector apply(const LatticeVector& v) const;
    bool is_zero() const;

    friend bool operator==(const IntegerMatrix& lhs, const IntegerMatrix& rhs) {
        return lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.data_ == rhs.data_;
    }

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& factor);
    void add_col(std::size_t dst, std::size_t src, const Integer& factor);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

struct HermiteForm {
    IntegerMatrix h;   // h = u * m
    IntegerMatrix u;   // unimodular
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Row-style Hermite normal form: nonzero rows first, strictly increasing
// pivot columns, positive pivots, entries above a pivot reduced into [0, pivot).
HermiteForm hermite_normal_form(const IntegerMatrix& m);

struct SmithForm {
    IntegerMatrix u;                // rows x rows, unimodular
    IntegerMatrix v;                // cols x cols, unimodular
    std::vector<Integer> diagonal;  // min(rows, cols) entries, d_1 | d_2 | ..., zeros last
    std::size_t rank = 0;
};

// u * m * v is diagonal with the returned entries.
SmithForm smith_decomposition(const IntegerMatrix& m);
std::vector<Integer> smith_normal_form(const IntegerMatrix& m);

std::size_t matrix_rank(const IntegerMatrix& m);

class Sublattice {
public:
    explicit Sublattice(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<LatticeVector>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    IntegerMatrix basis_matrix() const;

    bool contains(const LatticeVector& v) const;
    // Coefficients with respect to the basis, or nullopt when v is outside.
    std::optional<std::vector<Integer>> coordinates(const LatticeVector& v) const;

    friend bool operator==(const Sublattice& lhs, const Sublattice& rhs) {
        return lhs.ambient_dim_ == rhs.ambient_dim_ && lhs.basis_ == rhs.basis_;
    }

private:
    friend Sublattice lattice_from_generators(const std::vector<LatticeVector>& gens, std::size_t dim);
    std::size_t ambient_dim_;
    std::vector<LatticeVector> basis_;
    std::vector<std::size_t> pivots_;
};

Sublattice lattice_from_generators(const std::vector<LatticeVector>& gens, std::size_t dim);
bool lattice_member(const Sublattice& l, const LatticeVector& v);
// {v : m v = 0} as a Hermite-form sublattice of Z^cols.
Sublattice integer_kernel(const IntegerMatrix& m);
// Integer points of the rational span of l.
Sublattice saturation(const Sublattice& l);

Integer dot(const LatticeVector& a, const LatticeVector& b);
// Divide by the gcd of the entries; zero stays zero.
LatticeVector primitive(const LatticeVector& v);

}  // namespace svtan
