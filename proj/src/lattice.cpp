#include "svtan/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace svtan {

LatticeVector::LatticeVector(std::initializer_list<long> values) {
    coords_.reserve(values.size());
    for (long v : values) coords_.emplace_back(v);
}

LatticeVector LatticeVector::from_int64(std::span<const std::int64_t> values) {
    LatticeVector out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = static_cast<long>(values[i]);
    return out;
}

bool LatticeVector::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& x) { return x == 0; });
}

Integer LatticeVector::sum() const {
    Integer s = 0;
    for (const auto& x : coords_) s += x;
    return s;
}

std::vector<std::int64_t> LatticeVector::to_int64() const {
    std::vector<std::int64_t> out(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!coords_[i].fits_slong_p()) throw std::overflow_error("lattice coordinate exceeds 64 bits");
        out[i] = coords_[i].get_si();
    }
    return out;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& other) {
    if (other.size() != size()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& other) {
    if (other.size() != size()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
}

LatticeVector LatticeVector::operator-() const {
    LatticeVector out(*this);
    for (auto& x : out.coords_) x = -x;
    return out;
}

std::string LatticeVector::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ",";
        s += coords_[i].get_str();
    }
    return s + ")";
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<LatticeVector>& rows, std::size_t cols) {
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("row dimension mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t cols = rows.size() ? rows.begin()->size() : 0;
    IntegerMatrix m(rows.size(), cols);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != cols) throw std::invalid_argument("ragged matrix");
        std::size_t c = 0;
        for (long v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

LatticeVector IntegerMatrix::row(std::size_t r) const {
    LatticeVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
    return v;
}

LatticeVector IntegerMatrix::column(std::size_t c) const {
    LatticeVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    IntegerMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
        }
    return out;
}

LatticeVector IntegerMatrix::apply(const LatticeVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    LatticeVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
}

bool IntegerMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntegerMatrix::add_row(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntegerMatrix::add_col(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntegerMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntegerMatrix::negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

std::string IntegerMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << ",";
        os << row(r).to_string();
    }
    os << "]";
    return os.str();
}

namespace {

// Replace rows (a, b) of both matrices by a unimodular combination that puts
// gcd(h(a,col), h(b,col)) in row a and zero in row b.
void gcd_combine_rows(IntegerMatrix& h, IntegerMatrix& u, std::size_t a, std::size_t b, std::size_t col) {
    Integer x = h(a, col), y = h(b, col);
    if (y == 0) return;
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    Integer xg = x / g, yg = y / g;
    auto combine = [&](IntegerMatrix& m) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            Integer ra = m(a, c), rb = m(b, c);
            m(a, c) = s * ra + t * rb;
            m(b, c) = -yg * ra + xg * rb;
        }
    };
    combine(h);
    combine(u);
}

}  // namespace

HermiteForm hermite_normal_form(const IntegerMatrix& m) {
    HermiteForm out{m, IntegerMatrix::identity(m.rows()), 0, {}};
    IntegerMatrix& h = out.h;
    IntegerMatrix& u = out.u;
    std::size_t row = 0;
    for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
        std::size_t first = h.rows();
        for (std::size_t r = row; r < h.rows(); ++r)
            if (h(r, col) != 0) {
                first = r;
                break;
            }
        if (first == h.rows()) continue;
        h.swap_rows(row, first);
        u.swap_rows(row, first);
        for (std::size_t r = row + 1; r < h.rows(); ++r) gcd_combine_rows(h, u, row, r, col);
        if (h(row, col) < 0) {
            h.negate_row(row);
            u.negate_row(row);
        }
        const Integer pivot = h(row, col);
        for (std::size_t r = 0; r < row; ++r) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h(r, col).get_mpz_t(), pivot.get_mpz_t());
            if (q != 0) {
                h.add_row(r, row, -q);
                u.add_row(r, row, -q);
            }
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.rank = row;
    return out;
}

SmithForm smith_decomposition(const IntegerMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntegerMatrix d = m;
    SmithForm out{IntegerMatrix::identity(rows), IntegerMatrix::identity(cols), {}, 0};
    IntegerMatrix& u = out.u;
    IntegerMatrix& v = out.v;
    const std::size_t lim = std::min(rows, cols);

    for (std::size_t t = 0; t < lim; ++t) {
        // Pick the smallest nonzero entry of the trailing block as pivot.
        bool found = false;
        std::size_t pr = t, pc = t;
        for (std::size_t r = t; r < rows; ++r)
            for (std::size_t c = t; c < cols; ++c)
                if (d(r, c) != 0 && (!found || abs(d(r, c)) < abs(d(pr, pc)))) {
                    found = true;
                    pr = r;
                    pc = c;
                }
        if (!found) break;
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        for (;;) {
            bool dirty = false;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (d(r, t) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), d(r, t).get_mpz_t(), d(t, t).get_mpz_t());
                d.add_row(r, t, -q);
                u.add_row(r, t, -q);
                if (d(r, t) != 0) {
                    d.swap_rows(t, r);
                    u.swap_rows(t, r);
                    dirty = true;
                }
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (d(t, c) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), d(t, c).get_mpz_t(), d(t, t).get_mpz_t());
                d.add_col(c, t, -q);
                v.add_col(c, t, -q);
                if (d(t, c) != 0) {
                    d.swap_cols(t, c);
                    v.swap_cols(t, c);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Row and column are clear; enforce divisibility of the rest.
            bool fixed = false;
            for (std::size_t r = t + 1; r < rows && !fixed; ++r)
                for (std::size_t c = t + 1; c < cols && !fixed; ++c)
                    if (d(r, c) % d(t, t) != 0) {
                        d.add_row(t, r, 1);
                        u.add_row(t, r, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
        ++out.rank;
    }
    out.diagonal.resize(lim);
    for (std::size_t t = 0; t < lim; ++t) out.diagonal[t] = d(t, t);
    return out;
}

std::vector<Integer> smith_normal_form(const IntegerMatrix& m) { return smith_decomposition(m).diagonal; }

std::size_t matrix_rank(const IntegerMatrix& m) { return hermite_normal_form(m).rank; }

IntegerMatrix Sublattice::basis_matrix() const { return IntegerMatrix::from_rows(basis_, ambient_dim_); }

std::optional<std::vector<Integer>> Sublattice::coordinates(const LatticeVector& v) const {
    if (v.size() != ambient_dim_) throw std::invalid_argument("dimension mismatch in lattice membership");
    LatticeVector rest = v;
    std::vector<Integer> coeffs(basis_.size());
    std::size_t next_col = 0;
    for (std::size_t t = 0; t < basis_.size(); ++t) {
        const std::size_t p = pivots_[t];
        for (; next_col < p; ++next_col)
            if (rest[next_col] != 0) return std::nullopt;
        const Integer& pivot = basis_[t][p];
        if (rest[p] % pivot != 0) return std::nullopt;
        coeffs[t] = rest[p] / pivot;
        if (coeffs[t] != 0)
            for (std::size_t c = p; c < ambient_dim_; ++c) rest[c] -= coeffs[t] * basis_[t][c];
        next_col = p + 1;
    }
    for (; next_col < ambient_dim_; ++next_col)
        if (rest[next_col] != 0) return std::nullopt;
    return coeffs;
}

bool Sublattice::contains(const LatticeVector& v) const { return coordinates(v).has_value(); }

Sublattice lattice_from_generators(const std::vector<LatticeVector>& gens, std::size_t dim) {
    Sublattice l(dim);
    // Absorb one generator at a time so the Hermite step never sees more
    // than rank + 1 rows.
    for (const auto& g : gens) {
        if (g.size() != dim) throw std::invalid_argument("generator has the wrong dimension");
        if (g.is_zero() || l.contains(g)) continue;
        std::vector<LatticeVector> rows = l.basis_;
        rows.push_back(g);
        auto hnf = hermite_normal_form(IntegerMatrix::from_rows(rows, dim));
        l.basis_.clear();
        for (std::size_t r = 0; r < hnf.rank; ++r) l.basis_.push_back(hnf.h.row(r));
        l.pivots_ = hnf.pivots;
    }
    return l;
}

bool lattice_member(const Sublattice& l, const LatticeVector& v) { return l.contains(v); }

Sublattice integer_kernel(const IntegerMatrix& m) {
    auto hnf = hermite_normal_form(m.transpose());
    std::vector<LatticeVector> gens;
    for (std::size_t r = hnf.rank; r < hnf.u.rows(); ++r) gens.push_back(hnf.u.row(r));
    return lattice_from_generators(gens, m.cols());
}

Sublattice saturation(const Sublattice& l) {
    if (l.rank() == 0) return Sublattice(l.ambient_dim());
    auto orth = integer_kernel(l.basis_matrix());
    if (orth.rank() == 0) {
        std::vector<LatticeVector> unit;
        for (std::size_t i = 0; i < l.ambient_dim(); ++i) {
            LatticeVector e(l.ambient_dim());
            e[i] = 1;
            unit.push_back(e);
        }
        return lattice_from_generators(unit, l.ambient_dim());
    }
    return integer_kernel(orth.basis_matrix());
}

Integer dot(const LatticeVector& a, const LatticeVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch in dot product");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

LatticeVector primitive(const LatticeVector& v) {
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].get_mpz_t());
    if (g == 0 || g == 1) return v;
    LatticeVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

}  // namespace svtan
