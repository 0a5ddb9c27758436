#include "svtan/model.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <stdexcept>

namespace svtan {

std::string FacetId::to_string() const {
    if (kind == Kind::Balance) return "F_" + std::to_string(block + 1);
    return "F_{" + std::to_string(block + 1) + "," + std::to_string(coord + 1) + "}";
}

FacetId parse_facet_id(const std::string& text) {
    static const std::regex coord_re(R"(F_\{(\d+),(\d+)\})");
    static const std::regex bal_re(R"(F_(\d+))");
    std::smatch m;
    if (std::regex_match(text, m, coord_re))
        return FacetId::coordinate(std::stoi(m[1]) - 1, std::stoi(m[2]) - 1);
    if (std::regex_match(text, m, bal_re)) return FacetId::balance(std::stoi(m[1]) - 1);
    throw ParameterError("not a facet name: '" + text + "'");
}

bool ConeHRep::contains(const LatticeVector& x) const {
    for (const auto& row : nonnegativity_rows)
        if (dot(row, x) < 0) return false;
    for (const auto& row : balance_rows)
        if (dot(row, x) < 0) return false;
    return span.contains(x);
}

// ---------------------------------------------------------------------------
// Block monoid

BlockMonoid::BlockMonoid(std::vector<int> caps) : caps_(std::move(caps)) {
    Point c(caps_.size(), 0);
    // Odometer over the box [0, caps].
    for (;;) {
        std::int64_t total = std::accumulate(c.begin(), c.end(), std::int64_t{0});
        if (total >= 2) gens_.push_back(c);
        std::size_t i = 0;
        for (; i < c.size(); ++i) {
            if (c[i] < caps_[i]) {
                ++c[i];
                break;
            }
            c[i] = 0;
        }
        if (i == c.size()) break;
    }
    std::stable_sort(gens_.begin(), gens_.end(), [](const Point& x, const Point& y) {
        return std::accumulate(x.begin(), x.end(), std::int64_t{0}) > std::accumulate(y.begin(), y.end(), std::int64_t{0});
    });
}

namespace {

std::string key_of(const Point& s, int only_sum) {
    std::string key(reinterpret_cast<const char*>(s.data()), s.size() * sizeof(std::int64_t));
    key.push_back(static_cast<char>(only_sum));
    return key;
}

bool fits_under(const Point& g, const Point& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (g[i] > s[i]) return false;
    return true;
}

std::int64_t total_of(std::span<const std::int64_t> v) {
    return std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

}  // namespace

bool BlockMonoid::search(const Point& s, int only_sum) const {
    if (std::all_of(s.begin(), s.end(), [](std::int64_t v) { return v == 0; })) return true;
    const std::string key = key_of(s, only_sum);
    {
        std::lock_guard lock(mu_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    bool found = false;
    if (total_of(s) >= 2) {
        Point rest(s.size());
        for (const auto& g : gens_) {
            if (only_sum > 0 && total_of(g) != only_sum) continue;
            if (!fits_under(g, s)) continue;
            for (std::size_t i = 0; i < s.size(); ++i) rest[i] = s[i] - g[i];
            if (search(rest, only_sum)) {
                found = true;
                break;
            }
        }
    }
    std::lock_guard lock(mu_);
    memo_.emplace(key, found);
    return found;
}

bool BlockMonoid::contains(std::span<const std::int64_t> s) const {
    if (s.size() != caps_.size()) throw std::invalid_argument("block vector has wrong length");
    if (std::any_of(s.begin(), s.end(), [](std::int64_t v) { return v < 0; })) return false;
    return search(Point(s.begin(), s.end()), 0);
}

std::optional<std::vector<Point>> BlockMonoid::decompose(std::span<const std::int64_t> s, int only_sum) const {
    if (s.size() != caps_.size()) throw std::invalid_argument("block vector has wrong length");
    if (std::any_of(s.begin(), s.end(), [](std::int64_t v) { return v < 0; })) return std::nullopt;
    Point rest(s.begin(), s.end());
    if (!search(rest, only_sum)) return std::nullopt;
    std::vector<Point> parts;
    Point next(rest.size());
    while (std::any_of(rest.begin(), rest.end(), [](std::int64_t v) { return v != 0; })) {
        bool stepped = false;
        for (const auto& g : gens_) {
            if (only_sum > 0 && total_of(g) != only_sum) continue;
            if (!fits_under(g, rest)) continue;
            for (std::size_t i = 0; i < rest.size(); ++i) next[i] = rest[i] - g[i];
            if (search(next, only_sum)) {
                parts.push_back(g);
                rest = next;
                stepped = true;
                break;
            }
        }
        if (!stepped) throw std::logic_error("block decomposition lost its path");
    }
    return parts;
}

BlockMonoid::Table BlockMonoid::table(const Point& box) const {
    if (box.size() != caps_.size()) throw std::invalid_argument("table box has wrong length");
    Table t;
    t.box_ = box;
    t.stride_.assign(box.size(), 1);
    std::size_t cells = 1;
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (box[i] < 0) throw std::invalid_argument("negative table box");
        t.stride_[i] = static_cast<std::int64_t>(cells);
        cells *= static_cast<std::size_t>(box[i] + 1);
    }
    t.cells_.assign(cells, 0);
    t.cells_[0] = 1;
    // Generator offsets in flat index space.
    std::vector<std::int64_t> offsets;
    for (const auto& g : gens_) {
        std::int64_t off = 0;
        for (std::size_t i = 0; i < g.size(); ++i) off += g[i] * t.stride_[i];
        offsets.push_back(off);
    }
    Point c(box.size(), 0);
    for (std::size_t idx = 1; idx < cells; ++idx) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] < box[i]) {
                ++c[i];
                break;
            }
            c[i] = 0;
        }
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            if (!fits_under(gens_[g], c)) continue;
            if (t.cells_[idx - offsets[g]]) {
                t.cells_[idx] = 1;
                break;
            }
        }
    }
    return t;
}

bool BlockMonoid::Table::contains(std::span<const std::int64_t> s) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0) return false;
        if (s[i] > box_[i]) throw std::out_of_range("block table queried outside its box");
        idx += static_cast<std::size_t>(s[i] * stride_[i]);
    }
    return cells_[idx] != 0;
}

// ---------------------------------------------------------------------------
// Facet quotient

namespace {

std::int64_t to_i64(const Integer& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("value exceeds 64 bits");
    return v.get_si();
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

FacetQuotient::FacetQuotient(const Sublattice& group, const std::vector<LatticeVector>& generators,
                             const Point& functional)
    : n_(group.ambient_dim()) {
    const std::size_t r = group.rank();
    if (r == 0) throw std::logic_error("facet quotient of the zero group");

    std::vector<LatticeVector> face_rows;
    std::vector<std::size_t> off_face;
    for (std::size_t g = 0; g < generators.size(); ++g) {
        Integer v = 0;
        for (std::size_t c = 0; c < n_; ++c) v += generators[g][c] * static_cast<long>(functional[c]);
        if (v < 0) throw std::logic_error("facet functional is negative on a generator");
        if (v == 0) {
            face_gens_.push_back(g);
            face_rows.emplace_back(*group.coordinates(generators[g]));
        } else {
            off_face.push_back(g);
        }
    }
    if (off_face.empty()) throw std::logic_error("facet contains every generator");

    IntegerMatrix v_mat = IntegerMatrix::identity(r);
    std::vector<Integer> diag;
    std::size_t rho = 0;
    if (!face_rows.empty()) {
        auto face_lattice = lattice_from_generators(face_rows, r);
        auto snf = smith_decomposition(face_lattice.basis_matrix());
        v_mat = snf.v;
        diag = snf.diagonal;
        rho = snf.rank;
    }
    if (rho + 1 != r) throw std::logic_error("hyperplane is not a facet: face has rank " + std::to_string(rho));

    // Inverse of the pivot block of the Hermite basis, times V.
    const auto& basis = group.basis();
    const auto& piv = group.pivots();
    std::vector<std::vector<mpq_class>> inv(r, std::vector<mpq_class>(r));
    {
        std::vector<std::vector<mpq_class>> a(r, std::vector<mpq_class>(2 * r));
        for (std::size_t s = 0; s < r; ++s) {
            for (std::size_t t = 0; t < r; ++t) a[s][t] = mpq_class(basis[s][piv[t]]);
            a[s][r + s] = 1;
        }
        for (std::size_t t = r; t-- > 0;) {
            mpq_class p = a[t][t];
            for (auto& e : a[t]) e /= p;
            for (std::size_t s = 0; s < t; ++s) {
                mpq_class f = a[s][t];
                if (f == 0) continue;
                for (std::size_t c = 0; c < 2 * r; ++c) a[s][c] -= f * a[t][c];
            }
        }
        for (std::size_t s = 0; s < r; ++s)
            for (std::size_t t = 0; t < r; ++t) inv[s][t] = a[s][r + t];
    }
    Integer det = 1;
    for (std::size_t t = 0; t < r; ++t) det *= basis[t][piv[t]];
    den_ = to_i64(det);

    std::vector<std::size_t> components{r - 1};
    for (std::size_t t = 0; t < rho; ++t)
        if (diag[t] > 1) {
            components.push_back(t);
            moduli_.push_back(to_i64(diag[t]));
        }
    num_.assign(n_ * components.size(), 0);
    for (std::size_t s = 0; s < r; ++s)
        for (std::size_t u = 0; u < components.size(); ++u) {
            mpq_class w = 0;
            for (std::size_t t = 0; t < r; ++t) w += inv[s][t] * mpq_class(v_mat(t, components[u]));
            w *= mpq_class(det);
            w.canonicalize();
            if (w.get_den() != 1) throw std::logic_error("facet quotient map is not integral");
            num_[piv[s] * components.size() + u] = to_i64(w.get_num());
        }

    torsion_size_ = 1;
    for (auto m : moduli_) torsion_size_ *= static_cast<std::size_t>(m);
    if (torsion_size_ > 4096) throw std::length_error("facet quotient torsion too large");

    // Orient the free coordinate so that off-face generators are positive.
    auto free_value = [&](const LatticeVector& g) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < n_; ++c) acc += to_i64(g[c]) * num_[c * dims()];
        return acc / den_;
    };
    if (free_value(generators[off_face.front()]) < 0)
        for (std::size_t c = 0; c < n_; ++c) num_[c * dims()] = -num_[c * dims()];

    std::vector<std::pair<std::int64_t, std::uint64_t>> steps;
    for (auto g : off_face) {
        auto x = generators[g].to_int64();
        auto im = image(x);
        if (im.level <= 0) throw std::logic_error("off-face generator has non-positive level");
        steps.emplace_back(im.level, im.torsion);
    }
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    for (auto [lvl, tor] : steps) {
        step_level_.push_back(lvl);
        std::vector<std::uint32_t> shift(torsion_size_);
        for (std::uint64_t t = 0; t < torsion_size_; ++t) {
            std::uint64_t a = t, b = tor, out = 0, radix = 1;
            for (auto m : moduli_) {
                auto um = static_cast<std::uint64_t>(m);
                out += ((a % um + b % um) % um) * radix;
                a /= um;
                b /= um;
                radix *= um;
            }
            shift[t] = static_cast<std::uint32_t>(out);
        }
        step_shift_.push_back(std::move(shift));
    }
    table_ = std::make_unique<std::uint8_t[]>(static_cast<std::size_t>(kMaxLevels) * torsion_size_);
}

FacetQuotient::Image FacetQuotient::image_from_numerators(std::span<const std::int64_t> acc) const {
    Image im{0, 0};
    if (acc[0] % den_ != 0) throw std::logic_error("point outside the group passed to a facet quotient");
    im.level = acc[0] / den_;
    std::uint64_t radix = 1;
    for (std::size_t u = 0; u < moduli_.size(); ++u) {
        if (acc[u + 1] % den_ != 0) throw std::logic_error("point outside the group passed to a facet quotient");
        im.torsion += static_cast<std::uint64_t>(floor_mod(acc[u + 1] / den_, moduli_[u])) * radix;
        radix *= static_cast<std::uint64_t>(moduli_[u]);
    }
    return im;
}

FacetQuotient::Image FacetQuotient::image(std::span<const std::int64_t> x) const {
    if (x.size() != n_) throw std::invalid_argument("dimension mismatch in facet quotient");
    std::vector<std::int64_t> acc(dims(), 0);
    for (std::size_t c = 0; c < n_; ++c) {
        if (x[c] == 0) continue;
        for (std::size_t u = 0; u < dims(); ++u) acc[u] += x[c] * num_[c * dims() + u];
    }
    return image_from_numerators(acc);
}

bool FacetQuotient::member(const Image& im) const {
    if (im.level < 0) return false;
    if (im.level >= ready_.load(std::memory_order_acquire)) extend(im.level);
    return table_[static_cast<std::size_t>(im.level) * torsion_size_ + im.torsion] != 0;
}

void FacetQuotient::extend(std::int64_t level) const {
    if (level >= kMaxLevels) throw std::length_error("facet quotient level beyond table capacity");
    std::lock_guard lock(mu_);
    std::int64_t cur = ready_.load(std::memory_order_relaxed);
    if (level < cur) return;
    std::int64_t target = std::min(kMaxLevels, std::max({level + 1, 2 * cur, std::int64_t{64}}));
    auto* t = table_.get();
    for (std::int64_t h = cur; h < target; ++h) {
        std::uint8_t* row = t + static_cast<std::size_t>(h) * torsion_size_;
        if (h == 0) {
            row[0] = 1;
            continue;
        }
        for (std::size_t g = 0; g < step_level_.size(); ++g) {
            if (step_level_[g] > h) break;
            const std::uint8_t* prev = t + static_cast<std::size_t>(h - step_level_[g]) * torsion_size_;
            for (std::size_t tau = 0; tau < torsion_size_; ++tau)
                if (prev[tau]) row[step_shift_[g][tau]] = 1;
        }
    }
    ready_.store(target, std::memory_order_release);
}

// ---------------------------------------------------------------------------
// Generators, group, facets

std::vector<LatticeVector> enumerate_generators(const SVParams& p) {
    const int n = p.n();
    std::vector<Point> out;
    Point x(n, 0);
    // Recursive fill, block by block, keeping each block sum within a_i.
    auto rec = [&](auto&& self, int coord, int block_left) -> void {
        if (coord == n) {
            if (total_of(x) >= 2) out.push_back(x);
            return;
        }
        const int i = p.block_of(coord);
        const bool starts_block = coord == p.block_offset(i);
        const int left = starts_block ? p.a()[i] : block_left;
        for (int v = 0; v <= left; ++v) {
            x[coord] = v;
            self(self, coord + 1, left - v);
        }
        x[coord] = 0;
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end(), [](const Point& u, const Point& v) {
        auto su = total_of(u), sv = total_of(v);
        if (su != sv) return su < sv;
        return u > v;
    });
    std::vector<LatticeVector> gens;
    for (const auto& g : out) gens.push_back(LatticeVector::from_int64(g));
    return gens;
}

Sublattice compute_group(const AffineSemigroup& s) { return lattice_from_generators(s.generators(), s.n()); }

Sublattice group_closed_form(const SVParams& p) {
    const int n = p.n();
    auto unit = [n](int c) {
        LatticeVector e(n);
        e[c] = 1;
        return e;
    };
    std::vector<LatticeVector> gens;
    if (p.k() == 1 && p.a()[0] == 1) return Sublattice(n);
    if (p.k() == 2 && p.a()[0] == 1 && p.a()[1] == 1) {
        IntegerMatrix row(1, n);
        for (int c = 0; c < n; ++c) row(0, c) = p.block_of(c) == 0 ? 1 : -1;
        return integer_kernel(row);
    }
    if (p.k() == 1 && p.a()[0] == 2) {
        for (int c = 0; c < n; ++c) {
            gens.push_back(unit(c) + unit(c));
            for (int d = c + 1; d < n; ++d) gens.push_back(unit(c) + unit(d));
        }
        return lattice_from_generators(gens, n);
    }
    for (int c = 0; c < n; ++c) gens.push_back(unit(c));
    return lattice_from_generators(gens, n);
}

std::vector<FacetId> derive_facets(const SVParams& p) {
    const int k = p.k();
    const auto& a = p.a();
    const auto& b = p.b();
    std::vector<FacetId> out;
    if (k == 1 && a[0] == 1) return out;
    const bool segre_pair = k == 2 && a[0] == 1 && a[1] == 1;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < b[i]; ++j) {
            bool facet = true;
            if (k == 3 && a[0] == 1 && a[1] == 1 && a[2] >= 2 && b[2] == 1 && i == 2) facet = false;
            if (k == 3 && a[0] == 1 && a[1] == 1 && a[2] == 1 && b[i] == 1) facet = false;
            if (k == 2 && a[0] == 1 && a[1] >= 2 && b[1] == 1 && i == 1) facet = false;
            // Inside the span {s_1 = s_2}: a coordinate hyperplane cuts a facet
            // when its block has another coordinate; with b = (1,1) the cone is
            // a ray and its only facet {0} is listed once.
            if (segre_pair) facet = b[i] >= 2 || (b[0] == 1 && b[1] == 1 && i == 0);
            if (facet) out.push_back(FacetId::coordinate(i, j));
        }
    for (int i = 0; i < k; ++i)
        if (a[i] == 1 && !segre_pair) out.push_back(FacetId::balance(i));
    return out;
}

Point facet_functional(const SVParams& p, const FacetId& f) {
    Point l(p.n(), 0);
    if (f.kind == FacetId::Kind::Coordinate) {
        l[p.index(f.block, f.coord)] = 1;
    } else {
        for (int c = 0; c < p.n(); ++c) l[c] = p.block_of(c) == f.block ? -1 : 1;
    }
    return l;
}

std::vector<FacetId> facet_list(const AffineSemigroup& s) { return s.facets(); }

// ---------------------------------------------------------------------------
// AffineSemigroup

AffineSemigroup::AffineSemigroup(SVParams params, ModelOptions opts) : params_(std::move(params)), opts_(opts) {
    const int n = params_.n();
    generators_ = enumerate_generators(params_);
    for (const auto& g : generators_) {
        generator_points_.push_back(g.to_int64());
        for (auto v : generator_points_.back()) max_gen_coord_ = std::max<int>(max_gen_coord_, static_cast<int>(v));
        max_gen_sum_ = std::max<int>(max_gen_sum_, static_cast<int>(total_of(generator_points_.back())));
    }
    group_ = lattice_from_generators(generators_, n);

    std::vector<LatticeVector> block_gens;
    for (const auto& g : generator_points_) block_gens.push_back(LatticeVector::from_int64(block_sums(g)));
    block_group_ = lattice_from_generators(block_gens, params_.k());
    block_span_ = saturation(block_group_);
    if (!trivial()) {
        for (int i = 0; i < params_.k(); ++i)
            for (int j = 1; j < params_.b()[i]; ++j) {
                LatticeVector d(n);
                d[params_.index(i, 0)] = 1;
                d[params_.index(i, j)] = -1;
                if (!group_.contains(d)) throw std::logic_error("group misses a within-block difference");
            }
    }

    for (int c = 0; c < n; ++c) {
        LatticeVector e(n);
        e[c] = 1;
        cone_.nonnegativity_rows.push_back(e);
    }
    for (int i = 0; i < params_.k(); ++i)
        if (params_.a()[i] == 1) {
            cone_.balance_rows.push_back(LatticeVector::from_int64(facet_functional(params_, FacetId::balance(i))));
            cone_.balance_blocks.push_back(i);
        }
    cone_.span = saturation(group_);

    facets_ = derive_facets(params_);
    for (const auto& f : facets_) {
        functionals_.push_back(facet_functional(params_, f));
        quotients_.push_back(std::make_shared<const FacetQuotient>(group_, generators_, functionals_.back()));
    }
    monoid_ = std::make_shared<const BlockMonoid>(params_.a());
}

int AffineSemigroup::facet_index(const FacetId& f) const {
    auto it = std::find(facets_.begin(), facets_.end(), f);
    return it == facets_.end() ? -1 : static_cast<int>(it - facets_.begin());
}

Point AffineSemigroup::block_sums(std::span<const std::int64_t> x) const {
    if (static_cast<int>(x.size()) != params_.n()) throw std::invalid_argument("dimension mismatch");
    Point s(params_.k(), 0);
    for (int c = 0; c < params_.n(); ++c) s[params_.block_of(c)] += x[c];
    return s;
}

bool AffineSemigroup::in_group(std::span<const std::int64_t> x) const {
    if (trivial()) return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
    return block_group_.contains(LatticeVector::from_int64(block_sums(x)));
}

bool AffineSemigroup::in_semigroup(std::span<const std::int64_t> x) const {
    if (std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v < 0; })) return false;
    auto s = block_sums(x);
    return monoid_->contains(s);
}

bool AffineSemigroup::in_cone(std::span<const std::int64_t> x) const {
    return cone_.contains(LatticeVector::from_int64(x));
}

// ---------------------------------------------------------------------------
// Oracle and rays

LatticeVector restrict_to_group(const AffineSemigroup& s, const Point& functional) {
    const auto& basis = s.group().basis();
    LatticeVector f(basis.size());
    for (std::size_t t = 0; t < basis.size(); ++t)
        for (int c = 0; c < s.n(); ++c) f[t] += basis[t][c] * static_cast<long>(functional[c]);
    return primitive(f);
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
std::size_t popcount(const Bits& b) {
    std::size_t c = 0;
    for (auto w : b) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}
bool subset_of(const Bits& x, const Bits& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] & ~y[i]) return false;
    return true;
}

struct Directions {
    std::vector<LatticeVector> dirs;             // primitive, group coordinates
    std::vector<std::vector<std::size_t>> gens;  // generator indices per direction
};

Directions generator_directions(const AffineSemigroup& s) {
    Directions d;
    for (std::size_t g = 0; g < s.generators().size(); ++g) {
        auto coords = s.group().coordinates(s.generators()[g]);
        auto dir = primitive(LatticeVector(*coords));
        auto it = std::find(d.dirs.begin(), d.dirs.end(), dir);
        if (it == d.dirs.end()) {
            d.dirs.push_back(dir);
            d.gens.push_back({g});
        } else {
            d.gens[it - d.dirs.begin()].push_back(g);
        }
    }
    return d;
}

}  // namespace

OracleResult facet_oracle(const AffineSemigroup& s) { return facet_oracle(s, s.options().oracle_cap); }

OracleResult facet_oracle(const AffineSemigroup& s, int cap) {
    OracleResult out;
    if (s.n() > cap) {
        out.reason = "n = " + std::to_string(s.n()) + " exceeds oracle cap " + std::to_string(cap);
        return out;
    }
    out.available = true;
    const std::size_t r = static_cast<std::size_t>(s.rank());
    if (r == 0) return out;

    auto d = generator_directions(s);
    const auto& rows = d.dirs;
    const std::size_t m = rows.size();
    const std::size_t words = (m + 63) / 64;

    // Initial simplicial cone from r independent constraint rows.
    std::vector<std::size_t> basis_rows;
    for (std::size_t i = 0; i < m && basis_rows.size() < r; ++i) {
        std::vector<LatticeVector> trial;
        for (auto b : basis_rows) trial.push_back(rows[b]);
        trial.push_back(rows[i]);
        if (matrix_rank(IntegerMatrix::from_rows(trial, r)) == trial.size()) basis_rows.push_back(i);
    }
    if (basis_rows.size() != r) throw std::logic_error("generators do not span the group");

    std::vector<std::vector<mpq_class>> a(r, std::vector<mpq_class>(2 * r));
    for (std::size_t s_ = 0; s_ < r; ++s_) {
        for (std::size_t t = 0; t < r; ++t) a[s_][t] = mpq_class(rows[basis_rows[s_]][t]);
        a[s_][r + s_] = 1;
    }
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[p], a[c]);
        mpq_class piv = a[c][c];
        for (auto& e : a[c]) e /= piv;
        for (std::size_t s_ = 0; s_ < r; ++s_) {
            if (s_ == c || a[s_][c] == 0) continue;
            mpq_class f = a[s_][c];
            for (std::size_t t = 0; t < 2 * r; ++t) a[s_][t] -= f * a[c][t];
        }
    }
    struct Ray {
        LatticeVector v;
        Bits zero;
    };
    std::vector<Ray> rays;
    std::vector<bool> processed(m, false);
    for (auto b : basis_rows) processed[b] = true;
    for (std::size_t t = 0; t < r; ++t) {
        // Column t of the inverse, scaled to a primitive integer vector.
        Integer l = 1;
        for (std::size_t s_ = 0; s_ < r; ++s_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a[s_][r + t].get_den_mpz_t());
        LatticeVector v(r);
        for (std::size_t s_ = 0; s_ < r; ++s_) {
            mpq_class e = a[s_][r + t] * mpq_class(l);
            v[s_] = e.get_num();
        }
        Ray ray{primitive(v), Bits(words, 0)};
        for (std::size_t i = 0; i < m; ++i)
            if (processed[i] && dot(rows[i], ray.v) == 0) set_bit(ray.zero, i);
        rays.push_back(std::move(ray));
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (processed[i]) continue;
        std::vector<Integer> val(rays.size());
        bool any_neg = false;
        for (std::size_t q = 0; q < rays.size(); ++q) {
            val[q] = dot(rows[i], rays[q].v);
            any_neg = any_neg || val[q] < 0;
        }
        if (!any_neg) {
            for (std::size_t q = 0; q < rays.size(); ++q)
                if (val[q] == 0) set_bit(rays[q].zero, i);
            processed[i] = true;
            continue;
        }
        std::vector<Ray> next;
        for (std::size_t q = 0; q < rays.size(); ++q) {
            if (val[q] < 0) continue;
            Ray kept = rays[q];
            if (val[q] == 0) set_bit(kept.zero, i);
            next.push_back(std::move(kept));
        }
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (val[p] <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (val[q] >= 0) continue;
                Bits common(words);
                for (std::size_t w = 0; w < words; ++w) common[w] = rays[p].zero[w] & rays[q].zero[w];
                if (popcount(common) + 2 < r) continue;
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o)
                    if (o != p && o != q && subset_of(common, rays[o].zero)) adjacent = false;
                if (!adjacent) continue;
                LatticeVector v(r);
                for (std::size_t t = 0; t < r; ++t) v[t] = val[p] * rays[q].v[t] - val[q] * rays[p].v[t];
                Ray ray{primitive(v), common};
                set_bit(ray.zero, i);
                next.push_back(std::move(ray));
            }
        }
        rays = std::move(next);
        processed[i] = true;
    }

    for (const auto& ray : rays) {
        SupportingHyperplane h{ray.v, {}};
        for (std::size_t i = 0; i < m; ++i)
            if (bit(ray.zero, i))
                for (auto g : d.gens[i]) h.tight_generators.push_back(g);
        std::sort(h.tight_generators.begin(), h.tight_generators.end());
        out.facets.push_back(std::move(h));
    }
    std::sort(out.facets.begin(), out.facets.end(),
              [](const SupportingHyperplane& x, const SupportingHyperplane& y) { return x.normal < y.normal; });
    return out;
}

RaysResult extreme_rays(const AffineSemigroup& s) {
    RaysResult out;
    const std::size_t r = static_cast<std::size_t>(s.rank());
    if (r == 0) {
        out.facet_source = "none";
        return out;
    }
    std::vector<LatticeVector> normals;
    auto oracle = facet_oracle(s);
    if (oracle.available) {
        out.facet_source = "oracle";
        for (const auto& f : oracle.facets) normals.push_back(f.normal);
    } else {
        out.facet_source = "derived";
        for (std::size_t f = 0; f < s.facets().size(); ++f) normals.push_back(restrict_to_group(s, s.functional(f)));
    }
    auto d = generator_directions(s);
    for (const auto& dir : d.dirs) {
        std::vector<LatticeVector> tight;
        for (const auto& nrm : normals)
            if (dot(nrm, dir) == 0) tight.push_back(nrm);
        std::size_t rk = tight.empty() ? 0 : matrix_rank(IntegerMatrix::from_rows(tight, r));
        if (rk + 1 != r) continue;
        LatticeVector amb(s.n());
        for (std::size_t t = 0; t < r; ++t)
            for (int c = 0; c < s.n(); ++c) amb[c] += dir[t] * s.group().basis()[t][c];
        out.rays.push_back(amb);
    }
    std::sort(out.rays.begin(), out.rays.end());
    out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
    return out;
}

}  // namespace svtan
