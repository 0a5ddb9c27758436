#include "svtan/membership.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace svtan {

Window default_window(const SVParams& p) { return Window{2 * (p.max_a() + 2)}; }

std::int64_t default_bound(const SVParams& p, Window w) { return 6 * p.max_a() * w.radius; }

std::string to_string(Status s) {
    switch (s) {
        case Status::Yes: return "yes";
        case Status::No: return "no";
        case Status::Undetermined: return "undetermined";
    }
    return "undetermined";
}

bool semigroup_member(const AffineSemigroup& s, const LatticeVector& v) {
    if (static_cast<int>(v.size()) != s.n()) throw std::invalid_argument("vector has the wrong dimension");
    return s.in_semigroup(v.to_int64());
}

std::optional<std::vector<LatticeVector>> decompose(const AffineSemigroup& s, const LatticeVector& v) {
    if (static_cast<int>(v.size()) != s.n()) throw std::invalid_argument("vector has the wrong dimension");
    auto x = v.to_int64();
    if (std::any_of(x.begin(), x.end(), [](std::int64_t c) { return c < 0; })) return std::nullopt;
    auto parts = s.block_monoid().decompose(s.block_sums(x));
    if (!parts) return std::nullopt;
    const auto& p = s.params();
    // Hand out each block's units to the parts in order.
    std::vector<LatticeVector> out;
    Point left = x;
    std::vector<int> cursor(p.k(), 0);
    for (const auto& part : *parts) {
        Point g(p.n(), 0);
        for (int i = 0; i < p.k(); ++i) {
            std::int64_t need = part[i];
            while (need > 0) {
                int c = p.index(i, cursor[i]);
                if (left[c] == 0) {
                    ++cursor[i];
                    continue;
                }
                std::int64_t take = std::min(need, left[c]);
                g[c] += take;
                left[c] -= take;
                need -= take;
            }
        }
        out.push_back(LatticeVector::from_int64(g));
    }
    return out;
}

namespace detail {

std::vector<Point> ordered_block_sums(const SVParams& p, std::int64_t m) {
    std::vector<Point> out;
    Point s(p.k(), 0);
    for (;;) {
        out.push_back(s);
        int i = 0;
        for (; i < p.k(); ++i) {
            if (s[i] < p.b()[i] * m) {
                ++s[i];
                break;
            }
            s[i] = 0;
        }
        if (i == p.k()) break;
    }
    std::sort(out.begin(), out.end(), [](const Point& x, const Point& y) {
        auto sx = std::accumulate(x.begin(), x.end(), std::int64_t{0});
        auto sy = std::accumulate(y.begin(), y.end(), std::int64_t{0});
        if (sx != sy) return sx < sy;
        return x > y;
    });
    return out;
}

Point fill_block_sums(const SVParams& p, const Point& sums, std::int64_t m) {
    Point x(p.n(), 0);
    for (int i = 0; i < p.k(); ++i) {
        std::int64_t left = sums[i];
        for (int j = 0; j < p.b()[i] && left > 0; ++j) {
            x[p.index(i, j)] = std::min(left, m);
            left -= x[p.index(i, j)];
        }
        if (left > 0) throw std::out_of_range("block sum does not fit the window");
    }
    return x;
}

void expand_block_sums(const SVParams& p, const Point& sums, std::int64_t m, std::size_t limit,
                       std::vector<LatticeVector>& out, bool& truncated) {
    Point x(p.n(), 0);
    auto rec = [&](auto&& self, int coord, std::int64_t left) -> void {
        if (truncated) return;
        const int i = p.block_of(coord);
        const bool last_in_block = coord + 1 == p.block_offset(i) + p.b()[i];
        const std::int64_t rest_cap = (p.block_offset(i) + p.b()[i] - coord - 1) * m;
        for (std::int64_t v = std::min(left, m); v >= std::max<std::int64_t>(0, left - rest_cap); --v) {
            x[coord] = v;
            if (last_in_block) {
                if (coord + 1 == p.n()) {
                    if (out.size() >= limit) {
                        truncated = true;
                        return;
                    }
                    out.push_back(LatticeVector::from_int64(x));
                } else {
                    self(self, coord + 1, sums[i + 1]);
                }
            } else {
                self(self, coord + 1, left - v);
            }
            if (truncated) return;
        }
        x[coord] = 0;
    };
    rec(rec, 0, sums[0]);
}

bool block_sums_in_cone(const AffineSemigroup& s, const Point& sums) {
    const auto& p = s.params();
    std::int64_t total = std::accumulate(sums.begin(), sums.end(), std::int64_t{0});
    for (int i = 0; i < p.k(); ++i) {
        if (sums[i] < 0) return false;
        if (p.a()[i] == 1 && 2 * sums[i] > total) return false;
    }
    return s.block_span().contains(LatticeVector::from_int64(sums));
}

}  // namespace detail

HoleSet find_holes(const AffineSemigroup& s, Window w, std::size_t max_points) {
    HoleSet holes;
    holes.window = w.radius;
    const auto& p = s.params();
    for (const auto& sums : detail::ordered_block_sums(p, w.radius)) {
        if (!detail::block_sums_in_cone(s, sums)) continue;
        if (s.block_monoid().contains(sums)) continue;
        bool in_group = s.block_group().contains(LatticeVector::from_int64(sums));
        bool cut = false;
        detail::expand_block_sums(p, sums, w.radius, max_points, holes.ambient, cut);
        if (in_group) detail::expand_block_sums(p, sums, w.radius, max_points, holes.group, cut);
        holes.truncated = holes.truncated || cut;
    }
    return holes;
}

std::optional<std::string> normality_certificate(const SVParams& p) {
    if (p.all_a_one()) return std::string("N1");
    if (p.k() == 1 && p.a()[0] == 2) return std::string("N2");
    return std::nullopt;
}

Verdict is_normal(const AffineSemigroup& s, Window w) {
    if (w.radius < 2 * s.max_generator_coordinate())
        throw std::invalid_argument("window radius must be at least twice the largest generator coordinate");
    Verdict v;
    v.window = w.radius;
    const auto& p = s.params();
    for (const auto& sums : detail::ordered_block_sums(p, w.radius)) {
        if (!detail::block_sums_in_cone(s, sums)) continue;
        if (!s.block_group().contains(LatticeVector::from_int64(sums))) continue;
        if (s.block_monoid().contains(sums)) continue;
        v.status = Status::No;
        v.label = "not-normal";
        v.witness = LatticeVector::from_int64(detail::fill_block_sums(p, sums, w.radius));
        v.reason = "hole " + v.witness->to_string() + " lies in C and G but not in S";
        return v;
    }
    v.status = Status::Yes;
    v.label = "normal-within-window";
    v.reason = "no point of C and G outside S in [0," + std::to_string(w.radius) + "]^n";
    v.certified_by = normality_certificate(p);
    return v;
}

Verdict is_smooth(const AffineSemigroup& s, Window w, const Verdict* normal) {
    Verdict v;
    v.window = w.radius;
    if (s.trivial()) {
        v.status = Status::Yes;
        v.label = "smooth";
        v.reason = "T is a point";
        v.certified_by = "trivial";
        return v;
    }
    Verdict own;
    if (!normal) {
        own = is_normal(s, w);
        normal = &own;
    }
    if (normal->status != Status::Yes) {
        v.status = normal->status;
        v.label = normal->status == Status::No ? "not-smooth" : "undetermined";
        v.reason = "not normal";
        v.witness = normal->witness;
        return v;
    }
    auto rays = extreme_rays(s);
    const std::size_t r = static_cast<std::size_t>(s.rank());
    if (rays.rays.size() != r) {
        v.status = Status::No;
        v.label = "not-smooth";
        v.reason = "cone has " + std::to_string(rays.rays.size()) + " extreme rays but rank " + std::to_string(r) +
                   " (facets from " + rays.facet_source + ")";
        return v;
    }
    std::vector<LatticeVector> coords;
    for (const auto& ray : rays.rays) coords.emplace_back(*s.group().coordinates(ray));
    auto d = smith_normal_form(IntegerMatrix::from_rows(coords, r));
    Integer index = 1;
    for (const auto& x : d) index *= x;
    if (index != 1) {
        v.status = Status::No;
        v.label = "not-smooth";
        v.reason = "primitive ray generators span a sublattice of index " + index.get_str() + " in G";
        return v;
    }
    v.status = Status::Yes;
    v.label = "smooth";
    v.reason = "normal, " + std::to_string(r) + " extreme rays forming a basis of G (facets from " +
               rays.facet_source + ")";
    return v;
}

}  // namespace svtan
