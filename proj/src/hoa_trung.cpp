#include "svtan/hoa_trung.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace svtan {

namespace {

std::size_t require_facet(const AffineSemigroup& s, const FacetId& f) {
    const int idx = s.facet_index(f);
    if (idx < 0) throw std::invalid_argument(f.to_string() + " is not a facet of C");
    return static_cast<std::size_t>(idx);
}

std::int64_t dot(const Point& a, const Point& b) {
    std::int64_t out = 0;
    for (std::size_t c = 0; c < a.size(); ++c) out += a[c] * b[c];
    return out;
}

std::uint64_t facet_mask(const AffineSemigroup& s, const std::vector<FacetId>& J) {
    std::uint64_t mask = 0;
    for (const auto& f : J) mask |= std::uint64_t{1} << require_facet(s, f);
    return mask;
}

std::uint64_t full_mask(const AffineSemigroup& s) {
    const auto nf = s.facets().size();
    if (nf >= 64) throw std::length_error("too many facets for subset masks");
    return (std::uint64_t{1} << nf) - 1;
}

std::string join_homology(const std::vector<std::size_t>& h) {
    std::string out = "(";
    for (std::size_t q = 0; q < h.size(); ++q) out += (q ? "," : "") + std::to_string(h[q]);
    return out + ")";
}

}  // namespace

std::string to_string(const std::vector<FacetId>& facets) {
    std::string out = "{";
    for (std::size_t t = 0; t < facets.size(); ++t) out += (t ? "," : "") + facets[t].to_string();
    return out + "}";
}

std::vector<LatticeVector> face_generators(const AffineSemigroup& s, const FacetId& f) {
    const auto idx = require_facet(s, f);
    std::vector<LatticeVector> out;
    for (std::size_t g = 0; g < s.generators().size(); ++g)
        if (dot(s.functional(idx), s.generator_points()[g]) == 0) out.push_back(s.generators()[g]);
    return out;
}

SFMembershipResult sf_member(const AffineSemigroup& s, const FacetId& f, const LatticeVector& xv, std::int64_t bound) {
    if (static_cast<int>(xv.size()) != s.n()) throw std::invalid_argument("vector has the wrong dimension");
    const auto x = xv.to_int64();
    if (!s.in_group(x)) throw std::domain_error(xv.to_string() + " is not in G");
    const auto idx = require_facet(s, f);
    SFMembershipResult r;
    r.bound = bound;
    if (!s.quotient(idx).contains(x)) {
        r.decided_by = "quotient";
        return r;
    }
    r.member = true;
    r.decided_by = "quotient";

    const auto& p = s.params();
    const int k = p.k();
    if (f.kind == FacetId::Kind::Coordinate && x[p.index(f.block, f.coord)] < 0)
        throw std::logic_error("quotient test accepted a point that is negative on its facet coordinate");
    Point pos(k, 0), neg(k, 0);
    for (int c = 0; c < p.n(); ++c) (x[c] >= 0 ? pos : neg)[p.block_of(c)] += std::abs(x[c]);
    const std::int64_t qtotal = std::accumulate(neg.begin(), neg.end(), std::int64_t{0});

    // y covers the negative part of x and adds d_i more units to block i.
    Point d(k, 0), yq(k), xp(k);
    const auto& monoid = s.block_monoid();
    auto accept = [&]() {
        for (int i = 0; i < k; ++i) {
            yq[i] = neg[i] + d[i];
            xp[i] = pos[i] + d[i];
        }
        if (f.kind == FacetId::Kind::Balance) {
            const std::int64_t total = std::accumulate(yq.begin(), yq.end(), std::int64_t{0});
            if (2 * yq[f.block] != total) return false;
        }
        return monoid.contains(yq) && monoid.contains(xp);
    };
    auto place = [&]() {
        Point y(p.n(), 0);
        for (int c = 0; c < p.n(); ++c)
            if (x[c] < 0) y[c] = -x[c];
        for (int i = 0; i < k; ++i) {
            if (d[i] == 0) continue;
            int j = 0;
            if (f.kind == FacetId::Kind::Coordinate && f.block == i && f.coord == 0) j = 1;
            y[p.index(i, j)] += d[i];
        }
        return y;
    };
    auto rec = [&](auto&& self, int i, std::int64_t left) -> bool {
        if (i == k - 1) {
            if (f.kind == FacetId::Kind::Coordinate && f.block == i && p.b()[i] == 1 && left > 0) return false;
            d[i] = left;
            return accept();
        }
        const std::int64_t hi = (f.kind == FacetId::Kind::Coordinate && f.block == i && p.b()[i] == 1) ? 0 : left;
        for (std::int64_t v = 0; v <= hi; ++v) {
            d[i] = v;
            if (self(self, i + 1, left - v)) return true;
        }
        d[i] = 0;
        return false;
    };
    for (std::int64_t t = 0; qtotal + t <= bound; ++t) {
        std::fill(d.begin(), d.end(), 0);
        if (!rec(rec, 0, t)) continue;
        Point y = place();
        Point sum(p.n());
        for (int c = 0; c < p.n(); ++c) sum[c] = x[c] + y[c];
        if (!s.in_semigroup(y) || dot(s.functional(idx), y) != 0 || !s.in_semigroup(sum))
            throw std::logic_error("S_F witness failed verification");
        r.witness = LatticeVector::from_int64(y);
        r.decided_by = "search";
        return r;
    }
    return r;
}

SPrimeResult s_prime_equals_s(const AffineSemigroup& s, Window w, std::int64_t bound) {
    SPrimeResult r;
    r.window = w.radius;
    r.bound = bound;
    if (s.trivial()) return r;
    const auto& p = s.params();
    const auto full = full_mask(s);
    for (const auto& sums : detail::ordered_block_sums(p, w.radius)) {
        if (!detail::block_sums_in_cone(s, sums)) continue;
        if (!s.block_group().contains(LatticeVector::from_int64(sums))) continue;
        if (s.block_monoid().contains(sums)) continue;
        ++r.classes_checked;
        Point x = detail::fill_block_sums(p, sums, w.radius);
        if (scan::localization_signature(s, x) == full) {
            r.holds = false;
            r.witness = LatticeVector::from_int64(x);
            return r;
        }
    }
    return r;
}

AbstractComplex build_pi_J(const AffineSemigroup& s, const std::vector<FacetId>& J) {
    if (J.empty()) throw std::invalid_argument("J must be nonempty");
    if (J.size() > 64) throw std::length_error("J has too many facets");
    std::vector<std::size_t> idx;
    std::vector<std::string> names;
    for (const auto& f : J) {
        idx.push_back(require_facet(s, f));
        names.push_back(f.to_string());
    }
    std::vector<AbstractComplex::Face> faces;
    for (const auto& g : s.generator_points()) {
        AbstractComplex::Face mask = 0;
        for (std::size_t t = 0; t < idx.size(); ++t)
            if (dot(s.functional(idx[t]), g) == 0) mask |= AbstractComplex::Face{1} << t;
        if (mask) faces.push_back(mask);
    }
    return AbstractComplex(J.size(), std::move(faces), std::move(names));
}

GJResult gj_empty(const scan::SignatureAtlas& atlas, const std::vector<FacetId>& J) {
    const auto& s = atlas.scanner().semigroup();
    const auto full = full_mask(s);
    const auto mask = facet_mask(s, J);
    if (mask == 0 || mask == full) throw std::invalid_argument("J must be a proper nonempty subset of the facets");
    GJResult r;
    r.J = J;
    const auto sig = full & ~mask;
    r.nonempty = atlas.realized(sig);
    if (r.nonempty) r.witness = LatticeVector::from_int64(*atlas.witness(sig));
    r.pi = build_pi_J(s, J);
    r.homology = reduced_homology_ranks(*r.pi);
    r.acyclic = std::all_of(r.homology.begin(), r.homology.end(), [](std::size_t h) { return h == 0; });
    r.violates = r.nonempty && !r.acyclic;
    return r;
}

GJResult gj_empty(const AffineSemigroup& s, const std::vector<FacetId>& J, Window w, std::int64_t) {
    scan::SignatureAtlas atlas(s, w.radius);
    return gj_empty(atlas, J);
}

CMResult cm_verdict(const AffineSemigroup& s, Window w, std::int64_t bound, CMOptions opts) {
    CMResult r;
    r.window = w.radius;
    r.bound = bound;
    if (s.trivial()) {
        r.status = Status::Yes;
        r.label = "cohen-macaulay";
        r.reason = "T is a point";
        return r;
    }
    r.s_prime = s_prime_equals_s(s, w, bound);
    if (!r.s_prime.holds) {
        r.status = Status::No;
        r.label = "not-cohen-macaulay";
        r.reason = "S' != S: " + r.s_prime.witness->to_string() + " lies in every S_F but not in S";
        return r;
    }
    const auto nf = s.facets().size();
    if (nf > opts.subset_cap) {
        r.label = "undetermined";
        r.reason = std::to_string(nf) + " facets exceed the subset cap " + std::to_string(opts.subset_cap);
        return r;
    }
    try {
        r.atlas = std::make_shared<const scan::SignatureAtlas>(s, w.radius);
    } catch (const std::length_error& e) {
        r.label = "undetermined";
        r.reason = e.what();
        return r;
    }
    const auto full = full_mask(s);
    if (r.atlas->realized(full))
        throw std::logic_error("window scan found a point of S' \\ S that the orthant scan missed");

    std::vector<std::size_t> pick;
    bool stop = false;
    auto visit = [&]() {
        ++r.subsets_checked;
        std::uint64_t mask = 0;
        for (auto t : pick) mask |= std::uint64_t{1} << t;
        const bool nonempty = r.atlas->realized(full & ~mask);
        if (!nonempty && !opts.full_evidence) return;
        std::vector<FacetId> J;
        for (auto t : pick) J.push_back(s.facets()[t]);
        auto g = gj_empty(*r.atlas, J);
        if (g.violates && !r.violating_J) r.violating_J = g.J;
        r.evidence.push_back(std::move(g));
        if (r.violating_J && !opts.full_evidence) stop = true;
    };
    auto rec = [&](auto&& self, std::size_t from, std::size_t left) -> void {
        if (stop) return;
        if (left == 0) {
            visit();
            return;
        }
        for (std::size_t t = from; t + left <= nf && !stop; ++t) {
            pick.push_back(t);
            self(self, t + 1, left - 1);
            pick.pop_back();
        }
    };
    for (std::size_t size = 1; size < nf && !stop; ++size) rec(rec, 0, size);

    if (r.violating_J) {
        const auto& bad = *std::find_if(r.evidence.begin(), r.evidence.end(),
                                        [&](const GJResult& g) { return g.J == *r.violating_J; });
        r.status = Status::No;
        r.label = "not-cohen-macaulay";
        r.reason = "G_J is nonempty for J = " + to_string(bad.J) + " (witness " + bad.witness->to_string() +
                   ") and pi_J has reduced homology " + join_homology(bad.homology);
        return r;
    }
    r.status = Status::Yes;
    r.label = "cohen-macaulay-within-window";
    r.reason = "S' = S and every nonempty G_J has acyclic pi_J in [-" + std::to_string(w.radius) + "," +
               std::to_string(w.radius) + "]^n (" + std::to_string(r.subsets_checked) + " subsets)";
    return r;
}

GorensteinResult gorenstein_witness(const AffineSemigroup& s, Window w, std::int64_t bound, const CMResult* cm) {
    GorensteinResult r;
    r.window = w.radius;
    r.bound = bound;
    const auto& p = s.params();
    if (s.trivial()) {
        r.status = Status::Yes;
        r.label = "gorenstein";
        r.reason = "T is a point";
        r.x0 = LatticeVector(static_cast<std::size_t>(p.n()));
        return r;
    }
    CMResult own;
    if (!cm) {
        own = cm_verdict(s, w, bound);
        cm = &own;
    }
    if (cm->status != Status::Yes) {
        r.status = cm->status;
        r.label = cm->status == Status::No ? "not-gorenstein" : "undetermined";
        r.reason = cm->status == Status::No ? "not Cohen-Macaulay" : "Cohen-Macaulay verdict undetermined";
        return r;
    }
    std::shared_ptr<const scan::SignatureAtlas> atlas = cm->atlas;
    if (!atlas) {
        try {
            atlas = std::make_shared<const scan::SignatureAtlas>(s, w.radius);
        } catch (const std::length_error& e) {
            r.label = "undetermined";
            r.reason = e.what();
            return r;
        }
    }
    const auto& top = atlas->top();
    if (top.empty) {
        r.label = "undetermined";
        r.reason = "G_F has no point in the window";
        return r;
    }
    r.candidates = top.count_at_max;
    if (top.count_at_max >= 2) {
        r.status = Status::No;
        r.label = "not-gorenstein";
        r.supremum = LatticeVector::from_int64(top.sup);
        r.supremum_in_group = s.in_group(top.sup);
        r.reason = "G_F has " + (top.count_at_max >= scan::kSaturated ? std::string("many") : std::to_string(top.count_at_max)) +
                   " points of maximal coordinate sum " + std::to_string(top.max_sum) + "; their supremum " +
                   r.supremum->to_string() + (*r.supremum_in_group ? " is" : " is not") + " in G";
        return r;
    }

    const Point& x0 = top.rep;
    r.x0 = LatticeVector::from_int64(x0);
    const std::int64_t m2 = w.radius - s.max_generator_coordinate();
    r.checked_window = m2;
    if (m2 < 1) {
        r.label = "undetermined";
        r.reason = "window too small to verify the candidate";
        return r;
    }
    // x0 has a single realization in its class, so it is constant on blocks.
    Point x0_block(p.k());
    for (int i = 0; i < p.k(); ++i) {
        x0_block[i] = x0[p.index(i, 0)];
        for (int j = 1; j < p.b()[i]; ++j)
            if (x0[p.index(i, j)] != x0_block[i]) throw std::logic_error("Gorenstein candidate is not constant on blocks");
    }

    scan::ClassScanner scanner(s, m2);
    Point box(p.k());
    for (int i = 0; i < p.k(); ++i) box[i] = std::max<std::int64_t>(0, p.b()[i] * (x0_block[i] + m2));
    const auto table = s.block_monoid().table(box);
    Point diff(p.k());
    std::optional<Point> bad;
    scanner.for_each([&](const scan::ClassView& v) {
        bool in_gf = v.balance == 0;
        for (int i = 0; i < p.k() && in_gf; ++i)
            if (scanner.has_coordinate_facets(i) && (v.phi >> i & 1) &&
                scanner.states(i)[v.states[i]].neg < p.b()[i])
                in_gf = false;
        bool block_ok = true, all_nonneg = true, some_nonneg = true;
        for (int i = 0; i < p.k(); ++i) {
            const auto& st = scanner.states(i)[v.states[i]];
            diff[i] = p.b()[i] * x0_block[i] - v.sums[i];
            if (diff[i] < 0 || diff[i] > box[i]) block_ok = false;
            if (st.high_max > x0_block[i]) all_nonneg = false;
            if (st.low_max > x0_block[i]) some_nonneg = false;
        }
        if (block_ok) block_ok = table.contains(diff);
        if (in_gf && !(block_ok && all_nonneg)) {
            bad = scanner.materialize(v.states);
        } else if (!in_gf && block_ok && some_nonneg) {
            bad = scanner.materialize(v.states, {}, true);
        }
        return !bad;
    });
    if (bad) {
        Point diffx(p.n());
        for (int c = 0; c < p.n(); ++c) diffx[c] = x0[c] - (*bad)[c];
        const bool z_in_gf = scan::localization_signature(s, *bad) == 0;
        if (z_in_gf == s.in_semigroup(diffx)) throw std::logic_error("Gorenstein counterexample failed verification");
        r.status = Status::No;
        r.label = "not-gorenstein";
        r.counterexample = LatticeVector::from_int64(*bad);
        r.reason = "z = " + r.counterexample->to_string() + (z_in_gf ? " is in G_F but x0 - z is not in S"
                                                                      : " is not in G_F but x0 - z is in S");
        return r;
    }
    r.status = Status::Yes;
    r.label = "gorenstein-within-window";
    r.reason = "G_F = x0 - S for x0 = " + r.x0->to_string() + " on [-" + std::to_string(m2) + "," +
               std::to_string(m2) + "]^n";
    return r;
}

}  // namespace svtan
