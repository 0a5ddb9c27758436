#include "svtan/scan.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace svtan::scan {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return std::min(kSaturated, a + b); }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a >= kSaturated || b >= kSaturated || a > kSaturated / b) return kSaturated;
    return std::min(kSaturated, a * b);
}

namespace {

// Compositions of total into parts entries of [lo, hi].
std::uint64_t compositions(std::int64_t total, int parts, std::int64_t lo, std::int64_t hi) {
    std::vector<std::uint64_t> ways(static_cast<std::size_t>(std::max<std::int64_t>(total, 0) + 1), 0);
    if (total < 0) return 0;
    ways[0] = 1;
    for (int t = 0; t < parts; ++t) {
        std::vector<std::uint64_t> next(ways.size(), 0);
        for (std::size_t s = 0; s < ways.size(); ++s) {
            if (ways[s] == 0) continue;
            for (std::int64_t v = lo; v <= hi && s + v < ways.size(); ++v)
                next[s + v] = sat_add(next[s + v], ways[s]);
        }
        ways = std::move(next);
    }
    return ways[static_cast<std::size_t>(total)];
}

std::uint64_t binomial(int n, int r) {
    std::uint64_t out = 1;
    for (int t = 1; t <= r; ++t) out = out * static_cast<std::uint64_t>(n - r + t) / static_cast<std::uint64_t>(t);
    return out;
}

}  // namespace

std::vector<BlockState> block_states(int b, std::int64_t m) {
    if (b < 1 || m < 1) throw std::invalid_argument("block states need b >= 1 and M >= 1");
    std::vector<BlockState> out;
    for (int c = 0; c <= b; ++c) {
        const std::int64_t qlo = c, qhi = c * m;
        const std::int64_t phi = (b - c) * m;
        for (std::int64_t q = qlo; q <= qhi; ++q) {
            for (std::int64_t p = 0; p <= phi; ++p) {
                BlockState st;
                st.neg = c;
                st.pos = p;
                st.negsum = q;
                st.rep.assign(b, 0);
                std::int64_t extra = q - c;
                for (int j = 0; j < c; ++j) {
                    std::int64_t add = std::min(extra, m - 1);
                    st.rep[j] = -1 - add;
                    extra -= add;
                }
                std::int64_t left = p;
                for (int j = c; j < b; ++j) {
                    st.rep[j] = std::min(left, m);
                    left -= st.rep[j];
                }
                st.rep_low_max.assign(b, 0);
                for (int j = 0; j < c; ++j) st.rep_low_max[j] = -(q / c + (j < q % c ? 1 : 0));
                for (int j = c; j < b; ++j) {
                    const int t = j - c;
                    st.rep_low_max[j] = p / (b - c) + (t < p % (b - c) ? 1 : 0);
                }
                st.high_max = *std::max_element(st.rep.begin(), st.rep.end());
                st.low_max = *std::max_element(st.rep_low_max.begin(), st.rep_low_max.end());
                st.count = sat_mul(binomial(b, c),
                                   sat_mul(compositions(q, c, 1, m), compositions(p, b - c, 0, m)));
                out.push_back(std::move(st));
            }
        }
    }
    return out;
}

SmallLattice::SmallLattice(const Sublattice& l) : dim_(l.ambient_dim()), pivots_(l.pivots()) {
    for (const auto& row : l.basis()) rows_.push_back(row.to_int64());
}

bool SmallLattice::contains(std::span<const std::int64_t> v) const {
    if (v.size() != dim_) throw std::invalid_argument("dimension mismatch in lattice test");
    std::int64_t buf[64];
    std::vector<std::int64_t> big;
    std::int64_t* w = buf;
    if (dim_ > 64) {
        big.resize(dim_);
        w = big.data();
    }
    std::copy(v.begin(), v.end(), w);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::size_t c = pivots_[r];
        const std::int64_t piv = rows_[r][c];
        if (w[c] % piv != 0) return false;
        const std::int64_t f = w[c] / piv;
        if (f == 0) continue;
        for (std::size_t t = c; t < dim_; ++t) w[t] -= f * rows_[r][t];
    }
    for (std::size_t t = 0; t < dim_; ++t)
        if (w[t] != 0) return false;
    return true;
}

ClassScanner::ClassScanner(const AffineSemigroup& s, std::int64_t m) : s_(s), m_(m) {
    const auto& p = s.params();
    const int k = p.k();
    if (k > 63) throw std::length_error("too many blocks for a class scan");
    coord_facet_.resize(k);
    for (int i = 0; i < k; ++i) {
        states_.push_back(block_states(p.b()[i], m));
        std::vector<int> ids;
        for (int j = 0; j < p.b()[i]; ++j) ids.push_back(s.facet_index(FacetId::coordinate(i, j)));
        const auto present = std::count_if(ids.begin(), ids.end(), [](int f) { return f >= 0; });
        if (present == p.b()[i]) {
            coord_facet_[i] = ids;
        } else if (present != 0) {
            throw std::logic_error("coordinate facets of a block must be all present or all absent");
        }
    }
    for (std::size_t f = 0; f < s.facets().size(); ++f)
        if (s.facets()[f].kind == FacetId::Kind::Balance) balance_facets_.push_back(f);

    for (int i = 0; i < k; ++i) {
        if (coord_facet_[i].empty()) continue;
        const auto f = static_cast<std::size_t>(coord_facet_[i].back());
        probes_.push_back({f, i, s.quotient(f).dims(), acc_width_});
        acc_width_ += s.quotient(f).dims();
    }
    for (auto f : balance_facets_) {
        probes_.push_back({f, -1, s.quotient(f).dims(), acc_width_});
        acc_width_ += s.quotient(f).dims();
    }

    contrib_.resize(k);
    for (int i = 0; i < k; ++i) {
        const auto& sts = states_[i];
        auto& out = contrib_[i];
        out.assign(sts.size() * acc_width_, 0);
        for (std::size_t st = 0; st < sts.size(); ++st) {
            for (const auto& pr : probes_) {
                const auto& quo = s.quotient(pr.facet);
                for (std::size_t u = 0; u < pr.dims; ++u) {
                    std::int64_t acc = 0;
                    for (int j = 0; j < p.b()[i]; ++j)
                        acc += sts[st].rep[j] * quo.numerator(static_cast<std::size_t>(p.index(i, j)), u);
                    out[st * acc_width_ + pr.offset + u] = acc;
                }
            }
        }
    }

    group_ = SmallLattice(s.block_group());
    Point box(k);
    for (int i = 0; i < k; ++i) box[i] = p.b()[i] * m;
    monoid_ = s.block_monoid().table(box);
}

void ClassScanner::for_each(const std::function<bool(const ClassView&)>& visit) const {
    const auto& p = s_.params();
    const int k = p.k();
    std::vector<std::size_t> idx(k, 0);
    std::vector<std::int64_t> sums(k, 0);
    std::vector<Point> acc(k + 1, Point(acc_width_, 0));
    std::vector<std::int64_t> l1(k + 1, 0);
    std::vector<int> negs(k + 1, 0);
    bool stop = false;

    auto leaf = [&]() {
        if (!group_.contains(sums)) return;
        ClassView view;
        view.states = idx;
        view.sums = sums;
        view.l1 = l1[k];
        view.in_semigroup = negs[k] == 0 && monoid_.contains(sums);
        std::size_t t = 0;
        for (const auto& pr : probes_) {
            bool in = true;
            if (pr.block >= 0 && states_[pr.block][idx[pr.block]].neg == p.b()[pr.block]) {
                in = false;
            } else if (!view.in_semigroup) {
                const auto& quo = s_.quotient(pr.facet);
                in = quo.member(quo.image_from_numerators(std::span(acc[k]).subspan(pr.offset, pr.dims)));
            }
            if (pr.block >= 0) {
                if (in) view.phi |= std::uint64_t{1} << pr.block;
            } else {
                if (in) view.balance |= std::uint64_t{1} << t;
                ++t;
            }
        }
        if (!visit(view)) stop = true;
    };

    auto rec = [&](auto&& self, int d) -> void {
        if (d == k) {
            leaf();
            return;
        }
        const auto& sts = states_[d];
        const auto& con = contrib_[d];
        for (std::size_t st = 0; st < sts.size() && !stop; ++st) {
            idx[d] = st;
            sums[d] = sts[st].pos - sts[st].negsum;
            l1[d + 1] = l1[d] + sts[st].pos + sts[st].negsum;
            negs[d + 1] = negs[d] + sts[st].neg;
            const std::int64_t* c = con.data() + st * acc_width_;
            for (std::size_t u = 0; u < acc_width_; ++u) acc[d + 1][u] = acc[d][u] + c[u];
            self(self, d + 1);
        }
    };
    if (k > 0) rec(rec, 0);
}

Point ClassScanner::materialize(std::span<const std::size_t> states, std::span<const std::uint32_t> neg_masks,
                                bool low_max) const {
    const auto& p = s_.params();
    Point x(p.n(), 0);
    for (int i = 0; i < p.k(); ++i) {
        const auto& st = states_[i][states[i]];
        const auto& vals = low_max ? st.rep_low_max : st.rep;
        const int b = p.b()[i];
        std::uint32_t mask = (std::uint32_t{1} << st.neg) - 1;
        if (!neg_masks.empty() && neg_masks[i] != 0) mask = neg_masks[i];
        if (std::popcount(mask) != st.neg) throw std::invalid_argument("negative mask does not match the class");
        int ni = 0, pi = st.neg;
        for (int j = 0; j < b; ++j) x[p.index(i, j)] = (mask >> j & 1) ? vals[ni++] : vals[pi++];
    }
    return x;
}

std::uint64_t localization_signature(const AffineSemigroup& s, std::span<const std::int64_t> x) {
    if (s.facets().size() > 64) throw std::length_error("too many facets for a signature mask");
    std::uint64_t sig = 0;
    for (std::size_t f = 0; f < s.facets().size(); ++f)
        if (s.quotient(f).contains(x)) sig |= std::uint64_t{1} << f;
    return sig;
}

SignatureAtlas::SignatureAtlas(const AffineSemigroup& s, std::int64_t m) : s_(s), m_(m), scanner_(s, m) {
    const auto& p = s.params();
    const int k = p.k();
    if (s.facets().size() > 63) throw std::length_error("too many facets for a signature atlas");
    std::vector<int> width(k);
    int bits = 1 + 2 * k;
    for (int i = 0; i < k; ++i) {
        width[i] = std::bit_width(static_cast<unsigned>(p.b()[i]));
        bits += width[i];
    }
    if (bits > 64) throw std::length_error("too many blocks for a signature atlas");

    std::vector<bool> coord_block(k);
    for (int i = 0; i < k; ++i) coord_block[i] = scanner_.has_coordinate_facets(i);

    std::unordered_map<std::uint64_t, std::size_t> type_of;
    top_.sup.assign(p.n(), 0);
    Point block_sup(k, 0);

    scanner_.for_each([&](const ClassView& v) {
        ++classes_;
        if (v.in_semigroup) return true;
        std::uint64_t key = v.phi;
        key = key << k | v.balance;
        for (int i = 0; i < k; ++i) key = key << width[i] | static_cast<std::uint64_t>(scanner_.states(i)[v.states[i]].neg);
        auto [it, fresh] = type_of.try_emplace(key, types_.size());
        if (fresh) {
            types_.push_back({std::vector<std::size_t>(v.states.begin(), v.states.end()), v.l1, v.phi, v.balance});
        } else if (v.l1 < types_[it->second].l1) {
            types_[it->second].states.assign(v.states.begin(), v.states.end());
            types_[it->second].l1 = v.l1;
        }

        bool top_class = v.balance == 0;
        for (int i = 0; i < k && top_class; ++i)
            if (coord_block[i] && (v.phi >> i & 1) && scanner_.states(i)[v.states[i]].neg < p.b()[i]) top_class = false;
        if (!top_class) return true;
        std::uint64_t count = 1;
        for (int i = 0; i < k; ++i) count = sat_mul(count, scanner_.states(i)[v.states[i]].count);
        const std::int64_t sum = std::accumulate(v.sums.begin(), v.sums.end(), std::int64_t{0});
        for (int i = 0; i < k; ++i) {
            const auto hm = scanner_.states(i)[v.states[i]].high_max;
            if (top_.empty || hm > block_sup[i]) block_sup[i] = hm;
        }
        if (top_.empty || sum > top_.max_sum) {
            top_.empty = false;
            top_.max_sum = sum;
            top_.count_at_max = count;
            top_.rep_states.assign(v.states.begin(), v.states.end());
        } else if (sum == top_.max_sum) {
            top_.count_at_max = sat_add(top_.count_at_max, count);
        }
        return true;
    });

    if (!top_.empty) {
        top_.rep = scanner_.materialize(top_.rep_states);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < p.b()[i]; ++j) top_.sup[p.index(i, j)] = block_sup[i];
    }

    std::vector<std::size_t> order(types_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return types_[x].l1 < types_[y].l1; });

    std::uint64_t balance_bits = 0;
    const auto& bal = scanner_.balance_facets();
    for (auto t : order) {
        const auto& ty = types_[t];
        balance_bits = 0;
        for (std::size_t u = 0; u < bal.size(); ++u)
            if (ty.balance >> u & 1) balance_bits |= std::uint64_t{1} << bal[u];
        std::vector<std::uint32_t> masks(k, 0);
        for (int i = 0; i < k; ++i) masks[i] = (std::uint32_t{1} << scanner_.states(i)[ty.states[i]].neg) - 1;
        // Blocks whose negative positions change the signature.
        std::vector<int> free_blocks;
        for (int i = 0; i < k; ++i) {
            const int c = scanner_.states(i)[ty.states[i]].neg;
            if (coord_block[i] && (ty.phi >> i & 1) && c > 0 && c < p.b()[i]) free_blocks.push_back(i);
        }
        auto emit = [&]() {
            std::uint64_t sig = balance_bits;
            for (int i = 0; i < k; ++i) {
                if (!coord_block[i] || !(ty.phi >> i & 1)) continue;
                for (int j = 0; j < p.b()[i]; ++j)
                    if (!(masks[i] >> j & 1)) sig |= std::uint64_t{1} << scanner_.coordinate_facet(i, j);
            }
            sigs_.try_emplace(sig, SigEntry{t, masks});
        };
        auto rec = [&](auto&& self, std::size_t d) -> void {
            if (d == free_blocks.size()) {
                emit();
                return;
            }
            const int i = free_blocks[d];
            const int b = p.b()[i];
            const int c = scanner_.states(i)[ty.states[i]].neg;
            for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << b); ++mask) {
                if (std::popcount(mask) != c) continue;
                masks[i] = mask;
                self(self, d + 1);
            }
        };
        rec(rec, 0);
    }
}

std::optional<Point> SignatureAtlas::witness(std::uint64_t signature) const {
    auto it = sigs_.find(signature);
    if (it == sigs_.end()) return std::nullopt;
    const auto& ty = types_[it->second.type];
    Point x = scanner_.materialize(ty.states, it->second.masks);
    if (!s_.in_group(x) || s_.in_semigroup(x) || localization_signature(s_, x) != signature)
        throw std::logic_error("signature witness " + LatticeVector::from_int64(x).to_string() +
                               " does not have the recorded signature");
    return x;
}

}  // namespace svtan::scan
