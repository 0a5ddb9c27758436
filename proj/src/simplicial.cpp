#include "svtan/simplicial.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace svtan {

std::map<int, int> MultisetSimplex::multiplicities() const {
    std::map<int, int> m;
    for (int l : labels) ++m[l];
    return m;
}

bool graded_less(const MultisetSimplex& lhs, const MultisetSimplex& rhs) {
    if (lhs.labels.size() != rhs.labels.size()) return lhs.labels.size() < rhs.labels.size();
    return lhs.labels < rhs.labels;
}

LabeledComplex LabeledComplex::from_maximal_faces(std::vector<std::string> label_names, std::vector<int> vertex_labels,
                                                  std::vector<std::vector<int>> maximal_faces) {
    LabeledComplex c;
    c.label_names_ = std::move(label_names);
    c.vertex_labels_ = std::move(vertex_labels);
    for (auto& f : maximal_faces) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        for (int v : f)
            if (v < 0 || v >= static_cast<int>(c.vertex_labels_.size()))
                throw std::invalid_argument("face refers to an unknown vertex");
    }
    c.maximal_faces_ = std::move(maximal_faces);
    return c;
}

LabeledComplex LabeledComplex::from_capacities(std::vector<std::string> label_names, std::vector<int> vertex_labels,
                                               std::vector<CapacityGroup> groups) {
    LabeledComplex c;
    c.label_names_ = std::move(label_names);
    c.vertex_labels_ = std::move(vertex_labels);
    c.capacity_form_ = true;
    std::vector<int> seen(c.vertex_labels_.size(), 0);
    for (const auto& g : groups)
        for (int v : g.vertices) ++seen.at(v);
    if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; }))
        throw std::invalid_argument("capacity groups must partition the vertex set");
    c.groups_ = std::move(groups);
    return c;
}

bool LabeledComplex::contains(const std::vector<int>& vertices) const {
    std::vector<int> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    if (sorted.empty()) return true;
    if (sorted.front() < 0 || sorted.back() >= static_cast<int>(vertex_labels_.size())) return false;
    if (capacity_form_) {
        for (const auto& g : groups_) {
            int used = 0;
            for (int v : g.vertices) used += std::binary_search(sorted.begin(), sorted.end(), v);
            if (used > g.cap) return false;
        }
        return true;
    }
    return std::any_of(maximal_faces_.begin(), maximal_faces_.end(), [&](const std::vector<int>& f) {
        return std::includes(f.begin(), f.end(), sorted.begin(), sorted.end());
    });
}

std::string LabeledComplex::coordinate_name(const MultisetSimplex& s) const {
    bool short_names = std::all_of(label_names_.begin(), label_names_.end(),
                                   [](const std::string& n) { return n.size() == 1; });
    std::string out;
    for (std::size_t t = 0; t < s.labels.size(); ++t) {
        if (t && !short_names) out += ",";
        out += label_names_.at(s.labels[t]);
    }
    return out;
}

LabeledComplex build_sv_complex(const SVParams& p) {
    bool wide = p.k() >= 10;
    for (int bi : p.b()) wide = wide || bi >= 10;
    std::vector<std::string> names;
    std::vector<int> vertex_labels;
    std::vector<LabeledComplex::CapacityGroup> groups;
    for (int i = 0; i < p.k(); ++i) {
        LabeledComplex::CapacityGroup g{{}, p.a()[i]};
        for (int j = 0; j < p.b()[i]; ++j) {
            std::string name = p.k() == 1 ? std::to_string(j + 1)
                               : wide     ? std::to_string(i + 1) + "." + std::to_string(j + 1)
                                          : std::to_string(i + 1) + std::to_string(j + 1);
            int label = static_cast<int>(names.size());
            names.push_back(name);
            for (int copy = 0; copy < p.a()[i]; ++copy) {
                g.vertices.push_back(static_cast<int>(vertex_labels.size()));
                vertex_labels.push_back(label);
            }
        }
        groups.push_back(std::move(g));
    }
    return LabeledComplex::from_capacities(std::move(names), std::move(vertex_labels), std::move(groups));
}

namespace {

// All sub-multisets of a label-count vector, appended as sorted label lists.
void sub_multisets(const std::vector<std::pair<int, int>>& available, std::size_t pos, int room,
                   std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (pos == available.size()) {
        out.push_back(current);
        return;
    }
    auto [label, count] = available[pos];
    const std::size_t base = current.size();
    for (int m = 0; m <= std::min(count, room); ++m) {
        if (m > 0) current.push_back(label);
        sub_multisets(available, pos + 1, room - m, current, out);
    }
    current.resize(base);
}

std::vector<std::pair<int, int>> label_counts(const std::vector<int>& vertices, const std::vector<int>& vertex_labels) {
    std::map<int, int> counts;
    for (int v : vertices) ++counts[vertex_labels[v]];
    return {counts.begin(), counts.end()};
}

}  // namespace

std::vector<MultisetSimplex> distinct_simplices(const LabeledComplex& c) {
    std::set<std::vector<int>> found;
    if (c.is_capacity_form()) {
        std::vector<std::vector<int>> partial{{}};
        for (const auto& g : c.groups()) {
            std::vector<std::vector<int>> local;
            std::vector<int> cur;
            sub_multisets(label_counts(g.vertices, c.vertex_labels()), 0, g.cap, cur, local);
            std::vector<std::vector<int>> next;
            for (const auto& p : partial)
                for (const auto& l : local) {
                    auto merged = p;
                    merged.insert(merged.end(), l.begin(), l.end());
                    next.push_back(std::move(merged));
                }
            partial = std::move(next);
        }
        for (auto& p : partial) {
            std::sort(p.begin(), p.end());
            found.insert(std::move(p));
        }
    } else {
        found.insert({});
        for (const auto& f : c.maximal_faces()) {
            std::vector<std::vector<int>> local;
            std::vector<int> cur;
            sub_multisets(label_counts(f, c.vertex_labels()), 0, static_cast<int>(f.size()), cur, local);
            for (auto& l : local) {
                std::sort(l.begin(), l.end());
                found.insert(std::move(l));
            }
        }
    }
    std::vector<MultisetSimplex> out;
    for (const auto& f : found) out.push_back({f});
    std::sort(out.begin(), out.end(), graded_less);
    return out;
}

std::vector<MultisetSimplex> exponent_columns(const LabeledComplex& c, bool dims_at_least_one) {
    auto all = distinct_simplices(c);
    std::vector<MultisetSimplex> cols;
    for (auto& s : all)
        if (s.cardinality() >= (dims_at_least_one ? 2u : 0u)) cols.push_back(std::move(s));
    return cols;
}

IntegerMatrix exponent_map(const LabeledComplex& c, bool dims_at_least_one) {
    auto cols = exponent_columns(c, dims_at_least_one);
    IntegerMatrix m(c.label_count(), cols.size());
    for (std::size_t col = 0; col < cols.size(); ++col)
        for (int l : cols[col].labels) m(l, col) += 1;
    return m;
}

ComplexParseError::ComplexParseError(int line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}

namespace {

std::string trim(const std::string& s) {
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_number(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

}  // namespace

LabeledComplex parse_complex(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<std::vector<std::string>> simplices;
    std::set<std::string> label_set;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> tokens;
        std::stringstream ss(t);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) throw ComplexParseError(line_no, "empty label");
            if (tok.find_first_of(" \t{}") != std::string::npos)
                throw ComplexParseError(line_no, "label '" + tok + "' contains whitespace or braces");
            tokens.push_back(tok);
        }
        if (t.back() == ',') throw ComplexParseError(line_no, "trailing comma");
        for (const auto& l : tokens) label_set.insert(l);
        simplices.push_back(std::move(tokens));
    }
    if (simplices.empty()) throw ComplexParseError(line_no, "no simplices");

    std::vector<std::string> names(label_set.begin(), label_set.end());
    if (std::all_of(names.begin(), names.end(), is_number))
        std::sort(names.begin(), names.end(), [](const std::string& x, const std::string& y) {
            return std::pair(x.size(), x) < std::pair(y.size(), y);
        });
    std::map<std::string, int> label_index;
    for (std::size_t i = 0; i < names.size(); ++i) label_index[names[i]] = static_cast<int>(i);

    std::vector<int> copies(names.size(), 0);
    for (const auto& s : simplices) {
        std::map<int, int> mult;
        for (const auto& l : s) ++mult[label_index[l]];
        for (auto [l, m] : mult) copies[l] = std::max(copies[l], m);
    }
    std::vector<int> vertex_labels;
    std::vector<int> first_vertex(names.size());
    for (std::size_t l = 0; l < names.size(); ++l) {
        first_vertex[l] = static_cast<int>(vertex_labels.size());
        for (int c = 0; c < copies[l]; ++c) vertex_labels.push_back(static_cast<int>(l));
    }
    std::vector<std::vector<int>> faces;
    for (const auto& s : simplices) {
        std::map<int, int> mult;
        for (const auto& l : s) ++mult[label_index[l]];
        std::vector<int> face;
        for (auto [l, m] : mult)
            for (int c = 0; c < m; ++c) face.push_back(first_vertex[l] + c);
        faces.push_back(std::move(face));
    }
    return LabeledComplex::from_maximal_faces(std::move(names), std::move(vertex_labels), std::move(faces));
}

AbstractComplex::AbstractComplex(std::size_t vertex_count, std::vector<Face> generating_faces,
                                 std::vector<std::string> vertex_names)
    : vertex_count_(vertex_count), names_(std::move(vertex_names)) {
    if (vertex_count > 64) throw std::invalid_argument("abstract complexes are limited to 64 vertices");
    const Face all = vertex_count == 64 ? ~Face{0} : ((Face{1} << vertex_count) - 1);
    for (Face f : generating_faces)
        if (f & ~all) throw std::invalid_argument("face refers to an unknown vertex");
    std::sort(generating_faces.begin(), generating_faces.end(),
              [](Face x, Face y) { return std::popcount(x) > std::popcount(y) || (std::popcount(x) == std::popcount(y) && x < y); });
    generating_faces.erase(std::unique(generating_faces.begin(), generating_faces.end()), generating_faces.end());
    for (Face f : generating_faces) {
        bool covered = std::any_of(maximal_.begin(), maximal_.end(), [&](Face m) { return (f & m) == f; });
        if (!covered) maximal_.push_back(f);
    }
    std::sort(maximal_.begin(), maximal_.end());
    if (names_.empty())
        for (std::size_t v = 0; v < vertex_count; ++v) names_.push_back(std::to_string(v));
    if (names_.size() != vertex_count) throw std::invalid_argument("vertex name count mismatch");
}

bool AbstractComplex::contains(Face f) const {
    if (f == 0) return true;
    return std::any_of(maximal_.begin(), maximal_.end(), [&](Face m) { return (f & m) == f; });
}

std::vector<AbstractComplex::Face> AbstractComplex::faces() const {
    std::unordered_set<Face> seen{0};
    for (Face m : maximal_)
        for (Face sub = m; sub; sub = (sub - 1) & m) seen.insert(sub);
    std::vector<Face> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](Face x, Face y) {
        return std::popcount(x) < std::popcount(y) || (std::popcount(x) == std::popcount(y) && x < y);
    });
    return out;
}

int AbstractComplex::dimension() const {
    int d = -1;
    for (Face m : maximal_) d = std::max(d, std::popcount(m) - 1);
    return d;
}

std::optional<int> AbstractComplex::apex() const {
    if (maximal_.empty()) return std::nullopt;
    Face common = ~Face{0};
    for (Face m : maximal_) common &= m;
    if (common == 0) return std::nullopt;
    return std::countr_zero(common);
}

std::vector<int> AbstractComplex::vertices_of(Face f) const {
    std::vector<int> out;
    for (; f; f &= f - 1) out.push_back(std::countr_zero(f));
    return out;
}

namespace {

constexpr std::uint64_t kPrime = 2147483647ULL;

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= kPrime;
    for (; e; e >>= 1) {
        if (e & 1) r = r * b % kPrime;
        b = b * b % kPrime;
    }
    return r;
}

struct ModPField {
    using Value = std::uint64_t;
    static Value from(std::int64_t x) {
        std::int64_t r = x % static_cast<std::int64_t>(kPrime);
        return static_cast<Value>(r < 0 ? r + static_cast<std::int64_t>(kPrime) : r);
    }
    static bool is_zero(const Value& v) { return v == 0; }
    // row <- row - (row_lead / pivot_lead) * pivot
    static void eliminate(std::vector<std::pair<int, Value>>& row, const std::vector<std::pair<int, Value>>& pivot) {
        Value factor = row.front().second * mod_pow(pivot.front().second, kPrime - 2) % kPrime;
        std::vector<std::pair<int, Value>> out;
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                out.push_back(row[i++]);
            } else if (i == row.size() || pivot[j].first < row[i].first) {
                out.emplace_back(pivot[j].first, (kPrime - factor * pivot[j].second % kPrime) % kPrime);
                ++j;
            } else {
                Value v = (row[i].second + kPrime - factor * pivot[j].second % kPrime) % kPrime;
                if (v) out.emplace_back(row[i].first, v);
                ++i;
                ++j;
            }
        }
        row = std::move(out);
    }
};

struct RationalField {
    using Value = Integer;
    static Value from(std::int64_t x) { return Integer(static_cast<long>(x)); }
    static bool is_zero(const Value& v) { return v == 0; }
    // row <- p * row - r * pivot, then divide out the content.
    static void eliminate(std::vector<std::pair<int, Value>>& row, const std::vector<std::pair<int, Value>>& pivot) {
        Integer p = pivot.front().second, r = row.front().second;
        Integer g;
        mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), r.get_mpz_t());
        p /= g;
        r /= g;
        std::vector<std::pair<int, Value>> out;
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                out.emplace_back(row[i].first, p * row[i].second);
                ++i;
            } else if (i == row.size() || pivot[j].first < row[i].first) {
                out.emplace_back(pivot[j].first, -r * pivot[j].second);
                ++j;
            } else {
                Integer v = p * row[i].second - r * pivot[j].second;
                if (v != 0) out.emplace_back(row[i].first, v);
                ++i;
                ++j;
            }
        }
        Integer content = 0;
        for (const auto& e : out) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), e.second.get_mpz_t());
        if (content > 1)
            for (auto& e : out) e.second /= content;
        row = std::move(out);
    }
};

template <typename Field>
std::size_t sparse_rank(const std::vector<std::vector<std::pair<int, std::int64_t>>>& rows) {
    using Row = std::vector<std::pair<int, typename Field::Value>>;
    std::unordered_map<int, Row> pivots;
    std::size_t rank = 0;
    for (const auto& raw : rows) {
        Row row;
        for (auto [c, v] : raw) {
            auto fv = Field::from(v);
            if (!Field::is_zero(fv)) row.emplace_back(c, fv);
        }
        std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) break;
            Field::eliminate(row, it->second);
        }
        if (!row.empty()) {
            int lead = row.front().first;
            pivots.emplace(lead, std::move(row));
            ++rank;
        }
    }
    return rank;
}

using SparseRows = std::vector<std::vector<std::pair<int, std::int64_t>>>;

// Boundary of q-faces into (q-1)-faces; q = 0 maps vertices onto the empty face.
SparseRows boundary_rows(const std::vector<AbstractComplex::Face>& q_faces,
                         const std::unordered_map<AbstractComplex::Face, int>& lower_index) {
    SparseRows rows;
    rows.reserve(q_faces.size());
    for (auto f : q_faces) {
        std::vector<std::pair<int, std::int64_t>> row;
        int pos = 0;
        for (auto rest = f; rest; rest &= rest - 1, ++pos) {
            auto bit = rest & (~rest + 1);
            row.emplace_back(lower_index.at(f & ~bit), pos % 2 == 0 ? 1 : -1);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

template <typename Field>
std::vector<std::size_t> ranks_by_degree(const std::vector<std::vector<AbstractComplex::Face>>& by_size) {
    // by_size[s] holds faces with s vertices (dimension s-1).
    std::vector<std::size_t> ranks(by_size.size() + 1, 0);  // ranks[s] = rank of boundary from size s
    for (std::size_t s = 1; s < by_size.size(); ++s) {
        std::unordered_map<AbstractComplex::Face, int> index;
        for (std::size_t t = 0; t < by_size[s - 1].size(); ++t) index[by_size[s - 1][t]] = static_cast<int>(t);
        ranks[s] = sparse_rank<Field>(boundary_rows(by_size[s], index));
    }
    return ranks;
}

}  // namespace

std::vector<std::size_t> reduced_homology_ranks(const AbstractComplex& c, HomologyOptions opts) {
    const int dim = c.dimension();
    std::vector<std::size_t> zeros(static_cast<std::size_t>(dim + 2), 0);
    if (dim < 0) return {1};
    if (opts.shortcuts && c.apex()) return zeros;

    std::vector<std::vector<AbstractComplex::Face>> by_size(dim + 2);
    for (auto f : c.faces()) by_size[std::popcount(f)].push_back(f);

    auto betti = [&](const std::vector<std::size_t>& ranks) {
        std::vector<std::size_t> out(dim + 2);
        for (int s = 0; s <= dim + 1; ++s) out[s] = by_size[s].size() - ranks[s] - ranks[s + 1];
        return out;
    };
    if (opts.shortcuts) {
        auto mod_p = betti(ranks_by_degree<ModPField>(by_size));
        if (std::all_of(mod_p.begin(), mod_p.end(), [](std::size_t x) { return x == 0; })) return mod_p;
    }
    return betti(ranks_by_degree<RationalField>(by_size));
}

bool is_acyclic(const AbstractComplex& c) {
    auto ranks = reduced_homology_ranks(c);
    // Index 0 is q = -1, which only records the empty complex.
    return std::all_of(ranks.begin() + 1, ranks.end(), [](std::size_t x) { return x == 0; });
}

long reduced_euler_characteristic(const AbstractComplex& c) {
    long chi = 0;
    for (auto f : c.faces()) chi += (std::popcount(f) % 2 == 1) ? 1 : -1;
    return chi;
}

std::size_t rational_rank(std::vector<std::vector<std::int64_t>> rows) {
    SparseRows sparse;
    for (const auto& r : rows) {
        std::vector<std::pair<int, std::int64_t>> s;
        for (std::size_t c = 0; c < r.size(); ++c)
            if (r[c]) s.emplace_back(static_cast<int>(c), r[c]);
        sparse.push_back(std::move(s));
    }
    return sparse_rank<RationalField>(sparse);
}

}  // namespace svtan
