#include "svtan/toric_ideal.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace svtan {

namespace {

std::vector<std::vector<std::int64_t>> exponent_rows(const LabeledComplex& c) {
    auto m = exponent_map(c, true);
    std::vector<std::vector<std::int64_t>> cols(m.cols(), std::vector<std::int64_t>(m.rows()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t col = 0; col < m.cols(); ++col) cols[col][r] = m(r, col).get_si();
    return cols;
}

std::vector<std::int64_t> t_image(const std::vector<std::vector<std::int64_t>>& cols, std::size_t labels,
                                  const std::vector<std::int64_t>& e) {
    std::vector<std::int64_t> out(labels, 0);
    for (std::size_t col = 0; col < e.size(); ++col)
        if (e[col])
            for (std::size_t r = 0; r < labels; ++r) out[r] += e[col] * cols[col][r];
    return out;
}

std::int64_t total(const std::vector<std::int64_t>& v) { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); }

std::string format_monomial(const std::vector<std::string>& names, const std::vector<std::int64_t>& e) {
    std::string out;
    for (std::size_t col = 0; col < e.size(); ++col) {
        if (e[col] == 0) continue;
        out += "x_{" + names[col] + "}";
        if (e[col] > 1) out += "^" + std::to_string(e[col]);
    }
    return out.empty() ? "1" : out;
}

std::vector<std::string> column_names(const LabeledComplex& c) {
    std::vector<std::string> out;
    for (const auto& s : exponent_columns(c, true)) out.push_back(c.coordinate_name(s));
    return out;
}

class SideParser {
public:
    SideParser(const std::string& text, const std::map<std::string, std::size_t>& index, std::size_t n)
        : t_(text), index_(index), e_(n, 0) {}

    std::vector<std::int64_t> parse() {
        skip();
        if (pos_ < t_.size() && t_[pos_] == '1') {
            ++pos_;
            skip();
            if (pos_ != t_.size()) fail("unexpected text after 1");
            return e_;
        }
        if (pos_ == t_.size()) fail("empty monomial");
        while (pos_ < t_.size()) {
            expect('x');
            std::int64_t power = 1;
            bool seen_power = false;
            if (peek('^')) {
                power = exponent();
                seen_power = true;
            }
            expect('_');
            expect('{');
            auto close = t_.find('}', pos_);
            if (close == std::string::npos) fail("unterminated subscript");
            std::string name = t_.substr(pos_, close - pos_);
            pos_ = close + 1;
            if (peek('^')) {
                if (seen_power) fail("two exponents on one factor");
                power = exponent();
            }
            auto it = index_.find(name);
            if (it == index_.end()) throw FormatError("unknown coordinate x_{" + name + "}");
            e_[it->second] += power;
            skip();
        }
        return e_;
    }

private:
    void skip() {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }
    bool peek(char ch) {
        skip();
        return pos_ < t_.size() && t_[pos_] == ch;
    }
    void expect(char ch) {
        if (!peek(ch)) fail(std::string("expected '") + ch + "'");
        ++pos_;
    }
    std::int64_t exponent() {
        expect('^');
        bool braced = peek('{');
        if (braced) ++pos_;
        skip();
        std::size_t start = pos_;
        while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
        if (start == pos_) fail("missing exponent");
        std::int64_t v = std::stoll(t_.substr(start, pos_ - start));
        if (braced) expect('}');
        if (v < 1) fail("exponent must be positive");
        return v;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw FormatError("cannot parse monomial '" + t_ + "': " + what);
    }

    const std::string& t_;
    const std::map<std::string, std::size_t>& index_;
    std::vector<std::int64_t> e_;
    std::size_t pos_ = 0;
};

}  // namespace

Sublattice relation_lattice(const LabeledComplex& c) { return integer_kernel(exponent_map(c, true)); }

bool verify_relation(const LabeledComplex& c, const BinomialRelation& r) {
    const auto cols = exponent_rows(c);
    if (r.plus.size() != cols.size() || r.minus.size() != cols.size())
        throw FormatError("relation does not match the coordinates of the complex");
    return t_image(cols, c.label_count(), r.plus) == t_image(cols, c.label_count(), r.minus);
}

std::vector<BinomialRelation> enumerate_binomials(const LabeledComplex& c, int max_degree, std::size_t max_monomials) {
    if (max_degree < 2) throw std::invalid_argument("max_degree must be at least 2");
    const auto cols = exponent_rows(c);
    const std::size_t n = cols.size();
    const std::size_t labels = c.label_count();

    std::map<std::vector<std::int64_t>, std::vector<std::vector<std::int64_t>>> by_image;
    std::vector<std::int64_t> e(n, 0), img(labels, 0);
    std::size_t count = 0;
    auto rec = [&](auto&& self, std::size_t col, int left) -> void {
        if (col == n) {
            if (++count > max_monomials) throw std::length_error("too many monomials for binomial enumeration");
            by_image[img].push_back(e);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            e[col] = v;
            self(self, col + 1, left - v);
            for (std::size_t r = 0; r < labels; ++r) img[r] += cols[col][r];
        }
        for (std::size_t r = 0; r < labels; ++r) img[r] -= (left + 1) * cols[col][r];
        e[col] = 0;
    };
    rec(rec, 0, max_degree);

    std::vector<BinomialRelation> out;
    for (const auto& [image, monos] : by_image) {
        for (std::size_t u = 0; u < monos.size(); ++u)
            for (std::size_t v = u + 1; v < monos.size(); ++v) {
                bool disjoint = true;
                for (std::size_t col = 0; col < n && disjoint; ++col)
                    disjoint = monos[u][col] == 0 || monos[v][col] == 0;
                if (!disjoint) continue;
                BinomialRelation r;
                r.plus = std::max(monos[u], monos[v]);
                r.minus = std::min(monos[u], monos[v]);
                r.degree = total(image);
                r.x_degree = std::max(total(r.plus), total(r.minus));
                out.push_back(std::move(r));
            }
    }
    std::sort(out.begin(), out.end(), [](const BinomialRelation& x, const BinomialRelation& y) {
        return std::tie(x.degree, x.plus, x.minus) < std::tie(y.degree, y.plus, y.minus);
    });
    return out;
}

BinomialRelation parse_relation(const LabeledComplex& c, const std::string& text) {
    const auto names = column_names(c);
    std::map<std::string, std::size_t> index;
    for (std::size_t col = 0; col < names.size(); ++col) index[names[col]] = col;
    const auto minus_at = text.find('-');
    if (minus_at == std::string::npos || text.find('-', minus_at + 1) != std::string::npos)
        throw FormatError("a relation has the form 'monomial - monomial'");
    BinomialRelation r;
    r.plus = SideParser(text.substr(0, minus_at), index, names.size()).parse();
    r.minus = SideParser(text.substr(minus_at + 1), index, names.size()).parse();
    const auto cols = exponent_rows(c);
    r.degree = std::max(total(t_image(cols, c.label_count(), r.plus)), total(t_image(cols, c.label_count(), r.minus)));
    r.x_degree = std::max(total(r.plus), total(r.minus));
    return r;
}

std::string format_relation(const LabeledComplex& c, const BinomialRelation& r) {
    const auto names = column_names(c);
    return format_monomial(names, r.plus) + " - " + format_monomial(names, r.minus);
}

}  // namespace svtan
