#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace svtan {

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Segre-Veronese data (k, a, b). Blocks are stored sorted by (a_i, b_i);
// the caller's order is kept for reporting.
class SVParams {
public:
    SVParams(std::vector<int> a, std::vector<int> b);

    int k() const { return static_cast<int>(a_.size()); }
    const std::vector<int>& a() const { return a_; }
    const std::vector<int>& b() const { return b_; }
    const std::vector<int>& original_a() const { return original_a_; }
    const std::vector<int>& original_b() const { return original_b_; }
    // Normalized block t came from original block permutation()[t] (0-based).
    const std::vector<int>& permutation() const { return permutation_; }

    int n() const { return n_; }
    int block_offset(int i) const { return offsets_[i]; }
    // Flat coordinate of (i, j), both 0-based.
    int index(int i, int j) const { return offsets_[i] + j; }
    int block_of(int coord) const;
    int max_a() const { return a_.back(); }

    bool all_a_one() const;
    std::string to_string() const;

    friend bool operator==(const SVParams& lhs, const SVParams& rhs) {
        return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
    }

private:
    std::vector<int> a_, b_, original_a_, original_b_, permutation_, offsets_;
    int n_ = 0;
};

// "1,2,3" -> {1,2,3}; throws ParameterError on malformed input.
std::vector<int> parse_int_list(const std::string& text);
std::string join_ints(const std::vector<int>& values, const std::string& sep = ",");

}  // namespace svtan
