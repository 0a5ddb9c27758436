#include "svtan/params.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace svtan {

SVParams::SVParams(std::vector<int> a, std::vector<int> b) : original_a_(std::move(a)), original_b_(std::move(b)) {
    if (original_a_.empty()) throw ParameterError("k must be at least 1");
    if (original_a_.size() != original_b_.size()) throw ParameterError("a and b must have k entries each");
    for (std::size_t i = 0; i < original_a_.size(); ++i)
        if (original_a_[i] < 1 || original_b_[i] < 1) throw ParameterError("a_i and b_i must be positive");

    permutation_.resize(original_a_.size());
    std::iota(permutation_.begin(), permutation_.end(), 0);
    std::stable_sort(permutation_.begin(), permutation_.end(), [&](int x, int y) {
        return std::pair(original_a_[x], original_b_[x]) < std::pair(original_a_[y], original_b_[y]);
    });
    for (int p : permutation_) {
        a_.push_back(original_a_[p]);
        b_.push_back(original_b_[p]);
    }
    for (int bi : b_) {
        offsets_.push_back(n_);
        n_ += bi;
    }
}

int SVParams::block_of(int coord) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), coord);
    return static_cast<int>(it - offsets_.begin()) - 1;
}

bool SVParams::all_a_one() const {
    return std::all_of(a_.begin(), a_.end(), [](int x) { return x == 1; });
}

std::string SVParams::to_string() const {
    return "k=" + std::to_string(k()) + " a=(" + join_ints(a_) + ") b=(" + join_ints(b_) + ")";
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw ParameterError("empty entry in list '" + text + "'");
        item = item.substr(first, last - first + 1);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw ParameterError("not an integer: '" + item + "'");
        }
        if (used != item.size()) throw ParameterError("not an integer: '" + item + "'");
        out.push_back(value);
    }
    if (out.empty()) throw ParameterError("empty list");
    return out;
}

std::string join_ints(const std::vector<int>& values, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(values[i]);
    }
    return s;
}

}  // namespace svtan
