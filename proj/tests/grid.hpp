#pragma once

#include "svtan/params.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace testgrid {

// Normalized parameters with k <= 3 and a_i, b_i <= 3, plus k = 4 with all ones.
inline std::vector<svtan::SVParams> sweep_grid(int max_k = 3, int max_entry = 3) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= max_entry; ++a)
        for (int b = 1; b <= max_entry; ++b) pairs.emplace_back(a, b);
    std::vector<svtan::SVParams> out;
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t from, int left) -> void {
        if (!pick.empty()) {
            std::vector<int> a, b;
            for (auto i : pick) {
                a.push_back(pairs[i].first);
                b.push_back(pairs[i].second);
            }
            out.emplace_back(a, b);
        }
        if (left == 0) return;
        for (std::size_t i = from; i < pairs.size(); ++i) {
            pick.push_back(i);
            self(self, i, left - 1);
            pick.pop_back();
        }
    };
    rec(rec, 0, max_k);
    out.emplace_back(std::vector<int>{1, 1, 1, 1}, std::vector<int>{1, 1, 1, 1});
    return out;
}

}  // namespace testgrid
