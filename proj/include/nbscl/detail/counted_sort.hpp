#pragma once

#include <algorithm>
#include <vector>

#include "nbscl/counters.hpp"

namespace nbscl::detail {

// Stable bottom-up merge sort with every key comparison counted, so sorter
// complexity measurements are deterministic.
template <typename T, typename Less>
void counted_merge_sort(std::vector<T>& v, std::vector<T>& tmp, Less less) {
    const std::size_t n = v.size();
    if (n < 2) return;
    tmp.resize(n);
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            if (mid >= hi) continue;
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                add_compares(1);
                if (less(v[j], v[i]))
                    tmp[k++] = v[j++];
                else
                    tmp[k++] = v[i++]; // left side wins ties: stable
            }
            while (i < mid) tmp[k++] = v[i++];
            while (j < hi) tmp[k++] = v[j++];
            std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo),
                      tmp.begin() + static_cast<std::ptrdiff_t>(hi),
                      v.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    }
}

} // namespace nbscl::detail
