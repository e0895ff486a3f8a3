#pragma once

#include <vector>

namespace specnorm {

namespace detail {

// Row i of a reduced echelon basis has its pivot bit set and may carry any
// non-pivot bit below it; every other bit is zero.
template <class Fn>
void enumerate_pivots(Ambient ambient, int k, int next, std::vector<int>& pivots, Fn& fn) {
    if (static_cast<int>(pivots.size()) == k) {
        Point pivot_mask = 0;
        for (int p : pivots) pivot_mask |= Point{1} << p;
        // For row i the free positions are the non-pivot bits below pivots[i].
        std::vector<std::vector<int>> free(k);
        int total_free = 0;
        for (int i = 0; i < k; ++i) {
            for (int b = 0; b < pivots[i]; ++b) {
                if (!(pivot_mask >> b & 1)) free[i].push_back(b);
            }
            total_free += static_cast<int>(free[i].size());
        }
        std::vector<Point> rows(k);
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << total_free); ++code) {
            std::uint64_t c = code;
            for (int i = 0; i < k; ++i) {
                Point row = Point{1} << pivots[i];
                for (int b : free[i]) {
                    if (c & 1) row |= Point{1} << b;
                    c >>= 1;
                }
                rows[i] = row;
            }
            fn(rref_span(ambient, rows));
        }
        return;
    }
    const int remaining = k - static_cast<int>(pivots.size());
    for (int p = next; p >= remaining - 1; --p) {
        pivots.push_back(p);
        enumerate_pivots(ambient, k, p - 1, pivots, fn);
        pivots.pop_back();
    }
}

}  // namespace detail

template <class Fn>
void for_each_subgroup_of_dim(Ambient ambient, int k, Fn&& fn) {
    if (k < 0 || k > ambient.n()) return;
    std::vector<int> pivots;
    detail::enumerate_pivots(ambient, k, ambient.n() - 1, pivots, fn);
}

}  // namespace specnorm
