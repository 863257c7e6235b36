#pragma once

// Exhaustive enumeration of every legal (k, kis, doubled_last) tuple for a
// given n, used to check decompose_alpha independently of its search order.

#include <cstdint>
#include <vector>

namespace magic::testing {

struct EnumeratedAlpha {
    bool found = false;
    int k = 0;
    bool strict = false;  // some tuple also meets l <= k-1
};

// Indexed by alpha; entries with n < alpha < 2^n are filled in.
inline std::vector<EnumeratedAlpha> enumerate_decompositions(int n)
{
    std::vector<EnumeratedAlpha> out(std::size_t{1} << n);
    for (int k = 1; k <= n - 1; ++k) {
        const std::int64_t two_k = std::int64_t{1} << k;
        // Bit j-1 of `subset` selects k_i = j; the list is read largest first.
        for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << k); ++subset) {
            const int ell = __builtin_popcount(subset);
            const int smallest = __builtin_ctz(subset) + 1;
            std::int64_t base = 0;
            for (int j = 1; j <= k; ++j) {
                if ((subset >> (j - 1)) & 1U) {
                    base += (std::int64_t{1} << j) - 1;
                }
            }
            for (bool doubled : {false, true}) {
                const std::int64_t m = base + (doubled ? (std::int64_t{1} << smallest) - 1 : 0);
                if (m < 1 || m >= two_k) {
                    continue;
                }
                if (ell > k || (doubled && ell + 1 > k)) {
                    continue;
                }
                const std::int64_t alpha = n - (k + 1) + two_k + m;
                if (alpha <= n || alpha >= (std::int64_t{1} << n)) {
                    continue;
                }
                auto& e = out[static_cast<std::size_t>(alpha)];
                e.found = true;
                e.k = k;
                e.strict = e.strict || ell <= k - 1;
            }
        }
    }
    return out;
}

}  // namespace magic::testing
