#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace magic {

// Certificate that alpha = n - (k+1) + 2^k + m with
// m = sum_{i<l} (2^{k_i} - 1) + (doubled_last ? 2 : 1) * (2^{k_l} - 1).
struct AlphaDecomposition {
    int n = 0;
    std::int64_t alpha = 0;
    int k = 0;
    std::int64_t m = 0;
    std::vector<int> kis;  // strictly decreasing, all >= 1
    bool doubled_last = false;

    // True when l exceeds k - 1, i.e. only the relaxed bound l <= k holds.
    bool relaxed_ell() const { return static_cast<int>(kis.size()) > k - 1; }

    friend bool operator==(const AlphaDecomposition&, const AlphaDecomposition&) = default;
};

// Largest n for which alpha < 2^n stays exact in 64-bit arithmetic.
inline constexpr int kMaxDecompositionN = 62;

// Smallest admissible k, then largest-first k_i with backtracking; the
// doubled form is tried only when no single-form choice exists. Throws
// RangeError unless n < alpha < 2^n, ConstructionError if no decomposition
// is found.
AlphaDecomposition decompose_alpha(int n, std::int64_t alpha);

// Throws ConstructionError naming the first violated invariant.
void check_decomposition(const AlphaDecomposition& d);

// "alpha = n-(k+1)+2^k+m; m = ..." with the numbers filled in, e.g.
// "23 = 6-(4+1)+2^4+6; 6 = 2*(2^2-1)".
std::string render(const AlphaDecomposition& d);

struct QuadraticParams {
    int n = 0;
    std::int64_t alpha = 0;
    int k = 0;
    std::int64_t m = 0;

    friend bool operator==(const QuadraticParams&, const QuadraticParams&) = default;
};

// Largest alpha reachable by the quadratic finite construction for n states.
std::int64_t quadratic_upper(int n);

// k is the largest x for which every partial sum up to x stays below
// alpha - 1; m is the remainder. Requires n+1 < alpha <= quadratic_upper(n).
QuadraticParams quadratic_params(int n, std::int64_t alpha);

struct ExponentialParams {
    int n = 0;
    std::int64_t alpha = 0;
    std::int64_t beta = 0;
    int i = 0;
    int x = 0;  // in [k+1, n] with k = ceil((n-1)/2); x = n + 1 - i

    friend bool operator==(const ExponentialParams&, const ExponentialParams&) = default;
};

// 3 * 2^{n/2-1} (n even) or 2^{(n+1)/2} (n odd).
std::int64_t exponential_base(int n);
// Largest admissible i, ceil((n-1)/2).
int exponential_max_i(int n);
// All admissible alpha = base + 2^i - 1, increasing.
std::vector<std::int64_t> exponential_alphas(int n);

ExponentialParams exponential_params(int n, std::int64_t alpha);

}  // namespace magic
