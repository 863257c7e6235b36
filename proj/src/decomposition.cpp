#include "magic/decomposition.hpp"

#include <algorithm>
#include <optional>

#include "magic/error.hpp"

namespace magic {

namespace {

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

// Largest-first search for strictly decreasing k_i <= top summing to rem
// (with the last term counted twice when doubled). max_len bounds l.
bool search(std::int64_t rem, int top, bool doubled, int max_len, std::vector<int>& kis)
{
    const int slots = max_len - static_cast<int>(kis.size());
    if (slots <= 0 || top < 1) {
        return false;
    }
    // Upper bound on the reachable sum: the `slots` biggest terms, plus at most
    // one more copy of a term when the last is doubled.
    const int low = std::max(1, top - slots + 1);
    const std::int64_t reach = pow2(top + 1) - pow2(low) - (top - low + 1) + (doubled ? pow2(top) - 1 : 0);
    if (rem > reach) {
        return false;
    }
    for (int j = top; j >= 1; --j) {
        const std::int64_t term = pow2(j) - 1;
        if (doubled && 2 * term == rem) {
            kis.push_back(j);
            return true;
        }
        if (!doubled && term == rem) {
            kis.push_back(j);
            return true;
        }
        if (term < rem) {
            kis.push_back(j);
            if (search(rem - term, j - 1, doubled, max_len, kis)) {
                return true;
            }
            kis.pop_back();
        }
    }
    return false;
}

}  // namespace

void check_decomposition(const AlphaDecomposition& d)
{
    const auto fail = [&](const std::string& what) {
        throw ConstructionError("decomposition of (" + std::to_string(d.n) + ", " + std::to_string(d.alpha) +
                                ") violates " + what);
    };
    if (d.n < 2 || d.n > kMaxDecompositionN) {
        fail("2 <= n <= 62");
    }
    if (!(d.n < d.alpha && d.alpha < pow2(d.n))) {
        fail("n < alpha < 2^n");
    }
    if (d.k < 1 || d.k > d.n - 1) {
        fail("1 <= k <= n-1");
    }
    if (d.m < 1 || d.m >= pow2(d.k)) {
        fail("1 <= m < 2^k");
    }
    if (d.alpha != d.n - (d.k + 1) + pow2(d.k) + d.m) {
        fail("alpha = n-(k+1)+2^k+m");
    }
    if (d.kis.empty()) {
        fail("l >= 1");
    }
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < d.kis.size(); ++i) {
        if (d.kis[i] < 1 || (i > 0 && d.kis[i] >= d.kis[i - 1])) {
            fail("k_1 > ... > k_l >= 1");
        }
        sum += pow2(d.kis[i]) - 1;
    }
    if (d.kis.front() > d.k) {
        fail("k >= k_1");
    }
    if (d.doubled_last) {
        sum += pow2(d.kis.back()) - 1;
    }
    if (sum != d.m) {
        fail("the m-equation");
    }
    // Relaxed l-bound: l <= k, and l+1 <= k when the doubled row is used.
    const int ell = static_cast<int>(d.kis.size());
    if (ell > d.k || (d.doubled_last && ell + 1 > d.k)) {
        fail("the relaxed l-bound");
    }
}

AlphaDecomposition decompose_alpha(int n, std::int64_t alpha)
{
    if (n < 2 || n > kMaxDecompositionN) {
        throw RangeError("decompose_alpha supports 2 <= n <= " + std::to_string(kMaxDecompositionN));
    }
    if (!(n < alpha && alpha < pow2(n))) {
        throw RangeError("decompose_alpha needs n < alpha < 2^n, got (" + std::to_string(n) + ", " +
                         std::to_string(alpha) + ")");
    }
    std::optional<int> k;
    for (int cand = 1; cand <= n - 1; ++cand) {
        const std::int64_t m = alpha - n + (cand + 1) - pow2(cand);
        if (m >= 1 && m < pow2(cand)) {
            k = cand;
            break;
        }
    }
    if (!k) {
        throw ConstructionError("no k admits (" + std::to_string(n) + ", " + std::to_string(alpha) + ")");
    }
    AlphaDecomposition d;
    d.n = n;
    d.alpha = alpha;
    d.k = *k;
    d.m = alpha - n + (d.k + 1) - pow2(d.k);

    // Strict bound first (l <= k-1), then the relaxed one (l <= k).
    for (int max_len : {d.k - 1, d.k}) {
        for (bool doubled : {false, true}) {
            // The doubled row touches state l+1, which must stay inside the core.
            const int limit = doubled ? std::min(max_len, d.k - 1) : max_len;
            std::vector<int> kis;
            if (search(d.m, d.k, doubled, limit, kis)) {
                d.kis = std::move(kis);
                d.doubled_last = doubled;
                check_decomposition(d);
                return d;
            }
        }
    }
    throw ConstructionError("no decomposition of m = " + std::to_string(d.m) + " for (" + std::to_string(n) +
                            ", " + std::to_string(alpha) + ")");
}

std::string render(const AlphaDecomposition& d)
{
    std::string out = std::to_string(d.alpha) + " = " + std::to_string(d.n) + "-(" + std::to_string(d.k) +
                      "+1)+2^" + std::to_string(d.k) + "+" + std::to_string(d.m) + "; " + std::to_string(d.m) +
                      " = ";
    for (std::size_t i = 0; i < d.kis.size(); ++i) {
        if (i > 0) {
            out += "+";
        }
        const bool last = i + 1 == d.kis.size();
        if (last && d.doubled_last) {
            out += "2*";
        }
        out += "(2^" + std::to_string(d.kis[i]) + "-1)";
    }
    return out;
}

// ---------------------------------------------------------------------------

std::int64_t quadratic_upper(int n)
{
    if (n % 2 == 0) {
        const std::int64_t h = n / 2;
        return h * h + h + 1;
    }
    const std::int64_t h = (n - 1) / 2;
    return h * h + n + 1;
}

QuadraticParams quadratic_params(int n, std::int64_t alpha)
{
    if (n < 1 || n > 4096) {
        throw RangeError("quadratic_params supports 1 <= n <= 4096");
    }
    if (!(n + 1 < alpha && alpha <= quadratic_upper(n))) {
        throw RangeError("quadratic_params needs n+1 < alpha <= " + std::to_string(quadratic_upper(n)) + ", got (" +
                         std::to_string(n) + ", " + std::to_string(alpha) + ")");
    }
    // partial(x) = sum_{i=0}^{x} (n - 2i). The sums stop increasing once
    // n - 2i <= 0, so k is taken over the increasing prefix.
    std::int64_t partial = n;
    int k = 0;
    while (n - 2 * (k + 1) > 0 && alpha > 1 + partial + (n - 2 * (k + 1))) {
        ++k;
        partial += n - 2 * k;
    }
    QuadraticParams p{n, alpha, k, alpha - 1 - partial};
    if (p.m < 1) {
        throw ConstructionError("quadratic_params produced m < 1");
    }
    return p;
}

std::int64_t exponential_base(int n)
{
    if (n < 2 || n > 120) {
        throw RangeError("exponential_base supports 2 <= n <= 120");
    }
    if (n % 2 == 0) {
        return 3 * pow2(n / 2 - 1);
    }
    return pow2((n + 1) / 2);
}

int exponential_max_i(int n) { return n / 2; }

std::vector<std::int64_t> exponential_alphas(int n)
{
    std::vector<std::int64_t> out;
    const std::int64_t base = exponential_base(n);
    for (int i = 1; i <= exponential_max_i(n); ++i) {
        out.push_back(base + pow2(i) - 1);
    }
    return out;
}

ExponentialParams exponential_params(int n, std::int64_t alpha)
{
    if (n < 3) {
        throw RangeError("the exponential construction needs n >= 3");
    }
    const std::int64_t base = exponential_base(n);
    const std::int64_t beta = alpha - base;
    for (int i = 1; i <= exponential_max_i(n); ++i) {
        if (beta == pow2(i) - 1) {
            return ExponentialParams{n, alpha, beta, i, n + 1 - i};
        }
    }
    throw RangeError("alpha = " + std::to_string(alpha) + " is not " + std::to_string(base) +
                     " + (2^i - 1) with 1 <= i <= " + std::to_string(exponential_max_i(n)) + " for n = " +
                     std::to_string(n));
}

}  // namespace magic
