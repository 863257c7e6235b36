#include <catch2/catch_amalgamated.hpp>

#include "decomposition_enumerator.hpp"
#include "magic/decomposition.hpp"
#include "magic/error.hpp"

using namespace magic;

namespace {

std::int64_t reconstruct(const AlphaDecomposition& d)
{
    std::int64_t m = 0;
    for (int j : d.kis) {
        m += (std::int64_t{1} << j) - 1;
    }
    if (d.doubled_last) {
        m += (std::int64_t{1} << d.kis.back()) - 1;
    }
    REQUIRE(m == d.m);
    return d.n - (d.k + 1) + (std::int64_t{1} << d.k) + m;
}

}  // namespace

TEST_CASE("decompose_alpha examples", "[decompose]")
{
    const auto d46 = decompose_alpha(4, 6);
    CHECK(d46.k == 2);
    CHECK(d46.m == 1);
    CHECK(d46.kis == std::vector<int>{1});
    CHECK_FALSE(d46.doubled_last);
    CHECK_FALSE(d46.relaxed_ell());

    const auto d623 = decompose_alpha(6, 23);
    CHECK(d623.k == 4);
    CHECK(d623.m == 6);
    CHECK(d623.kis == std::vector<int>{2});
    CHECK(d623.doubled_last);
    CHECK(render(d623) == "23 = 6-(4+1)+2^4+6; 6 = 2*(2^2-1)");

    const auto d45 = decompose_alpha(4, 5);
    CHECK(d45.k == 1);
    CHECK(d45.m == 1);
    CHECK(d45.kis == std::vector<int>{1});
    CHECK_FALSE(d45.doubled_last);
    CHECK(d45.relaxed_ell());
}

TEST_CASE("decompose_alpha rejects out-of-range input", "[decompose]")
{
    CHECK_THROWS_AS(decompose_alpha(4, 4), RangeError);
    CHECK_THROWS_AS(decompose_alpha(4, 16), RangeError);
    CHECK_THROWS_AS(decompose_alpha(1, 1), RangeError);
    CHECK_THROWS_AS(decompose_alpha(63, 100), RangeError);
    AlphaDecomposition broken = decompose_alpha(6, 23);
    broken.m = 5;
    CHECK_THROWS_AS(check_decomposition(broken), ConstructionError);
}

TEST_CASE("decompositions round-trip and match the exhaustive enumerator", "[decompose][property]")
{
    for (int n = 2; n <= 12; ++n) {
        const auto enumerated = testing::enumerate_decompositions(n);
        for (std::int64_t alpha = n + 1; alpha < (std::int64_t{1} << n); ++alpha) {
            const auto* it = &enumerated[static_cast<std::size_t>(alpha)];
            REQUIRE(it->found);
            const AlphaDecomposition d = decompose_alpha(n, alpha);
            REQUIRE(reconstruct(d) == alpha);
            REQUIRE(d.k == it->k);
            // The relaxed bound is used exactly when no strict tuple exists.
            REQUIRE(d.relaxed_ell() == !it->strict);
        }
    }
}

TEST_CASE("quadratic parameters", "[quadratic]")
{
    CHECK(quadratic_params(4, 7) == QuadraticParams{4, 7, 0, 2});
    CHECK(quadratic_params(4, 6) == QuadraticParams{4, 6, 0, 1});
    CHECK(quadratic_params(6, 13) == QuadraticParams{6, 13, 1, 2});
    CHECK(quadratic_upper(4) == 7);
    CHECK(quadratic_upper(5) == 10);
    CHECK(quadratic_upper(6) == 13);
    CHECK_THROWS_AS(quadratic_params(4, 5), RangeError);
    CHECK_THROWS_AS(quadratic_params(4, 8), RangeError);

    for (int n = 3; n <= 30; ++n) {
        for (std::int64_t alpha = n + 2; alpha <= quadratic_upper(n); ++alpha) {
            const QuadraticParams p = quadratic_params(n, alpha);
            std::int64_t partial = 0;
            for (int i = 0; i <= p.k; ++i) {
                partial += n - 2 * i;
            }
            REQUIRE(p.m == alpha - 1 - partial);
            REQUIRE(p.m >= 1);
            REQUIRE(alpha > 1 + partial);
            // m reaches n-2(k+1) exactly when alpha = 1 + partial sum up to k+1,
            // one more than the window [1, n-2(k+1)-1] the proof states.
            REQUIRE(p.m <= n - 2 * (p.k + 1));
        }
    }
}

TEST_CASE("exponential parameters", "[exponential]")
{
    CHECK(exponential_params(5, 9) == ExponentialParams{5, 9, 1, 1, 5});
    CHECK(exponential_params(5, 11) == ExponentialParams{5, 11, 3, 2, 4});
    CHECK(exponential_params(6, 13) == ExponentialParams{6, 13, 1, 1, 6});
    CHECK(exponential_base(5) == 8);
    CHECK(exponential_base(6) == 12);
    CHECK_THROWS_AS(exponential_params(5, 10), RangeError);
    CHECK_THROWS_AS(exponential_params(5, 8), RangeError);

    for (int n = 3; n <= 30; ++n) {
        const int k = n / 2;  // ceil((n-1)/2)
        for (std::int64_t alpha : exponential_alphas(n)) {
            const ExponentialParams p = exponential_params(n, alpha);
            REQUIRE(p.beta == (std::int64_t{1} << p.i) - 1);
            REQUIRE(p.x == n + 1 - p.i);
            REQUIRE(p.x >= k + 1);
            REQUIRE(p.x <= n);
            REQUIRE(alpha == exponential_base(n) + p.beta);
        }
    }
}
