#include <catch2/catch_amalgamated.hpp>

#include "magic/brute_oracle.hpp"
#include "magic/error.hpp"
#include "magic/generators.hpp"
#include "magic/language_analysis.hpp"
#include "magic/report.hpp"
#include "support.hpp"

using namespace magic;
using namespace magic::testing;

namespace {

// Connected automata with initial state 0, counted by brute force over
// transition relations and accepting sets without the library's encoding.
std::uint64_t count_connected(int n, int sigma)
{
    const int cells = n * sigma;
    const std::uint64_t relations = std::uint64_t{1} << (n * cells);
    std::uint64_t count = 0;
    for (std::uint64_t rel = 0; rel < relations; ++rel) {
        std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
        for (int bit = 0; bit < n * cells; ++bit) {
            if ((rel >> bit) & 1U) {
                succ[static_cast<std::size_t>(bit / n / sigma)].push_back(bit % n);
            }
        }
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const int q = stack.back();
            stack.pop_back();
            for (int t : succ[static_cast<std::size_t>(q)]) {
                if (!seen[static_cast<std::size_t>(t)]) {
                    seen[static_cast<std::size_t>(t)] = true;
                    stack.push_back(t);
                }
            }
        }
        if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
            count += std::uint64_t{1} << n;  // every accepting set
        }
    }
    return count;
}

}  // namespace

TEST_CASE("enumeration counts", "[enumerate]")
{
    CHECK(enumerate_nfas(1, 1, StructuralFilter::None).size() == 4);
    // Two states, one letter: state 1 is reachable iff 0 -> 1, so half of
    // the 2^(4+2) codes survive.
    CHECK(enumerate_nfas(2, 1, StructuralFilter::None).size() == 32);
    CHECK(enumerate_nfas(2, 1, StructuralFilter::None).size() == count_connected(2, 1));
    CHECK(enumerate_nfas(2, 2, StructuralFilter::None).size() == count_connected(2, 2));
    CHECK(enumerate_nfas(3, 1, StructuralFilter::None).size() == count_connected(3, 1));
    CHECK_THROWS_AS(enumeration_space(3, 3, StructuralFilter::None), ResourceError);
    CHECK_THROWS_AS(enumeration_space(5, 1, StructuralFilter::None), ResourceError);
}

TEST_CASE("filters hold on every emitted automaton", "[enumerate]")
{
    std::size_t seen = 0;
    for_each_nfa(3, 2, StructuralFilter::AllAccepting, [&](std::uint64_t, const Nfa& a) {
        REQUIRE(structural_all_accepting(a));
        ++seen;
    });
    CHECK(seen > 0);
    for (const auto& a : enumerate_nfas(2, 2, StructuralFilter::NonReturning)) {
        REQUIRE(structural_non_returning(a));
        REQUIRE(is_connected(a));
    }
    for (const auto& a : enumerate_nfas(2, 2, StructuralFilter::NonExiting)) {
        REQUIRE(structural_non_exiting(a));
    }
    for (const auto& a : enumerate_nfas(2, 2, StructuralFilter::AllInitialAccepting)) {
        REQUIRE(structural_all_initial_accepting(a));
    }
}

TEST_CASE("codes decode in increasing order", "[enumerate]")
{
    const EnumerationSpace space = enumeration_space(2, 1, StructuralFilter::None);
    CHECK(space.code_count() == 64);
    const Nfa a = decode_nfa(space, 0b10'0110);
    // Bit (q*sigma + s)*n + t: bits 1, 2 are 0->1 and 1->0; bit 5 makes state 1 accepting.
    CHECK(a.successors(0, 0) == StateSet(2, {1}));
    CHECK(a.successors(1, 0) == StateSet(2, {0}));
    CHECK(a.accepting() == StateSet(2, {1}));
    CHECK_THROWS_AS(decode_nfa(space, 64), InputError);
}

TEST_CASE("enumerated automata agree with their determinization", "[enumerate][property]")
{
    for_each_nfa(2, 2, StructuralFilter::None, [&](std::uint64_t, const Nfa& a) {
        REQUIRE(bounded_language(a, 6) == bounded_language(determinize(a), 6));
    });
    std::uint64_t checked = 0;
    for_each_nfa(3, 2, StructuralFilter::None, [&](std::uint64_t code, const Nfa& a) {
        if (code % 211 == 0) {
            REQUIRE(bounded_language(a, 6) == bounded_language(determinize(a), 6));
            ++checked;
        }
    });
    CHECK(checked > 5000);
}

TEST_CASE("structural characterizations over all small automata", "[enumerate][property]")
{
    for_each_nfa(2, 2, StructuralFilter::AllAccepting, [&](std::uint64_t, const Nfa& a) {
        REQUIRE(is_in_family(determinize(a), Family::PrefixClosed));
    });
    for_each_nfa(3, 1, StructuralFilter::AllAccepting, [&](std::uint64_t, const Nfa& a) {
        REQUIRE(is_in_family(determinize(a), Family::PrefixClosed));
    });
    for_each_nfa(2, 2, StructuralFilter::AllInitialAccepting, [&](std::uint64_t, const Nfa& a) {
        REQUIRE(is_in_family(determinize(a), Family::InfixClosed));
    });
    for_each_nfa(3, 2, StructuralFilter::AllInitialAccepting, [&](std::uint64_t code, const Nfa& a) {
        if (code % 7 == 0) {
            REQUIRE(is_in_family(determinize(a), Family::InfixClosed));
        }
    });
}

TEST_CASE("exact minimal NFA size", "[min_nfa]")
{
    const Alphabet ab = Alphabet::of("ab");
    CHECK(min_nfa_size_exact(universal_dfa(ab), 3) == 1);
    CHECK(min_nfa_size_exact(empty_dfa(ab), 3) == 1);
    CHECK(min_nfa_size_exact(determinize(chain(2, ab)), 3) == 3);
    CHECK_FALSE(min_nfa_size_exact(determinize(chain(3, ab)), 3).has_value());
    CHECK(min_nfa_size_exact(determinize(gen_boundary(4, 4)), 4) == 4);
    CHECK(min_nfa_size_exact(determinize(gen_mandl(3)), 3) == 3);

    SECTION("infix-closed witness at n = 3")
    {
        const auto w = gen_infix_closed(3, 4);
        const Dfa d = minimize(determinize(w.a2));
        CHECK_FALSE(min_nfa_size_exact(d, 2).has_value());
        // Five effective letters put the three-state search past the guard,
        // so the fooling set closes the gap.
        CHECK_THROWS_AS(min_nfa_size_exact(d, 3), ResourceError);
        CHECK(verify_fooling_set(d, infix_closed_fooling_set(3, 4)).bound == 3);
    }
    SECTION("feasibility guard")
    {
        CHECK_THROWS_AS(min_nfa_size_exact(determinize(gen_boundary(5, 32)), 5), ResourceError);
        CHECK(min_nfa_size_feasible(3, 2));
        CHECK(min_nfa_size_feasible(4, 1));
        CHECK_FALSE(min_nfa_size_feasible(4, 3));
    }
    SECTION("agrees with enumeration on every 2-state unary language")
    {
        // The least code producing each language tells its minimal size.
        std::map<std::string, int> smallest;
        for (int n = 1; n <= 2; ++n) {
            for_each_nfa(n, 1, StructuralFilter::None, [&](std::uint64_t, const Nfa& a) {
                smallest.try_emplace(canonical_encoding(minimize(determinize(a))), n);
            });
        }
        REQUIRE(smallest.size() > 4);
        for_each_nfa(2, 1, StructuralFilter::None, [&](std::uint64_t, const Nfa& a) {
            const Dfa d = minimize(determinize(a));
            REQUIRE(min_nfa_size_exact(d, 2) == smallest.at(canonical_encoding(d)));
        });
    }
}

TEST_CASE("spectrum search", "[spectrum]")
{
    SpectrumOptions exhaustive;
    SECTION("prefix-free at n = 3 stays inside [4, 5]")
    {
        const SpectrumResult r = spectrum_search(Family::PrefixFree, 3, 2, exhaustive);
        REQUIRE_FALSE(r.achieved.empty());
        for (const auto& [alpha, w] : r.achieved) {
            CHECK(alpha >= 4);
            CHECK(alpha <= 5);
            const Dfa d = minimize(determinize(w.nfa));
            CHECK(static_cast<std::int64_t>(d.state_count()) == alpha);
            CHECK(is_in_family(d, Family::PrefixFree));
            CHECK_FALSE(min_nfa_size_exact(d, 2).has_value());
        }
    }
    SECTION("alpha = n is excluded for infix-closed and finite")
    {
        CHECK(spectrum_search(Family::InfixClosed, 3, 2, exhaustive).achieved.count(3) == 0);
        CHECK(spectrum_search(Family::Finite, 3, 2, exhaustive).achieved.count(3) == 0);
    }
    SECTION("star-free witnesses are aperiodic")
    {
        for (const auto& [alpha, w] : spectrum_search(Family::StarFree, 3, 2, exhaustive).achieved) {
            CHECK(is_aperiodic(minimize(determinize(w.nfa))));
        }
    }
    SECTION("worker count does not change the result")
    {
        SpectrumOptions two = exhaustive;
        two.workers = 3;
        CHECK(to_json(spectrum_search(Family::SuffixFree, 2, 2, exhaustive)).dump() ==
              to_json(spectrum_search(Family::SuffixFree, 2, 2, two)).dump());
    }
    SECTION("sampled runs are reproducible")
    {
        SpectrumOptions sampled;
        sampled.mode = SearchMode::Sampled;
        sampled.budget = 3000;
        sampled.seed = 42;
        const std::string first = to_json(spectrum_search(Family::SuffixClosed, 5, 2, sampled)).dump();
        CHECK(first == to_json(spectrum_search(Family::SuffixClosed, 5, 2, sampled)).dump());
        sampled.workers = 2;
        CHECK(first == to_json(spectrum_search(Family::SuffixClosed, 5, 2, sampled)).dump());
        sampled.seed = 43;
        CHECK(first != to_json(spectrum_search(Family::SuffixClosed, 5, 2, sampled)).dump());
    }
    SECTION("sampled mode needs a budget")
    {
        SpectrumOptions sampled;
        sampled.mode = SearchMode::Sampled;
        CHECK_THROWS_AS(spectrum_search(Family::Finite, 5, 2, sampled), RangeError);
        CHECK_THROWS_AS(spectrum_search(Family::Finite, 4, 2, exhaustive), ResourceError);
    }
}

TEST_CASE("free languages need n + 1 DFA states", "[free]")
{
    for (int n = 1; n <= 2; ++n) {
        const Theorem4Result r = theorem4_check(n);
        CHECK(r.holds);
        CHECK(r.free_languages > 0);
        CHECK_FALSE(r.counterexample.has_value());
    }
    CHECK_THROWS_AS(theorem4_check(4), ResourceError);
}
