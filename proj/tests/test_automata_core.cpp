#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <random>

#include "magic/brute_oracle.hpp"
#include "magic/error.hpp"
#include "magic/generators.hpp"
#include "magic/text_format.hpp"
#include "support.hpp"

using namespace magic;
using namespace magic::testing;

namespace {

const Alphabet ab = Alphabet::of("ab");
const Alphabet unary = Alphabet::of("a");

Dfa a_star() { return table_dfa(unary, {{1, 0}}); }
Dfa aa_star() { return table_dfa(unary, {{1, 1}, {0, 0}}); }

}  // namespace

TEST_CASE("state sets behave as bitsets", "[state_set]")
{
    StateSet s(70, {0, 5, 69});
    CHECK(s.size() == 3);
    CHECK(s.contains(69));
    CHECK_FALSE(s.contains(68));
    CHECK(s.to_string() == "{0,5,69}");
    CHECK_THROWS_AS(s.insert(70), InputError);

    StateSet t(70, {5});
    CHECK(t.is_subset_of(s));
    CHECK_FALSE(s.is_subset_of(t));
    CHECK(s.intersects(t));
    CHECK(StateSet(3, {0}) < StateSet(3, {0, 1}));
    CHECK(StateSet(3, {0, 1}) < StateSet(3, {1}));
    CHECK(StateSet(4).to_string() == "{}");
}

TEST_CASE("alphabets reject malformed symbols", "[alphabet]")
{
    CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), InputError);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), InputError);
    CHECK_THROWS_AS(Alphabet({"a b"}), InputError);
    CHECK_THROWS_AS(Alphabet({"x|y"}), InputError);
    CHECK(Alphabet::of("ab#$").index_of("$") == Symbol{3});
    CHECK(format_word(ab, {}) == "λ");
    CHECK(parse_word(ab, "aab") == Word{0, 0, 1});
    CHECK(parse_word(ab, "a a b") == Word{0, 0, 1});
}

TEST_CASE("accepts follows the extended transition function", "[accepts]")
{
    const Nfa mandl = gen_mandl(4);
    SECTION("empty word")
    {
        CHECK_FALSE(accepts(mandl, Word{}));
        Nfa one(1, ab);
        one.set_initial(0);
        one.add_accepting(0);
        CHECK(accepts(one, Word{}));
    }
    SECTION("hand-simulated Mandl words")
    {
        CHECK(accepts(mandl, w(ab, "aab")));
        CHECK_FALSE(accepts(mandl, w(ab, "bb")));
    }
    SECTION("bad symbol") { CHECK_THROWS_AS(accepts(mandl, Word{7}), InputError); }
}

TEST_CASE("determinize numbers subsets breadth-first", "[determinize]")
{
    SECTION("Mandl n=4 reaches seven subsets")
    {
        const Dfa d = determinize(gen_mandl(4));
        REQUIRE(d.state_count() == 7);
        std::set<std::string> labels;
        for (const auto& l : d.labels()) {
            labels.insert(l.to_string());
        }
        // States 1..4 of the construction are 0..3 here.
        CHECK(labels == std::set<std::string>{"{0}", "{1}", "{1,2}", "{2}", "{2,3}", "{3}", "{}"});
        CHECK(d.label(0).to_string() == "{0}");
    }
    SECTION("chain for words of length two")
    {
        const Dfa d = determinize(chain(2, ab));
        CHECK(d.state_count() == 4);
        CHECK(bounded_language(d, 4) == naive_language(chain(2, ab), 4));
    }
    SECTION("a total deterministic NFA keeps its state count")
    {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 20; ++i) {
            const Dfa base = random_dfa(rng, 5 + i % 3, 2);
            std::set<State> reached{base.initial()};
            std::vector<State> stack{base.initial()};
            while (!stack.empty()) {
                const State q = stack.back();
                stack.pop_back();
                for (Symbol s = 0; s < 2; ++s) {
                    if (reached.insert(base.next(q, s)).second) {
                        stack.push_back(base.next(q, s));
                    }
                }
            }
            const Dfa again = determinize(to_nfa(base));
            CHECK(again.state_count() == reached.size());
            CHECK(equivalent(again, base));
        }
    }
    SECTION("numbering is reproducible")
    {
        const Nfa a = gen_jjs(5, 20);
        CHECK(to_text(determinize(a)) == to_text(determinize(a)));
    }
    SECTION("labels agree with the initial and accepting sets")
    {
        const Nfa a = gen_jjs(5, 17);
        const Dfa d = determinize(a);
        CHECK(d.label(d.initial()) == a.initial());
        for (State q = 0; q < d.state_count(); ++q) {
            CHECK(d.is_accepting(q) == d.label(q).intersects(a.accepting()));
        }
    }
    SECTION("subset cap")
    {
        CHECK_THROWS_AS(determinize(gen_boundary(6, 64), DeterminizeOptions{10, true}), ResourceError);
    }
}

TEST_CASE("environment variable overrides the subset cap", "[determinize]")
{
    ::setenv("MAGIC_MAX_SUBSETS", "12", 1);
    CHECK(subset_cap_from_env() == 12);
    CHECK_THROWS_AS(determinize(gen_boundary(5, 32), DeterminizeOptions{}), ResourceError);
    ::unsetenv("MAGIC_MAX_SUBSETS");
    CHECK(subset_cap_from_env() == kDefaultMaxSubsets);
}

TEST_CASE("minimize", "[minimize]")
{
    SECTION("Mandl sizes")
    {
        CHECK(min_dfa_size(gen_mandl(4)) == 7);
        CHECK(min_dfa_size(gen_mandl(5)) == 11);
    }
    SECTION("universal language has one state")
    {
        Nfa one(1, ab);
        one.set_initial(0);
        one.add_accepting(0);
        one.add_transition(0, 0, 0);
        one.add_transition(0, 1, 0);
        CHECK(min_dfa_size(one) == 1);
    }
    SECTION("idempotent and matches the double reversal on random DFAs")
    {
        std::mt19937_64 rng(2024);
        for (int i = 0; i < 300; ++i) {
            const int n = 1 + static_cast<int>(rng() % 9);
            const Dfa d = random_dfa(rng, n, 1 + static_cast<int>(rng() % 3));
            const Dfa m = minimize(d);
            const Dfa b = minimize_brzozowski(d);
            REQUIRE(m.state_count() == b.state_count());
            CHECK(canonical_encoding(m) == canonical_encoding(b));
            CHECK(canonical_encoding(minimize(m)) == canonical_encoding(m));
            CHECK(equivalent(m, d));
        }
    }
    SECTION("the rejecting sink is kept")
    {
        CHECK(min_dfa_size(chain(2, ab)) == 4);
        CHECK(min_dfa_size(empty_dfa(ab)) == 1);
    }
    SECTION("nerode classes are dense")
    {
        const Dfa d = table_dfa(unary, {{1, 1}, {0, 2}, {1, 3}, {0, 0}});
        const auto cls = nerode_classes(d);
        CHECK(cls == std::vector<State>{0, 1, 0, 1});
    }
}

TEST_CASE("products and emptiness", "[product]")
{
    const Dfa d = minimize(determinize(gen_mandl(4)));
    CHECK(is_empty(product(d, d, ProductMode::Difference)));
    CHECK(equivalent(product(d, universal_dfa(ab), ProductMode::Intersection), d));

    const Dfa odd = product(a_star(), aa_star(), ProductMode::Difference);
    for (const auto& word : all_words(1, 6)) {
        CHECK(accepts(odd, word) == (word.size() % 2 == 1));
    }
    CHECK(shortest_accepted(odd) == Word{0});
    CHECK_THROWS_AS(product(d, a_star(), ProductMode::Union), InputError);
}

TEST_CASE("equivalence", "[equivalent]")
{
    const Nfa mandl = gen_mandl(4);
    CHECK(equivalent(mandl, mandl));
    CHECK(equivalent(mandl, determinize(mandl)));
    CHECK_FALSE(equivalent(chain(2, ab), chain(3, ab)));
    CHECK(bounded_difference(chain(2, ab), chain(3, ab), 5)->size() == 2);
}

TEST_CASE("reversal", "[reverse]")
{
    const Nfa mandl = gen_mandl(4);
    CHECK(equivalent(reverse(reverse(mandl)), mandl));

    Nfa ab_chain(3, ab);
    ab_chain.set_initial(0);
    ab_chain.add_transition(0, 0, 1);
    ab_chain.add_transition(1, 1, 2);
    ab_chain.add_accepting(2);
    CHECK(accepts(reverse(ab_chain), w(ab, "ba")));
    CHECK_FALSE(accepts(reverse(ab_chain), w(ab, "ab")));

    const Nfa rev = reverse(mandl);
    CHECK(min_dfa_size(rev) == residual_count(rev, 8, 8));
    for (const auto& word : all_words(2, 8)) {
        Word back(word.rbegin(), word.rend());
        REQUIRE(accepts(rev, word) == naive_accepts(mandl, back));
    }
}

TEST_CASE("merging initial states", "[mnfa]")
{
    SECTION("one-state automaton is unchanged")
    {
        Nfa loop(1, Alphabet::of("ab"), true);
        loop.set_all_initial();
        loop.set_all_accepting();
        loop.add_transition(0, 0, 0);
        CHECK(equivalent(mnfa_to_nfa(loop, 0), loop));
    }
    SECTION("infix-closed A1 at (4, 6)")
    {
        const auto w46 = gen_infix_closed(4, 6);
        CHECK(bounded_language(w46.a2, 16 / 4) == bounded_language(w46.a1, 16 / 4));
        CHECK_FALSE(bounded_difference(w46.a1, w46.a2, 16).has_value());
    }
    SECTION("a merge that changes the language is detected")
    {
        // 0 -a-> 1 (accepting), 1 -b-> 1; both initial. L = a b* + b*.
        Nfa m(2, ab, true);
        m.add_initial(0);
        m.add_initial(1);
        m.add_accepting(1);
        m.add_transition(0, 0, 1);
        m.add_transition(1, 1, 1);
        // Merging into 0 gives 0 a b-loops but loses λ.
        CHECK_THROWS_AS(mnfa_to_nfa(m, 0), ConstructionError);
    }
}

TEST_CASE("bounded language", "[bounded]")
{
    CHECK(bounded_language(empty_dfa(ab), 5).empty());
    const auto two = bounded_language(chain(2, ab), 3);
    CHECK(two == std::vector<Word>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const Nfa mandl = gen_mandl(4);
    CHECK(bounded_language(mandl, 4) == bounded_language(determinize(mandl), 4));
    CHECK(bounded_language(mandl, 6) == naive_language(mandl, 6));
}

TEST_CASE("random NFAs agree with their determinization", "[property]")
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const Nfa a = random_nfa(rng, n, 1 + static_cast<int>(rng() % 3), 0.3);
        const Dfa d = determinize(a);
        REQUIRE(equivalent(a, d));
        REQUIRE(bounded_language(a, n + 2) == bounded_language(d, n + 2));
        REQUIRE(bounded_language(a, n + 2) == naive_language(a, n + 2));
    }
}

TEST_CASE("text format round trip", "[text]")
{
    const Nfa mandl = gen_mandl(5);
    const std::string text = to_text(mandl);
    CHECK(to_text(parse_nfa(text)) == text);
    const Dfa d = determinize(mandl);
    const ParsedAutomaton p = parse_automaton(to_text(d));
    REQUIRE(p.dfa);
    CHECK(to_text(*p.dfa) == to_text(d));

    CHECK(to_text(chain(1, unary)) == "type: nfa\nstates: 2\nalphabet: a\ninitial: 0\naccepting: 1\n0 a -> 1\n");
    CHECK_THROWS_AS(parse_nfa("type: nfa\nstates: 2\nalphabet: a\ninitial: 0\naccepting: 1\n0 b -> 1\n"),
                    InputError);
    CHECK_THROWS_AS(parse_dfa("type: dfa\nstates: 2\nalphabet: a\ninitial: 0\naccepting: 1\n0 a -> 1\n"),
                    InputError);
    const Nfa two_initial = parse_nfa("type: nfa\nstates: 2\nalphabet: a\ninitial: 0 1\naccepting: 1\n");
    CHECK(two_initial.is_mnfa());
}
