#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "magic/brute_oracle.hpp"
#include "magic/error.hpp"
#include "magic/generators.hpp"
#include "magic/language_analysis.hpp"
#include "support.hpp"

using namespace magic;
using namespace magic::testing;

namespace {

const Alphabet ab = Alphabet::of("ab");

// Minimal DFA of a finite set of words.
Dfa words_dfa(const std::vector<std::string>& words)
{
    std::size_t states = 1;
    for (const auto& s : words) {
        states += s.size();
    }
    Nfa a(states, ab);
    a.set_initial(0);
    State next = 1;
    for (const auto& s : words) {
        State q = 0;
        for (char c : s) {
            a.add_transition(q, ab.require(std::string(1, c)), next);
            q = next++;
        }
        a.add_accepting(q);
    }
    return minimize(determinize(a));
}

// Words over {a,b} with length <= 6, checked straight from the definitions.
bool naive_member(const Dfa& d, Family f)
{
    const std::size_t len = 6;
    const auto words = all_words(2, len);
    const auto in = [&](const Word& x) { return accepts(d, x); };
    const auto cat = [](Word x, const Word& y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
    };
    for (const auto& x : words) {
        for (const auto& y : words) {
            if (x.size() + y.size() > len) {
                continue;
            }
            const Word xy = cat(x, y);
            switch (f) {
            case Family::PrefixFree:
                if (!y.empty() && in(x) && in(xy)) return false;
                break;
            case Family::SuffixFree:
                if (!x.empty() && in(y) && in(xy)) return false;
                break;
            case Family::PrefixClosed:
                if (in(xy) && !in(x)) return false;
                break;
            case Family::SuffixClosed:
                if (in(xy) && !in(y)) return false;
                break;
            case Family::Star:
                if (in(x) && in(y) && !in(xy)) return false;
                break;
            default:
                break;
            }
        }
    }
    if (f == Family::Star && !in(Word{})) {
        return false;
    }
    return true;
}

}  // namespace

TEST_CASE("family checks on small languages", "[family]")
{
    CHECK(is_in_family(words_dfa({"ab"}), Family::PrefixFree));
    CHECK_FALSE(is_in_family(words_dfa({"a", "ab"}), Family::PrefixFree));
    CHECK(is_in_family(words_dfa({"a", "ab"}), Family::SuffixFree));
    CHECK(is_in_family(words_dfa({"a", "ba"}), Family::PrefixFree));
    CHECK_FALSE(is_in_family(words_dfa({"a", "ba"}), Family::SuffixFree));
    CHECK(is_in_family(words_dfa({"ab", "ba"}), Family::InfixFree));
    CHECK_FALSE(is_in_family(words_dfa({"b", "aba"}), Family::InfixFree));
    CHECK(is_in_family(words_dfa({"", "a", "ab"}), Family::PrefixClosed));
    CHECK(is_in_family(words_dfa({"", "b", "ab"}), Family::SuffixClosed));
    CHECK(is_in_family(words_dfa({"", "a", "b", "ab"}), Family::InfixClosed));
    CHECK_FALSE(is_in_family(words_dfa({"", "a", "ab"}), Family::InfixClosed));
    CHECK(is_in_family(words_dfa({"ab", "b"}), Family::Finite));
    CHECK_FALSE(is_in_family(universal_dfa(ab), Family::Finite));
}

TEST_CASE("star check", "[family][star]")
{
    // (ab)*: states 0 (accepting), 1, sink 2.
    const Dfa ab_star = table_dfa(ab, {{1, 1, 2}, {0, 2, 0}, {0, 2, 2}});
    CHECK(is_in_family(ab_star, Family::Star));
    // a*b*: ba is in L.L but not in L.
    const Dfa a_b = table_dfa(ab, {{1, 0, 1}, {1, 2, 1}, {0, 2, 2}});
    const FamilyVerdict v = check_family(a_b, Family::Star);
    CHECK_FALSE(v.member);
    REQUIRE(v.witness);
    CHECK(accepts(product(a_b, a_b, ProductMode::Intersection), *v.witness) == false);
    const Dfa aa_star = table_dfa(Alphabet::of("a"), {{1, 1}, {0, 0}});
    CHECK(is_in_family(aa_star, Family::Star));
}

TEST_CASE("violations come with evidence words", "[family]")
{
    const FamilyVerdict pf = check_family(words_dfa({"a", "ab"}), Family::PrefixFree);
    REQUIRE(pf.witness);
    CHECK(format_word(ab, *pf.witness) == "a b");

    const FamilyVerdict pc = check_family(words_dfa({"ab"}), Family::PrefixClosed);
    REQUIRE(pc.witness);
    CHECK(accepts(words_dfa({"ab"}), *pc.witness));
}

TEST_CASE("infix-closed witness passes its family check", "[family]")
{
    const auto w = gen_infix_closed(4, 6);
    const Dfa d = minimize(determinize(w.a2));
    CHECK(is_in_family(d, Family::InfixClosed));
    CHECK(is_in_family(d, Family::PrefixClosed));
    CHECK(is_in_family(d, Family::SuffixClosed));
    CHECK(structural_all_accepting(w.a1));
    CHECK(structural_all_initial_accepting(w.a1));
    CHECK(structural_all_accepting(w.a2));
    CHECK_FALSE(structural_all_initial_accepting(w.a2));
    CHECK_FALSE(structural_all_accepting(chain(2, ab)));
    CHECK_FALSE(structural_all_initial_accepting(chain(2, ab)));
}

TEST_CASE("checkers agree with the definitions on random DFAs", "[family][property]")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const Dfa d = minimize(random_dfa(rng, 1 + static_cast<int>(rng() % 5), 2));
        for (Family f : {Family::PrefixFree, Family::SuffixFree, Family::PrefixClosed, Family::SuffixClosed,
                         Family::Star}) {
            // The bounded check can only miss violations, never invent them.
            if (is_in_family(d, f)) {
                REQUIRE(naive_member(d, f));
            }
        }
        const bool inf = is_in_family(d, Family::InfixFree);
        const bool inc = is_in_family(d, Family::InfixClosed);
        if (inf) {
            REQUIRE(is_in_family(d, Family::PrefixFree));
            REQUIRE(is_in_family(d, Family::SuffixFree));
        }
        if (inc) {
            REQUIRE(is_in_family(d, Family::PrefixClosed));
            REQUIRE(is_in_family(d, Family::SuffixClosed));
        }
        if (is_in_family(d, Family::Finite)) {
            REQUIRE(is_in_family(d, Family::StarFree));
        }
    }
}

TEST_CASE("bounded definitions find every violation on tiny DFAs", "[family][property]")
{
    // With at most three states a violation has a witness of length <= 6.
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const Dfa d = minimize(random_dfa(rng, 1 + static_cast<int>(rng() % 3), 2));
        for (Family f : {Family::PrefixFree, Family::SuffixFree, Family::PrefixClosed, Family::SuffixClosed}) {
            REQUIRE(is_in_family(d, f) == naive_member(d, f));
        }
    }
}

TEST_CASE("structural characterizations hold empirically", "[family][property]")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const Nfa all_acc = random_nfa(rng, n, 2, 0.4, StructuralFilter::AllAccepting);
        REQUIRE(is_in_family(determinize(all_acc), Family::PrefixClosed));
        const Nfa all_init = random_nfa(rng, n, 2, 0.4, StructuralFilter::AllInitialAccepting);
        REQUIRE(is_in_family(determinize(all_init), Family::InfixClosed));
    }
}

TEST_CASE("aperiodicity", "[aperiodic]")
{
    CHECK(is_aperiodic(universal_dfa(ab)));
    const Dfa aa_star = table_dfa(Alphabet::of("a"), {{1, 1}, {0, 0}});
    CHECK_FALSE(is_aperiodic(aa_star));
    CHECK(is_aperiodic(minimize(determinize(gen_mandl(6)))));
    CHECK_THROWS_AS(is_aperiodic(minimize(determinize(gen_jjs(8, 200))), 10), ResourceError);

    SECTION("finite languages are aperiodic")
    {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 1000; ++i) {
            // Random acyclic NFA: edges only go forward.
            const int n = 1 + static_cast<int>(rng() % 6);
            Nfa a(static_cast<std::size_t>(n), ab);
            a.set_initial(0);
            for (int q = 0; q < n; ++q) {
                if (rng() % 2 == 0) {
                    a.add_accepting(static_cast<State>(q));
                }
                for (int t = q + 1; t < n; ++t) {
                    for (Symbol s = 0; s < 2; ++s) {
                        if (rng() % 3 == 0) {
                            a.add_transition(static_cast<State>(q), s, static_cast<State>(t));
                        }
                    }
                }
            }
            const Dfa d = minimize(determinize(a));
            REQUIRE(is_in_family(d, Family::Finite));
            REQUIRE(is_aperiodic(d));
        }
    }
    SECTION("agrees with the cycle finder")
    {
        std::mt19937_64 rng(8);
        for (int i = 0; i < 300; ++i) {
            const Nfa a = random_nfa(rng, 1 + static_cast<int>(rng() % 4), 2, 0.35);
            const Dfa d = determinize(a);
            REQUIRE(is_aperiodic(minimize(d)) == find_permutation_cycles(d).empty());
        }
    }
}

TEST_CASE("permutation cycles have incomparable labels", "[cycles]")
{
    SECTION("(aa)* gives one 2-cycle")
    {
        Nfa a(2, Alphabet::of("a"));
        a.set_initial(0);
        a.add_accepting(0);
        a.add_transition(0, 0, 1);
        a.add_transition(1, 0, 0);
        const auto cycles = find_permutation_cycles(determinize(a));
        REQUIRE(cycles.size() == 1);
        CHECK(cycles[0].word == Word{0});
        CHECK(cycles[0].labels[0].to_string() == "{0}");
        CHECK(cycles[0].labels[1].to_string() == "{1}");
        CHECK(check_lemma1(cycles[0]));
    }
    SECTION("aperiodic input has none")
    {
        CHECK(find_permutation_cycles(determinize(gen_mandl(5))).empty());
    }
    SECTION("direct inclusion fails")
    {
        PermutationCycle c{Word{0}, {0, 1}, {StateSet(3, {0}), StateSet(3, {0, 1})}};
        CHECK_FALSE(check_lemma1(c));
        PermutationCycle disjoint{Word{0}, {0, 1}, {StateSet(3, {0}), StateSet(3, {1, 2})}};
        CHECK(check_lemma1(disjoint));
        PermutationCycle bare{Word{0}, {0, 1}, {}};
        CHECK_THROWS_AS(check_lemma1(bare), InputError);
    }
    SECTION("random NFAs")
    {
        std::mt19937_64 rng(12);
        for (int i = 0; i < 300; ++i) {
            const Nfa a = random_nfa(rng, 2 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 3), 0.4);
            for (const auto& c : explore_permutation_cycles(determinize(a), 20000).cycles) {
                REQUIRE(check_lemma1(c));
            }
        }
    }
    SECTION("cycle invariants")
    {
        const Dfa d = determinize(gen_jjs(4, 9));
        const CycleSearch s = explore_permutation_cycles(d, 5000);
        const Dfa merged = merge_equivalent_states(d);
        for (const auto& c : s.cycles) {
            REQUIRE(c.states.size() >= 2);
            for (std::size_t i = 0; i < c.states.size(); ++i) {
                State q = c.states[i];
                for (Symbol sym : c.word) {
                    q = merged.next(q, sym);
                }
                REQUIRE(q == c.states[(i + 1) % c.states.size()]);
            }
        }
    }
}

TEST_CASE("fooling sets", "[fooling]")
{
    const Dfa two = minimize(determinize(chain(2, ab)));
    CHECK(verify_fooling_set(two, FoolingSet{{{Word{}, Word{0, 1}}}}).bound == 1);

    const auto w = gen_infix_closed(4, 6);
    const Alphabet& sigma = w.a2.alphabet();
    const Dfa lang = minimize(determinize(w.a2));
    const FoolingSet expected = parse_fooling_set(sigma, "λ|$ c\n$|c\n$ c|λ\n$ d|c c\n");
    CHECK(verify_fooling_set(lang, expected).bound == 4);
    CHECK(format_fooling_set(sigma, infix_closed_fooling_set(4, 6)) == format_fooling_set(sigma, expected));

    FoolingSet dup{{expected.pairs[0], expected.pairs[0]}};
    const FoolingResult bad = verify_fooling_set(lang, dup);
    CHECK(bad.bound == 0);
    REQUIRE(bad.counterexample);
    CHECK(*bad.counterexample == std::pair<std::size_t, std::size_t>{0, 1});

    const auto outside = shortest_accepted(complement(lang));
    REQUIRE(outside);
    FoolingSet rejected{{{Word{}, *outside}}};
    CHECK(verify_fooling_set(lang, rejected).counterexample == std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("fooling bounds never exceed the exact NFA size", "[fooling][property]")
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
        const Nfa a = random_nfa(rng, 1 + static_cast<int>(rng() % 3), 2, 0.4);
        const Dfa d = minimize(determinize(a));
        const auto exact = min_nfa_size_exact(d, 3);
        REQUIRE(exact);
        // Candidate pairs: shortest words reaching each DFA state and leaving it.
        const auto words = all_words(2, 3);
        FoolingSet s;
        for (const auto& x : words) {
            for (const auto& y : words) {
                if (accepts(d, [&] {
                        Word xy = x;
                        xy.insert(xy.end(), y.begin(), y.end());
                        return xy;
                    }())) {
                    FoolingSet trial = s;
                    trial.pairs.emplace_back(x, y);
                    if (verify_fooling_set(d, trial).bound != 0) {
                        s = std::move(trial);
                    }
                }
            }
        }
        REQUIRE(verify_fooling_set(d, s).bound <= static_cast<std::size_t>(*exact));
    }
}

TEST_CASE("suffix automaton and concatenation", "[family]")
{
    const Dfa d = words_dfa({"ab", "b"});
    const auto suff = suffix_automaton(d);
    REQUIRE(suff);
    CHECK(bounded_language(*suff, 3) == std::vector<Word>{{}, {1}, {0, 1}});
    CHECK_FALSE(suffix_automaton(empty_dfa(ab)).has_value());

    const Nfa cat = concatenate(chain(1, ab), chain(2, ab));
    CHECK(bounded_language(cat, 4) == bounded_language(chain(3, ab), 4));
}
