#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "magic/automata.hpp"
#include "magic/family.hpp"
#include "magic/fooling_set.hpp"

namespace magic {

inline constexpr std::size_t kDefaultMaxMonoid = 1'000'000;

struct FamilyVerdict {
    bool member = false;
    // For a non-member, a word exposing the violation when one is cheap to
    // extract (e.g. xy in L with x not in L for PrefixClosed).
    std::optional<Word> witness;
    std::string explanation;
};

// The DFA is minimized first, so any complete DFA is accepted.
FamilyVerdict check_family(const Dfa& d, Family f, std::size_t max_monoid = kDefaultMaxMonoid);
bool is_in_family(const Dfa& d, Family f, std::size_t max_monoid = kDefaultMaxMonoid);

// No element of the transition monoid has a cycle of length >= 2. Throws
// ResourceError when the monoid exceeds max_monoid elements before a
// non-trivial cycle is seen.
bool is_aperiodic(const Dfa& d, std::size_t max_monoid = kDefaultMaxMonoid);

struct PermutationCycle {
    Word word;
    std::vector<State> states;     // P_0 .. P_{len-1}, P_{i+1} = delta(P_i, word)
    std::vector<StateSet> labels;  // subset label of each state; may be empty
};

struct CycleSearch {
    std::vector<PermutationCycle> cycles;
    std::size_t monoid_elements = 0;
    bool truncated = false;  // stopped at max_monoid before closing the monoid
};

// Merges Nerode-equivalent states (keeping the first-reached label), then
// walks the transition monoid breadth-first. Each element contributes one
// cycle per non-trivial orbit. Throws ResourceError past max_monoid.
std::vector<PermutationCycle> find_permutation_cycles(const Dfa& d, std::size_t max_monoid = kDefaultMaxMonoid);

// Same walk, but stops quietly at max_monoid elements.
CycleSearch explore_permutation_cycles(const Dfa& d, std::size_t max_monoid);

// No two distinct members of the cycle have labels related by inclusion.
bool check_lemma1(const PermutationCycle& c);

bool structural_all_accepting(const Nfa& a);
bool structural_all_initial_accepting(const Nfa& a);
// The initial state has no incoming transition.
bool structural_non_returning(const Nfa& a);
// Accepting states have no outgoing transition.
bool structural_non_exiting(const Nfa& a);

// Concatenation without epsilon moves; the result may be an MNFA.
Nfa concatenate(const Nfa& x, const Nfa& y);
// MNFA for Suff(L(d)): the useful states of the minimal DFA, all initial.
// Returns nullopt when L(d) is empty.
std::optional<Nfa> suffix_automaton(const Dfa& d);

}  // namespace magic
