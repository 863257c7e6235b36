#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "magic/automata.hpp"
#include "magic/family.hpp"

namespace magic {

enum class StructuralFilter { None, AllAccepting, AllInitialAccepting, NonReturning, NonExiting };

std::string_view filter_name(StructuralFilter f);
std::optional<StructuralFilter> parse_filter(std::string_view name);

// Exhaustive enumeration refuses spaces with more transition bits than this.
inline constexpr int kMaxTransitionBits = 20;

// Bit layout of an NFA code: transition bits first, indexed
// (state * sigma + symbol) * n + target, then one accepting bit per state.
// The initial state is fixed to 0 (every state for AllInitialAccepting, and
// AllAccepting fixes the accepting set), which loses no languages up to
// renaming of states.
struct EnumerationSpace {
    int n = 0;
    int sigma = 0;
    StructuralFilter filter = StructuralFilter::None;
    int transition_bits = 0;
    int accepting_bits = 0;

    std::uint64_t code_count() const { return std::uint64_t{1} << (transition_bits + accepting_bits); }
};

// Throws ResourceError when n*n*sigma exceeds kMaxTransitionBits.
EnumerationSpace enumeration_space(int n, int sigma, StructuralFilter filter);
Nfa decode_nfa(const EnumerationSpace& space, std::uint64_t code);

Alphabet standard_alphabet(int sigma);  // a, b, c, ...

bool is_connected(const Nfa& a);
bool passes_filter(const Nfa& a, StructuralFilter f);

// Visits every connected NFA that passes the filter, in increasing code order.
void for_each_nfa(int n, int sigma, StructuralFilter filter,
                  const std::function<void(std::uint64_t code, const Nfa& nfa)>& visit);
std::vector<Nfa> enumerate_nfas(int n, int sigma, StructuralFilter filter);

// Uniform random transitions with the given edge probability and accepting
// probability 1/2, then the filter's fixed parts. Not necessarily connected.
Nfa random_nfa(std::mt19937_64& rng, int n, int sigma, double edge_probability,
               StructuralFilter filter = StructuralFilter::None);
Dfa random_dfa(std::mt19937_64& rng, int n, int sigma);

// Letters that act as distinct, non-dead maps on the minimal DFA. Only these
// need free transitions in a search for a smallest NFA.
int effective_alphabet_size(const Dfa& lang);

// Exhaustive search is accepted while bound^2 * effective sigma <= 24.
bool min_nfa_size_feasible(int bound, int effective_sigma);

// Least s <= bound such that an s-state NFA accepts L(lang), or nullopt.
// Throws ResourceError when the search is infeasible.
std::optional<int> min_nfa_size_exact(const Dfa& lang, int bound);

enum class SearchMode { Exhaustive, Sampled };

struct SpectrumOptions {
    SearchMode mode = SearchMode::Exhaustive;
    std::uint64_t budget = 0;  // samples in sampled mode; ignored otherwise
    std::uint64_t seed = 0;
    unsigned workers = 1;
    StructuralFilter filter = StructuralFilter::None;
};

struct SpectrumStats {
    std::uint64_t visited = 0;      // codes or samples inspected
    std::uint64_t connected = 0;    // of those, connected and passing the filter
    std::uint64_t languages = 0;    // distinct languages among the connected ones
    std::uint64_t members = 0;      // distinct languages in the family
    std::uint64_t certified = 0;    // member languages certified n-state minimal
};

struct SpectrumWitness {
    Nfa nfa;
    std::uint64_t index = 0;  // code (exhaustive) or sample number (sampled)
};

struct SpectrumResult {
    Family family = Family::Finite;
    int n = 0;
    int sigma = 0;
    SearchMode mode = SearchMode::Exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::map<std::int64_t, SpectrumWitness> achieved;
    SpectrumStats stats;
};

SpectrumResult spectrum_search(Family family, int n, int sigma, const SpectrumOptions& options);

struct Theorem4Result {
    bool holds = true;
    std::uint64_t free_languages = 0;       // non-empty and prefix-, suffix- or infix-free
    std::uint64_t certified_minimal = 0;    // of those, certified n-state minimal
    std::optional<Nfa> counterexample;
};

// Binary alphabet, n <= 3.
Theorem4Result theorem4_check(int n, unsigned workers = 1);

}  // namespace magic
