#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "magic/automata.hpp"
#include "magic/decomposition.hpp"
#include "magic/family.hpp"
#include "magic/fooling_set.hpp"

namespace magic {

using WitnessParameters = std::variant<std::monostate, AlphaDecomposition, QuadraticParams, ExponentialParams>;

struct WitnessSpec {
    WitnessFamily family;
    int n = 0;
    std::int64_t alpha = 0;
    std::string generator;
    WitnessParameters parameters;
};

struct Witness {
    WitnessSpec spec;
    Nfa nfa;
    std::optional<Nfa> mnfa;            // A1 for the infix-closed transform
    std::optional<FoolingSet> fooling;  // lower-bound certificate when known
};

// JJS witness over {a,b,c,d}: states 0..n-1, core 0..k, tail k+1..n-1 walked
// on a. Initial state n-1, or 1 when k = n-1 leaves no tail. Accepting {k}.
Nfa gen_jjs(int n, std::int64_t alpha);
Nfa jjs_automaton(const AlphaDecomposition& d);

// alpha = n: unary counter accepting a^{jn}. alpha = 2^n: binary witness with
// a rotating the states and b sending every q >= 1 to {0, q}.
Nfa gen_boundary(int n, std::int64_t alpha);
FoolingSet unary_counter_fooling_set(int n);

struct InfixClosedWitness {
    Nfa a1;  // MNFA, all states initial and accepting
    Nfa a2;  // a1 with every state's transitions merged into state n-1
    int k = 0;
};

// Alphabet {a,b,c,d,#,$}. (1, 1) gives the one-state automaton for all words.
InfixClosedWitness gen_infix_closed(int n, std::int64_t alpha);
// S1 u S2 u S3 over the alphabet of gen_infix_closed (requires n < alpha).
FoolingSet infix_closed_fooling_set(int n, std::int64_t alpha);

Nfa gen_suffix_closed(int n, std::int64_t alpha);

struct CatalogEntry {
    int n = 0;
    std::string language;
    Nfa nfa;
    FoolingSet fooling;
};

// Parsed once from the compiled-in catalog text.
const std::vector<CatalogEntry>& suffix_closed_catalog();
int suffix_closed_catalog_max_n();
std::vector<CatalogEntry> parse_catalog(std::string_view text);
std::string_view suffix_closed_catalog_text();

// Finite binary witnesses; states 1..n of the constructions map to 0..n-1.
Nfa gen_finite_quadratic(int n, std::int64_t alpha);
Nfa gen_mandl(int n);
std::int64_t mandl_dfa_size(int n);
Nfa gen_finite_exponential(int n, std::int64_t alpha);

// Generator names: "boundary", "jjs", "infix-closed", "suffix-closed-catalog",
// "finite-quadratic", "finite-exponential".
std::vector<std::string> generators_for(const WitnessFamily& family, int n, std::int64_t alpha);

// Runs the named generator (or the first applicable one when empty) and
// attaches the spec and any known fooling set. Throws RangeError when the
// bounds table rejects (family, n, alpha).
Witness generate(const WitnessFamily& family, int n, std::int64_t alpha, const std::string& generator = {});

}  // namespace magic
