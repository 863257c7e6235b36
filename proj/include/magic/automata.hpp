#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "magic/state_set.hpp"

namespace magic {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

inline constexpr State kNoState = 0xFFFFFFFFU;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    // One symbol per character: Alphabet::of("ab") is {a, b}.
    static Alphabet of(std::string_view chars);

    std::size_t size() const { return symbols_.size(); }
    const std::string& symbol(Symbol s) const { return symbols_.at(s); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    std::optional<Symbol> index_of(std::string_view name) const;
    Symbol require(std::string_view name) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }
    friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, Symbol> index_;
};

// Space-separated symbol names; the empty word renders as "λ".
std::string format_word(const Alphabet& alphabet, const Word& w);
// Inverse of format_word. Also accepts unseparated text when every symbol is a
// single character ("aab"), and "" for the empty word.
Word parse_word(const Alphabet& alphabet, std::string_view text);

// Partial NFA. Missing transitions are empty images. More than one initial
// state is allowed only when the automaton is flagged as an MNFA.
class Nfa {
public:
    Nfa() = default;
    Nfa(std::size_t state_count, Alphabet alphabet, bool mnfa = false);

    std::size_t state_count() const { return state_count_; }
    const Alphabet& alphabet() const { return alphabet_; }
    bool is_mnfa() const { return mnfa_; }
    void set_mnfa(bool mnfa) { mnfa_ = mnfa; }

    const StateSet& initial() const { return initial_; }
    const StateSet& accepting() const { return accepting_; }
    void add_initial(State q);
    void set_initial(State q);
    void add_accepting(State q);
    void set_all_accepting();
    void set_all_initial();

    const StateSet& successors(State q, Symbol a) const
    {
        return transitions_[static_cast<std::size_t>(q) * alphabet_.size() + a];
    }
    void add_transition(State from, Symbol a, State to);
    void add_transitions(State from, Symbol a, const StateSet& to);
    void clear_transitions(State from);
    std::size_t transition_count() const;

    // Throws InputError when an invariant does not hold.
    void validate() const;

private:
    std::size_t state_count_ = 0;
    Alphabet alphabet_;
    bool mnfa_ = false;
    StateSet initial_;
    StateSet accepting_;
    std::vector<StateSet> transitions_;
};

// Complete DFA. Determinization attaches the subset label of every state.
class Dfa {
public:
    Dfa() = default;
    Dfa(std::size_t state_count, Alphabet alphabet, State initial = 0);

    std::size_t state_count() const { return accepting_.size(); }
    const Alphabet& alphabet() const { return alphabet_; }
    State initial() const { return initial_; }
    void set_initial(State q);

    bool is_accepting(State q) const { return accepting_.at(q) != 0; }
    void set_accepting(State q, bool accepting = true);
    std::vector<State> accepting_states() const;

    State next(State q, Symbol a) const
    {
        return table_[static_cast<std::size_t>(q) * alphabet_.size() + a];
    }
    void set_transition(State from, Symbol a, State to);
    const std::vector<State>& table() const { return table_; }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<StateSet>& labels() const { return labels_; }
    const StateSet& label(State q) const { return labels_.at(q); }
    void set_labels(std::vector<StateSet> labels);
    void clear_labels() { labels_.clear(); }

    // Throws InputError on a missing transition or an out-of-range index.
    void validate() const;

private:
    Alphabet alphabet_;
    State initial_ = 0;
    std::vector<std::uint8_t> accepting_;
    std::vector<State> table_;
    std::vector<StateSet> labels_;
};

inline constexpr std::size_t kDefaultMaxSubsets = 1'000'000;

// MAGIC_MAX_SUBSETS when set to a positive integer, kDefaultMaxSubsets otherwise.
std::size_t subset_cap_from_env();

struct DeterminizeOptions {
    std::size_t max_states = subset_cap_from_env();
    bool keep_labels = true;
};

bool accepts(const Nfa& a, const Word& w);
bool accepts(const Dfa& d, const Word& w);

// Reachable powerset automaton, states numbered breadth-first with symbols in
// alphabet order. Throws ResourceError past options.max_states.
Dfa determinize(const Nfa& a, const DeterminizeOptions& options = {});

// Hopcroft refinement over the reachable part, then canonical BFS numbering.
// The result carries no subset labels.
Dfa minimize(const Dfa& d);

// Double reversal. Same canonical numbering as minimize.
Dfa minimize_brzozowski(const Dfa& d);

// Nerode class of every reachable state (kNoState for unreachable states).
// Class ids are dense and ordered by the smallest member index.
std::vector<State> nerode_classes(const Dfa& d);

// Quotient by Nerode equivalence that keeps subset labels: each merged state
// is labelled by its lowest-numbered member, which for a determinized input is
// the member reached first in breadth-first order.
Dfa merge_equivalent_states(const Dfa& d);

std::size_t min_dfa_size(const Nfa& a);
std::size_t min_dfa_size(const Dfa& d);

enum class ProductMode { Intersection, Union, Difference, SymmetricDifference };

Dfa product(const Dfa& a, const Dfa& b, ProductMode mode);
Dfa complement(const Dfa& d);

bool is_empty(const Dfa& d);
// Shortest accepted word (length-lexicographic first), if any.
std::optional<Word> shortest_accepted(const Dfa& d);

bool equivalent(const Dfa& x, const Dfa& y);
bool equivalent(const Nfa& x, const Nfa& y);
bool equivalent(const Nfa& x, const Dfa& y);
bool equivalent(const Dfa& x, const Nfa& y);

Nfa to_nfa(const Dfa& d);
Nfa reverse(const Nfa& a);

// Shortest word of length <= max_len on which the two automata disagree.
std::optional<Word> bounded_difference(const Nfa& x, const Nfa& y, std::size_t max_len);

// Single-initial NFA whose merged_state carries the union of all outgoing
// transitions. Compares languages up to length state_count^2 and throws
// ConstructionError on a mismatch.
Nfa mnfa_to_nfa(const Nfa& a, State merged_state);

std::vector<Word> bounded_language(const Nfa& a, std::size_t max_len);
std::vector<Word> bounded_language(const Dfa& d, std::size_t max_len);

// Byte string identifying a canonically numbered DFA (as returned by minimize).
// Two minimal DFAs over the same alphabet accept the same language iff their
// encodings are equal.
std::string canonical_encoding(const Dfa& minimal);

Dfa universal_dfa(const Alphabet& alphabet);
Dfa empty_dfa(const Alphabet& alphabet);

}  // namespace magic
