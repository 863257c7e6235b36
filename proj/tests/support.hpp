#pragma once

// Small hand-built automata and oracles that avoid the library's
// determinize/minimize code paths.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "magic/automata.hpp"

namespace magic::testing {

// Chain 0 -> 1 -> ... -> len on every symbol, accepting len.
inline Nfa chain(int len, const Alphabet& alphabet)
{
    Nfa a(static_cast<std::size_t>(len) + 1, alphabet);
    a.set_initial(0);
    a.add_accepting(static_cast<State>(len));
    for (int q = 0; q < len; ++q) {
        for (Symbol s = 0; s < alphabet.size(); ++s) {
            a.add_transition(static_cast<State>(q), s, static_cast<State>(q + 1));
        }
    }
    return a;
}

// Dfa from rows "accepting? next(a) next(b) ...".
inline Dfa table_dfa(const Alphabet& alphabet, const std::vector<std::vector<int>>& rows, State initial = 0)
{
    Dfa d(rows.size(), alphabet, initial);
    for (std::size_t q = 0; q < rows.size(); ++q) {
        d.set_accepting(static_cast<State>(q), rows[q][0] != 0);
        for (Symbol s = 0; s < alphabet.size(); ++s) {
            d.set_transition(static_cast<State>(q), s, static_cast<State>(rows[q][s + 1]));
        }
    }
    return d;
}

// All words of length <= max_len in length-lexicographic order.
inline std::vector<Word> all_words(std::size_t sigma, std::size_t max_len)
{
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (Symbol s = 0; s < sigma; ++s) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

// Direct set simulation over std::set, independent of StateSet.
inline std::set<State> run(const Nfa& a, const std::set<State>& from, const Word& w)
{
    std::set<State> cur = from;
    for (Symbol s : w) {
        std::set<State> next;
        for (State q : cur) {
            for (State t : a.successors(q, s).members()) {
                next.insert(t);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

inline bool naive_accepts(const Nfa& a, const Word& w)
{
    const auto init = a.initial().members();
    for (State q : run(a, std::set<State>(init.begin(), init.end()), w)) {
        if (a.accepting().contains(q)) {
            return true;
        }
    }
    return false;
}

inline std::vector<Word> naive_language(const Nfa& a, std::size_t max_len)
{
    std::vector<Word> out;
    for (const auto& w : all_words(a.alphabet().size(), max_len)) {
        if (naive_accepts(a, w)) {
            out.push_back(w);
        }
    }
    return out;
}

// Number of Myhill-Nerode classes among the subsets reachable by words of
// length <= prefix_len, distinguished by suffixes of length <= suffix_len.
// Equals the minimal DFA size once both lengths reach the DFA size.
inline std::size_t residual_count(const Nfa& a, std::size_t prefix_len, std::size_t suffix_len)
{
    const auto init = a.initial().members();
    std::set<std::set<State>> subsets;
    for (const auto& w : all_words(a.alphabet().size(), prefix_len)) {
        subsets.insert(run(a, std::set<State>(init.begin(), init.end()), w));
    }
    const auto suffixes = all_words(a.alphabet().size(), suffix_len);
    std::set<std::vector<bool>> signatures;
    for (const auto& p : subsets) {
        std::vector<bool> sig;
        sig.reserve(suffixes.size());
        for (const auto& y : suffixes) {
            bool hit = false;
            for (State q : run(a, p, y)) {
                hit = hit || a.accepting().contains(q);
            }
            sig.push_back(hit);
        }
        signatures.insert(std::move(sig));
    }
    return signatures.size();
}

inline Word w(const Alphabet& alphabet, const std::string& text) { return parse_word(alphabet, text); }

}  // namespace magic::testing
