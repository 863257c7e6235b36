#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "magic/automata.hpp"

namespace magic {

// Line-based automaton format:
//
//   type: nfa|dfa
//   states: <count>
//   alphabet: <space-separated symbols>
//   initial: <space-separated indices>
//   accepting: <space-separated indices>
//   <state> <symbol> -> <space-separated target indices>
//
// Transition lines are emitted in (state, symbol) order. NFAs omit empty
// images; DFAs list every pair. Blank lines are skipped when parsing. There
// is no comment syntax because '#' is a legal symbol.

std::string to_text(const Nfa& a);
std::string to_text(const Dfa& d);

struct ParsedAutomaton {
    Nfa nfa;                 // always populated; a DFA is viewed as an NFA
    std::optional<Dfa> dfa;  // populated for "type: dfa"
};

ParsedAutomaton parse_automaton(std::string_view text);
Nfa parse_nfa(std::string_view text);
Dfa parse_dfa(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace magic
