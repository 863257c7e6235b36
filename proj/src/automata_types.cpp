#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "magic/automata.hpp"
#include "magic/error.hpp"

namespace magic {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols))
{
    if (symbols_.empty()) {
        throw InputError("alphabet must be non-empty");
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const std::string& s = symbols_[i];
        if (s.empty() || s == "λ" || s == "->" || s.find('|') != std::string::npos ||
            std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; })) {
            throw InputError("invalid alphabet symbol '" + s + "'");
        }
        if (!index_.emplace(s, static_cast<Symbol>(i)).second) {
            throw InputError("duplicate alphabet symbol '" + s + "'");
        }
    }
}

Alphabet Alphabet::of(std::string_view chars)
{
    std::vector<std::string> symbols;
    for (char c : chars) {
        symbols.emplace_back(1, c);
    }
    return Alphabet(std::move(symbols));
}

std::optional<Symbol> Alphabet::index_of(std::string_view name) const
{
    const auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Symbol Alphabet::require(std::string_view name) const
{
    if (const auto s = index_of(name)) {
        return *s;
    }
    throw InputError("unknown symbol '" + std::string(name) + "'");
}

std::string format_word(const Alphabet& alphabet, const Word& w)
{
    if (w.empty()) {
        return "λ";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) {
            out += ' ';
        }
        if (w[i] >= alphabet.size()) {
            throw InputError("symbol index " + std::to_string(w[i]) + " out of range");
        }
        out += alphabet.symbol(w[i]);
    }
    return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) {
        tokens.push_back(tok);
    }
    if (tokens.empty() || (tokens.size() == 1 && tokens[0] == "λ")) {
        return {};
    }
    Word w;
    if (tokens.size() == 1 && !alphabet.index_of(tokens[0])) {
        // Unseparated text over single-character symbols.
        for (char c : tokens[0]) {
            w.push_back(alphabet.require(std::string(1, c)));
        }
        return w;
    }
    for (const auto& tok : tokens) {
        w.push_back(alphabet.require(tok));
    }
    return w;
}

// ---------------------------------------------------------------------------

Nfa::Nfa(std::size_t state_count, Alphabet alphabet, bool mnfa)
    : state_count_(state_count),
      alphabet_(std::move(alphabet)),
      mnfa_(mnfa),
      initial_(state_count),
      accepting_(state_count),
      transitions_(state_count * alphabet_.size(), StateSet(state_count))
{
    if (state_count == 0) {
        throw InputError("an NFA needs at least one state");
    }
    if (alphabet_.size() == 0) {
        throw InputError("an NFA needs a non-empty alphabet");
    }
}

void Nfa::add_initial(State q) { initial_.insert(q); }

void Nfa::set_initial(State q)
{
    initial_.clear();
    initial_.insert(q);
}

void Nfa::add_accepting(State q) { accepting_.insert(q); }

void Nfa::set_all_accepting() { accepting_ = StateSet::full(state_count_); }

void Nfa::set_all_initial()
{
    initial_ = StateSet::full(state_count_);
    mnfa_ = mnfa_ || state_count_ > 1;
}

void Nfa::add_transition(State from, Symbol a, State to)
{
    if (from >= state_count_ || a >= alphabet_.size()) {
        throw InputError("transition source or symbol out of range");
    }
    transitions_[static_cast<std::size_t>(from) * alphabet_.size() + a].insert(to);
}

void Nfa::add_transitions(State from, Symbol a, const StateSet& to)
{
    if (from >= state_count_ || a >= alphabet_.size()) {
        throw InputError("transition source or symbol out of range");
    }
    transitions_[static_cast<std::size_t>(from) * alphabet_.size() + a] |= to;
}

void Nfa::clear_transitions(State from)
{
    for (Symbol a = 0; a < alphabet_.size(); ++a) {
        transitions_[static_cast<std::size_t>(from) * alphabet_.size() + a].clear();
    }
}

std::size_t Nfa::transition_count() const
{
    std::size_t n = 0;
    for (const auto& t : transitions_) {
        n += t.size();
    }
    return n;
}

void Nfa::validate() const
{
    if (state_count_ == 0 || alphabet_.size() == 0) {
        throw InputError("NFA has no states or an empty alphabet");
    }
    if (initial_.empty()) {
        throw InputError("NFA has no initial state");
    }
    if (initial_.size() > 1 && !mnfa_) {
        throw InputError("several initial states require the MNFA flag");
    }
}

// ---------------------------------------------------------------------------

Dfa::Dfa(std::size_t state_count, Alphabet alphabet, State initial)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      accepting_(state_count, 0),
      table_(state_count * alphabet_.size(), kNoState)
{
    if (state_count == 0) {
        throw InputError("a DFA needs at least one state");
    }
    if (alphabet_.size() == 0) {
        throw InputError("a DFA needs a non-empty alphabet");
    }
    if (initial >= state_count) {
        throw InputError("DFA initial state out of range");
    }
}

void Dfa::set_initial(State q)
{
    if (q >= state_count()) {
        throw InputError("DFA initial state out of range");
    }
    initial_ = q;
}

void Dfa::set_accepting(State q, bool accepting) { accepting_.at(q) = accepting ? 1 : 0; }

std::vector<State> Dfa::accepting_states() const
{
    std::vector<State> out;
    for (State q = 0; q < state_count(); ++q) {
        if (accepting_[q] != 0) {
            out.push_back(q);
        }
    }
    return out;
}

void Dfa::set_transition(State from, Symbol a, State to)
{
    if (from >= state_count() || to >= state_count() || a >= alphabet_.size()) {
        throw InputError("DFA transition out of range");
    }
    table_[static_cast<std::size_t>(from) * alphabet_.size() + a] = to;
}

void Dfa::set_labels(std::vector<StateSet> labels)
{
    if (labels.size() != state_count()) {
        throw InputError("subset label count does not match the DFA state count");
    }
    labels_ = std::move(labels);
}

void Dfa::validate() const
{
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (table_[i] == kNoState) {
            throw InputError("DFA transition table is not total at state " +
                             std::to_string(i / alphabet_.size()) + ", symbol '" +
                             alphabet_.symbol(static_cast<Symbol>(i % alphabet_.size())) + "'");
        }
    }
}

std::size_t subset_cap_from_env()
{
    const char* raw = std::getenv("MAGIC_MAX_SUBSETS");
    if (raw == nullptr || *raw == '\0') {
        return kDefaultMaxSubsets;
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0) {
        return kDefaultMaxSubsets;
    }
    return static_cast<std::size_t>(v);
}

Dfa universal_dfa(const Alphabet& alphabet)
{
    Dfa d(1, alphabet);
    d.set_accepting(0);
    for (Symbol a = 0; a < alphabet.size(); ++a) {
        d.set_transition(0, a, 0);
    }
    return d;
}

Dfa empty_dfa(const Alphabet& alphabet)
{
    Dfa d(1, alphabet);
    for (Symbol a = 0; a < alphabet.size(); ++a) {
        d.set_transition(0, a, 0);
    }
    return d;
}

}  // namespace magic
