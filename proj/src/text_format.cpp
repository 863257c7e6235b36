#include "magic/text_format.hpp"

#include <fstream>
#include <sstream>

#include "magic/error.hpp"

namespace magic {

namespace {

std::vector<std::string> split_ws(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) {
        out.push_back(tok);
    }
    return out;
}

std::string join_set(const StateSet& s)
{
    std::string out;
    s.for_each([&](State q) {
        out += ' ';
        out += std::to_string(q);
    });
    return out;
}

std::string header(const char* type, std::size_t states, const Alphabet& alphabet)
{
    std::string out = std::string("type: ") + type + "\nstates: " + std::to_string(states) + "\nalphabet:";
    for (const auto& s : alphabet.symbols()) {
        out += ' ';
        out += s;
    }
    out += '\n';
    return out;
}

std::size_t parse_index(const std::string& tok, std::size_t limit, std::size_t line_no)
{
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != tok.size() || tok.empty() || tok[0] == '-') {
        throw InputError("line " + std::to_string(line_no) + ": '" + tok + "' is not a state index");
    }
    if (limit != 0 && v >= limit) {
        throw InputError("line " + std::to_string(line_no) + ": state " + tok + " out of range");
    }
    return static_cast<std::size_t>(v);
}

}  // namespace

std::string to_text(const Nfa& a)
{
    std::string out = header("nfa", a.state_count(), a.alphabet());
    out += "initial:" + join_set(a.initial()) + '\n';
    out += "accepting:" + join_set(a.accepting()) + '\n';
    for (State q = 0; q < a.state_count(); ++q) {
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
            const StateSet& t = a.successors(q, s);
            if (!t.empty()) {
                out += std::to_string(q) + ' ' + a.alphabet().symbol(s) + " ->" + join_set(t) + '\n';
            }
        }
    }
    return out;
}

std::string to_text(const Dfa& d)
{
    d.validate();
    std::string out = header("dfa", d.state_count(), d.alphabet());
    out += "initial: " + std::to_string(d.initial()) + '\n';
    out += "accepting:";
    for (State q : d.accepting_states()) {
        out += ' ' + std::to_string(q);
    }
    out += '\n';
    for (State q = 0; q < d.state_count(); ++q) {
        for (Symbol s = 0; s < d.alphabet().size(); ++s) {
            out += std::to_string(q) + ' ' + d.alphabet().symbol(s) + " -> " + std::to_string(d.next(q, s)) + '\n';
        }
    }
    return out;
}

ParsedAutomaton parse_automaton(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::string>> lines;
    {
        std::size_t line_no = 0;
        std::size_t begin = 0;
        while (begin <= text.size()) {
            std::size_t end = text.find('\n', begin);
            if (end == std::string_view::npos) {
                end = text.size();
            }
            ++line_no;
            std::string line(text.substr(begin, end - begin));
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.find_first_not_of(" \t") != std::string::npos) {
                lines.emplace_back(line_no, line);
            }
            begin = end + 1;
        }
    }

    const char* keys[] = {"type", "states", "alphabet", "initial", "accepting"};
    std::string values[5];
    if (lines.size() < 5) {
        throw InputError("automaton text needs the five header lines");
    }
    for (int i = 0; i < 5; ++i) {
        const auto& [line_no, line] = lines[i];
        const std::string prefix = std::string(keys[i]) + ":";
        if (line.rfind(prefix, 0) != 0) {
            throw InputError("line " + std::to_string(line_no) + ": expected '" + prefix + "'");
        }
        values[i] = line.substr(prefix.size());
    }

    const auto type_tokens = split_ws(values[0]);
    if (type_tokens.size() != 1 || (type_tokens[0] != "nfa" && type_tokens[0] != "dfa")) {
        throw InputError("type must be 'nfa' or 'dfa'");
    }
    const bool is_dfa = type_tokens[0] == "dfa";
    const auto state_tokens = split_ws(values[1]);
    if (state_tokens.size() != 1) {
        throw InputError("states line needs exactly one count");
    }
    const std::size_t states = parse_index(state_tokens[0], 0, lines[1].first);
    if (states == 0) {
        throw InputError("state count must be positive");
    }
    const Alphabet alphabet(split_ws(values[2]));

    std::vector<State> initial;
    for (const auto& tok : split_ws(values[3])) {
        initial.push_back(static_cast<State>(parse_index(tok, states, lines[3].first)));
    }
    std::vector<State> accepting;
    for (const auto& tok : split_ws(values[4])) {
        accepting.push_back(static_cast<State>(parse_index(tok, states, lines[4].first)));
    }
    if (initial.empty()) {
        throw InputError("at least one initial state is required");
    }
    if (is_dfa && initial.size() != 1) {
        throw InputError("a DFA has exactly one initial state");
    }

    Nfa nfa(states, alphabet, initial.size() > 1);
    for (State q : initial) {
        nfa.add_initial(q);
    }
    for (State q : accepting) {
        nfa.add_accepting(q);
    }
    std::optional<Dfa> dfa;
    if (is_dfa) {
        dfa.emplace(states, alphabet, initial[0]);
        for (State q : accepting) {
            dfa->set_accepting(q);
        }
    }

    for (std::size_t i = 5; i < lines.size(); ++i) {
        const auto& [line_no, line] = lines[i];
        const auto tokens = split_ws(line);
        if (tokens.size() < 3 || tokens[2] != "->") {
            throw InputError("line " + std::to_string(line_no) + ": expected '<state> <symbol> -> <targets>'");
        }
        const auto from = static_cast<State>(parse_index(tokens[0], states, line_no));
        const auto sym = alphabet.index_of(tokens[1]);
        if (!sym) {
            throw InputError("line " + std::to_string(line_no) + ": unknown symbol '" + tokens[1] + "'");
        }
        if (is_dfa) {
            if (tokens.size() != 4) {
                throw InputError("line " + std::to_string(line_no) + ": a DFA transition has one target");
            }
            if (dfa->next(from, *sym) != kNoState) {
                throw InputError("line " + std::to_string(line_no) + ": duplicate DFA transition");
            }
        }
        for (std::size_t t = 3; t < tokens.size(); ++t) {
            const auto to = static_cast<State>(parse_index(tokens[t], states, line_no));
            nfa.add_transition(from, *sym, to);
            if (is_dfa) {
                dfa->set_transition(from, *sym, to);
            }
        }
    }
    if (dfa) {
        dfa->validate();
    }
    nfa.validate();
    return ParsedAutomaton{std::move(nfa), std::move(dfa)};
}

Nfa parse_nfa(std::string_view text) { return parse_automaton(text).nfa; }

Dfa parse_dfa(std::string_view text)
{
    auto parsed = parse_automaton(text);
    if (!parsed.dfa) {
        throw InputError("expected 'type: dfa'");
    }
    return std::move(*parsed.dfa);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << contents;
    if (!out) {
        throw InputError("failed writing '" + path + "'");
    }
}

}  // namespace magic
