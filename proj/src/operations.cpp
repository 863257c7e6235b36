#include <algorithm>
#include <unordered_map>

#include "magic/automata.hpp"
#include "magic/error.hpp"

namespace magic {

namespace {

void require_same_alphabet(const Alphabet& a, const Alphabet& b, const char* what)
{
    if (a != b) {
        throw InputError(std::string(what) + ": alphabets differ");
    }
}

bool combine(bool x, bool y, ProductMode mode)
{
    switch (mode) {
    case ProductMode::Intersection:
        return x && y;
    case ProductMode::Union:
        return x || y;
    case ProductMode::Difference:
        return x && !y;
    case ProductMode::SymmetricDifference:
        return x != y;
    }
    return false;
}

// Marks states from which an accepting state is reachable.
std::vector<std::uint8_t> co_reachable(const Nfa& a)
{
    const std::size_t n = a.state_count();
    std::vector<std::vector<State>> back(n);
    for (State q = 0; q < n; ++q) {
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
            a.successors(q, s).for_each([&](State t) { back[t].push_back(q); });
        }
    }
    std::vector<std::uint8_t> mark(n, 0);
    std::vector<State> stack = a.accepting().members();
    for (State q : stack) {
        mark[q] = 1;
    }
    while (!stack.empty()) {
        const State t = stack.back();
        stack.pop_back();
        for (State q : back[t]) {
            if (mark[q] == 0) {
                mark[q] = 1;
                stack.push_back(q);
            }
        }
    }
    return mark;
}

}  // namespace

Dfa product(const Dfa& a, const Dfa& b, ProductMode mode)
{
    require_same_alphabet(a.alphabet(), b.alphabet(), "product");
    a.validate();
    b.validate();
    const std::size_t k = a.alphabet().size();
    const std::uint64_t nb = b.state_count();
    std::unordered_map<std::uint64_t, State> index;
    std::vector<std::pair<State, State>> pairs{{a.initial(), b.initial()}};
    index.emplace(a.initial() * nb + b.initial(), 0);
    std::vector<State> table;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (Symbol s = 0; s < k; ++s) {
            const State x = a.next(pairs[i].first, s);
            const State y = b.next(pairs[i].second, s);
            const auto [it, inserted] = index.emplace(x * nb + y, static_cast<State>(pairs.size()));
            if (inserted) {
                pairs.emplace_back(x, y);
            }
            table.push_back(it->second);
        }
    }
    Dfa out(pairs.size(), a.alphabet(), 0);
    for (State i = 0; i < pairs.size(); ++i) {
        out.set_accepting(i, combine(a.is_accepting(pairs[i].first), b.is_accepting(pairs[i].second), mode));
        for (Symbol s = 0; s < k; ++s) {
            out.set_transition(i, s, table[i * k + s]);
        }
    }
    return out;
}

Dfa complement(const Dfa& d)
{
    Dfa out = d;
    out.clear_labels();
    for (State q = 0; q < d.state_count(); ++q) {
        out.set_accepting(q, !d.is_accepting(q));
    }
    return out;
}

std::optional<Word> shortest_accepted(const Dfa& d)
{
    const std::size_t k = d.alphabet().size();
    std::vector<State> parent(d.state_count(), kNoState);
    std::vector<Symbol> via(d.state_count(), 0);
    std::vector<std::uint8_t> seen(d.state_count(), 0);
    std::vector<State> queue{d.initial()};
    seen[d.initial()] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const State q = queue[i];
        if (d.is_accepting(q)) {
            Word w;
            for (State p = q; p != d.initial(); p = parent[p]) {
                w.push_back(via[p]);
            }
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (Symbol s = 0; s < k; ++s) {
            const State t = d.next(q, s);
            if (seen[t] == 0) {
                seen[t] = 1;
                parent[t] = q;
                via[t] = s;
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

bool is_empty(const Dfa& d) { return !shortest_accepted(d).has_value(); }

bool equivalent(const Dfa& x, const Dfa& y)
{
    require_same_alphabet(x.alphabet(), y.alphabet(), "equivalent");
    return is_empty(product(minimize(x), minimize(y), ProductMode::SymmetricDifference));
}

bool equivalent(const Nfa& x, const Nfa& y)
{
    require_same_alphabet(x.alphabet(), y.alphabet(), "equivalent");
    const DeterminizeOptions options{subset_cap_from_env(), false};
    return equivalent(determinize(x, options), determinize(y, options));
}

bool equivalent(const Nfa& x, const Dfa& y)
{
    require_same_alphabet(x.alphabet(), y.alphabet(), "equivalent");
    return equivalent(determinize(x, DeterminizeOptions{subset_cap_from_env(), false}), y);
}

bool equivalent(const Dfa& x, const Nfa& y) { return equivalent(y, x); }

Nfa to_nfa(const Dfa& d)
{
    d.validate();
    Nfa a(d.state_count(), d.alphabet());
    a.set_initial(d.initial());
    for (State q = 0; q < d.state_count(); ++q) {
        if (d.is_accepting(q)) {
            a.add_accepting(q);
        }
        for (Symbol s = 0; s < d.alphabet().size(); ++s) {
            a.add_transition(q, s, d.next(q, s));
        }
    }
    return a;
}

Nfa reverse(const Nfa& a)
{
    a.validate();
    const std::size_t n = a.state_count();
    // With no accepting state the reversal has no initial state; an extra
    // isolated state keeps the result well-formed (it accepts nothing).
    const bool pad = a.accepting().empty();
    Nfa r(pad ? n + 1 : n, a.alphabet(), true);
    if (pad) {
        r.add_initial(static_cast<State>(n));
    }
    a.accepting().for_each([&](State q) { r.add_initial(q); });
    a.initial().for_each([&](State q) { r.add_accepting(q); });
    for (State q = 0; q < n; ++q) {
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
            a.successors(q, s).for_each([&](State t) { r.add_transition(t, s, q); });
        }
    }
    r.set_mnfa(r.initial().size() > 1);
    return r;
}

std::optional<Word> bounded_difference(const Nfa& x, const Nfa& y, std::size_t max_len)
{
    require_same_alphabet(x.alphabet(), y.alphabet(), "bounded comparison");
    x.validate();
    y.validate();
    const std::size_t nx = x.state_count();
    const std::size_t ny = y.state_count();
    const std::size_t k = x.alphabet().size();

    // A node is the pair of current subsets, packed into one set over nx + ny.
    struct Node {
        StateSet sets;
        std::size_t parent;
        Symbol via;
        std::size_t depth;
    };
    const auto pack = [&](const StateSet& sx, const StateSet& sy) {
        StateSet both(nx + ny);
        sx.for_each([&](State q) { both.insert(q); });
        sy.for_each([&](State q) { both.insert(static_cast<State>(nx + q)); });
        return both;
    };
    const auto step = [&](const Nfa& a, const StateSet& from, Symbol s) {
        StateSet out(a.state_count());
        from.for_each([&](State q) { out |= a.successors(q, s); });
        return out;
    };

    std::vector<Node> nodes;
    std::unordered_map<StateSet, std::size_t> seen;
    std::vector<std::pair<StateSet, StateSet>> parts;
    nodes.push_back({pack(x.initial(), y.initial()), 0, 0, 0});
    parts.emplace_back(x.initial(), y.initial());
    seen.emplace(nodes[0].sets, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const bool ax = parts[i].first.intersects(x.accepting());
        const bool ay = parts[i].second.intersects(y.accepting());
        if (ax != ay) {
            Word w;
            for (std::size_t j = i; j != 0; j = nodes[j].parent) {
                w.push_back(nodes[j].via);
            }
            std::reverse(w.begin(), w.end());
            return w;
        }
        if (nodes[i].depth == max_len) {
            continue;
        }
        for (Symbol s = 0; s < k; ++s) {
            StateSet sx = step(x, parts[i].first, s);
            StateSet sy = step(y, parts[i].second, s);
            StateSet both = pack(sx, sy);
            if (seen.count(both) != 0) {
                continue;
            }
            seen.emplace(both, nodes.size());
            nodes.push_back({std::move(both), i, s, nodes[i].depth + 1});
            parts.emplace_back(std::move(sx), std::move(sy));
        }
    }
    return std::nullopt;
}

Nfa mnfa_to_nfa(const Nfa& a, State merged_state)
{
    a.validate();
    if (merged_state >= a.state_count()) {
        throw InputError("merged state out of range");
    }
    const std::size_t k = a.alphabet().size();
    Nfa out(a.state_count(), a.alphabet());
    out.set_initial(merged_state);
    a.accepting().for_each([&](State q) { out.add_accepting(q); });
    for (State q = 0; q < a.state_count(); ++q) {
        for (Symbol s = 0; s < k; ++s) {
            if (q != merged_state) {
                out.add_transitions(q, s, a.successors(q, s));
            }
            out.add_transitions(merged_state, s, a.successors(q, s));
        }
    }
    const std::size_t bound = a.state_count() * a.state_count();
    if (const auto w = bounded_difference(a, out, bound)) {
        throw ConstructionError("merging into state " + std::to_string(merged_state) +
                                " changes the language; witness word: " + format_word(a.alphabet(), *w));
    }
    return out;
}

std::vector<Word> bounded_language(const Nfa& a, std::size_t max_len)
{
    a.validate();
    const std::vector<std::uint8_t> live = co_reachable(a);
    const auto alive = [&](const StateSet& s) {
        bool any = false;
        s.for_each([&](State q) { any = any || live[q] != 0; });
        return any;
    };

    std::vector<Word> out;
    std::vector<std::pair<Word, StateSet>> level;
    if (alive(a.initial())) {
        level.emplace_back(Word{}, a.initial());
    }
    for (std::size_t len = 0; !level.empty(); ++len) {
        for (const auto& [w, set] : level) {
            if (set.intersects(a.accepting())) {
                out.push_back(w);
            }
        }
        if (len == max_len) {
            break;
        }
        std::vector<std::pair<Word, StateSet>> next;
        for (const auto& [w, set] : level) {
            for (Symbol s = 0; s < a.alphabet().size(); ++s) {
                StateSet t(a.state_count());
                set.for_each([&](State q) { t |= a.successors(q, s); });
                if (!alive(t)) {
                    continue;
                }
                Word v = w;
                v.push_back(s);
                next.emplace_back(std::move(v), std::move(t));
            }
        }
        level = std::move(next);
    }
    return out;
}

std::vector<Word> bounded_language(const Dfa& d, std::size_t max_len) { return bounded_language(to_nfa(d), max_len); }

}  // namespace magic
