#include "magic/language_analysis.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <unordered_set>

#include "magic/error.hpp"

namespace magic {

namespace {

// ---------------------------------------------------------------------------
// Graph helpers on a complete DFA.

std::vector<std::uint8_t> co_reachable(const Dfa& d)
{
    const std::size_t n = d.state_count();
    const std::size_t k = d.alphabet().size();
    std::vector<std::vector<State>> back(n);
    for (State q = 0; q < n; ++q) {
        for (Symbol s = 0; s < k; ++s) {
            back[d.next(q, s)].push_back(q);
        }
    }
    std::vector<std::uint8_t> mark(n, 0);
    std::vector<State> stack = d.accepting_states();
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

// Shortest word leading from `from` to a state satisfying `goal`. With
// nonempty set, the empty word does not count even if `from` is a goal.
std::optional<Word> shortest_path(const Dfa& d, State from, const std::function<bool(State)>& goal, bool nonempty)
{
    if (!nonempty && goal(from)) {
        return Word{};
    }
    const std::size_t n = d.state_count();
    const std::size_t k = d.alphabet().size();
    std::vector<State> parent(n, kNoState);
    std::vector<Symbol> via(n, 0);
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<State> queue;
    // First layer handled separately so that `from` may be re-entered.
    for (Symbol s = 0; s < k; ++s) {
        const State t = d.next(from, s);
        if (goal(t)) {
            return Word{s};
        }
        if (seen[t] == 0 && t != from) {
            seen[t] = 1;
            parent[t] = from;
            via[t] = s;
            queue.push_back(t);
        }
    }
    seen[from] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const State q = queue[i];
        for (Symbol s = 0; s < k; ++s) {
            const State t = d.next(q, s);
            if (goal(t)) {
                Word w{s};
                for (State p = q; p != from; p = parent[p]) {
                    w.push_back(via[p]);
                }
                std::reverse(w.begin(), w.end());
                return w;
            }
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

Word concat_words(Word x, const Word& y)
{
    x.insert(x.end(), y.begin(), y.end());
    return x;
}

Word path_from_initial(const Dfa& d, State q)
{
    return *shortest_path(d, d.initial(), [q](State t) { return t == q; }, false);
}

Nfa sigma_plus(const Alphabet& alphabet)
{
    Nfa a(2, alphabet);
    a.set_initial(0);
    a.add_accepting(1);
    for (Symbol s = 0; s < alphabet.size(); ++s) {
        a.add_transition(0, s, 1);
        a.add_transition(1, s, 1);
    }
    return a;
}

Nfa sigma_star(const Alphabet& alphabet)
{
    Nfa a(1, alphabet);
    a.set_initial(0);
    a.add_accepting(0);
    for (Symbol s = 0; s < alphabet.size(); ++s) {
        a.add_transition(0, s, 0);
    }
    return a;
}

// Shortest word of L(d) that also lies in L(other), if any.
std::optional<Word> common_word(const Dfa& d, const Nfa& other)
{
    const Dfa od = determinize(other, DeterminizeOptions{subset_cap_from_env(), false});
    return shortest_accepted(product(d, od, ProductMode::Intersection));
}

// Shortest word of L(sub) outside L(d), if any.
std::optional<Word> escaping_word(const Nfa& sub, const Dfa& d)
{
    const Dfa sd = determinize(sub, DeterminizeOptions{subset_cap_from_env(), false});
    return shortest_accepted(product(sd, d, ProductMode::Difference));
}

// Strongly connected component size of every state (iterative Kosaraju).
std::vector<std::size_t> scc_sizes(const Dfa& d)
{
    const std::size_t n = d.state_count();
    const std::size_t k = d.alphabet().size();
    std::vector<std::vector<State>> back(n);
    for (State q = 0; q < n; ++q) {
        for (Symbol s = 0; s < k; ++s) {
            back[d.next(q, s)].push_back(q);
        }
    }
    std::vector<State> finish;
    std::vector<std::uint8_t> seen(n, 0);
    for (State root = 0; root < n; ++root) {
        if (seen[root] != 0) {
            continue;
        }
        std::vector<std::pair<State, Symbol>> stack{{root, 0}};
        seen[root] = 1;
        while (!stack.empty()) {
            auto& [q, s] = stack.back();
            if (s < k) {
                const State t = d.next(q, s++);
                if (seen[t] == 0) {
                    seen[t] = 1;
                    stack.emplace_back(t, 0);
                }
            } else {
                finish.push_back(q);
                stack.pop_back();
            }
        }
    }
    std::vector<State> comp(n, kNoState);
    std::vector<std::size_t> comp_size;
    for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
        if (comp[*it] != kNoState) {
            continue;
        }
        const auto c = static_cast<State>(comp_size.size());
        comp_size.push_back(0);
        std::vector<State> stack{*it};
        comp[*it] = c;
        while (!stack.empty()) {
            const State q = stack.back();
            stack.pop_back();
            ++comp_size[c];
            for (State p : back[q]) {
                if (comp[p] == kNoState) {
                    comp[p] = c;
                    stack.push_back(p);
                }
            }
        }
    }
    std::vector<std::size_t> out(n);
    for (State q = 0; q < n; ++q) {
        out[q] = comp_size[comp[q]];
    }
    return out;
}

bool has_nontrivial_scc(const Dfa& d)
{
    const auto sizes = scc_sizes(d);
    return std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s >= 2; });
}

// ---------------------------------------------------------------------------
// Transition monoid walk. Elements are stored back to back in an arena of T
// (the narrowest type that holds a state index).

struct MonoidStats {
    std::size_t elements = 0;
    bool truncated = false;
};

template <typename T>
class MonoidWalker {
public:
    MonoidWalker(const Dfa& d, std::size_t cap, bool throw_on_cap)
        : d_(d), m_(d.state_count()), cap_(cap), throw_on_cap_(throw_on_cap),
          seen_(64, Hash{this}, Eq{this})
    {
    }

    // visit(f, id) returns false to stop the walk early.
    template <typename Visit>
    MonoidStats run(Visit&& visit)
    {
        const std::size_t k = d_.alphabet().size();
        for (Symbol s = 0; s < k; ++s) {
            std::size_t slot = append();
            for (State q = 0; q < m_; ++q) {
                arena_[slot * m_ + q] = static_cast<T>(d_.next(q, s));
            }
            if (!intern(slot, kNoParent, s)) {
                continue;
            }
            if (!check_cap()) {
                return {elements(), true};
            }
            if (!visit(at(slot), slot)) {
                return {elements(), false};
            }
        }
        for (std::size_t i = 0; i < elements(); ++i) {
            for (Symbol s = 0; s < k; ++s) {
                const std::size_t slot = append();
                T* dst = &arena_[slot * m_];
                const T* src = at(i);
                for (State q = 0; q < m_; ++q) {
                    dst[q] = static_cast<T>(d_.next(src[q], s));
                }
                if (!intern(slot, i, s)) {
                    continue;
                }
                if (!check_cap()) {
                    return {elements(), true};
                }
                if (!visit(at(slot), slot)) {
                    return {elements(), false};
                }
            }
        }
        return {elements(), false};
    }

    Word word_of(std::size_t id) const
    {
        Word w;
        for (std::size_t p = id; p != kNoParent; p = parent_[p]) {
            w.push_back(via_[p]);
        }
        std::reverse(w.begin(), w.end());
        return w;
    }

private:
    static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

    struct Hash {
        const MonoidWalker* w;
        std::size_t operator()(std::size_t id) const
        {
            const T* p = w->at(id);
            std::size_t h = 0xcbf29ce484222325ULL;
            for (std::size_t i = 0; i < w->m_; ++i) {
                h = (h ^ static_cast<std::size_t>(p[i])) * 0x100000001b3ULL;
            }
            return h;
        }
    };
    struct Eq {
        const MonoidWalker* w;
        bool operator()(std::size_t x, std::size_t y) const
        {
            return std::memcmp(w->at(x), w->at(y), w->m_ * sizeof(T)) == 0;
        }
    };

    const T* at(std::size_t id) const { return arena_.data() + id * m_; }
    std::size_t elements() const { return parent_.size(); }

    std::size_t append()
    {
        arena_.resize(arena_.size() + m_);
        return arena_.size() / m_ - 1;
    }

    bool intern(std::size_t slot, std::size_t parent, Symbol via)
    {
        if (!seen_.insert(slot).second) {
            arena_.resize(arena_.size() - m_);
            return false;
        }
        parent_.push_back(parent);
        via_.push_back(via);
        return true;
    }

    bool check_cap()
    {
        if (elements() <= cap_) {
            return true;
        }
        if (throw_on_cap_) {
            throw ResourceError("transition monoid exceeded " + std::to_string(cap_) + " elements");
        }
        return false;
    }

    const Dfa& d_;
    std::size_t m_;
    std::size_t cap_;
    bool throw_on_cap_;
    std::vector<T> arena_;
    std::vector<std::size_t> parent_;
    std::vector<Symbol> via_;
    std::unordered_set<std::size_t, Hash, Eq> seen_;
};

// Calls on_cycle(states) for every orbit of length >= 2 of the map f.
template <typename T, typename OnCycle>
void for_each_cycle(const T* f, std::size_t m, std::vector<State>& walk_mark, OnCycle&& on_cycle)
{
    std::fill(walk_mark.begin(), walk_mark.end(), kNoState);
    for (State start = 0; start < m; ++start) {
        if (walk_mark[start] != kNoState) {
            continue;
        }
        State x = start;
        while (walk_mark[x] == kNoState) {
            walk_mark[x] = start;
            x = static_cast<State>(f[x]);
        }
        if (walk_mark[x] != start) {
            continue;  // ran into an earlier walk
        }
        std::vector<State> orbit{x};
        for (State y = static_cast<State>(f[x]); y != x; y = static_cast<State>(f[y])) {
            orbit.push_back(y);
        }
        if (orbit.size() >= 2) {
            // Start at the smallest member so the output is canonical.
            std::rotate(orbit.begin(), std::min_element(orbit.begin(), orbit.end()), orbit.end());
            on_cycle(orbit);
        }
    }
}

template <typename Body>
auto with_width(std::size_t m, Body&& body)
{
    if (m <= 0xFF) {
        return body(std::uint8_t{});
    }
    if (m <= 0xFFFF) {
        return body(std::uint16_t{});
    }
    return body(std::uint32_t{});
}

// First word inducing a non-trivial cycle, or nullopt when aperiodic.
std::optional<Word> first_cycle_word(const Dfa& d, std::size_t max_monoid)
{
    if (!has_nontrivial_scc(d)) {
        return std::nullopt;
    }
    return with_width(d.state_count(), [&](auto tag) -> std::optional<Word> {
        using T = decltype(tag);
        MonoidWalker<T> walker(d, max_monoid, true);
        std::vector<State> mark(d.state_count());
        std::optional<std::size_t> hit;
        walker.run([&](const T* f, std::size_t id) {
            bool found = false;
            for_each_cycle(f, d.state_count(), mark, [&](const std::vector<State>&) { found = true; });
            if (found) {
                hit = id;
                return false;
            }
            return true;
        });
        if (hit) {
            return walker.word_of(*hit);
        }
        return std::nullopt;
    });
}

CycleSearch collect_cycles(const Dfa& d, std::size_t max_monoid, bool throw_on_cap)
{
    if (!d.has_labels()) {
        throw InputError("permutation-cycle search needs a subset-labelled DFA (run determinize first)");
    }
    const Dfa merged = merge_equivalent_states(d);
    CycleSearch out;
    if (!has_nontrivial_scc(merged)) {
        return out;
    }
    with_width(merged.state_count(), [&](auto tag) {
        using T = decltype(tag);
        MonoidWalker<T> walker(merged, max_monoid, throw_on_cap);
        std::vector<State> mark(merged.state_count());
        const MonoidStats stats = walker.run([&](const T* f, std::size_t id) {
            for_each_cycle(f, merged.state_count(), mark, [&](const std::vector<State>& orbit) {
                PermutationCycle c;
                c.word = walker.word_of(id);
                c.states = orbit;
                for (State q : orbit) {
                    c.labels.push_back(merged.label(q));
                }
                out.cycles.push_back(std::move(c));
            });
            return true;
        });
        out.monoid_elements = stats.elements;
        out.truncated = stats.truncated;
        return 0;
    });
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Nfa concatenate(const Nfa& x, const Nfa& y)
{
    if (x.alphabet() != y.alphabet()) {
        throw InputError("concatenate: alphabets differ");
    }
    const std::size_t nx = x.state_count();
    const std::size_t k = x.alphabet().size();
    const auto shift = [nx](State q) { return static_cast<State>(q + nx); };
    const bool x_has_lambda = x.initial().intersects(x.accepting());
    const bool y_has_lambda = y.initial().intersects(y.accepting());

    Nfa out(nx + y.state_count(), x.alphabet(), true);
    x.initial().for_each([&](State q) { out.add_initial(q); });
    if (x_has_lambda) {
        y.initial().for_each([&](State q) { out.add_initial(shift(q)); });
    }
    y.accepting().for_each([&](State q) { out.add_accepting(shift(q)); });
    if (y_has_lambda) {
        x.accepting().for_each([&](State q) { out.add_accepting(q); });
    }
    for (State q = 0; q < nx; ++q) {
        for (Symbol s = 0; s < k; ++s) {
            out.add_transitions(q, s, x.successors(q, s));
        }
    }
    for (State q = 0; q < y.state_count(); ++q) {
        for (Symbol s = 0; s < k; ++s) {
            y.successors(q, s).for_each([&](State t) { out.add_transition(shift(q), s, shift(t)); });
        }
    }
    // Leaving x through an accepting state continues as y would from its start.
    x.accepting().for_each([&](State p) {
        y.initial().for_each([&](State i) {
            for (Symbol s = 0; s < k; ++s) {
                y.successors(i, s).for_each([&](State t) { out.add_transition(p, s, shift(t)); });
            }
        });
    });
    out.set_mnfa(out.initial().size() > 1);
    return out;
}

std::optional<Nfa> suffix_automaton(const Dfa& d)
{
    const Dfa m = minimize(d);
    const auto live = co_reachable(m);
    std::vector<State> index(m.state_count(), kNoState);
    std::size_t count = 0;
    for (State q = 0; q < m.state_count(); ++q) {
        if (live[q] != 0) {
            index[q] = static_cast<State>(count++);
        }
    }
    if (count == 0) {
        return std::nullopt;
    }
    Nfa s(count, m.alphabet(), true);
    for (State q = 0; q < m.state_count(); ++q) {
        if (index[q] == kNoState) {
            continue;
        }
        s.add_initial(index[q]);
        if (m.is_accepting(q)) {
            s.add_accepting(index[q]);
        }
        for (Symbol a = 0; a < m.alphabet().size(); ++a) {
            const State t = m.next(q, a);
            if (index[t] != kNoState) {
                s.add_transition(index[q], a, index[t]);
            }
        }
    }
    s.set_mnfa(count > 1);
    return s;
}

FamilyVerdict check_family(const Dfa& input, Family f, std::size_t max_monoid)
{
    const Dfa d = minimize(input);
    const auto live = co_reachable(d);
    const auto is_live = [&](State q) { return live[q] != 0; };
    const auto accepting = [&](State q) { return d.is_accepting(q); };

    switch (f) {
    case Family::Finite: {
        for (State q = 0; q < d.state_count(); ++q) {
            if (!is_live(q)) {
                continue;
            }
            if (const auto loop = shortest_path(d, q, [q](State t) { return t == q; }, true)) {
                // The loop stays inside live states because it returns to q.
                const Word w = concat_words(concat_words(path_from_initial(d, q), *loop),
                                            *shortest_path(d, q, accepting, false));
                return {false, w, "a useful state lies on a cycle; the witness can be pumped"};
            }
        }
        return {true, std::nullopt, "no cycle through useful states"};
    }
    case Family::PrefixFree: {
        for (State p : d.accepting_states()) {
            if (const auto ext = shortest_path(d, p, accepting, true)) {
                const Word x = path_from_initial(d, p);
                return {false, concat_words(x, *ext),
                        "witness and its proper prefix of length " + std::to_string(x.size()) + " are both in L"};
            }
        }
        return {true, std::nullopt, "no accepting state reaches an accepting state by a non-empty path"};
    }
    case Family::PrefixClosed: {
        for (State q = 0; q < d.state_count(); ++q) {
            if (is_live(q) && !d.is_accepting(q)) {
                const Word x = path_from_initial(d, q);
                return {false, concat_words(x, *shortest_path(d, q, accepting, false)),
                        "witness is in L but its prefix of length " + std::to_string(x.size()) + " is not"};
            }
        }
        return {true, std::nullopt, "every useful state is accepting"};
    }
    case Family::SuffixFree: {
        const Nfa lang = to_nfa(d);
        if (const auto w = common_word(d, concatenate(sigma_plus(d.alphabet()), lang))) {
            return {false, w, "witness and one of its proper suffixes are both in L"};
        }
        return {true, std::nullopt, "L and Σ⁺L are disjoint"};
    }
    case Family::SuffixClosed: {
        const auto suff = suffix_automaton(d);
        if (suff) {
            if (const auto w = escaping_word(*suff, d)) {
                return {false, w, "witness is a suffix of a word in L but is not in L"};
            }
        }
        return {true, std::nullopt, "Suff(L) is contained in L"};
    }
    case Family::InfixClosed: {
        const FamilyVerdict pc = check_family(d, Family::PrefixClosed, max_monoid);
        if (!pc.member) {
            return pc;
        }
        const FamilyVerdict sc = check_family(d, Family::SuffixClosed, max_monoid);
        if (!sc.member) {
            return sc;
        }
        return {true, std::nullopt, "prefix-closed and suffix-closed"};
    }
    case Family::InfixFree: {
        for (Family part : {Family::PrefixFree, Family::SuffixFree}) {
            const FamilyVerdict v = check_family(d, part, max_monoid);
            if (!v.member) {
                return v;
            }
        }
        const Nfa lang = to_nfa(d);
        const Nfa plus = sigma_plus(d.alphabet());
        const Nfa star = sigma_star(d.alphabet());
        if (const auto w = common_word(d, concatenate(concatenate(plus, lang), star))) {
            return {false, w, "witness contains another word of L as a proper infix (L meets Σ⁺LΣ*)"};
        }
        if (const auto w = common_word(d, concatenate(concatenate(star, lang), plus))) {
            return {false, w, "witness contains another word of L as a proper infix (L meets Σ*LΣ⁺)"};
        }
        return {true, std::nullopt, "no word of L has another word of L as a proper infix"};
    }
    case Family::Star: {
        if (!d.is_accepting(d.initial())) {
            return {false, Word{}, "the empty word is not in L"};
        }
        const Nfa lang = to_nfa(d);
        if (const auto w = escaping_word(concatenate(lang, lang), d)) {
            return {false, w, "witness is in L·L but not in L"};
        }
        return {true, std::nullopt, "λ ∈ L and L·L ⊆ L"};
    }
    case Family::StarFree: {
        if (const auto w = first_cycle_word(d, max_monoid)) {
            return {false, w, "witness induces a non-trivial permutation on the minimal DFA"};
        }
        return {true, std::nullopt, "the transition monoid is aperiodic"};
    }
    }
    return {false, std::nullopt, "unknown family"};
}

bool is_in_family(const Dfa& d, Family f, std::size_t max_monoid) { return check_family(d, f, max_monoid).member; }

bool is_aperiodic(const Dfa& d, std::size_t max_monoid)
{
    d.validate();
    return !first_cycle_word(d, max_monoid).has_value();
}

std::vector<PermutationCycle> find_permutation_cycles(const Dfa& d, std::size_t max_monoid)
{
    return collect_cycles(d, max_monoid, true).cycles;
}

CycleSearch explore_permutation_cycles(const Dfa& d, std::size_t max_monoid)
{
    return collect_cycles(d, max_monoid, false);
}

bool check_lemma1(const PermutationCycle& c)
{
    if (c.labels.size() != c.states.size() || c.states.size() < 2) {
        throw InputError("check_lemma1 needs a cycle of length >= 2 with a subset label per state");
    }
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        for (std::size_t j = 0; j < c.labels.size(); ++j) {
            if (i != j && c.labels[i].is_subset_of(c.labels[j])) {
                return false;
            }
        }
    }
    return true;
}

bool structural_all_accepting(const Nfa& a) { return a.accepting().size() == a.state_count(); }

bool structural_all_initial_accepting(const Nfa& a)
{
    return structural_all_accepting(a) && a.initial().size() == a.state_count();
}

bool structural_non_returning(const Nfa& a)
{
    for (State q = 0; q < a.state_count(); ++q) {
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
            if (a.successors(q, s).intersects(a.initial())) {
                return false;
            }
        }
    }
    return true;
}

bool structural_non_exiting(const Nfa& a)
{
    bool ok = true;
    a.accepting().for_each([&](State q) {
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
            ok = ok && a.successors(q, s).empty();
        }
    });
    return ok;
}

}  // namespace magic
