#include <algorithm>
#include <deque>

#include "magic/automata.hpp"
#include "magic/error.hpp"

namespace magic {

namespace {

std::vector<State> reachable_order(const Dfa& d)
{
    const std::size_t k = d.alphabet().size();
    std::vector<std::uint8_t> seen(d.state_count(), 0);
    std::vector<State> order{d.initial()};
    seen[d.initial()] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Symbol s = 0; s < k; ++s) {
            const State t = d.next(order[i], s);
            if (seen[t] == 0) {
                seen[t] = 1;
                order.push_back(t);
            }
        }
    }
    return order;
}

// Builds the quotient of d by cls, numbering classes breadth-first from the
// initial class. Each class is represented by its lowest-numbered member.
Dfa quotient(const Dfa& d, const std::vector<State>& cls, bool keep_labels)
{
    const std::size_t k = d.alphabet().size();
    std::size_t class_count = 0;
    for (State c : cls) {
        if (c != kNoState) {
            class_count = std::max<std::size_t>(class_count, c + 1);
        }
    }
    std::vector<State> rep(class_count, kNoState);
    for (State q = 0; q < d.state_count(); ++q) {
        if (cls[q] != kNoState && rep[cls[q]] == kNoState) {
            rep[cls[q]] = q;
        }
    }

    std::vector<State> number(class_count, kNoState);
    std::vector<State> order{cls[d.initial()]};
    number[order[0]] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Symbol s = 0; s < k; ++s) {
            const State c = cls[d.next(rep[order[i]], s)];
            if (number[c] == kNoState) {
                number[c] = static_cast<State>(order.size());
                order.push_back(c);
            }
        }
    }

    Dfa out(order.size(), d.alphabet(), 0);
    std::vector<StateSet> labels;
    for (State i = 0; i < order.size(); ++i) {
        const State r = rep[order[i]];
        out.set_accepting(i, d.is_accepting(r));
        for (Symbol s = 0; s < k; ++s) {
            out.set_transition(i, s, number[cls[d.next(r, s)]]);
        }
        if (keep_labels) {
            labels.push_back(d.label(r));
        }
    }
    if (keep_labels) {
        out.set_labels(std::move(labels));
    }
    return out;
}

}  // namespace

std::vector<State> nerode_classes(const Dfa& d)
{
    d.validate();
    const std::size_t k = d.alphabet().size();
    const std::vector<State> order = reachable_order(d);
    const std::size_t m = order.size();

    std::vector<State> local(d.state_count(), kNoState);
    for (State i = 0; i < m; ++i) {
        local[order[i]] = i;
    }

    // Predecessor lists per symbol in CSR form.
    std::vector<std::uint32_t> start(k * (m + 1) + 1, 0);
    for (State i = 0; i < m; ++i) {
        for (Symbol s = 0; s < k; ++s) {
            ++start[s * (m + 1) + local[d.next(order[i], s)] + 1];
        }
    }
    for (std::size_t i = 1; i < start.size(); ++i) {
        start[i] += start[i - 1];
    }
    std::vector<State> preds(m * k);
    {
        std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
        for (State i = 0; i < m; ++i) {
            for (Symbol s = 0; s < k; ++s) {
                preds[fill[s * (m + 1) + local[d.next(order[i], s)]]++] = i;
            }
        }
    }

    // Blocks are contiguous ranges of elems; the marked prefix of a block
    // collects states hit by the current splitter.
    std::vector<State> elems;
    elems.reserve(m);
    for (State i = 0; i < m; ++i) {
        if (d.is_accepting(order[i])) {
            elems.push_back(i);
        }
    }
    const std::uint32_t accepting_count = static_cast<std::uint32_t>(elems.size());
    for (State i = 0; i < m; ++i) {
        if (!d.is_accepting(order[i])) {
            elems.push_back(i);
        }
    }
    std::vector<std::uint32_t> loc(m), block(m);
    for (std::uint32_t p = 0; p < m; ++p) {
        loc[elems[p]] = p;
    }
    std::vector<std::uint32_t> first, end, marked;
    if (accepting_count > 0) {
        first.push_back(0);
        end.push_back(accepting_count);
        marked.push_back(0);
    }
    if (accepting_count < m) {
        first.push_back(accepting_count);
        end.push_back(static_cast<std::uint32_t>(m));
        marked.push_back(0);
    }
    for (std::uint32_t b = 0; b < first.size(); ++b) {
        for (std::uint32_t p = first[b]; p < end[b]; ++p) {
            block[elems[p]] = b;
        }
    }

    std::vector<std::pair<std::uint32_t, Symbol>> work;
    std::vector<std::uint8_t> in_work(first.size() * k, 0);
    const auto push = [&](std::uint32_t b, Symbol s) {
        work.emplace_back(b, s);
        in_work[b * k + s] = 1;
    };
    if (first.size() == 2) {
        const std::uint32_t smaller = (end[0] - first[0]) <= (end[1] - first[1]) ? 0 : 1;
        for (Symbol s = 0; s < k; ++s) {
            push(smaller, s);
        }
    }

    std::vector<State> splitter;
    std::vector<std::uint32_t> touched;
    while (!work.empty()) {
        const auto [b, s] = work.back();
        work.pop_back();
        in_work[b * k + s] = 0;
        splitter.assign(elems.begin() + first[b], elems.begin() + end[b]);
        for (State t : splitter) {
            const std::uint32_t base = s * (static_cast<std::uint32_t>(m) + 1);
            for (std::uint32_t i = start[base + t]; i < start[base + t + 1]; ++i) {
                const State p = preds[i];
                const std::uint32_t y = block[p];
                const std::uint32_t target = first[y] + marked[y];
                if (loc[p] < target) {
                    continue;
                }
                if (marked[y] == 0) {
                    touched.push_back(y);
                }
                const State other = elems[target];
                std::swap(elems[loc[p]], elems[target]);
                loc[other] = loc[p];
                loc[p] = target;
                ++marked[y];
            }
        }
        for (std::uint32_t y : touched) {
            if (marked[y] == end[y] - first[y]) {
                marked[y] = 0;
                continue;
            }
            const auto z = static_cast<std::uint32_t>(first.size());
            first.push_back(first[y]);
            end.push_back(first[y] + marked[y]);
            marked.push_back(0);
            first[y] += marked[y];
            marked[y] = 0;
            for (std::uint32_t p = first[z]; p < end[z]; ++p) {
                block[elems[p]] = z;
            }
            in_work.resize(first.size() * k, 0);
            for (Symbol c = 0; c < k; ++c) {
                if (in_work[y * k + c] != 0) {
                    push(z, c);
                } else {
                    push((end[z] - first[z]) <= (end[y] - first[y]) ? z : y, c);
                }
            }
        }
        touched.clear();
    }

    // Dense class ids ordered by the lowest original state index.
    std::vector<State> cls(d.state_count(), kNoState);
    std::vector<State> id_of_block(first.size(), kNoState);
    State next_id = 0;
    for (State q = 0; q < d.state_count(); ++q) {
        if (local[q] == kNoState) {
            continue;
        }
        const std::uint32_t b = block[local[q]];
        if (id_of_block[b] == kNoState) {
            id_of_block[b] = next_id++;
        }
        cls[q] = id_of_block[b];
    }
    return cls;
}

Dfa minimize(const Dfa& d) { return quotient(d, nerode_classes(d), false); }

Dfa merge_equivalent_states(const Dfa& d)
{
    if (!d.has_labels()) {
        throw InputError("merge_equivalent_states needs a subset-labelled DFA");
    }
    return quotient(d, nerode_classes(d), true);
}

Dfa minimize_brzozowski(const Dfa& d)
{
    d.validate();
    if (is_empty(d)) {
        return empty_dfa(d.alphabet());
    }
    const DeterminizeOptions unlabelled{subset_cap_from_env(), false};
    const Dfa once = determinize(reverse(to_nfa(d)), unlabelled);
    return determinize(reverse(to_nfa(once)), unlabelled);
}

std::size_t min_dfa_size(const Dfa& d) { return minimize(d).state_count(); }

std::size_t min_dfa_size(const Nfa& a)
{
    return minimize(determinize(a, DeterminizeOptions{subset_cap_from_env(), false})).state_count();
}

std::string canonical_encoding(const Dfa& minimal)
{
    std::string out;
    const auto put = [&](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) {
            out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
        }
    };
    put(static_cast<std::uint32_t>(minimal.alphabet().size()));
    put(static_cast<std::uint32_t>(minimal.state_count()));
    put(minimal.initial());
    for (State q = 0; q < minimal.state_count(); ++q) {
        out.push_back(minimal.is_accepting(q) ? '\1' : '\0');
    }
    for (State t : minimal.table()) {
        put(t);
    }
    return out;
}

}  // namespace magic
