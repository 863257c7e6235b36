#include <cstring>
#include <unordered_set>

#include "magic/automata.hpp"
#include "magic/error.hpp"

namespace magic {

namespace {

// Subsets live back to back in one arena; the hash set stores arena slots.
struct SubsetArena {
    std::size_t words;
    std::vector<std::uint64_t> data;

    const std::uint64_t* at(std::uint32_t id) const { return data.data() + id * words; }
};

struct SlotHash {
    const SubsetArena* arena;
    std::size_t operator()(std::uint32_t id) const
    {
        const std::uint64_t* p = arena->at(id);
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (std::size_t i = 0; i < arena->words; ++i) {
            h ^= p[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

struct SlotEq {
    const SubsetArena* arena;
    bool operator()(std::uint32_t x, std::uint32_t y) const
    {
        return std::memcmp(arena->at(x), arena->at(y), arena->words * sizeof(std::uint64_t)) == 0;
    }
};

}  // namespace

bool accepts(const Nfa& a, const Word& w)
{
    const std::size_t k = a.alphabet().size();
    StateSet current = a.initial();
    for (Symbol s : w) {
        if (s >= k) {
            throw InputError("symbol index " + std::to_string(s) + " out of range");
        }
        StateSet next(a.state_count());
        current.for_each([&](State q) { next |= a.successors(q, s); });
        current = std::move(next);
    }
    return current.intersects(a.accepting());
}

bool accepts(const Dfa& d, const Word& w)
{
    State q = d.initial();
    for (Symbol s : w) {
        if (s >= d.alphabet().size()) {
            throw InputError("symbol index " + std::to_string(s) + " out of range");
        }
        q = d.next(q, s);
    }
    return d.is_accepting(q);
}

Dfa determinize(const Nfa& a, const DeterminizeOptions& options)
{
    a.validate();
    const std::size_t n = a.state_count();
    const std::size_t k = a.alphabet().size();
    const std::size_t words = a.initial().word_count();

    // Flattened successor images, one word block per (state, symbol).
    std::vector<std::uint64_t> image(n * k * words);
    for (State q = 0; q < n; ++q) {
        for (Symbol s = 0; s < k; ++s) {
            const StateSet& t = a.successors(q, s);
            std::memcpy(&image[(q * k + s) * words], t.data(), words * sizeof(std::uint64_t));
        }
    }
    std::vector<std::uint64_t> accepting(a.accepting().data(), a.accepting().data() + words);

    SubsetArena arena{words, {}};
    std::unordered_set<std::uint32_t, SlotHash, SlotEq> seen(64, SlotHash{&arena}, SlotEq{&arena});
    std::vector<State> table;
    std::vector<std::uint8_t> is_accepting;

    const auto intern = [&](std::uint32_t candidate) -> State {
        // The candidate occupies the last arena slot.
        const auto [it, inserted] = seen.insert(candidate);
        if (!inserted) {
            arena.data.resize(arena.data.size() - words);
            return *it;
        }
        if (seen.size() > options.max_states) {
            throw ResourceError("determinization exceeded " + std::to_string(options.max_states) +
                                " subset states (raise MAGIC_MAX_SUBSETS to allow more)");
        }
        bool acc = false;
        const std::uint64_t* p = arena.at(candidate);
        for (std::size_t i = 0; i < words; ++i) {
            acc = acc || (p[i] & accepting[i]) != 0;
        }
        is_accepting.push_back(acc ? 1 : 0);
        table.resize(table.size() + k, kNoState);
        return candidate;
    };

    arena.data.insert(arena.data.end(), a.initial().data(), a.initial().data() + words);
    intern(0);

    for (std::uint32_t current = 0; current < seen.size(); ++current) {
        for (Symbol s = 0; s < k; ++s) {
            const std::uint32_t candidate = static_cast<std::uint32_t>(seen.size());
            arena.data.resize(arena.data.size() + words, 0);
            std::uint64_t* dst = arena.data.data() + static_cast<std::size_t>(candidate) * words;
            const std::uint64_t* src = arena.at(current);
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t bits = src[w];
                while (bits != 0) {
                    const State q = static_cast<State>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
                    bits &= bits - 1;
                    const std::uint64_t* img = &image[(q * k + s) * words];
                    for (std::size_t i = 0; i < words; ++i) {
                        dst[i] |= img[i];
                    }
                }
            }
            const State target = intern(candidate);
            table[current * k + s] = target;
        }
    }

    const std::size_t count = seen.size();
    Dfa d(count, a.alphabet(), 0);
    for (State q = 0; q < count; ++q) {
        if (is_accepting[q] != 0) {
            d.set_accepting(q);
        }
        for (Symbol s = 0; s < k; ++s) {
            d.set_transition(q, s, table[q * k + s]);
        }
    }
    if (options.keep_labels) {
        std::vector<StateSet> labels;
        labels.reserve(count);
        for (std::uint32_t id = 0; id < count; ++id) {
            labels.push_back(StateSet::from_words(n, arena.at(id)));
        }
        d.set_labels(std::move(labels));
    }
    return d;
}

}  // namespace magic
