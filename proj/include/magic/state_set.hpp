#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace magic {

using State = std::uint32_t;

// Fixed-universe bitset of automaton states. Equality, ordering and hashing
// ignore nothing but the members, so two sets over the same universe compare
// by content.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t universe);
    StateSet(std::size_t universe, std::initializer_list<State> members);

    static StateSet full(std::size_t universe);
    static StateSet from_words(std::size_t universe, const std::uint64_t* words);

    std::size_t universe() const { return universe_; }
    std::size_t word_count() const { return words_.size(); }
    const std::uint64_t* data() const { return words_.data(); }

    bool contains(State s) const
    {
        return s < universe_ && ((words_[s >> 6] >> (s & 63)) & 1U) != 0;
    }
    void insert(State s);
    void erase(State s);
    void clear();

    bool empty() const;
    std::size_t size() const;
    bool intersects(const StateSet& other) const;
    bool is_subset_of(const StateSet& other) const;

    StateSet& operator|=(const StateSet& other);
    StateSet& operator&=(const StateSet& other);

    std::vector<State> members() const;

    template <typename F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int bit = __builtin_ctzll(bits);
                f(static_cast<State>(w * 64 + static_cast<std::size_t>(bit)));
                bits &= bits - 1;
            }
        }
    }

    // "{0,2,5}"; the empty set renders as "{}".
    std::string to_string() const;

    friend bool operator==(const StateSet& a, const StateSet& b)
    {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }
    friend bool operator!=(const StateSet& a, const StateSet& b) { return !(a == b); }
    // Lexicographic on sorted member lists: {0} < {0,1} < {1}.
    friend bool operator<(const StateSet& a, const StateSet& b);

    std::size_t hash() const;

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace magic

template <>
struct std::hash<magic::StateSet> {
    std::size_t operator()(const magic::StateSet& s) const noexcept { return s.hash(); }
};
