#include "magic/state_set.hpp"

#include <algorithm>

#include "magic/error.hpp"

namespace magic {

namespace {

std::size_t words_for(std::size_t universe) { return (universe + 63) / 64; }

}  // namespace

StateSet::StateSet(std::size_t universe) : universe_(universe), words_(words_for(universe), 0) {}

StateSet::StateSet(std::size_t universe, std::initializer_list<State> members) : StateSet(universe)
{
    for (State s : members) {
        insert(s);
    }
}

StateSet StateSet::full(std::size_t universe)
{
    StateSet s(universe);
    for (State q = 0; q < universe; ++q) {
        s.insert(q);
    }
    return s;
}

StateSet StateSet::from_words(std::size_t universe, const std::uint64_t* words)
{
    StateSet s(universe);
    std::copy(words, words + s.words_.size(), s.words_.begin());
    return s;
}

void StateSet::insert(State s)
{
    if (s >= universe_) {
        throw InputError("state " + std::to_string(s) + " out of range (universe " +
                         std::to_string(universe_) + ")");
    }
    words_[s >> 6] |= std::uint64_t{1} << (s & 63);
}

void StateSet::erase(State s)
{
    if (s < universe_) {
        words_[s >> 6] &= ~(std::uint64_t{1} << (s & 63));
    }
}

void StateSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

bool StateSet::empty() const
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t StateSet::size() const
{
    std::size_t n = 0;
    for (std::uint64_t w : words_) {
        n += static_cast<std::size_t>(__builtin_popcountll(w));
    }
    return n;
}

bool StateSet::intersects(const StateSet& other) const
{
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if ((words_[i] & other.words_[i]) != 0) {
            return true;
        }
    }
    return false;
}

bool StateSet::is_subset_of(const StateSet& other) const
{
    for (std::size_t i = 0; i < words_.size(); ++i) {
        const std::uint64_t theirs = i < other.words_.size() ? other.words_[i] : 0;
        if ((words_[i] & ~theirs) != 0) {
            return false;
        }
    }
    return true;
}

StateSet& StateSet::operator|=(const StateSet& other)
{
    if (other.universe_ > universe_) {
        throw InputError("state set union across different universes");
    }
    for (std::size_t i = 0; i < other.words_.size(); ++i) {
        words_[i] |= other.words_[i];
    }
    return *this;
}

StateSet& StateSet::operator&=(const StateSet& other)
{
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] &= i < other.words_.size() ? other.words_[i] : 0;
    }
    return *this;
}

std::vector<State> StateSet::members() const
{
    std::vector<State> out;
    out.reserve(size());
    for_each([&](State s) { out.push_back(s); });
    return out;
}

std::string StateSet::to_string() const
{
    std::string out = "{";
    bool first = true;
    for_each([&](State s) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += std::to_string(s);
    });
    out += '}';
    return out;
}

bool operator<(const StateSet& a, const StateSet& b)
{
    const auto ma = a.members();
    const auto mb = b.members();
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

std::size_t StateSet::hash() const
{
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ universe_;
    for (std::uint64_t w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace magic
