#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "magic/automata.hpp"

namespace magic {

struct FoolingSet {
    std::vector<std::pair<Word, Word>> pairs;
};

struct FoolingResult {
    // |pairs| when the set is valid, 0 otherwise.
    std::size_t bound = 0;
    // On failure: (i, i) when x_i y_i is rejected, (i, j) with i < j when
    // both cross words x_i y_j and x_j y_i are accepted.
    std::optional<std::pair<std::size_t, std::size_t>> counterexample;
};

FoolingResult verify_fooling_set(const Dfa& lang, const FoolingSet& s);

// One "x|y" line per pair, symbols space-separated, "λ" for the empty word.
std::string format_fooling_set(const Alphabet& alphabet, const FoolingSet& s);
FoolingSet parse_fooling_set(const Alphabet& alphabet, std::string_view text);

}  // namespace magic
