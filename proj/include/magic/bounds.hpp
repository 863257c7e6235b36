#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "magic/family.hpp"

namespace magic {

// Closed interval of DFA sizes outside of which every alpha is a trivial
// magic number for the family.
struct AlphaInterval {
    std::int64_t lower = 0;
    std::optional<std::int64_t> upper;  // empty when no closed form is known

    bool contains(std::int64_t alpha) const { return alpha >= lower && (!upper || alpha <= *upper); }
};

struct BoundsRow {
    WitnessFamily family;
    std::string lower;  // g(n) as an expression in n
    std::string upper;  // f(n) as an expression in n
    std::string note;
};

// One row per generator family and per language family.
const std::vector<BoundsRow>& bounds_table();

// Largest n accepted by interval evaluation (2^n must fit in 64 bits).
inline constexpr int kMaxBoundsN = 62;

AlphaInterval family_interval(const WitnessFamily& family, int n);

// The part of family_interval(family, n) that a generator in this toolkit
// can build, in increasing order. Families without a generator yield an
// empty list. Throws RangeError when the list would not fit in memory.
std::vector<std::int64_t> constructive_alphas(const WitnessFamily& family, int n);

// Whether a generator exists for (family, n, alpha).
bool is_constructive(const WitnessFamily& family, int n, std::int64_t alpha);

// Throws RangeError naming the interval and the constructive range when
// (n, alpha) is not supported. Every generator entry point calls this.
void require_constructive(const WitnessFamily& family, int n, std::int64_t alpha);

// Human-readable description of the constructive range, e.g.
// "[5, 7] (quadratic) and {7, 9} (exponential)".
std::string describe_constructive(const WitnessFamily& family, int n);

}  // namespace magic
