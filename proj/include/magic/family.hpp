#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace magic {

enum class Family {
    PrefixFree,
    SuffixFree,
    InfixFree,
    PrefixClosed,
    SuffixClosed,
    InfixClosed,
    Finite,
    Star,
    StarFree,
};

inline constexpr std::array<Family, 9> kAllFamilies = {
    Family::PrefixFree,   Family::SuffixFree,  Family::InfixFree, Family::PrefixClosed, Family::SuffixClosed,
    Family::InfixClosed,  Family::Finite,      Family::Star,      Family::StarFree,
};

// Kebab-case names used by the CLI and in reports: "prefix-free", "star-free".
std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

// Generator targets: a family, or no restriction ("general").
using WitnessFamily = std::optional<Family>;

std::string witness_family_name(const WitnessFamily& f);
// Accepts "general" in addition to the family names. Throws InputError.
WitnessFamily parse_witness_family(std::string_view name);

}  // namespace magic
