#include "magic/bounds.hpp"

#include <algorithm>

#include "magic/decomposition.hpp"
#include "magic/error.hpp"
#include "magic/generators.hpp"

namespace magic {

namespace {

constexpr std::pair<Family, std::string_view> kNames[] = {
    {Family::PrefixFree, "prefix-free"},     {Family::SuffixFree, "suffix-free"},
    {Family::InfixFree, "infix-free"},       {Family::PrefixClosed, "prefix-closed"},
    {Family::SuffixClosed, "suffix-closed"}, {Family::InfixClosed, "infix-closed"},
    {Family::Finite, "finite"},              {Family::Star, "star"},
    {Family::StarFree, "star-free"},
};

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

constexpr std::size_t kMaxListedAlphas = std::size_t{1} << 24;

void require_n(int n)
{
    if (n < 1 || n > kMaxBoundsN) {
        throw RangeError("n must lie in [1, " + std::to_string(kMaxBoundsN) + "], got " + std::to_string(n));
    }
}

std::string interval_text(const AlphaInterval& iv)
{
    return "[" + std::to_string(iv.lower) + ", " + (iv.upper ? std::to_string(*iv.upper) : std::string("?")) + "]";
}

}  // namespace

std::string_view family_name(Family f)
{
    for (const auto& [family, name] : kNames) {
        if (family == f) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name)
{
    for (const auto& [family, n] : kNames) {
        if (n == name) {
            return family;
        }
    }
    return std::nullopt;
}

std::string witness_family_name(const WitnessFamily& f)
{
    return f ? std::string(family_name(*f)) : std::string("general");
}

WitnessFamily parse_witness_family(std::string_view name)
{
    if (name == "general") {
        return std::nullopt;
    }
    if (const auto f = parse_family(name)) {
        return f;
    }
    throw InputError("unknown family '" + std::string(name) + "'");
}

const std::vector<BoundsRow>& bounds_table()
{
    static const std::vector<BoundsRow> rows = {
        {std::nullopt, "n", "2^n", "JJS automaton inside, boundary witnesses at both ends"},
        {Family::StarFree, "n", "2^n", "no constructive generator; spectrum search only"},
        {Family::Star, "n", "2^n", "no constructive generator; spectrum search only"},
        {Family::PrefixFree, "n+1", "2^(n-1)+1", "spectrum search only"},
        {Family::SuffixFree, "n+1", "2^(n-1)+1", "spectrum search only"},
        {Family::InfixFree, "n+1", "2^(n-2)+2", "n >= 2; spectrum search only"},
        {Family::PrefixClosed, "n+1", "2^n", "alpha = n only for n = 1; spectrum search only"},
        {Family::InfixClosed, "n+1", "2^(n-1)+1", "alpha = n only for n = 1; generator covers alpha <= 2^(n-1)"},
        {Family::SuffixClosed, "n", "2^(n-1)+1",
         "generator covers alpha <= 2^(n-1); alpha = n from the catalog for n <= 5"},
        {Family::Finite, "n+1", "?",
         "binary generators: quadratic [n+1, (n/2)^2+n/2+1] (even) or [n+1, ((n-1)/2)^2+n+1] (odd), "
         "plus base + 2^i - 1 with base 3*2^(n/2-1) (even) or 2^((n+1)/2) (odd)"},
    };
    return rows;
}

AlphaInterval family_interval(const WitnessFamily& family, int n)
{
    require_n(n);
    if (!family) {
        return {n, pow2(n)};
    }
    switch (*family) {
    case Family::StarFree:
    case Family::Star:
        return {n, pow2(n)};
    case Family::PrefixFree:
    case Family::SuffixFree:
        return {n + 1, pow2(n - 1) + 1};
    case Family::InfixFree:
        return {n + 1, n >= 2 ? pow2(n - 2) + 2 : std::int64_t{2}};
    case Family::PrefixClosed:
        return {n == 1 ? 1 : n + 1, pow2(n)};
    case Family::InfixClosed:
        return {n == 1 ? 1 : n + 1, pow2(n - 1) + 1};
    case Family::SuffixClosed:
        return {n, pow2(n - 1) + 1};
    case Family::Finite:
        return {n + 1, std::nullopt};
    }
    return {n, pow2(n)};
}

std::vector<std::int64_t> constructive_alphas(const WitnessFamily& family, int n)
{
    require_n(n);
    std::vector<std::int64_t> out;
    const auto add_range = [&](std::int64_t lo, std::int64_t hi) {
        if (hi >= lo && static_cast<std::size_t>(hi - lo + 1) > kMaxListedAlphas) {
            throw RangeError("too many alpha values to list for n = " + std::to_string(n));
        }
        for (std::int64_t a = lo; a <= hi; ++a) {
            out.push_back(a);
        }
    };
    if (!family) {
        add_range(n, pow2(n));
        return out;
    }
    switch (*family) {
    case Family::InfixClosed:
        if (n == 1) {
            out.push_back(1);
        } else {
            add_range(n + 1, pow2(n - 1));
        }
        break;
    case Family::SuffixClosed:
        if (n == 1) {
            out.push_back(1);
        } else {
            if (n <= suffix_closed_catalog_max_n()) {
                out.push_back(n);
            }
            add_range(n + 1, pow2(n - 1));
        }
        break;
    case Family::Finite:
        add_range(n + 1, quadratic_upper(n));
        if (n >= 3) {
            for (std::int64_t a : exponential_alphas(n)) {
                out.push_back(a);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        break;
    default:
        break;
    }
    return out;
}

bool is_constructive(const WitnessFamily& family, int n, std::int64_t alpha)
{
    if (n < 1 || n > kMaxBoundsN) {
        return false;
    }
    if (!family) {
        return n <= alpha && alpha <= pow2(n);
    }
    switch (*family) {
    case Family::InfixClosed:
        return n == 1 ? alpha == 1 : (n < alpha && alpha <= pow2(n - 1));
    case Family::SuffixClosed:
        if (n == 1) {
            return alpha == 1;
        }
        return (alpha == n && n <= suffix_closed_catalog_max_n()) || (n < alpha && alpha <= pow2(n - 1));
    case Family::Finite: {
        if (n + 1 <= alpha && alpha <= quadratic_upper(n)) {
            return true;
        }
        if (n >= 3) {
            const auto alphas = exponential_alphas(n);
            return std::find(alphas.begin(), alphas.end(), alpha) != alphas.end();
        }
        return false;
    }
    default:
        return false;
    }
}

std::string describe_constructive(const WitnessFamily& family, int n)
{
    require_n(n);
    if (!family) {
        return "[" + std::to_string(n) + ", " + std::to_string(pow2(n)) + "]";
    }
    switch (*family) {
    case Family::InfixClosed:
        return n == 1 ? "{1}" : "[" + std::to_string(n + 1) + ", " + std::to_string(pow2(n - 1)) + "]";
    case Family::SuffixClosed: {
        if (n == 1) {
            return "{1}";
        }
        const int lo = n <= suffix_closed_catalog_max_n() ? n : n + 1;
        return "[" + std::to_string(lo) + ", " + std::to_string(pow2(n - 1)) + "]";
    }
    case Family::Finite: {
        std::string out = "[" + std::to_string(n + 1) + ", " + std::to_string(quadratic_upper(n)) + "] (quadratic)";
        if (n >= 3) {
            out += " and {";
            const auto alphas = exponential_alphas(n);
            for (std::size_t i = 0; i < alphas.size(); ++i) {
                out += (i > 0 ? ", " : "") + std::to_string(alphas[i]);
            }
            out += "} (exponential)";
        }
        return out;
    }
    default:
        return "none (no generator for this family)";
    }
}

void require_constructive(const WitnessFamily& family, int n, std::int64_t alpha)
{
    if (n < 1 || n > kMaxBoundsN) {
        throw RangeError("n must lie in [1, " + std::to_string(kMaxBoundsN) + "], got " + std::to_string(n));
    }
    if (is_constructive(family, n, alpha)) {
        return;
    }
    std::string msg = "alpha = " + std::to_string(alpha) + " is not supported for " + witness_family_name(family) +
                      " at n = " + std::to_string(n) + "; bounds-table interval " +
                      interval_text(family_interval(family, n)) + ", constructive range " +
                      describe_constructive(family, n);
    if (family == Family::InfixClosed || family == Family::SuffixClosed) {
        if (n >= 2 && alpha == pow2(n - 1) + 1) {
            msg += "; alpha = 2^(n-1)+1 is out of scope";
        }
    }
    if (family == Family::SuffixClosed && n >= 2 && alpha == n && n > suffix_closed_catalog_max_n()) {
        msg += "; alpha = n is not constructively supported beyond the catalog";
    }
    throw RangeError(msg);
}

}  // namespace magic
