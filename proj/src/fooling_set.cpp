#include "magic/fooling_set.hpp"

#include "magic/error.hpp"

namespace magic {

FoolingResult verify_fooling_set(const Dfa& lang, const FoolingSet& s)
{
    lang.validate();
    const std::size_t count = s.pairs.size();
    const auto concat_accepted = [&](const Word& x, const Word& y) {
        State q = lang.initial();
        for (Symbol a : x) {
            if (a >= lang.alphabet().size()) {
                throw InputError("fooling-set word uses a symbol outside the alphabet");
            }
            q = lang.next(q, a);
        }
        for (Symbol a : y) {
            if (a >= lang.alphabet().size()) {
                throw InputError("fooling-set word uses a symbol outside the alphabet");
            }
            q = lang.next(q, a);
        }
        return lang.is_accepting(q);
    };
    for (std::size_t i = 0; i < count; ++i) {
        if (!concat_accepted(s.pairs[i].first, s.pairs[i].second)) {
            return FoolingResult{0, std::make_pair(i, i)};
        }
    }
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            if (concat_accepted(s.pairs[i].first, s.pairs[j].second) &&
                concat_accepted(s.pairs[j].first, s.pairs[i].second)) {
                return FoolingResult{0, std::make_pair(i, j)};
            }
        }
    }
    return FoolingResult{count, std::nullopt};
}

std::string format_fooling_set(const Alphabet& alphabet, const FoolingSet& s)
{
    std::string out;
    for (const auto& [x, y] : s.pairs) {
        out += format_word(alphabet, x) + '|' + format_word(alphabet, y) + '\n';
    }
    return out;
}

FoolingSet parse_fooling_set(const Alphabet& alphabet, std::string_view text)
{
    FoolingSet s;
    std::size_t begin = 0;
    std::size_t line_no = 0;
    while (begin < text.size()) {
        std::size_t end = text.find('\n', begin);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        std::string_view line = text.substr(begin, end - begin);
        begin = end + 1;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.find_first_not_of(" \t") == std::string_view::npos) {
            continue;
        }
        const std::size_t bar = line.find('|');
        if (bar == std::string_view::npos || line.find('|', bar + 1) != std::string_view::npos) {
            throw InputError("fooling-set line " + std::to_string(line_no) + " needs exactly one '|'");
        }
        s.pairs.emplace_back(parse_word(alphabet, line.substr(0, bar)), parse_word(alphabet, line.substr(bar + 1)));
    }
    return s;
}

}  // namespace magic
