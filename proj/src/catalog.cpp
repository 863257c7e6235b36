#include <sstream>

#include "magic/error.hpp"
#include "magic/generators.hpp"
#include "magic/text_format.hpp"

namespace magic {

namespace detail {
extern const std::string_view kSuffixClosedCatalogText;
}

std::string_view suffix_closed_catalog_text() { return detail::kSuffixClosedCatalogText; }

std::vector<CatalogEntry> parse_catalog(std::string_view text)
{
    enum class Section { None, Fooling, Automaton };
    struct Pending {
        int n = 0;
        std::string language;
        std::string fooling;
        std::string automaton;
    };

    std::vector<Pending> pending;
    bool saw_version = false;
    Section section = Section::None;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '%') {
            continue;
        }
        if (line.rfind("version:", 0) == 0) {
            if (line != "version: 1") {
                throw InputError("unsupported catalog version line '" + line + "'");
            }
            saw_version = true;
            continue;
        }
        if (line.rfind("=== n ", 0) == 0) {
            pending.emplace_back();
            pending.back().n = std::stoi(line.substr(6));
            section = Section::None;
            continue;
        }
        if (pending.empty()) {
            throw InputError("catalog text before the first entry: '" + line + "'");
        }
        Pending& p = pending.back();
        if (section == Section::None && line.rfind("language:", 0) == 0) {
            p.language = line.substr(line.find(':') + 2);
        } else if (line == "fooling:") {
            section = Section::Fooling;
        } else if (line == "automaton:") {
            section = Section::Automaton;
        } else if (section == Section::Fooling) {
            p.fooling += line + '\n';
        } else if (section == Section::Automaton) {
            p.automaton += line + '\n';
        } else {
            throw InputError("unexpected catalog line '" + line + "'");
        }
    }
    if (!saw_version) {
        throw InputError("catalog lacks a version line");
    }

    std::vector<CatalogEntry> out;
    for (const auto& p : pending) {
        Nfa nfa = parse_nfa(p.automaton);
        if (nfa.state_count() != static_cast<std::size_t>(p.n)) {
            throw InputError("catalog entry n = " + std::to_string(p.n) + " has the wrong state count");
        }
        FoolingSet fooling = parse_fooling_set(nfa.alphabet(), p.fooling);
        out.push_back(CatalogEntry{p.n, p.language, std::move(nfa), std::move(fooling)});
    }
    return out;
}

const std::vector<CatalogEntry>& suffix_closed_catalog()
{
    static const std::vector<CatalogEntry> entries = parse_catalog(suffix_closed_catalog_text());
    return entries;
}

int suffix_closed_catalog_max_n()
{
    int best = 0;
    for (const auto& e : suffix_closed_catalog()) {
        best = std::max(best, e.n);
    }
    return best;
}

}  // namespace magic
