#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "magic/bounds.hpp"
#include "magic/brute_oracle.hpp"
#include "magic/error.hpp"
#include "magic/language_analysis.hpp"
#include "magic/report.hpp"
#include "magic/text_format.hpp"

namespace {

using namespace magic;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

std::pair<int, int> parse_n_range(const std::string& text)
{
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw InputError("bad n range '" + text + "' (expected N or LO..HI)");
    }
}

std::optional<std::vector<std::int64_t>> parse_alpha_list(const std::string& text)
{
    if (text == "all") {
        return std::nullopt;
    }
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            out.push_back(std::stoll(item));
        } catch (const std::logic_error&) {
            throw InputError("bad alpha '" + item + "' (expected 'all' or a comma-separated list)");
        }
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

struct GenArgs {
    std::string family = "general";
    int n = 0;
    std::int64_t alpha = 0;
    std::string generator;
    std::string output;
    std::string fooling_output;
    bool mnfa = false;
};

int run_gen(const GenArgs& a)
{
    const WitnessFamily family = parse_witness_family(a.family);
    Witness w = generate(family, a.n, a.alpha, a.generator);
    if (a.mnfa && !w.mnfa) {
        throw InputError("generator '" + w.spec.generator + "' has no MNFA stage");
    }
    emit(a.output, to_text(a.mnfa ? *w.mnfa : w.nfa));
    if (!a.fooling_output.empty()) {
        if (!w.fooling) {
            throw InputError("generator '" + w.spec.generator + "' has no fooling set");
        }
        write_file(a.fooling_output, format_fooling_set(w.nfa.alphabet(), *w.fooling));
    }
    std::cerr << to_json(w.spec).dump() << '\n';
    return kExitPass;
}

struct VerifyArgs {
    std::string family = "general";
    std::string n_range;
    std::string alpha = "all";
    std::string output;
    std::string csv;
    unsigned workers = 1;
    bool timing = false;
};

int run_verify(const VerifyArgs& a)
{
    const WitnessFamily family = parse_witness_family(a.family);
    const auto [lo, hi] = parse_n_range(a.n_range);
    const auto cells = expand_grid(family, lo, hi, parse_alpha_list(a.alpha));
    VerifyOptions options;
    options.workers = a.workers;
    options.timing = a.timing;
    const auto reports = verify_grid(family, cells, options);
    emit(a.output, to_json(reports).dump(2) + "\n");
    if (!a.csv.empty()) {
        emit(a.csv, to_csv(reports));
    }
    const std::string summary = summary_line(reports);
    std::cerr << summary << '\n';
    return summary.rfind("PASS", 0) == 0 ? kExitPass : kExitFail;
}

struct SpectrumArgs {
    std::string family;
    int n = 0;
    int sigma = 2;
    bool exhaustive = false;
    bool sampled = false;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string filter = "none";
    std::string output;
};

int run_spectrum(const SpectrumArgs& a)
{
    const auto family = parse_family(a.family);
    if (!family) {
        throw InputError("unknown family '" + a.family + "'");
    }
    const auto filter = parse_filter(a.filter);
    if (!filter) {
        throw InputError("unknown structural filter '" + a.filter + "'");
    }
    if (a.exhaustive == a.sampled) {
        throw InputError("choose exactly one of --exhaustive and --sampled");
    }
    SpectrumOptions options;
    options.mode = a.exhaustive ? SearchMode::Exhaustive : SearchMode::Sampled;
    options.budget = a.budget;
    options.seed = a.seed;
    options.workers = a.workers;
    options.filter = *filter;
    const SpectrumResult r = spectrum_search(*family, a.n, a.sigma, options);
    emit(a.output, to_json(r).dump(2) + "\n");
    std::cerr << "achieved:";
    for (const auto& [alpha, w] : r.achieved) {
        std::cerr << ' ' << alpha;
    }
    std::cerr << '\n';
    return kExitPass;
}

struct CheckArgs {
    std::string property;
    std::string input;
    std::string fooling;
    std::size_t max_monoid = kDefaultMaxMonoid;
};

int verdict(bool ok, const std::string& evidence)
{
    std::cout << (ok ? "true" : "false") << '\n';
    if (!evidence.empty()) {
        std::cout << evidence << '\n';
    }
    return ok ? kExitPass : kExitFail;
}

int run_check(const CheckArgs& a)
{
    const ParsedAutomaton parsed = parse_automaton(read_file(a.input));
    const Dfa dfa = parsed.dfa ? *parsed.dfa : determinize(parsed.nfa);
    const Alphabet& alphabet = parsed.nfa.alphabet();

    if (a.property == "aperiodic") {
        const FamilyVerdict v = check_family(dfa, Family::StarFree, a.max_monoid);
        return verdict(v.member, v.witness ? "cycle word: " + format_word(alphabet, *v.witness) : std::string());
    }
    if (a.property == "lemma1") {
        const Dfa labelled = determinize(parsed.dfa ? to_nfa(*parsed.dfa) : parsed.nfa);
        const auto cycles = find_permutation_cycles(labelled, a.max_monoid);
        for (const auto& c : cycles) {
            if (!check_lemma1(c)) {
                std::string evidence = "cycle word: " + format_word(alphabet, c.word) + "; labels:";
                for (const auto& l : c.labels) {
                    evidence += " " + l.to_string();
                }
                return verdict(false, evidence);
            }
        }
        return verdict(true, std::to_string(cycles.size()) + " cycles checked");
    }
    if (a.property == "fooling-set") {
        if (a.fooling.empty()) {
            throw InputError("fooling-set check needs --fooling FILE");
        }
        const FoolingSet s = parse_fooling_set(alphabet, read_file(a.fooling));
        const FoolingResult r = verify_fooling_set(dfa, s);
        if (r.counterexample) {
            return verdict(false, "pair indices: " + std::to_string(r.counterexample->first) + " " +
                                      std::to_string(r.counterexample->second));
        }
        return verdict(true, "bound: " + std::to_string(r.bound));
    }
    const auto family = parse_family(a.property);
    if (!family) {
        throw InputError("unknown property '" + a.property + "'");
    }
    const FamilyVerdict v = check_family(dfa, *family, a.max_monoid);
    std::string evidence = v.explanation;
    if (v.witness) {
        evidence += (evidence.empty() ? "" : "; ") + std::string("word: ") + format_word(alphabet, *v.witness);
    }
    return verdict(v.member, evidence);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Magic-number witnesses for NFA to DFA conversion"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML file with one [subcommand] section per subcommand; flags win");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write a witness NFA in the text format");
    gen_cmd->add_option("--family", gen.family, "general or a family name")->capture_default_str();
    gen_cmd->add_option("--n", gen.n, "State count")->required();
    gen_cmd->add_option("--alpha", gen.alpha, "Target minimal DFA size")->required();
    gen_cmd->add_option("--generator", gen.generator, "Generator name when several apply");
    gen_cmd->add_option("-o,--output", gen.output, "Output file (stdout by default)");
    gen_cmd->add_option("--fooling", gen.fooling_output, "Also write the fooling set to this file");
    gen_cmd->add_flag("--mnfa", gen.mnfa, "Write the MNFA stage of the infix-closed construction");

    VerifyArgs ver;
    ver.workers = default_workers();
    auto* ver_cmd = app.add_subcommand("verify", "Generate and verify a grid of witnesses");
    ver_cmd->add_option("--family", ver.family, "general or a family name")->capture_default_str();
    ver_cmd->add_option("--n", ver.n_range, "N or LO..HI")->required();
    ver_cmd->add_option("--alpha", ver.alpha, "'all' or a comma-separated list")->capture_default_str();
    ver_cmd->add_option("-o,--output", ver.output, "JSON report file (stdout by default)");
    ver_cmd->add_option("--csv", ver.csv, "Also write the CSV projection to this file");
    ver_cmd->add_option("--workers", ver.workers, "Worker threads")->check(CLI::PositiveNumber);
    ver_cmd->add_flag("--timing", ver.timing, "Record per-cell wall time (reports stop being reproducible)");

    SpectrumArgs spec;
    auto* spec_cmd = app.add_subcommand("spectrum", "Search the achievable DFA sizes of a family");
    spec_cmd->add_option("--family", spec.family, "Family name")->required();
    spec_cmd->add_option("--n", spec.n, "State count")->required();
    spec_cmd->add_option("--sigma", spec.sigma, "Alphabet size")->capture_default_str();
    spec_cmd->add_flag("--exhaustive", spec.exhaustive, "Enumerate every NFA");
    spec_cmd->add_flag("--sampled", spec.sampled, "Draw --budget random NFAs");
    spec_cmd->add_option("--budget", spec.budget, "Number of samples");
    spec_cmd->add_option("--seed", spec.seed, "PRNG seed")->capture_default_str();
    spec_cmd->add_option("--workers", spec.workers, "Worker threads")->check(CLI::PositiveNumber);
    spec_cmd->add_option("--filter", spec.filter, "Structural filter")->capture_default_str();
    spec_cmd->add_option("-o,--output", spec.output, "JSON report file (stdout by default)");

    CheckArgs chk;
    auto* chk_cmd = app.add_subcommand("check", "Run one checker on an automaton file");
    chk_cmd->add_option("--property", chk.property, "Family name, aperiodic, lemma1 or fooling-set")->required();
    chk_cmd->add_option("input", chk.input, "Automaton file")->required();
    chk_cmd->add_option("--fooling", chk.fooling, "Fooling-set sidecar file");
    chk_cmd->add_option("--max-monoid", chk.max_monoid, "Transition monoid cap")->capture_default_str();

    std::optional<int> bounds_n;
    auto* bounds_cmd = app.add_subcommand("bounds", "Print the bounds table");
    bounds_cmd->add_option("--n", bounds_n, "Also evaluate each interval at this n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*gen_cmd) {
            return run_gen(gen);
        }
        if (*ver_cmd) {
            return run_verify(ver);
        }
        if (*spec_cmd) {
            return run_spectrum(spec);
        }
        if (*chk_cmd) {
            return run_check(chk);
        }
        if (*bounds_cmd) {
            std::cout << format_bounds(bounds_n);
            return kExitPass;
        }
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
