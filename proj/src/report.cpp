#include "magic/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

#include "magic/bounds.hpp"
#include "magic/error.hpp"
#include "magic/language_analysis.hpp"
#include "magic/text_format.hpp"

namespace magic {

std::string_view minimality_name(Minimality m)
{
    switch (m) {
    case Minimality::ExhaustiveCertified: return "exhaustive-certified";
    case Minimality::FoolingSetBound: return "fooling-set-bound";
    case Minimality::PaperAsserted: return "paper-asserted";
    }
    return "paper-asserted";
}

std::vector<Family> required_families(const WitnessFamily& family)
{
    if (!family) {
        return {};
    }
    switch (*family) {
    case Family::Finite: return {Family::Finite, Family::StarFree};
    default: return {*family};
    }
}

VerificationReport verify_witness(const Witness& w, const VerifyOptions& options)
{
    VerificationReport r;
    r.spec = w.spec;
    const Dfa minimal = minimize(determinize(w.nfa, DeterminizeOptions{subset_cap_from_env(), false}));
    r.measured_alpha = static_cast<std::int64_t>(minimal.state_count());
    bool families_ok = true;
    for (Family f : required_families(w.spec.family)) {
        const bool ok = is_in_family(minimal, f);
        r.family_checks.emplace_back(f, ok);
        families_ok = families_ok && ok;
    }
    if (w.mnfa) {
        r.all_initial_accepting = structural_all_initial_accepting(*w.mnfa);
    }
    if (w.fooling) {
        r.fooling_bound = verify_fooling_set(minimal, *w.fooling).bound;
    }

    const int n = w.spec.n;
    bool certified = false;
    if (n <= options.certify_max_n && min_nfa_size_feasible(n - 1, effective_alphabet_size(minimal))) {
        certified = !min_nfa_size_exact(minimal, n - 1).has_value();
        if (!certified) {
            r.notes.emplace_back("a smaller NFA accepts the same language");
        }
    }
    if (certified) {
        r.nfa_minimality = Minimality::ExhaustiveCertified;
    } else if (r.fooling_bound && *r.fooling_bound == static_cast<std::size_t>(n)) {
        r.nfa_minimality = Minimality::FoolingSetBound;
    } else {
        r.nfa_minimality = Minimality::PaperAsserted;
    }
    r.pass = r.measured_alpha == w.spec.alpha && families_ok;
    return r;
}

VerificationReport verify_cell(const WitnessFamily& family, int n, std::int64_t alpha, const std::string& generator,
                               const VerifyOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    VerificationReport r;
    try {
        r = verify_witness(generate(family, n, alpha, generator), options);
    } catch (const ResourceError&) {
        throw;
    } catch (const Error& e) {
        r = VerificationReport{};
        r.spec = WitnessSpec{family, n, alpha, generator, std::monostate{}};
        r.notes.emplace_back(e.what());
        r.pass = false;
    }
    if (options.timing) {
        r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
}

std::vector<GridCell> expand_grid(const WitnessFamily& family, int n_lo, int n_hi,
                                  const std::optional<std::vector<std::int64_t>>& alphas)
{
    if (n_lo < 1 || n_hi < n_lo) {
        throw RangeError("empty n range " + std::to_string(n_lo) + ".." + std::to_string(n_hi));
    }
    std::vector<GridCell> cells;
    for (int n = n_lo; n <= n_hi; ++n) {
        std::vector<std::int64_t> values = alphas ? *alphas : constructive_alphas(family, n);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::int64_t alpha : values) {
            auto names = generators_for(family, n, alpha);
            if (names.empty()) {
                // Kept so the report names the unsupported cell.
                names.emplace_back();
            }
            std::sort(names.begin(), names.end());
            for (auto& g : names) {
                cells.push_back(GridCell{n, alpha, std::move(g)});
            }
        }
    }
    return cells;
}

std::vector<VerificationReport> verify_grid(const WitnessFamily& family, const std::vector<GridCell>& cells,
                                            const VerifyOptions& options)
{
    std::vector<VerificationReport> out(cells.size());
    const unsigned workers = std::max(1U, std::min<unsigned>(options.workers, static_cast<unsigned>(cells.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    const auto work = [&](unsigned w) {
        try {
            for (std::size_t i = next++; i < cells.size(); i = next++) {
                out[i] = verify_cell(family, cells[i].n, cells[i].alpha, cells[i].generator, options);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back(work, w);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

std::string summary_line(const std::vector<VerificationReport>& reports)
{
    const auto passed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
    const bool all = static_cast<std::size_t>(passed) == reports.size();
    return std::string(all ? "PASS " : "FAIL ") + std::to_string(passed) + "/" + std::to_string(reports.size());
}

namespace {

Json parameters_json(const WitnessParameters& p)
{
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, AlphaDecomposition>) {
                return Json{{"k", v.k},
                            {"m", v.m},
                            {"kis", v.kis},
                            {"doubled_last", v.doubled_last},
                            {"relaxed_ell", v.relaxed_ell()},
                            {"rendered", render(v)}};
            } else if constexpr (std::is_same_v<T, QuadraticParams>) {
                return Json{{"k", v.k}, {"m", v.m}};
            } else {
                return Json{{"beta", v.beta}, {"i", v.i}, {"x", v.x}};
            }
        },
        p);
}

}  // namespace

Json to_json(const WitnessSpec& spec)
{
    return Json{{"family", witness_family_name(spec.family)},
                {"n", spec.n},
                {"alpha", spec.alpha},
                {"generator", spec.generator},
                {"parameters", parameters_json(spec.parameters)}};
}

Json to_json(const VerificationReport& r)
{
    Json checks = Json::object();
    for (const auto& [f, ok] : r.family_checks) {
        checks[std::string(family_name(f))] = ok;
    }
    Json j{{"spec", to_json(r.spec)}, {"measured_alpha", r.measured_alpha}, {"family_checks", checks}};
    j["fooling_bound"] = r.fooling_bound ? Json(*r.fooling_bound) : Json(nullptr);
    j["nfa_minimality"] = std::string(minimality_name(r.nfa_minimality));
    if (r.all_initial_accepting) {
        j["all_initial_accepting"] = *r.all_initial_accepting;
    }
    j["pass"] = r.pass;
    if (r.timing_ms) {
        j["timing_ms"] = *r.timing_ms;
    }
    if (!r.notes.empty()) {
        j["notes"] = r.notes;
    }
    return j;
}

Json to_json(const std::vector<VerificationReport>& reports)
{
    Json arr = Json::array();
    for (const auto& r : reports) {
        arr.push_back(to_json(r));
    }
    return arr;
}

Json to_json(const SpectrumResult& r)
{
    Json achieved = Json::object();
    Json indices = Json::object();
    for (const auto& [alpha, w] : r.achieved) {
        achieved[std::to_string(alpha)] = to_text(w.nfa);
        indices[std::to_string(alpha)] = w.index;
    }
    const bool exhaustive = r.mode == SearchMode::Exhaustive;
    return Json{{"family", std::string(family_name(r.family))},
                {"n", r.n},
                {"sigma", r.sigma},
                {"mode", exhaustive ? "exhaustive" : "sampled"},
                {"seed", r.seed},
                {"budget", r.budget},
                {"achieved", achieved},
                {exhaustive ? "witness_codes" : "witness_samples", indices},
                {"stats",
                 {{"visited", r.stats.visited},
                  {"connected", r.stats.connected},
                  {"languages", r.stats.languages},
                  {"members", r.stats.members},
                  {"certified", r.stats.certified}}}};
}

Json to_json(const Theorem4Result& r)
{
    Json j{{"holds", r.holds}, {"free_languages", r.free_languages}, {"certified_minimal", r.certified_minimal}};
    j["counterexample"] = r.counterexample ? Json(to_text(*r.counterexample)) : Json(nullptr);
    return j;
}

std::string to_csv(const std::vector<VerificationReport>& reports)
{
    std::ostringstream out;
    out << "family,n,alpha,measured,pass,ms\n";
    for (const auto& r : reports) {
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", r.timing_ms.value_or(0.0));
        out << witness_family_name(r.spec.family) << ',' << r.spec.n << ',' << r.spec.alpha << ','
            << r.measured_alpha << ',' << (r.pass ? "true" : "false") << ',' << (r.timing_ms ? ms : "0") << '\n';
    }
    return out.str();
}

std::string format_bounds(std::optional<int> n)
{
    std::ostringstream out;
    out << "family          lower  upper      ";
    if (n) {
        out << "interval(n=" << *n << ")  ";
    }
    out << "note\n";
    for (const auto& row : bounds_table()) {
        std::string name = witness_family_name(row.family);
        name.resize(std::max<std::size_t>(name.size(), 16), ' ');
        std::string lower = row.lower;
        lower.resize(std::max<std::size_t>(lower.size(), 7), ' ');
        std::string upper = row.upper;
        upper.resize(std::max<std::size_t>(upper.size(), 11), ' ');
        out << name << lower << upper;
        if (n) {
            const AlphaInterval iv = family_interval(row.family, *n);
            std::string text = "[" + std::to_string(iv.lower) + ", " + (iv.upper ? std::to_string(*iv.upper) : "?") + "]";
            text.resize(std::max<std::size_t>(text.size(), 14 + std::to_string(*n).size()), ' ');
            out << text;
        }
        out << row.note << '\n';
    }
    return out.str();
}

}  // namespace magic
