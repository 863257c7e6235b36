#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "magic/brute_oracle.hpp"
#include "magic/generators.hpp"

namespace magic {

using Json = nlohmann::ordered_json;

enum class Minimality { ExhaustiveCertified, FoolingSetBound, PaperAsserted };

std::string_view minimality_name(Minimality m);

struct VerificationReport {
    WitnessSpec spec;
    std::int64_t measured_alpha = 0;
    std::vector<std::pair<Family, bool>> family_checks;  // the families required for the spec
    std::optional<std::size_t> fooling_bound;
    Minimality nfa_minimality = Minimality::PaperAsserted;
    // Infix-closed cells also record the structural check on A1.
    std::optional<bool> all_initial_accepting;
    bool pass = false;
    std::optional<double> timing_ms;  // only filled when timing was requested
    std::vector<std::string> notes;
};

// Family checks a witness family must pass: infix-closed -> InfixClosed,
// suffix-closed -> SuffixClosed, finite -> Finite and StarFree.
std::vector<Family> required_families(const WitnessFamily& family);

struct VerifyOptions {
    unsigned workers = 1;
    bool timing = false;
    // Exhaustive NFA-minimality certification is attempted up to this n.
    int certify_max_n = 3;
};

VerificationReport verify_witness(const Witness& w, const VerifyOptions& options = {});
// Generation errors become failing reports carrying the message in notes.
VerificationReport verify_cell(const WitnessFamily& family, int n, std::int64_t alpha, const std::string& generator,
                               const VerifyOptions& options = {});

struct GridCell {
    int n = 0;
    std::int64_t alpha = 0;
    std::string generator;
};

// Cells ordered by (n, alpha, generator). With no explicit alphas, each n
// expands to constructive_alphas(family, n); finite cells appear once per
// applicable generator.
std::vector<GridCell> expand_grid(const WitnessFamily& family, int n_lo, int n_hi,
                                  const std::optional<std::vector<std::int64_t>>& alphas);

// Results come back in cell order whatever the completion order.
std::vector<VerificationReport> verify_grid(const WitnessFamily& family, const std::vector<GridCell>& cells,
                                            const VerifyOptions& options = {});

// "PASS 12/12" when every cell passes, "FAIL 11/12" otherwise.
std::string summary_line(const std::vector<VerificationReport>& reports);

Json to_json(const WitnessSpec& spec);
Json to_json(const VerificationReport& r);
Json to_json(const std::vector<VerificationReport>& reports);
Json to_json(const SpectrumResult& r);
Json to_json(const Theorem4Result& r);

// Columns family,n,alpha,measured,pass,ms; ms is 0 without timing.
std::string to_csv(const std::vector<VerificationReport>& reports);

// Plain-text bounds table; with n given, each row also shows its evaluated interval.
std::string format_bounds(std::optional<int> n = std::nullopt);

}  // namespace magic
