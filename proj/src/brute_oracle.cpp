#include "magic/brute_oracle.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <limits>
#include <thread>
#include <unordered_map>

#include "magic/error.hpp"
#include "magic/language_analysis.hpp"

namespace magic {

namespace {

// Up to 8 states per automaton, which keeps subsets in a byte.
constexpr int kMaxPackedStates = 8;
constexpr int kMaxPackedCells = 64;
constexpr int kMinNfaGuard = 36;

// Bitmask NFA used on the hot enumeration path. delta[q * stride + s] is the
// image of q under symbol s for s < sigma.
struct Packed {
    int n = 0;
    int sigma = 0;
    int stride = 0;
    std::uint32_t init = 0;
    std::uint32_t acc = 0;
    std::array<std::uint32_t, kMaxPackedCells> delta{};

    std::uint32_t image(std::uint32_t set, int s) const
    {
        std::uint32_t out = 0;
        while (set != 0) {
            const int q = __builtin_ctz(set);
            out |= delta[static_cast<std::size_t>(q * stride + s)];
            set &= set - 1;
        }
        return out;
    }
};

std::uint32_t full_mask(int n) { return n >= 32 ? 0xFFFFFFFFU : ((std::uint32_t{1} << n) - 1); }

bool packed_connected(const Packed& p)
{
    std::uint32_t seen = p.init;
    std::uint32_t frontier = p.init;
    while (frontier != 0) {
        std::uint32_t next = 0;
        for (int s = 0; s < p.sigma; ++s) {
            next |= p.image(frontier, s);
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == full_mask(p.n);
}

bool packed_passes(const Packed& p, StructuralFilter f)
{
    switch (f) {
    case StructuralFilter::NonReturning:
        for (int i = 0; i < p.n * p.stride; ++i) {
            if ((p.delta[static_cast<std::size_t>(i)] & p.init) != 0) {
                return false;
            }
        }
        return true;
    case StructuralFilter::NonExiting:
        for (int q = 0; q < p.n; ++q) {
            if (((p.acc >> q) & 1U) == 0) {
                continue;
            }
            for (int s = 0; s < p.sigma; ++s) {
                if (p.delta[static_cast<std::size_t>(q * p.stride + s)] != 0) {
                    return false;
                }
            }
        }
        return true;
    default:
        return true;
    }
}

Packed decode_packed(const EnumerationSpace& space, std::uint64_t code)
{
    Packed p;
    p.n = space.n;
    p.sigma = space.sigma;
    p.stride = space.sigma;
    const std::uint32_t mask = full_mask(space.n);
    for (int cell = 0; cell < space.n * space.sigma; ++cell) {
        p.delta[static_cast<std::size_t>(cell)] =
            static_cast<std::uint32_t>(code >> (cell * space.n)) & mask;
    }
    switch (space.filter) {
    case StructuralFilter::AllAccepting:
        p.init = 1;
        p.acc = mask;
        break;
    case StructuralFilter::AllInitialAccepting:
        p.init = mask;
        p.acc = mask;
        break;
    default:
        p.init = 1;
        p.acc = static_cast<std::uint32_t>(code >> space.transition_bits) & mask;
        break;
    }
    return p;
}

// Emits the key of a DFA given by (initial, accepting, table) after renumbering
// its reachable states breadth-first with symbols in order. Layout per state:
// accepting byte, then one byte per symbol. Requires at most 256 states.
template <typename IsAccepting, typename Next>
int emit_key(std::size_t m, std::uint32_t initial, int sigma, IsAccepting&& is_accepting, Next&& next,
             std::string& key)
{
    std::array<std::int16_t, 256> order{};
    order.fill(-1);
    std::array<std::uint8_t, 256> queue{};
    std::size_t head = 0;
    std::size_t tail = 0;
    order[initial] = 0;
    queue[tail++] = static_cast<std::uint8_t>(initial);
    key.clear();
    while (head < tail) {
        const std::uint32_t q = queue[head++];
        key.push_back(is_accepting(q) ? '\1' : '\0');
        for (int s = 0; s < sigma; ++s) {
            const std::uint32_t t = next(q, s);
            if (order[t] < 0) {
                order[t] = static_cast<std::int16_t>(tail);
                queue[tail++] = static_cast<std::uint8_t>(t);
            }
            key.push_back(static_cast<char>(order[t]));
        }
    }
    (void)m;
    return static_cast<int>(tail);
}

// Subset construction plus Moore refinement on the bitmask NFA. Returns the
// minimal DFA size and writes its canonical key.
int packed_minimal_key(const Packed& p, std::string& key)
{
    std::array<std::int16_t, 256> index{};
    index.fill(-1);
    std::array<std::uint8_t, 256> subsets{};
    std::array<std::uint8_t, 256 * kMaxPackedCells / kMaxPackedStates> table{};
    std::size_t m = 0;
    index[p.init] = 0;
    subsets[m++] = static_cast<std::uint8_t>(p.init);
    for (std::size_t i = 0; i < m; ++i) {
        for (int s = 0; s < p.sigma; ++s) {
            const std::uint32_t t = p.image(subsets[i], s);
            if (index[t] < 0) {
                index[t] = static_cast<std::int16_t>(m);
                subsets[m++] = static_cast<std::uint8_t>(t);
            }
            table[i * static_cast<std::size_t>(p.sigma) + static_cast<std::size_t>(s)] =
                static_cast<std::uint8_t>(index[t]);
        }
    }

    std::array<std::uint8_t, 256> cls{};
    std::size_t classes = 0;
    {
        bool any_acc = false;
        bool any_rej = false;
        for (std::size_t i = 0; i < m; ++i) {
            const bool a = (subsets[i] & p.acc) != 0;
            cls[i] = a ? 1 : 0;
            any_acc |= a;
            any_rej |= !a;
        }
        classes = (any_acc && any_rej) ? 2 : 1;
        if (classes == 1) {
            cls.fill(0);
        }
    }
    // Moore refinement: signatures compared against one representative per class.
    const std::size_t width = static_cast<std::size_t>(p.sigma) + 1;
    std::vector<std::uint8_t> sig(m * width);
    std::array<std::uint8_t, 256> reps{};
    std::array<std::uint8_t, 256> next_cls{};
    while (true) {
        for (std::size_t i = 0; i < m; ++i) {
            sig[i * width] = cls[i];
            for (int s = 0; s < p.sigma; ++s) {
                sig[i * width + 1 + static_cast<std::size_t>(s)] =
                    cls[table[i * static_cast<std::size_t>(p.sigma) + static_cast<std::size_t>(s)]];
            }
        }
        std::size_t fresh = 0;
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t c = 0;
            for (; c < fresh; ++c) {
                if (std::equal(sig.begin() + static_cast<std::ptrdiff_t>(i * width),
                               sig.begin() + static_cast<std::ptrdiff_t>((i + 1) * width),
                               sig.begin() + static_cast<std::ptrdiff_t>(reps[c] * width))) {
                    break;
                }
            }
            if (c == fresh) {
                reps[fresh++] = static_cast<std::uint8_t>(i);
            }
            next_cls[i] = static_cast<std::uint8_t>(c);
        }
        cls = next_cls;
        if (fresh == classes) {
            break;
        }
        classes = fresh;
    }

    return emit_key(
        classes, cls[0], p.sigma,
        [&](std::uint32_t c) { return (subsets[reps[c]] & p.acc) != 0; },
        [&](std::uint32_t c, int s) {
            return static_cast<std::uint32_t>(
                cls[table[reps[c] * static_cast<std::size_t>(p.sigma) + static_cast<std::size_t>(s)]]);
        },
        key);
}

std::string dfa_key(const Dfa& minimal)
{
    if (minimal.state_count() > 256) {
        throw ResourceError("DFA too large for a packed key");
    }
    std::string key;
    emit_key(
        minimal.state_count(), minimal.initial(), static_cast<int>(minimal.alphabet().size()),
        [&](std::uint32_t q) { return minimal.is_accepting(q); },
        [&](std::uint32_t q, int s) { return minimal.next(q, static_cast<Symbol>(s)); }, key);
    return key;
}

Dfa dfa_from_key(const std::string& key, const Alphabet& alphabet)
{
    const std::size_t width = alphabet.size() + 1;
    const std::size_t m = key.size() / width;
    Dfa d(m, alphabet, 0);
    for (std::size_t q = 0; q < m; ++q) {
        d.set_accepting(static_cast<State>(q), key[q * width] != 0);
        for (std::size_t s = 0; s < alphabet.size(); ++s) {
            d.set_transition(static_cast<State>(q), static_cast<Symbol>(s),
                             static_cast<unsigned char>(key[q * width + 1 + s]));
        }
    }
    return d;
}

Nfa packed_to_nfa(const Packed& p, const Alphabet& alphabet)
{
    const bool mnfa = __builtin_popcount(p.init) > 1;
    Nfa a(static_cast<std::size_t>(p.n), alphabet, mnfa);
    for (int q = 0; q < p.n; ++q) {
        if (((p.init >> q) & 1U) != 0) {
            a.add_initial(static_cast<State>(q));
        }
        if (((p.acc >> q) & 1U) != 0) {
            a.add_accepting(static_cast<State>(q));
        }
        for (int s = 0; s < p.sigma; ++s) {
            std::uint32_t img = p.delta[static_cast<std::size_t>(q * p.stride + s)];
            while (img != 0) {
                a.add_transition(static_cast<State>(q), static_cast<Symbol>(s),
                                 static_cast<State>(__builtin_ctz(img)));
                img &= img - 1;
            }
        }
    }
    return a;
}

// Runs body(worker, lo, hi) over `workers` contiguous slices of [0, total).
template <typename Body>
void run_partitioned(std::uint64_t total, unsigned workers, Body&& body)
{
    workers = std::max(1U, workers);
    if (workers == 1 || total < workers) {
        body(0U, std::uint64_t{0}, total);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = std::min(total, chunk * w);
        const std::uint64_t hi = std::min(total, lo + chunk);
        threads.emplace_back([&, w, lo, hi] {
            try {
                body(w, lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

// Per-language record kept by the census; first is the lowest code or sample.
struct LanguageEntry {
    int alpha = 0;
    std::uint64_t first = std::numeric_limits<std::uint64_t>::max();
    bool member = false;
    bool certified = false;
};

using Census = std::unordered_map<std::string, LanguageEntry>;

void merge_census(Census& into, Census&& from)
{
    for (auto& [key, entry] : from) {
        auto [it, inserted] = into.try_emplace(key, entry);
        if (!inserted) {
            it->second.first = std::min(it->second.first, entry.first);
        }
    }
}

}  // namespace

std::string_view filter_name(StructuralFilter f)
{
    switch (f) {
    case StructuralFilter::None: return "none";
    case StructuralFilter::AllAccepting: return "all-accepting";
    case StructuralFilter::AllInitialAccepting: return "all-initial-accepting";
    case StructuralFilter::NonReturning: return "non-returning";
    case StructuralFilter::NonExiting: return "non-exiting";
    }
    return "none";
}

std::optional<StructuralFilter> parse_filter(std::string_view name)
{
    for (auto f : {StructuralFilter::None, StructuralFilter::AllAccepting, StructuralFilter::AllInitialAccepting,
                   StructuralFilter::NonReturning, StructuralFilter::NonExiting}) {
        if (filter_name(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

Alphabet standard_alphabet(int sigma)
{
    if (sigma < 1 || sigma > 26) {
        throw RangeError("alphabet size must lie in [1, 26], got " + std::to_string(sigma));
    }
    std::string chars;
    for (int i = 0; i < sigma; ++i) {
        chars.push_back(static_cast<char>('a' + i));
    }
    return Alphabet::of(chars);
}

EnumerationSpace enumeration_space(int n, int sigma, StructuralFilter filter)
{
    if (n < 1 || sigma < 1) {
        throw RangeError("enumeration needs n >= 1 and sigma >= 1");
    }
    const long bits = static_cast<long>(n) * n * sigma;
    if (bits > kMaxTransitionBits) {
        throw ResourceError("exhaustive enumeration of " + std::to_string(n) + "-state NFAs over " +
                            std::to_string(sigma) + " letters needs " + std::to_string(bits) +
                            " transition bits (limit " + std::to_string(kMaxTransitionBits) + "); use sampling");
    }
    EnumerationSpace space;
    space.n = n;
    space.sigma = sigma;
    space.filter = filter;
    space.transition_bits = static_cast<int>(bits);
    const bool fixed_accepting =
        filter == StructuralFilter::AllAccepting || filter == StructuralFilter::AllInitialAccepting;
    space.accepting_bits = fixed_accepting ? 0 : n;
    return space;
}

Nfa decode_nfa(const EnumerationSpace& space, std::uint64_t code)
{
    if (code >= space.code_count()) {
        throw InputError("NFA code " + std::to_string(code) + " is out of range");
    }
    return packed_to_nfa(decode_packed(space, code), standard_alphabet(space.sigma));
}

bool is_connected(const Nfa& a)
{
    StateSet seen = a.initial();
    std::vector<State> stack = seen.members();
    while (!stack.empty()) {
        const State q = stack.back();
        stack.pop_back();
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
            a.successors(q, s).for_each([&](State t) {
                if (!seen.contains(t)) {
                    seen.insert(t);
                    stack.push_back(t);
                }
            });
        }
    }
    return seen.size() == a.state_count();
}

bool passes_filter(const Nfa& a, StructuralFilter f)
{
    switch (f) {
    case StructuralFilter::None: return true;
    case StructuralFilter::AllAccepting: return structural_all_accepting(a);
    case StructuralFilter::AllInitialAccepting: return structural_all_initial_accepting(a);
    case StructuralFilter::NonReturning: return structural_non_returning(a);
    case StructuralFilter::NonExiting: return structural_non_exiting(a);
    }
    return true;
}

void for_each_nfa(int n, int sigma, StructuralFilter filter,
                  const std::function<void(std::uint64_t, const Nfa&)>& visit)
{
    const EnumerationSpace space = enumeration_space(n, sigma, filter);
    const Alphabet alphabet = standard_alphabet(sigma);
    for (std::uint64_t code = 0; code < space.code_count(); ++code) {
        const Packed p = decode_packed(space, code);
        if (packed_connected(p) && packed_passes(p, filter)) {
            visit(code, packed_to_nfa(p, alphabet));
        }
    }
}

std::vector<Nfa> enumerate_nfas(int n, int sigma, StructuralFilter filter)
{
    std::vector<Nfa> out;
    for_each_nfa(n, sigma, filter, [&](std::uint64_t, const Nfa& a) { out.push_back(a); });
    return out;
}

Nfa random_nfa(std::mt19937_64& rng, int n, int sigma, double edge_probability, StructuralFilter filter)
{
    const Alphabet alphabet = standard_alphabet(sigma);
    const bool all_initial = filter == StructuralFilter::AllInitialAccepting;
    Nfa a(static_cast<std::size_t>(n), alphabet, all_initial);
    if (all_initial) {
        a.set_all_initial();
    } else {
        a.set_initial(0);
    }
    for (int q = 0; q < n; ++q) {
        const bool draw = unit_real(rng) < 0.5;
        if (filter == StructuralFilter::AllAccepting || all_initial || draw) {
            a.add_accepting(static_cast<State>(q));
        }
    }
    for (int q = 0; q < n; ++q) {
        for (int s = 0; s < sigma; ++s) {
            for (int t = 0; t < n; ++t) {
                const bool edge = unit_real(rng) < edge_probability;
                if (!edge) {
                    continue;
                }
                if (filter == StructuralFilter::NonReturning && t == 0) {
                    continue;
                }
                if (filter == StructuralFilter::NonExiting && a.accepting().contains(static_cast<State>(q))) {
                    continue;
                }
                a.add_transition(static_cast<State>(q), static_cast<Symbol>(s), static_cast<State>(t));
            }
        }
    }
    return a;
}

Dfa random_dfa(std::mt19937_64& rng, int n, int sigma)
{
    Dfa d(static_cast<std::size_t>(n), standard_alphabet(sigma), 0);
    for (int q = 0; q < n; ++q) {
        d.set_accepting(static_cast<State>(q), unit_real(rng) < 0.5);
        for (int s = 0; s < sigma; ++s) {
            d.set_transition(static_cast<State>(q), static_cast<Symbol>(s),
                             static_cast<State>(rng() % static_cast<std::uint64_t>(n)));
        }
    }
    return d;
}

namespace {

struct ReducedAlphabet {
    Dfa minimal;
    std::vector<Symbol> representatives;  // letters with distinct, non-dead columns
};

ReducedAlphabet reduce_alphabet(const Dfa& lang)
{
    ReducedAlphabet r{minimize(lang), {}};
    const Dfa& m = r.minimal;
    std::vector<std::uint8_t> live(m.state_count(), 0);
    for (State q : m.accepting_states()) {
        live[q] = 1;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (State q = 0; q < m.state_count(); ++q) {
            for (Symbol s = 0; s < m.alphabet().size() && live[q] == 0; ++s) {
                if (live[m.next(q, s)] != 0) {
                    live[q] = 1;
                    changed = true;
                }
            }
        }
    }
    for (Symbol s = 0; s < m.alphabet().size(); ++s) {
        bool dead = true;
        for (State q = 0; q < m.state_count() && dead; ++q) {
            dead = live[m.next(q, s)] == 0;
        }
        if (dead) {
            continue;
        }
        const bool duplicate = std::any_of(r.representatives.begin(), r.representatives.end(), [&](Symbol t) {
            for (State q = 0; q < m.state_count(); ++q) {
                if (m.next(q, s) != m.next(q, t)) {
                    return false;
                }
            }
            return true;
        });
        if (!duplicate) {
            r.representatives.push_back(s);
        }
    }
    return r;
}

// Letter-by-letter search for an s-state NFA. Level j fixes the transitions of
// the j-th representative letter and requires the partial automaton to accept
// exactly L restricted to the letters fixed so far.
class SmallNfaSearch {
public:
    SmallNfaSearch(const ReducedAlphabet& reduced, int states) : states_(states)
    {
        const Dfa& m = reduced.minimal;
        lambda_ = m.is_accepting(m.initial());
        const std::size_t k = reduced.representatives.size();
        std::vector<std::string> names;
        for (std::size_t j = 0; j < k; ++j) {
            names.push_back(m.alphabet().symbol(reduced.representatives[j]));
            Dfa restricted(m.state_count(), Alphabet(names), m.initial());
            for (State q = 0; q < m.state_count(); ++q) {
                restricted.set_accepting(q, m.is_accepting(q));
                for (std::size_t i = 0; i <= j; ++i) {
                    restricted.set_transition(q, static_cast<Symbol>(i), m.next(q, reduced.representatives[i]));
                }
            }
            targets_.push_back(dfa_key(minimize(restricted)));
        }
        packed_.n = states;
        packed_.stride = static_cast<int>(std::max<std::size_t>(k, 1));
        packed_.init = 1;
    }

    bool run()
    {
        const std::uint32_t all = full_mask(states_);
        for (std::uint32_t acc = 0; acc <= all; ++acc) {
            if (((acc & 1U) != 0) != lambda_) {
                continue;
            }
            packed_.acc = acc;
            if (level(0)) {
                return true;
            }
        }
        return false;
    }

private:
    bool level(std::size_t j)
    {
        if (j == targets_.size()) {
            return true;
        }
        packed_.sigma = static_cast<int>(j) + 1;
        const int cells = states_ * states_;
        const std::uint32_t row = full_mask(states_);
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << cells); ++code) {
            for (int q = 0; q < states_; ++q) {
                packed_.delta[static_cast<std::size_t>(q * packed_.stride) + j] =
                    static_cast<std::uint32_t>(code >> (q * states_)) & row;
            }
            packed_minimal_key(packed_, scratch_);
            if (scratch_ == targets_[j] && level(j + 1)) {
                return true;
            }
            packed_.sigma = static_cast<int>(j) + 1;
        }
        return false;
    }

    int states_;
    bool lambda_ = false;
    std::vector<std::string> targets_;
    Packed packed_;
    std::string scratch_;
};

}  // namespace

int effective_alphabet_size(const Dfa& lang)
{
    return static_cast<int>(reduce_alphabet(lang).representatives.size());
}

bool min_nfa_size_feasible(int bound, int effective_sigma)
{
    return bound <= kMaxPackedStates && bound * bound * std::max(effective_sigma, 1) <= kMinNfaGuard;
}

std::optional<int> min_nfa_size_exact(const Dfa& lang, int bound)
{
    if (bound < 1) {
        return std::nullopt;
    }
    const ReducedAlphabet reduced = reduce_alphabet(lang);
    const int sigma = static_cast<int>(reduced.representatives.size());
    if (!min_nfa_size_feasible(bound, sigma)) {
        throw ResourceError("exact minimal NFA search with bound " + std::to_string(bound) + " over " +
                            std::to_string(sigma) + " effective letters exceeds the feasibility guard (bound^2 * " +
                            "letters <= " + std::to_string(kMinNfaGuard) + ")");
    }
    const std::size_t alpha = reduced.minimal.state_count();
    for (int s = 1; s <= bound; ++s) {
        // An s-state NFA determinizes to at most 2^s states.
        if (alpha > (std::size_t{1} << s)) {
            continue;
        }
        if (SmallNfaSearch(reduced, s).run()) {
            return s;
        }
    }
    return std::nullopt;
}

namespace {

bool certify_minimal(const Dfa& minimal, int n) { return !min_nfa_size_exact(minimal, n - 1).has_value(); }

}  // namespace

SpectrumResult spectrum_search(Family family, int n, int sigma, const SpectrumOptions& options)
{
    SpectrumResult result;
    result.family = family;
    result.n = n;
    result.sigma = sigma;
    result.mode = options.mode;
    result.seed = options.seed;
    const unsigned workers = std::max(1U, options.workers);
    const Alphabet alphabet = standard_alphabet(sigma);
    std::vector<Census> partial(workers);
    std::vector<std::uint64_t> visited(workers, 0);
    std::vector<std::uint64_t> connected(workers, 0);

    if (options.mode == SearchMode::Exhaustive) {
        const EnumerationSpace space = enumeration_space(n, sigma, options.filter);
        if (n > kMaxPackedStates) {
            throw ResourceError("exhaustive spectrum limited to " + std::to_string(kMaxPackedStates) + " states");
        }
        result.budget = space.code_count();
        run_partitioned(space.code_count(), workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
            Census& census = partial[w];
            std::string key;
            for (std::uint64_t code = lo; code < hi; ++code) {
                ++visited[w];
                const Packed p = decode_packed(space, code);
                if (!packed_connected(p) || !packed_passes(p, options.filter)) {
                    continue;
                }
                ++connected[w];
                const int alpha = packed_minimal_key(p, key);
                auto [it, inserted] = census.try_emplace(key);
                LanguageEntry& e = it->second;
                if (inserted) {
                    e.alpha = alpha;
                    e.first = code;
                    const Dfa d = dfa_from_key(key, alphabet);
                    e.member = is_in_family(d, family);
                    e.certified = e.member && certify_minimal(d, n);
                }
            }
        });
    } else {
        if (options.budget == 0) {
            throw RangeError("sampled spectrum search needs a positive budget");
        }
        result.budget = options.budget;
        const double p_edge = std::min(0.5, 2.0 / n);
        run_partitioned(options.budget, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
            Census& census = partial[w];
            for (std::uint64_t i = lo; i < hi; ++i) {
                ++visited[w];
                std::mt19937_64 rng = sample_rng(options.seed, i);
                const Nfa a = random_nfa(rng, n, sigma, p_edge, options.filter);
                if (!is_connected(a)) {
                    continue;
                }
                ++connected[w];
                const Dfa d = minimize(determinize(a, DeterminizeOptions{subset_cap_from_env(), false}));
                auto [it, inserted] = census.try_emplace(canonical_encoding(d));
                LanguageEntry& e = it->second;
                if (inserted) {
                    e.alpha = static_cast<int>(d.state_count());
                    e.first = i;
                    e.member = is_in_family(d, family);
                }
            }
        });
    }

    Census merged;
    for (unsigned w = 0; w < workers; ++w) {
        merge_census(merged, std::move(partial[w]));
        result.stats.visited += visited[w];
        result.stats.connected += connected[w];
    }
    result.stats.languages = merged.size();
    const bool exhaustive = options.mode == SearchMode::Exhaustive;
    std::map<std::int64_t, std::uint64_t> first_by_alpha;
    for (const auto& [key, e] : merged) {
        if (!e.member) {
            continue;
        }
        ++result.stats.members;
        if (exhaustive && !e.certified) {
            continue;
        }
        result.stats.certified += e.certified ? 1 : 0;
        auto [it, inserted] = first_by_alpha.try_emplace(e.alpha, e.first);
        if (!inserted) {
            it->second = std::min(it->second, e.first);
        }
    }
    for (const auto& [alpha, index] : first_by_alpha) {
        Nfa witness;
        if (exhaustive) {
            witness = decode_nfa(enumeration_space(n, sigma, options.filter), index);
        } else {
            std::mt19937_64 rng = sample_rng(options.seed, index);
            witness = random_nfa(rng, n, sigma, std::min(0.5, 2.0 / n), options.filter);
        }
        result.achieved.emplace(alpha, SpectrumWitness{std::move(witness), index});
    }
    return result;
}

Theorem4Result theorem4_check(int n, unsigned workers)
{
    if (n < 1 || n > 3) {
        throw ResourceError("theorem4_check is limited to n <= 3, got " + std::to_string(n));
    }
    const EnumerationSpace space = enumeration_space(n, 2, StructuralFilter::None);
    const Alphabet alphabet = standard_alphabet(2);
    workers = std::max(1U, workers);
    // member: non-empty free language; certified: no smaller NFA exists.
    std::vector<Census> partial(workers);
    run_partitioned(space.code_count(), workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Census& census = partial[w];
        std::string key;
        for (std::uint64_t code = lo; code < hi; ++code) {
            const Packed p = decode_packed(space, code);
            if (!packed_connected(p)) {
                continue;
            }
            const int alpha = packed_minimal_key(p, key);
            auto [it, inserted] = census.try_emplace(key);
            LanguageEntry& e = it->second;
            if (!inserted) {
                continue;
            }
            e.alpha = alpha;
            e.first = code;
            const Dfa d = dfa_from_key(key, alphabet);
            e.member = !is_empty(d) && (is_in_family(d, Family::PrefixFree) || is_in_family(d, Family::SuffixFree) ||
                                        is_in_family(d, Family::InfixFree));
            e.certified = e.member && certify_minimal(d, n);
        }
    });
    Census merged;
    for (auto& c : partial) {
        merge_census(merged, std::move(c));
    }
    Theorem4Result out;
    std::optional<std::uint64_t> worst;
    for (const auto& [key, e] : merged) {
        if (!e.member) {
            continue;
        }
        ++out.free_languages;
        if (!e.certified) {
            continue;
        }
        ++out.certified_minimal;
        if (e.alpha <= n && (!worst || e.first < *worst)) {
            worst = e.first;
        }
    }
    if (worst) {
        out.holds = false;
        out.counterexample = decode_nfa(space, *worst);
    }
    return out;
}

}  // namespace magic
