#include "magic/generators.hpp"

#include <algorithm>

#include "magic/bounds.hpp"
#include "magic/error.hpp"

namespace magic {

namespace {

constexpr Symbol kA = 0;
constexpr Symbol kB = 1;
constexpr Symbol kC = 2;
constexpr Symbol kD = 3;
constexpr Symbol kHash = 4;
constexpr Symbol kDollar = 5;

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

const Alphabet& jjs_alphabet()
{
    static const Alphabet alphabet = Alphabet::of("abcd");
    return alphabet;
}

const Alphabet& infix_alphabet()
{
    static const Alphabet alphabet = Alphabet::of("abcd#$");
    return alphabet;
}

const Alphabet& binary_alphabet()
{
    static const Alphabet alphabet = Alphabet::of("ab");
    return alphabet;
}

Word repeat(Symbol s, int times)
{
    return Word(static_cast<std::size_t>(std::max(times, 0)), s);
}

Word operator+(Word x, const Word& y)
{
    x.insert(x.end(), y.begin(), y.end());
    return x;
}

// Core rows of the JJS automaton on states 0..k.
void add_jjs_core(Nfa& a, const AlphaDecomposition& d)
{
    const auto k = static_cast<State>(d.k);
    a.add_transition(0, kA, 0);
    a.add_transition(0, kB, 0);
    a.add_transition(0, kB, 1);
    for (State q = 1; q < k; ++q) {
        a.add_transition(q, kA, q + 1);
        a.add_transition(q, kB, 1);
        a.add_transition(q, kB, q + 1);
    }
    for (State q = 0; q <= k; ++q) {
        a.add_transition(k, kA, q);
        if (q >= 1) {
            a.add_transition(k, kB, q);
        }
        if (q < k) {
            a.add_transition(q, kC, q + 1);
        }
    }

    // d-rows: row i reaches 0 and 2..t_i, or 0..t_i on the final row of the
    // single form and on row l+1 of the doubled form.
    const auto ell = static_cast<int>(d.kis.size());
    const auto row = [&](State i, int t, bool with_one) {
        a.add_transition(i, kD, 0);
        for (int p = with_one ? 1 : 2; p <= t; ++p) {
            a.add_transition(i, kD, static_cast<State>(p));
        }
    };
    for (int i = 1; i <= ell; ++i) {
        const int t = d.k - d.kis[static_cast<std::size_t>(i - 1)] + 1;
        row(static_cast<State>(i), t, i == ell && !d.doubled_last);
    }
    if (d.doubled_last) {
        row(static_cast<State>(ell + 1), d.k - d.kis.back() + 1, true);
    }
}

Nfa sigma_star(const Alphabet& alphabet)
{
    Nfa a(1, alphabet);
    a.set_initial(0);
    a.add_accepting(0);
    for (Symbol s = 0; s < alphabet.size(); ++s) {
        a.add_transition(0, s, 0);
    }
    return a;
}

}  // namespace

Nfa jjs_automaton(const AlphaDecomposition& d)
{
    check_decomposition(d);
    const int n = d.n;
    const int k = d.k;
    Nfa a(static_cast<std::size_t>(n), jjs_alphabet());
    add_jjs_core(a, d);
    // Tail n-1 -> n-2 -> ... -> k+1 -> 1 on a.
    for (int q = k + 2; q <= n - 1; ++q) {
        a.add_transition(static_cast<State>(q), kA, static_cast<State>(q - 1));
    }
    if (k + 1 <= n - 1) {
        a.add_transition(static_cast<State>(k + 1), kA, 1);
    }
    // Without a tail the walk starts at {1} directly.
    a.set_initial(static_cast<State>(n - 1 > k ? n - 1 : 1));
    a.add_accepting(static_cast<State>(k));
    return a;
}

Nfa gen_jjs(int n, std::int64_t alpha)
{
    require_constructive(std::nullopt, n, alpha);
    if (alpha == n || alpha == pow2(n)) {
        throw RangeError("gen_jjs covers n < alpha < 2^n; use gen_boundary for alpha = " + std::to_string(alpha));
    }
    return jjs_automaton(decompose_alpha(n, alpha));
}

Nfa gen_boundary(int n, std::int64_t alpha)
{
    if (n < 1 || n > kMaxBoundsN) {
        throw RangeError("gen_boundary supports 1 <= n <= " + std::to_string(kMaxBoundsN));
    }
    const auto states = static_cast<std::size_t>(n);
    if (alpha == n) {
        Nfa a(states, Alphabet::of("a"));
        a.set_initial(0);
        a.add_accepting(0);
        for (State q = 0; q < states; ++q) {
            a.add_transition(q, kA, static_cast<State>((q + 1) % states));
        }
        return a;
    }
    if (alpha == pow2(n)) {
        Nfa a(states, binary_alphabet());
        a.set_initial(0);
        a.add_accepting(static_cast<State>(n - 1));
        for (State q = 0; q < states; ++q) {
            a.add_transition(q, kA, static_cast<State>((q + 1) % states));
            if (q >= 1) {
                a.add_transition(q, kB, 0);
                a.add_transition(q, kB, q);
            }
        }
        return a;
    }
    throw RangeError("gen_boundary needs alpha = n or alpha = 2^n, got (" + std::to_string(n) + ", " +
                     std::to_string(alpha) + ")");
}

FoolingSet unary_counter_fooling_set(int n)
{
    FoolingSet s;
    for (int i = 0; i < n; ++i) {
        s.pairs.emplace_back(repeat(kA, i), repeat(kA, n - i));
    }
    return s;
}

InfixClosedWitness gen_infix_closed(int n, std::int64_t alpha)
{
    require_constructive(Family::InfixClosed, n, alpha);
    if (n == 1) {
        Nfa one = sigma_star(infix_alphabet());
        return {one, one, 0};
    }
    const AlphaDecomposition d = decompose_alpha(n, alpha);
    const int k = d.k;
    Nfa a1(static_cast<std::size_t>(n), infix_alphabet(), true);
    add_jjs_core(a1, d);
    a1.set_all_initial();
    a1.set_all_accepting();
    a1.add_transition(static_cast<State>(k), kHash, static_cast<State>(k));
    for (int q = k + 2; q <= n - 1; ++q) {
        a1.add_transition(static_cast<State>(q), kDollar, static_cast<State>(q - 1));
    }
    a1.add_transition(static_cast<State>(k + 1), kDollar, 1);
    Nfa a2 = mnfa_to_nfa(a1, static_cast<State>(n - 1));
    return {std::move(a1), std::move(a2), k};
}

FoolingSet infix_closed_fooling_set(int n, std::int64_t alpha)
{
    if (n == 1 && alpha == 1) {
        return FoolingSet{{{Word{}, Word{}}}};
    }
    require_constructive(Family::InfixClosed, n, alpha);
    const int k = decompose_alpha(n, alpha).k;
    const int t = n - (k + 1);
    FoolingSet s;
    for (int i = 0; i <= t; ++i) {
        s.pairs.emplace_back(repeat(kDollar, i), repeat(kDollar, t - i) + repeat(kC, k - 1));
    }
    for (int i = 1; i <= k - 1; ++i) {
        s.pairs.emplace_back(repeat(kDollar, t) + repeat(kC, i), repeat(kC, k - 1 - i));
    }
    s.pairs.emplace_back(repeat(kDollar, t) + Word{kD}, repeat(kC, k));
    return s;
}

Nfa gen_suffix_closed(int n, std::int64_t alpha)
{
    require_constructive(Family::SuffixClosed, n, alpha);
    if (alpha == n) {
        for (const auto& entry : suffix_closed_catalog()) {
            if (entry.n == n) {
                return entry.nfa;
            }
        }
        throw RangeError("no catalog witness for n = " + std::to_string(n));
    }
    return gen_infix_closed(n, alpha).a2;
}

Nfa gen_finite_quadratic(int n, std::int64_t alpha)
{
    require_constructive(Family::Finite, n, alpha);
    if (!(n + 1 <= alpha && alpha <= quadratic_upper(n))) {
        throw RangeError("alpha = " + std::to_string(alpha) + " outside the quadratic range [" +
                         std::to_string(n + 1) + ", " + std::to_string(quadratic_upper(n)) + "]");
    }
    const auto states = static_cast<std::size_t>(n);
    Nfa a(states, binary_alphabet());
    a.set_initial(0);
    a.add_accepting(static_cast<State>(n - 1));
    // Construction states 1..n are indices 0..n-1; edge(p, s, r) uses 1-based names.
    const auto edge = [&](int p, Symbol s, int r) {
        a.add_transition(static_cast<State>(p - 1), s, static_cast<State>(r - 1));
    };
    if (alpha == n + 1) {
        // Chain accepting all words of length n-1.
        for (int q = 1; q < n; ++q) {
            edge(q, kA, q + 1);
            edge(q, kB, q + 1);
        }
        return a;
    }
    const QuadraticParams p = quadratic_params(n, alpha);
    const int k = p.k;
    const auto m = static_cast<int>(p.m);
    for (int q = 1; q <= k; ++q) {
        edge(q, kA, q + 1);
        for (int r = 2 * q + 1; r <= n; ++r) {
            edge(q, kA, r);
        }
    }
    // With k = 0 only this row leaves state 1.
    edge(k + 1, kA, k + 2);
    for (int r = n - (m - 1); r <= n; ++r) {
        edge(k + 1, kA, r);
    }
    for (int q = k + 2; q < n; ++q) {
        edge(q, kA, q + 1);
    }
    for (int q = 1; q < n; ++q) {
        edge(q, kB, q + 1);
    }
    return a;
}

Nfa gen_mandl(int n)
{
    if (n < 2 || n > kMaxBoundsN) {
        throw RangeError("gen_mandl needs 2 <= n <= " + std::to_string(kMaxBoundsN));
    }
    const int k = (n + 1) / 2;
    Nfa a(static_cast<std::size_t>(n), binary_alphabet());
    const auto edge = [&](int p, Symbol s, int r) {
        a.add_transition(static_cast<State>(p - 1), s, static_cast<State>(r - 1));
    };
    a.set_initial(0);
    a.add_accepting(static_cast<State>(n - 1));
    for (int q = 1; q < n; ++q) {
        edge(q, kA, q + 1);
        if (q < k) {
            edge(q, kA, k + 1);
        }
        if (q != k) {
            edge(q, kB, q + 1);
        }
    }
    return a;
}

std::int64_t mandl_dfa_size(int n)
{
    if (n % 2 == 0) {
        return pow2(n / 2 + 1) - 1;
    }
    return 3 * pow2((n + 1) / 2 - 1) - 1;
}

Nfa gen_finite_exponential(int n, std::int64_t alpha)
{
    require_constructive(Family::Finite, n, alpha);
    const ExponentialParams p = exponential_params(n, alpha);
    const Nfa inner = gen_mandl(n - 1);
    Nfa a(static_cast<std::size_t>(n), binary_alphabet());
    for (State q = 0; q < inner.state_count(); ++q) {
        for (Symbol s = 0; s < 2; ++s) {
            inner.successors(q, s).for_each([&](State t) { a.add_transition(q + 1, s, t + 1); });
        }
    }
    a.add_transition(0, kB, 1);
    a.add_transition(0, kA, 1);
    // x counts the branch target from 1 on the 1..n-1 part; index x-1 here.
    a.add_transition(0, kA, static_cast<State>(p.x - 1));
    a.set_initial(0);
    a.add_accepting(static_cast<State>(n - 1));
    return a;
}

std::vector<std::string> generators_for(const WitnessFamily& family, int n, std::int64_t alpha)
{
    std::vector<std::string> out;
    if (!is_constructive(family, n, alpha)) {
        return out;
    }
    if (!family) {
        out.emplace_back(alpha == n || alpha == pow2(n) ? "boundary" : "jjs");
        return out;
    }
    switch (*family) {
    case Family::InfixClosed:
        out.emplace_back("infix-closed");
        break;
    case Family::SuffixClosed:
        out.emplace_back(alpha == n ? "suffix-closed-catalog" : "infix-closed");
        break;
    case Family::Finite: {
        if (n + 1 <= alpha && alpha <= quadratic_upper(n)) {
            out.emplace_back("finite-quadratic");
        }
        if (n >= 3) {
            const auto alphas = exponential_alphas(n);
            if (std::find(alphas.begin(), alphas.end(), alpha) != alphas.end()) {
                out.emplace_back("finite-exponential");
            }
        }
        break;
    }
    default:
        break;
    }
    return out;
}

Witness generate(const WitnessFamily& family, int n, std::int64_t alpha, const std::string& generator)
{
    require_constructive(family, n, alpha);
    const auto names = generators_for(family, n, alpha);
    std::string name = generator.empty() ? names.front() : generator;
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw RangeError("generator '" + name + "' does not apply to " + witness_family_name(family) + " (" +
                         std::to_string(n) + ", " + std::to_string(alpha) + ")");
    }

    Witness w{WitnessSpec{family, n, alpha, name, std::monostate{}}, Nfa{}, std::nullopt, std::nullopt};
    if (name == "boundary") {
        w.nfa = gen_boundary(n, alpha);
        if (alpha == n) {
            w.fooling = unary_counter_fooling_set(n);
        }
    } else if (name == "jjs") {
        const AlphaDecomposition d = decompose_alpha(n, alpha);
        w.spec.parameters = d;
        w.nfa = jjs_automaton(d);
    } else if (name == "infix-closed") {
        InfixClosedWitness ic = gen_infix_closed(n, alpha);
        if (n > 1) {
            w.spec.parameters = decompose_alpha(n, alpha);
        }
        w.nfa = std::move(ic.a2);
        w.mnfa = std::move(ic.a1);
        w.fooling = infix_closed_fooling_set(n, alpha);
    } else if (name == "suffix-closed-catalog") {
        for (const auto& entry : suffix_closed_catalog()) {
            if (entry.n == n) {
                w.nfa = entry.nfa;
                w.fooling = entry.fooling;
            }
        }
    } else if (name == "finite-quadratic") {
        if (alpha > n + 1) {
            w.spec.parameters = quadratic_params(n, alpha);
        }
        w.nfa = gen_finite_quadratic(n, alpha);
    } else if (name == "finite-exponential") {
        w.spec.parameters = exponential_params(n, alpha);
        w.nfa = gen_finite_exponential(n, alpha);
    }
    return w;
}

}  // namespace magic
