#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "magic/automata.hpp"
#include "magic/bounds.hpp"
#include "magic/brute_oracle.hpp"
#include "magic/decomposition.hpp"
#include "magic/error.hpp"
#include "magic/generators.hpp"
#include "magic/language_analysis.hpp"
#include "magic/report.hpp"
#include "magic/text_format.hpp"

namespace py = pybind11;
using namespace magic;

namespace {

Family require_family(const std::string& name)
{
    if (auto f = parse_family(name)) {
        return *f;
    }
    throw InputError("unknown family: " + name);
}

Word to_word(const Alphabet& alphabet, const std::vector<std::string>& symbols)
{
    Word w;
    for (const auto& s : symbols) {
        w.push_back(alphabet.require(s));
    }
    return w;
}

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_magic, m)
{
    m.doc() = "Witness automata for NFA to DFA state counts";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<RangeError>(m, "RangeError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
    py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());

    py::class_<Nfa>(m, "Nfa")
        .def_static("from_text", &parse_nfa, py::arg("text"))
        .def("to_text", [](const Nfa& a) { return to_text(a); })
        .def_property_readonly("state_count", &Nfa::state_count)
        .def_property_readonly("alphabet", [](const Nfa& a) { return a.alphabet().symbols(); })
        .def_property_readonly("initial", [](const Nfa& a) { return a.initial().members(); })
        .def_property_readonly("accepting", [](const Nfa& a) { return a.accepting().members(); })
        .def("successors", [](const Nfa& a, State q, const std::string& s) {
            return a.successors(q, a.alphabet().require(s)).members();
        })
        .def("accepts", [](const Nfa& a, const std::vector<std::string>& w) { return accepts(a, to_word(a.alphabet(), w)); })
        .def("__repr__", [](const Nfa& a) {
            return "<Nfa states=" + std::to_string(a.state_count()) + " letters=" +
                   std::to_string(a.alphabet().size()) + ">";
        });

    py::class_<Dfa>(m, "Dfa")
        .def_static("from_text", &parse_dfa, py::arg("text"))
        .def("to_text", [](const Dfa& d) { return to_text(d); })
        .def_property_readonly("state_count", &Dfa::state_count)
        .def_property_readonly("alphabet", [](const Dfa& d) { return d.alphabet().symbols(); })
        .def_property_readonly("initial", &Dfa::initial)
        .def("accepts", [](const Dfa& d, const std::vector<std::string>& w) { return accepts(d, to_word(d.alphabet(), w)); })
        .def("labels", [](const Dfa& d) {
            std::vector<std::vector<State>> out;
            for (const auto& l : d.labels()) {
                out.push_back(l.members());
            }
            return out;
        })
        .def("__repr__", [](const Dfa& d) {
            return "<Dfa states=" + std::to_string(d.state_count()) + " letters=" +
                   std::to_string(d.alphabet().size()) + ">";
        });

    m.def("determinize", [](const Nfa& a) { return determinize(a); }, py::arg("nfa"),
          py::call_guard<py::gil_scoped_release>());
    m.def("minimize", &minimize, py::arg("dfa"));
    m.def("min_dfa_size", py::overload_cast<const Nfa&>(&min_dfa_size), py::arg("nfa"),
          py::call_guard<py::gil_scoped_release>());
    m.def("equivalent", py::overload_cast<const Nfa&, const Nfa&>(&equivalent), py::arg("a"), py::arg("b"));

    m.def(
        "decompose_alpha",
        [](int n, std::int64_t alpha) {
            const AlphaDecomposition d = decompose_alpha(n, alpha);
            py::dict out;
            out["n"] = d.n;
            out["alpha"] = d.alpha;
            out["k"] = d.k;
            out["m"] = d.m;
            out["kis"] = d.kis;
            out["doubled_last"] = d.doubled_last;
            out["relaxed_ell"] = d.relaxed_ell();
            out["rendered"] = render(d);
            return out;
        },
        py::arg("n"), py::arg("alpha"));

    m.def(
        "generate",
        [](const std::string& family, int n, std::int64_t alpha, const std::string& generator) {
            return generate(parse_witness_family(family), n, alpha, generator).nfa;
        },
        py::arg("family"), py::arg("n"), py::arg("alpha"), py::arg("generator") = "");
    m.def(
        "generators_for",
        [](const std::string& family, int n, std::int64_t alpha) {
            return generators_for(parse_witness_family(family), n, alpha);
        },
        py::arg("family"), py::arg("n"), py::arg("alpha"));
    m.def(
        "constructive_alphas",
        [](const std::string& family, int n) { return constructive_alphas(parse_witness_family(family), n); },
        py::arg("family"), py::arg("n"));

    m.def(
        "_verify_grid",
        [](const std::string& family, int n_lo, int n_hi, std::optional<std::vector<std::int64_t>> alphas,
           unsigned workers) {
            const WitnessFamily f = parse_witness_family(family);
            VerifyOptions options;
            options.workers = workers;
            py::gil_scoped_release release;
            return dump(to_json(verify_grid(f, expand_grid(f, n_lo, n_hi, alphas), options)));
        },
        py::arg("family"), py::arg("n_lo"), py::arg("n_hi"), py::arg("alphas") = std::nullopt,
        py::arg("workers") = 1);

    m.def(
        "check_family",
        [](const Dfa& d, const std::string& family) { return is_in_family(d, require_family(family)); },
        py::arg("dfa"), py::arg("family"));
    m.def("is_aperiodic", [](const Dfa& d) { return is_aperiodic(d); }, py::arg("dfa"));
    m.def("min_nfa_size_exact", &min_nfa_size_exact, py::arg("dfa"), py::arg("bound"));

    m.def(
        "_spectrum",
        [](const std::string& family, int n, int sigma, bool exhaustive, std::uint64_t budget, std::uint64_t seed,
           unsigned workers, const std::string& filter) {
            SpectrumOptions options;
            options.mode = exhaustive ? SearchMode::Exhaustive : SearchMode::Sampled;
            options.budget = budget;
            options.seed = seed;
            options.workers = workers;
            const auto parsed = parse_filter(filter);
            if (!parsed) {
                throw InputError("unknown filter: " + filter);
            }
            options.filter = *parsed;
            const Family f = require_family(family);
            py::gil_scoped_release release;
            return dump(to_json(spectrum_search(f, n, sigma, options)));
        },
        py::arg("family"), py::arg("n"), py::arg("sigma"), py::arg("exhaustive") = true, py::arg("budget") = 0,
        py::arg("seed") = 0, py::arg("workers") = 1, py::arg("filter") = "none");

    m.def(
        "_theorem4_check",
        [](int n, unsigned workers) {
            py::gil_scoped_release release;
            return dump(to_json(theorem4_check(n, workers)));
        },
        py::arg("n"), py::arg("workers") = 1);

    m.def("bounds_table", &format_bounds, py::arg("n") = std::nullopt);
}
