#include "elkies/arith.hpp"
#include "elkies/charsums.hpp"
#include "elkies/classify.hpp"
#include "elkies/curves.hpp"
#include "elkies/errors.hpp"
#include "elkies/io.hpp"
#include "elkies/search.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace elkies;

namespace {

// Big integers cross the boundary as Python ints through their decimal form.
py::int_ to_py(const BigInt& x) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(x.str().c_str(), nullptr, 10));
}

py::dict spectrum_dict(const TraceSpectrum& s) {
    py::dict d;
    for (const auto& [t, c] : s.witnesses) d[py::int_(t)] = py::make_tuple(c.a(), c.b());
    return d;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> as_interval(std::optional<py::tuple> t) {
    if (!t) return std::nullopt;
    return std::pair{t->cast<std::pair<std::uint64_t, std::uint64_t>>()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Elkies/Atkin prime statistics and quadratic character sums";
    m.attr("__version__") = io::library_version();

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

    // arithmetic
    m.def("primes", [](std::uint64_t lo, std::uint64_t hi) { return primes_in_range(lo, hi); }, py::arg("lo"),
          py::arg("hi"), "Primes in [lo, hi].");
    m.def("is_prime", &is_prime, py::arg("n"));
    m.def("jacobi", &jacobi, py::arg("a"), py::arg("m"));
    m.def("mobius", &mobius, py::arg("n"));
    m.def("tau", &tau, py::arg("n"));
    m.def("omega", &omega, py::arg("n"));
    m.def(
        "squarefree_products",
        [](std::uint64_t M, std::uint64_t L) {
            py::list out;
            for (const BigInt& x : enumerate_squarefree_products(M, L).members) out.append(to_py(x));
            return out;
        },
        py::arg("M"), py::arg("L"));

    // curves
    py::class_<CurveParams>(m, "Curve")
        .def(py::init<std::uint64_t, std::uint64_t, std::uint64_t>(), py::arg("p"), py::arg("a"), py::arg("b"))
        .def_property_readonly("p", &CurveParams::p)
        .def_property_readonly("a", &CurveParams::a)
        .def_property_readonly("b", &CurveParams::b)
        .def("__repr__", [](const CurveParams& c) {
            return "Curve(p=" + std::to_string(c.p()) + ", a=" + std::to_string(c.a()) + ", b=" +
                   std::to_string(c.b()) + ")";
        });
    m.def("count_points", [](const CurveParams& c) { return count_points(c); }, py::arg("curve"));
    m.def("trace", [](const CurveParams& c) { return trace(c).t(); }, py::arg("curve"));
    m.def(
        "trace_spectrum",
        [](std::uint64_t p, unsigned workers) {
            const TraceSpectrum s = [&] {
                py::gil_scoped_release release;
                return trace_spectrum(p, kDefaultSpectrumLimit, workers);
            }();
            return spectrum_dict(s);
        },
        py::arg("p"), py::arg("workers") = 1, "Maps each attained trace to its first witness (a, b).");
    m.def(
        "curve_with_trace",
        [](std::uint64_t p, std::int64_t t, std::optional<std::uint64_t> budget) {
            return curve_with_trace(TracePair(p, t), budget.value_or(p * p));
        },
        py::arg("p"), py::arg("t"), py::arg("budget") = py::none());

    // classification
    py::class_<ElkiesProfile>(m, "Profile")
        .def_property_readonly("p", [](const ElkiesProfile& x) { return x.pair.p(); })
        .def_property_readonly("t", [](const ElkiesProfile& x) { return x.pair.t(); })
        .def_readonly("L", &ElkiesProfile::L)
        .def_readonly("n_e", &ElkiesProfile::n_e)
        .def_readonly("n_a", &ElkiesProfile::n_a)
        .def_readonly("n_ramified", &ElkiesProfile::n_ramified)
        .def_readonly("n_excluded", &ElkiesProfile::n_excluded)
        .def_property_readonly("elkies_product", [](const ElkiesProfile& x) { return to_py(x.elkies_product); })
        .def_readonly("L_p", &ElkiesProfile::L_p)
        .def_property_readonly("classes", [](const ElkiesProfile& x) {
            py::list out;
            for (const auto& c : x.classes) out.append(py::make_tuple(c.ell, c.symbol, std::string(to_string(c.verdict))));
            return out;
        });
    m.def(
        "classify",
        [](std::uint64_t p, std::int64_t t, std::uint64_t L, bool ramified_as_elkies) {
            return classify_range(TracePair(p, t), L, {ramified_as_elkies});
        },
        py::arg("p"), py::arg("t"), py::arg("L") = 100, py::arg("ramified_as_elkies") = false);
    m.def(
        "compute_Lp",
        [](std::uint64_t p, std::int64_t t, std::uint64_t limit, bool ramified_as_elkies) {
            const LpResult r = compute_Lp(TracePair(p, t), limit, {ramified_as_elkies});
            return py::make_tuple(r.L_p, to_py(r.product));
        },
        py::arg("p"), py::arg("t"), py::arg("limit") = 100000, py::arg("ramified_as_elkies") = false,
        "Returns (L_p or None when saturated, Elkies product).");

    // character sums
    m.def(
        "long_sum", [](std::int64_t a, std::uint64_t mod, std::uint64_t T) { return long_sum({a, mod, T}); },
        py::arg("a"), py::arg("m"), py::arg("T"));
    m.def("complete_sum", &complete_sum, py::arg("a"), py::arg("m"));
    m.def(
        "short_sum",
        [](std::int64_t u, std::int64_t v, std::uint64_t mod, std::uint64_t N, unsigned r) {
            const CharSumReport rep = short_sum({u, v, mod, N, r});
            return py::make_tuple(rep.lhs, *rep.bound);
        },
        py::arg("u"), py::arg("v"), py::arg("m"), py::arg("N"), py::arg("r"), "Returns (lhs, bound).");
    m.def("gcd_identity_check", &gcd_identity_check, py::arg("u"), py::arg("v"), py::arg("m"));
    m.def(
        "theorem_parameters",
        [](std::uint64_t Q) {
            const TheoremParams t = theorem_parameters(Q);
            return py::dict(py::arg("L") = t.L, py::arg("M") = t.M, py::arg("T") = t.T);
        },
        py::arg("Q"));
    m.def(
        "w_sum",
        [](std::uint64_t Q, std::uint64_t M, std::uint64_t L, std::uint64_t T, unsigned workers) {
            SieveSumConfig c;
            c.Q = Q;
            c.M = M;
            c.L = L;
            c.T = T;
            c.workers = workers;
            py::gil_scoped_release release;
            const std::int64_t direct = w_product(c);
            const WExpansion ex = w_expanded(c);
            std::vector<std::pair<std::uint64_t, std::int64_t>> table;
            for (const auto& e : ex.table) table.emplace_back(e.m, e.S);
            return std::tuple{direct, ex.W, table};
        },
        py::arg("Q"), py::arg("M"), py::arg("L"), py::arg("T"), py::arg("workers") = 1,
        "Returns (W by product, W by expansion, [(m, S(m))]).");
    m.def(
        "s_m", [](std::uint64_t mod, std::uint64_t Q, std::uint64_t T) { return s_m(mod, Q, T); }, py::arg("m"),
        py::arg("Q"), py::arg("T"));

    // search
    m.def("check_cond1", [](std::uint64_t p, std::int64_t t, std::uint64_t M, std::uint64_t L) {
        return check_cond1(TracePair(p, t), M, L);
    }, py::arg("p"), py::arg("t"), py::arg("M"), py::arg("L"));

    py::class_<SearchRecord>(m, "SearchRecord")
        .def_property_readonly("p", [](const SearchRecord& r) { return r.pair.p(); })
        .def_property_readonly("t", [](const SearchRecord& r) { return r.pair.t(); })
        .def_readonly("L_p", &SearchRecord::L_p)
        .def_readonly("saturated", &SearchRecord::saturated)
        .def_property_readonly("elkies_product", [](const SearchRecord& r) { return to_py(r.elkies_product_at_cap); })
        .def_readonly("ratio_logp", &SearchRecord::ratio_logp)
        .def_readonly("ratio_logloglog", &SearchRecord::ratio_logloglog)
        .def_readonly("cond1_interval", &SearchRecord::cond1_interval)
        .def("__repr__", [](const SearchRecord& r) { return io::search_csv_row(r, r.cond1_interval.has_value()); });

    m.def(
        "scan",
        [](std::uint64_t lo, std::uint64_t hi, std::uint64_t lcap, std::optional<std::uint64_t> sample_k,
           double threshold, unsigned workers, std::uint64_t seed, std::optional<py::tuple> cond1) {
            SearchConfig c;
            c.prime_lo = lo;
            c.prime_hi = hi;
            c.L_cap = lcap;
            if (sample_k) {
                c.mode = SearchMode::HasseSample;
                c.sample_k = *sample_k;
            }
            c.threshold = threshold;
            c.workers = workers;
            c.seed = seed;
            c.cond1 = as_interval(cond1);
            py::gil_scoped_release release;
            return scan_primes(c).records;
        },
        py::arg("lo"), py::arg("hi"), py::arg("lcap"), py::arg("sample_k") = py::none(), py::arg("threshold") = 0.0,
        py::arg("workers") = 1, py::arg("seed") = kDefaultSeed, py::arg("cond1") = py::none(),
        "Records sorted by L_p / log p, largest first. sample_k switches to Hasse sampling.");
    m.def("worst_trace", [](std::uint64_t p, std::uint64_t lcap) { return worst_trace(p, lcap); }, py::arg("p"),
          py::arg("lcap"));
    m.def(
        "represent",
        [](std::uint64_t n) -> std::optional<std::pair<std::uint64_t, std::uint64_t>> {
            const auto r = represent_4p_minus_t2(n);
            if (!r) return std::nullopt;
            return std::pair{r->p, r->t};
        },
        py::arg("n"), "(p, t) with n = 4p - t^2 and t minimal, or None.");
}
