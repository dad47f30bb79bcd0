// Python bindings. Every function taking a deformation accepts exactly one of
// the keywords c and q.

#include "qgauss/qgauss.hpp"
#include "qgauss/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace qgauss;
using Chain = GaussianChain<double>;

namespace {

QSpec spec_of(std::optional<double> c, std::optional<double> q) {
    if (c.has_value() == q.has_value()) throw py::value_error("give exactly one of c and q");
    return c ? QSpec::from_c(*c) : QSpec::from_q(*q);
}

QContext<double> ctx_of(std::optional<double> c, std::optional<double> q) { return spec_of(c, q).make<double>(); }

PrecisionRequest request_of(std::optional<unsigned> digits) { return PrecisionRequest::from_optional(digits); }

py::array_t<std::complex<double>> square(const std::vector<std::complex<double>>& v, std::size_t dim) {
    py::array_t<std::complex<double>> a({dim, dim});
    auto m = a.mutable_unchecked<2>();
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = v[i * dim + j];
    return a;
}

py::object json_to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

Chain chain_from_dict(const std::map<double, double>& centres, std::optional<double> c, std::optional<double> q) {
    Chain::Map m;
    for (const auto& [mu, a] : centres) m[twice_of(mu, "Chain")] += a;
    return Chain(ctx_of(c, q), m);
}

LadderKind ladder_of(const std::string& name) {
    for (auto k : {LadderKind::arik_lower, LadderKind::arik_raise, LadderKind::mac_lower, LadderKind::mac_raise})
        if (name == to_string(k)) return k;
    throw py::value_error("unknown ladder operator '" + name + "'");
}

InnerKind inner_of(bool twisted) { return twisted ? InnerKind::parity_twisted : InnerKind::standard; }

py::dict limit_dict(const LimitTable& t) {
    py::list rows;
    for (const auto& r : t.rows) {
        py::dict d;
        d["c"] = r.c;
        d["dev"] = r.dev;
        d["constant"] = r.constant;
        d["used"] = r.used;
        d["excluded"] = r.excluded;
        d["eigenvalue_gap"] = r.eigenvalue_gap;
        d["parity_sign"] = r.parity_sign;
        rows.append(d);
    }
    py::dict out;
    out["family"] = t.family;
    out["n"] = t.n;
    out["rows"] = rows;
    out["monotone"] = t.monotone();
    out["rate"] = t.rows.size() >= 2 ? py::cast(t.rate(t.rows.size() - 2, t.rows.size() - 1)) : py::none();
    return out;
}

}  // namespace

PYBIND11_MODULE(_qgauss, m) {
    m.doc() = "Distributed Gaussian polynomials and q-oscillator eigenfunctions";

    m.def("qpochhammer", &qpochhammer<double>, py::arg("q"), py::arg("n"));
    m.def("qbinomial", &qbinomial<double>, py::arg("q"), py::arg("n"), py::arg("k"));
    m.def("arik_coon_eigenvalue", &arik_coon_eigenvalue<double>, py::arg("q"), py::arg("n"));
    m.def("macfarlane_eigenvalue", &macfarlane_eigenvalue<double>, py::arg("q"), py::arg("n"));
    m.def("hermite", &hermite<double>, py::arg("n"), py::arg("s"));

    py::class_<Chain>(m, "Chain")
        .def(py::init(&chain_from_dict), py::arg("centres"), py::kw_only(), py::arg("c") = py::none(),
             py::arg("q") = py::none(), "centre -> coefficient on the half-integer lattice")
        .def_property_readonly("q", [](const Chain& f) { return f.context().q(); })
        .def_property_readonly("c", [](const Chain& f) { return f.context().c(); })
        .def("coeffs",
             [](const Chain& f) {
                 std::map<double, double> out;
                 for (const auto& [t, a] : f.coeffs()) out[t / 2.0] = a;
                 return out;
             })
        .def("__call__", [](const Chain& f, double x) { return evaluate(f, x); })
        .def("__call__",
             [](const Chain& f, py::array_t<double> xs) {
                 return py::vectorize([&f](double x) { return evaluate(f, x); })(xs);
             })
        .def("shift", [](const Chain& f, double s) { return shift(f, s); })
        .def("ladder", [](const Chain& f, const std::string& op) { return apply_ladder(ladder_of(op), f); },
             py::arg("op"), "op: arik_lower, arik_raise, mac_lower or mac_raise")
        .def("__add__", [](const Chain& a, const Chain& b) { return a + b; })
        .def("__sub__", [](const Chain& a, const Chain& b) { return a - b; })
        .def("__mul__", [](const Chain& a, double s) { return a.scaled(s); })
        .def("__rmul__", [](const Chain& a, double s) { return a.scaled(s); })
        .def("__len__", &Chain::size)
        .def("__repr__", [](const Chain& f) { return "<Chain q=" + std::to_string(f.context().q()) + " terms=" + std::to_string(f.size()) + ">"; });

    m.def("inner", [](const Chain& f, const Chain& g, bool twisted) { return inner(f, g, inner_of(twisted)); },
          py::arg("f"), py::arg("g"), py::arg("twisted") = false);
    m.def(
        "quad_inner",
        [](const Chain& f, const Chain& g, bool twisted, double tol) {
            const auto r = quad_inner(f, g, inner_of(twisted), tol);
            return py::make_tuple(r.value, r.error_estimate);
        },
        py::arg("f"), py::arg("g"), py::arg("twisted") = false, py::arg("tol") = 1e-11,
        "Simpson oracle; returns (value, error estimate)");

    m.def("build_phi", [](int n, std::optional<double> c, std::optional<double> q) { return build_phi(ctx_of(c, q), n); },
          py::arg("n"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none());
    m.def("build_Phi", [](int n, std::optional<double> c, std::optional<double> q) { return build_Phi(ctx_of(c, q), n); },
          py::arg("n"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none());
    m.def("build_An_by_raising",
          [](int n, std::optional<double> c, std::optional<double> q) { return build_An_by_raising(ctx_of(c, q), n); },
          py::arg("n"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none());
    m.def("build_Bn", [](int n, std::optional<double> c, std::optional<double> q) { return build_Bn(ctx_of(c, q), n); },
          py::arg("n"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none());
    m.def(
        "mac_coeffs",
        [](int n, std::optional<double> c, std::optional<double> q) {
            const auto mc = mac_coeffs(ctx_of(c, q), n);
            py::dict d;
            d["zeta"] = mc.zeta;
            d["mu"] = mc.mu;
            d["E"] = mc.E;
            d["closed_form_discrepancy"] = mc.closed_form_discrepancy;
            return d;
        },
        py::arg("n"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none());

    py::class_<GramReport>(m, "GramReport")
        .def_readonly("title", &GramReport::title)
        .def_readonly("labels", &GramReport::labels)
        .def_readonly("notes", &GramReport::notes)
        .def_property_readonly("matrix", [](const GramReport& r) { return square(r.matrix, r.dim()); })
        .def_property_readonly("target", [](const GramReport& r) { return square(r.target, r.dim()); })
        .def_property_readonly("backend", [](const GramReport& r) { return r.precision.backend(); })
        .def_property_readonly("digits", [](const GramReport& r) { return r.precision.digits; })
        .def("max_deviation", &GramReport::max_deviation)
        .def("max_abs_deviation", &GramReport::max_abs_deviation)
        .def("to_json", [](const GramReport& r, double tol) { return json_to_py(gram_to_json(r, tol)); },
             py::arg("tol") = 1e-10);

    m.def(
        "dg_gram",
        [](int nmax, std::optional<double> c, std::optional<double> q, std::optional<unsigned> digits) {
            return dg_gram(spec_of(c, q), nmax, request_of(digits));
        },
        py::arg("nmax"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none(),
        py::arg("digits") = py::none());
    m.def(
        "indefinite_gram",
        [](int nmax, std::optional<double> c, std::optional<double> q, std::optional<unsigned> digits, double tol) {
            return indefinite_gram(spec_of(c, q), nmax, request_of(digits), tol);
        },
        py::arg("nmax"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none(),
        py::arg("digits") = py::none(), py::arg("tol") = 1e-8);
    m.def(
        "sum_rule",
        [](int nmax, std::optional<double> c, std::optional<double> q, std::optional<unsigned> digits) {
            return dg_sum_rule(spec_of(c, q), nmax, request_of(digits));
        },
        py::arg("nmax"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none(),
        py::arg("digits") = py::none());
    m.def(
        "circle_gram",
        [](const std::string& family, int nmax, std::optional<double> c, std::optional<double> q, int points,
           bool conjugate_first) {
            if (family != "dg" && family != "mac") throw py::value_error("family must be dg or mac");
            CircleOptions opt;
            opt.points = points;
            opt.conjugate_first = conjugate_first;
            return circle_gram(family == "dg" ? CircleFamily::dg : CircleFamily::mac, spec_of(c, q), nmax, opt);
        },
        py::arg("family"), py::arg("nmax"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none(),
        py::arg("points") = 512, py::arg("conjugate_first") = false);
    m.def("theta3", [](double theta, double q, double tol) { return theta3(theta, q, tol); }, py::arg("theta"),
          py::arg("q"), py::arg("tol") = 1e-16);
    m.def(
        "poisson_check",
        [](double c) {
            const auto r = poisson_check(c, default_theta_grid());
            py::dict d;
            d["theta"] = r.theta;
            d["gaussian_side"] = r.gaussian_side;
            d["theta_side"] = r.theta_side;
            d["max_deviation"] = r.max_deviation;
            return d;
        },
        py::arg("c"));

    m.def(
        "harmonic_limit",
        [](const std::string& family, int n, std::vector<double> cs) {
            const auto grid = default_limit_grid();
            if (family == "dg") return limit_dict(harmonic_limit_scan(n, cs, grid));
            if (family == "mac") return limit_dict(mac_harmonic_limit(n, cs, grid));
            throw py::value_error("family must be dg or mac");
        },
        py::arg("family"), py::arg("n"), py::arg("cs") = std::vector<double>{0.2, 0.1, 0.05});

    py::class_<PeriodicWeight>(m, "PeriodicWeight")
        .def(py::init<PeriodicWeight::Modes>(), py::arg("modes"), "mode m -> coefficient of e^{i 4 pi m x}")
        .def_static("cosine", &PeriodicWeight::cosine, py::arg("a"), py::arg("b"))
        .def_property_readonly("modes", &PeriodicWeight::modes)
        .def("__call__", &PeriodicWeight::operator());
    m.def("alpha_w", [](const PeriodicWeight& w, std::optional<double> c, std::optional<double> q) { return alpha_w(w, ctx_of(c, q)); },
          py::arg("w"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none());
    m.def(
        "degeneracy_gram",
        [](const PeriodicWeight& w, int nmax, std::optional<double> c, std::optional<double> q, bool quadrature) {
            return degeneracy_gram(w, ctx_of(c, q), nmax, quadrature);
        },
        py::arg("w"), py::arg("nmax"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none(),
        py::arg("quadrature") = false);
    m.def(
        "gamma_family_gram",
        [](int nweights, int nmax, std::optional<double> c, std::optional<double> q) {
            return gamma_family_gram(ctx_of(c, q), nweights, nmax);
        },
        py::arg("nweights"), py::arg("nmax"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none());

    m.def("suite_names", &suite_names);
    m.def(
        "run_suite",
        [](const std::string& name, std::optional<double> c, std::optional<double> q, std::optional<int> nmax,
           std::optional<unsigned> digits, std::uint64_t seed, int points) {
            SuiteConfig cfg;
            cfg.spec = spec_of(c, q);
            cfg.nmax = nmax;
            cfg.digits = digits;
            cfg.seed = seed;
            cfg.points = points;
            SuiteResult r;
            {
                py::gil_scoped_release release;
                r = run_suite(name, cfg);
            }
            return json_to_py(to_json(r, cfg));
        },
        py::arg("name"), py::kw_only(), py::arg("c") = py::none(), py::arg("q") = py::none(),
        py::arg("nmax") = py::none(), py::arg("digits") = py::none(), py::arg("seed") = SuiteConfig{}.seed,
        py::arg("points") = 512, "run a named verification suite and return its JSON report as a dict");
}
