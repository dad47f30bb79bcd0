// qgauss: construct, evaluate and verify DG polynomials and the two
// q-oscillator eigenfunction families.

#include "qgauss/qgauss.hpp"
#include "qgauss/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace qgauss;

namespace {

struct Common {
    std::optional<double> c;
    std::optional<double> q;
    std::string format = "json";
    std::string out = "-";
    std::optional<unsigned> digits;
};

void add_common(CLI::App* sub, Common& opt, bool with_digits = true) {
    auto* oc = sub->add_option("--c", opt.c, "Gaussian inverse width c > 0 (q = exp(-c^2))");
    auto* oq = sub->add_option("--q", opt.q, "deformation q in (0,1) (c = sqrt(-ln q))");
    oc->excludes(oq);
    oq->excludes(oc);
    sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", opt.out, "output path, - for stdout")->capture_default_str();
    if (with_digits) sub->add_option("--digits", opt.digits, "decimal digits for the high-precision backend");
}

QSpec spec_of(const Common& opt) {
    if (opt.c) return QSpec::from_c(*opt.c);
    if (opt.q) return QSpec::from_q(*opt.q);
    throw CLI::ValidationError("--c/--q", "exactly one of --c or --q is required");
}

void emit(const Common& opt, const std::string& text) {
    if (opt.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + opt.out + "'");
    f << text;
    if (!f) throw std::runtime_error("failed writing '" + opt.out + "'");
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string dump(CsvTable table, const QSpec& spec) {
    table.prepend_constant("q", format_double(spec.q()));
    table.prepend_constant("c", format_double(spec.c()));
    std::ostringstream s;
    table.write(s);
    return s.str();
}

nlohmann::json header(const std::string& kind, const QSpec& spec) {
    return {{"schema", schema_version}, {"kind", kind}, {"c", spec.c()}, {"q", spec.q()}};
}

std::vector<double> parse_grid(const std::string& text) {
    double lo = 0, hi = 0;
    long count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    in.imbue(std::locale::classic());
    if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
        throw CLI::ValidationError("--grid", "expected min:max:count");
    }
    if (count < 1) throw CLI::ValidationError("--grid", "empty grid");
    std::vector<double> grid;
    for (long i = 0; i < count; ++i) grid.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    return grid;
}

// ---------------------------------------------------------------------------

struct CoeffsOpt {
    Common common;
    std::string family = "dg";
    int n = 0;
};

int cmd_coeffs(const CoeffsOpt& o) {
    const QSpec spec = spec_of(o.common);
    const auto ctx = spec.make<double>();
    std::vector<double> coeffs;
    nlohmann::json j = header("coeffs", spec);
    j["family"] = o.family;
    j["n"] = o.n;
    if (o.family == "dg") {
        const auto dc = dg_coeffs(ctx, o.n);
        coeffs = dc.normalized;
        j["normalization"] = "phi_n = Phi_n / ||Phi_n||";
        j["norm"] = dg_norm(ctx, o.n);
        j["raw"] = dc.raw;
    } else {
        const auto mc = mac_coeffs(ctx, o.n);
        for (double e : mc.E) coeffs.push_back(mc.zeta * e);
        j["normalization"] = "(B_n, B_n) = (-1)^n, coefficient = zeta_n E_k";
        j["zeta"] = mc.zeta;
        j["E"] = mc.E;
    }
    if (o.common.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            rows.push_back({{"k", k}, {"center", static_cast<double>(k)}, {"coefficient", coeffs[k]}});
        }
        j["rows"] = rows;
        emit(o.common, dump(j));
    } else {
        CsvTable t({"family", "n", "normalization", "k", "center", "coefficient"});
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            t.add_row({o.family, std::to_string(o.n), o.family == "dg" ? "phi" : "B", std::to_string(k),
                       format_double(static_cast<double>(k)), format_double(coeffs[k])});
        }
        emit(o.common, dump(t, spec));
    }
    return 0;
}

struct EvalOpt {
    Common common;
    std::string family = "dg";
    int n = 0;
    std::string grid = "-3:3:61";
};

int cmd_eval(const EvalOpt& o) {
    const QSpec spec = spec_of(o.common);
    const auto ctx = spec.make<double>();
    const auto xs = parse_grid(o.grid);
    const auto f = o.family == "dg" ? build_phi(ctx, o.n) : build_Bn(ctx, o.n);
    std::vector<double> values;
    for (double x : xs) values.push_back(evaluate(f, x));
    if (o.common.format == "json") {
        nlohmann::json j = header("eval", spec);
        j["family"] = o.family;
        j["n"] = o.n;
        j["chain"] = chain_to_json(f);
        j["x"] = xs;
        j["value"] = values;
        emit(o.common, dump(j));
    } else {
        CsvTable t({"x", "value"});
        for (std::size_t i = 0; i < xs.size(); ++i) t.add_row({format_double(xs[i]), format_double(values[i])});
        emit(o.common, dump(t, spec));
    }
    return 0;
}

struct GramOpt {
    Common common;
    std::string family = "dg";
    int nmax = 12;
    int nweights = 3;
    std::optional<double> tol;
};

int emit_gram(const Common& common, const QSpec& spec, const GramReport& r, double tol) {
    if (common.format == "json") {
        nlohmann::json j = header("gram", spec);
        j["report"] = gram_to_json(r, tol);
        emit(common, dump(j));
    } else {
        emit(common, dump(gram_to_csv(r), spec));
    }
    return 0;
}

int cmd_gram(const GramOpt& o) {
    const QSpec spec = spec_of(o.common);
    const auto req = PrecisionRequest::from_optional(o.common.digits);
    if (o.family == "dg") return emit_gram(o.common, spec, dg_gram(spec, o.nmax, req), o.tol.value_or(1e-10));
    if (o.family == "mac") {
        const double tol = o.tol.value_or(1e-8);
        return emit_gram(o.common, spec, indefinite_gram(spec, o.nmax, req, tol), tol);
    }
    return emit_gram(o.common, spec, gamma_family_gram(spec.make<double>(), o.nweights, o.nmax), o.tol.value_or(1e-8));
}

struct CircleOpt {
    Common common;
    std::string family = "dg";
    int nmax = 8;
    int points = 512;
    bool conjugate_first = false;
    std::optional<double> tol;
};

int cmd_circle(const CircleOpt& o) {
    const QSpec spec = spec_of(o.common);
    CircleOptions opt;
    opt.points = o.points;
    opt.conjugate_first = o.conjugate_first;
    opt.precision = PrecisionRequest::from_optional(o.common.digits);
    opt.tol = o.tol.value_or(o.family == "dg" ? 1e-9 : 1e-8);
    const auto family = o.family == "dg" ? CircleFamily::dg : CircleFamily::mac;
    return emit_gram(o.common, spec, circle_gram(family, spec, o.nmax, opt), opt.tol);
}

struct WeightsOpt {
    Common common;
    int count = 3;
};

int cmd_weights(const WeightsOpt& o) {
    const QSpec spec = spec_of(o.common);
    const auto fam = orthonormal_weight_family(spec.make<double>(), o.count);
    if (o.common.format == "json") {
        nlohmann::json j = header("weights", spec);
        j["condition_number"] = fam.condition_number;
        nlohmann::json ws = nlohmann::json::array();
        for (const auto& w : fam.weights) {
            nlohmann::json modes = nlohmann::json::array();
            for (const auto& [m, v] : w.modes()) modes.push_back({m, v.real(), v.imag()});
            ws.push_back({{"modes", modes}});
        }
        j["weights"] = ws;
        emit(o.common, dump(j));
    } else {
        CsvTable t({"weight", "mode", "re", "im"});
        for (std::size_t i = 0; i < fam.weights.size(); ++i) {
            for (const auto& [m, v] : fam.weights[i].modes()) {
                t.add_row({std::to_string(i), std::to_string(m), format_double(v.real()), format_double(v.imag())});
            }
        }
        emit(o.common, dump(t, spec));
    }
    return 0;
}

struct LimitOpt {
    Common common;
    std::string family = "dg";
    int n = 2;
    std::vector<double> cs{0.2, 0.1, 0.05};
    std::string grid = "-3:3:121";
    double margin = 0.2;
};

int cmd_limit(const LimitOpt& o) {
    const auto grid = parse_grid(o.grid);
    const bool dg = o.family == "dg";
    const LimitTable table = dg ? harmonic_limit_scan(o.n, o.cs, grid, o.margin)
                                : mac_harmonic_limit(o.n, o.cs, grid, o.margin);
    auto value = [&](double c, double s) { return dg ? dg_limit_value(o.n, c, s) : mac_limit_value(o.n, c, s); };
    if (o.common.format == "json") {
        nlohmann::json j{{"schema", schema_version}, {"kind", "limit"}, {"family", o.family}, {"n", o.n}};
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : table.rows) {
            rows.push_back({{"c", r.c}, {"dev", r.dev}, {"constant", r.constant}, {"used", r.used},
                            {"excluded", r.excluded}, {"eigenvalue_gap", r.eigenvalue_gap},
                            {"parity_sign", r.parity_sign}});
        }
        j["rows"] = rows;
        j["monotone"] = table.monotone();
        if (table.rows.size() >= 2) {
            const auto rate = table.rate(table.rows.size() - 2, table.rows.size() - 1);
            j["rate"] = rate ? nlohmann::json(*rate) : nlohmann::json(nullptr);
        }
        j["s"] = grid;
        nlohmann::json profiles = nlohmann::json::object();
        for (double c : o.cs) {
            std::vector<double> v;
            for (double s : grid) v.push_back(value(c, s));
            profiles[format_double(c)] = v;
        }
        j["profiles"] = profiles;
        std::vector<double> h;
        for (double s : grid) h.push_back(std::exp(-0.5 * s * s) * hermite(o.n, s));
        j["hermite"] = h;
        emit(o.common, dump(j));
    } else {
        std::vector<std::string> head{"s", "hermite"};
        for (double c : o.cs) head.push_back("c=" + format_double(c));
        CsvTable t(head);
        for (double s : grid) {
            std::vector<std::string> row{format_double(s), format_double(std::exp(-0.5 * s * s) * hermite(o.n, s))};
            for (double c : o.cs) row.push_back(format_double(value(c, s)));
            t.add_row(row);
        }
        std::ostringstream out;
        t.write(out);
        emit(o.common, out.str());
    }
    return 0;
}

struct VerifyOpt {
    Common common;
    std::string suite;
    std::optional<int> nmax;
    int points = 512;
    bool conjugate_first = false;
    std::uint64_t seed = 20240611;
    double s = 0.5;
    int nweights = 3;
    std::optional<double> tol;
};

int cmd_verify(const VerifyOpt& o) {
    SuiteConfig cfg;
    cfg.spec = spec_of(o.common);
    cfg.nmax = o.nmax;
    cfg.digits = o.common.digits;
    cfg.points = o.points;
    cfg.conjugate_first = o.conjugate_first;
    cfg.seed = o.seed;
    cfg.s = o.s;
    cfg.nweights = o.nweights;
    cfg.tol = o.tol;
    const SuiteResult r = run_suite(o.suite, cfg);
    emit(o.common, dump(to_json(r, cfg)));
    for (const auto& c : r.checks) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << format_double(c.value);
        if (!c.passed && !c.where.empty()) std::cerr << " at " << c.where;
        std::cerr << '\n';
    }
    return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qgauss: DG polynomials, q-oscillator eigenfunctions and their verification suites"};
    app.require_subcommand(1);

    CoeffsOpt coeffs;
    auto* sc = app.add_subcommand("coeffs", "coefficient table of phi_n (dg) or B_n (mac)");
    add_common(sc, coeffs.common, false);
    sc->add_option("--family", coeffs.family)->check(CLI::IsMember({"dg", "mac"}))->capture_default_str();
    sc->add_option("--n", coeffs.n, "degree")->check(CLI::NonNegativeNumber)->capture_default_str();

    EvalOpt ev;
    auto* se = app.add_subcommand("eval", "evaluate phi_n or B_n on a grid");
    add_common(se, ev.common, false);
    se->add_option("--family", ev.family)->check(CLI::IsMember({"dg", "mac"}))->capture_default_str();
    se->add_option("--n", ev.n)->check(CLI::NonNegativeNumber)->capture_default_str();
    se->add_option("--grid", ev.grid, "min:max:count")->capture_default_str();

    GramOpt gram;
    auto* sg = app.add_subcommand("gram", "Gram matrix report");
    add_common(sg, gram.common);
    sg->add_option("--family", gram.family)->check(CLI::IsMember({"dg", "mac", "gamma"}))->capture_default_str();
    sg->add_option("--nmax", gram.nmax)->check(CLI::NonNegativeNumber)->capture_default_str();
    sg->add_option("--nweights", gram.nweights, "weights in the gamma family")->check(CLI::PositiveNumber)
        ->capture_default_str();
    sg->add_option("--tol", gram.tol, "tolerance used to list offending entries");

    CircleOpt circ;
    auto* sci = app.add_subcommand("circle", "unit-circle orthogonality of Rogers-Szego polynomials");
    add_common(sci, circ.common);
    sci->add_option("--family", circ.family)->check(CLI::IsMember({"dg", "mac"}))->capture_default_str();
    sci->add_option("--nmax", circ.nmax)->check(CLI::NonNegativeNumber)->capture_default_str();
    sci->add_option("--points", circ.points, "trapezoid points (power of two >= 64)")->capture_default_str();
    sci->add_flag("--conjugate-first", circ.conjugate_first, "conjugate the first factor (mac variant)");
    sci->add_option("--tol", circ.tol, "tolerance used to list offending entries and size precision");

    WeightsOpt wts;
    auto* sw = app.add_subcommand("weights", "orthonormal period-1/2 weight family");
    add_common(sw, wts.common, false);
    sw->add_option("--count", wts.count)->check(CLI::PositiveNumber)->capture_default_str();

    LimitOpt lim;
    auto* sl = app.add_subcommand("limit", "harmonic-oscillator limit profiles");
    sl->add_option("--format", lim.common.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sl->add_option("--out", lim.common.out)->capture_default_str();
    sl->add_option("--family", lim.family)->check(CLI::IsMember({"dg", "mac"}))->capture_default_str();
    sl->add_option("--n", lim.n)->check(CLI::NonNegativeNumber)->capture_default_str();
    sl->add_option("--cs", lim.cs, "decreasing list of c values")->capture_default_str();
    sl->add_option("--grid", lim.grid, "min:max:count within [-4, 4]")->capture_default_str();
    sl->add_option("--margin", lim.margin, "exclusion radius around Hermite zeros")->capture_default_str();

    VerifyOpt ver;
    auto* sv = app.add_subcommand("verify", "run a verification suite; exit status 1 on any failed check");
    add_common(sv, ver.common);
    sv->add_option("--suite", ver.suite)->required()->check(CLI::IsMember(suite_names()));
    sv->add_option("--nmax", ver.nmax, "largest degree (suite default when omitted)");
    sv->add_option("--points", ver.points)->capture_default_str();
    sv->add_flag("--conjugate-first", ver.conjugate_first);
    sv->add_option("--seed", ver.seed, "seed for random chains and weights")->capture_default_str();
    sv->add_option("--s", ver.s, "Stieltjes-Wigert shift")->capture_default_str();
    sv->add_option("--nweights", ver.nweights)->check(CLI::PositiveNumber)->capture_default_str();
    sv->add_option("--tol", ver.tol, "override the suite tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sc) return cmd_coeffs(coeffs);
        if (*se) return cmd_eval(ev);
        if (*sg) return cmd_gram(gram);
        if (*sci) return cmd_circle(circ);
        if (*sw) return cmd_weights(wts);
        if (*sl) return cmd_limit(lim);
        if (*sv) return cmd_verify(ver);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "qgauss: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
