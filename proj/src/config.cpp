#include "pblab/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pblab {

const std::vector<std::string>& model_names() {
    static const std::vector<std::string> v{"bosonic", "dho",      "extended_oscillator", "gll", "nogo",
                                            "riesz_mult", "shifted", "susy",             "swanson"};
    return v;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> v{"biorthogonality", "coherent", "dho",        "gram",
                                            "intertwine",      "metric",   "nogo",       "resolution"};
    return v;
}

std::vector<std::string> suites_for(const std::string& model) {
    if (model == "dho") return {"dho"};
    if (model == "nogo") return {"nogo"};
    if (model == "gll") return {"biorthogonality", "gram", "metric"};
    return {"biorthogonality", "coherent", "gram", "intertwine", "metric", "resolution"};
}

json complex_to_json(CNum z) { return json::array({z.real(), z.imag()}); }

CNum complex_from_json(const json& j, const std::string& field) {
    if (j.is_number()) return CNum(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return CNum(j[0].get<double>(), j[1].get<double>());
    throw ConfigError(field + ": expected a number or a [re, im] pair", field);
}

namespace {

void fail(const std::string& field, const std::string& msg) { throw ConfigError(field + ": " + msg, field); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) {
            std::string f = where.empty() ? it.key() : where + "." + it.key();
            fail(f, "unknown key");
        }
}

double get_double(const json& j, const std::string& key, double def, const std::string& field) {
    if (!j.contains(key)) return def;
    if (!j[key].is_number()) fail(field, "expected a number");
    double v = j[key].get<double>();
    if (!std::isfinite(v)) fail(field, "must be finite");
    return v;
}

int get_int(const json& j, const std::string& key, int def, const std::string& field) {
    if (!j.contains(key)) return def;
    if (!j[key].is_number_integer()) fail(field, "expected an integer");
    return j[key].get<int>();
}

std::string get_string(const json& j, const std::string& key, const std::string& def, const std::string& field) {
    if (!j.contains(key)) return def;
    if (!j[key].is_string()) fail(field, "expected a string");
    return j[key].get<std::string>();
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

const char* phi_kind_name(PhiSpec::Kind k) {
    switch (k) {
        case PhiSpec::Kind::Zero: return "zero";
        case PhiSpec::Kind::Sin: return "sin";
        case PhiSpec::Kind::Arctan: return "arctan";
    }
    return "?";
}

const char* rho_kind_name(RhoSpec::Kind k) {
    switch (k) {
        case RhoSpec::Kind::Constant: return "constant";
        case RhoSpec::Kind::OnePlusEpsSin: return "one_plus_eps_sin";
        case RhoSpec::Kind::ExpIMuArctan: return "exp_i_mu_arctan";
    }
    return "?";
}

const char* variant_name(VariantKind k) {
    return k == VariantKind::AMinusAlphaAdagN ? "a_minus_alpha_adag_n" : "b_minus_beta_a_m";
}

}  // namespace

int family_length(const RunConfig& c) {
    if (c.model == "gll") return (c.nmax + 1) * (c.lmax + 1);
    int n = 2 * c.nmax;
    if (c.model == "susy") n = std::min(n, limits().poly_nmax + 1);
    return std::min(n, c.dim);
}

std::vector<int> effective_ladder(const RunConfig& c) {
    if (!c.ladder.empty()) return c.ladder;
    if (c.model == "gll") return default_ladder(family_length(c));
    return default_ladder(c.nmax);
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object", "");
    RunConfig c;
    if (!j.contains("model") || !j["model"].is_string()) fail("model", "required string");
    c.model = j["model"].get<std::string>();
    if (std::find(model_names().begin(), model_names().end(), c.model) == model_names().end())
        fail("model", "unknown model '" + c.model + "'");

    std::set<std::string> allowed{"model", "dim",    "nmax",       "ladder", "suites", "tolerances",
                                  "thresholds", "output", "z", "quadrature", "rep"};
    std::set<std::string> extra;
    if (c.model == "shifted") extra = {"alpha", "beta"};
    else if (c.model == "extended_oscillator") extra = {"beta"};
    else if (c.model == "swanson") extra = {"theta"};
    else if (c.model == "susy") extra = {"example", "alpha", "beta", "phi"};
    else if (c.model == "riesz_mult") extra = {"rho"};
    else if (c.model == "gll") extra = {"k1", "k2", "lmax"};
    else if (c.model == "dho") extra = {"m", "k", "gamma", "Gamma", "delta", "samples", "grid", "seed"};
    else if (c.model == "nogo") extra = {"alpha", "kmax", "n_deform", "variant"};
    allowed.insert(extra.begin(), extra.end());
    check_keys(j, allowed, "");

    // Representation
    Rep natural = Rep::Fock;
    if (c.model == "susy" || c.model == "riesz_mult") natural = Rep::Coord1D;
    if (c.model == "gll") natural = Rep::Coord2D;
    c.rep = natural;
    if (j.contains("rep")) {
        std::string r = get_string(j, "rep", "", "rep");
        Rep want;
        if (r == "FOCK") want = Rep::Fock;
        else if (r == "COORD1D") want = Rep::Coord1D;
        else if (r == "COORD2D") want = Rep::Coord2D;
        else fail("rep", "expected FOCK, COORD1D or COORD2D");
        bool ok = want == natural || (c.model == "swanson" && want != Rep::Coord2D);
        if (!ok) fail("rep", std::string("model ") + c.model + " does not support " + r);
        c.rep = want;
    }

    c.dim = get_int(j, "dim", 96, "dim");
    if (c.dim < 16 || c.dim > limits().fock_max_dim) fail("dim", "must lie in [16, 512]");
    c.nmax = get_int(j, "nmax", c.model == "gll" ? 4 : 24, "nmax");
    c.lmax = get_int(j, "lmax", 4, "lmax");
    if (c.model == "gll") {
        if (c.nmax < 0 || c.nmax > 12) fail("nmax", "must lie in [0, 12] for gll");
        if (c.lmax < 0 || c.lmax > 12) fail("lmax", "must lie in [0, 12]");
    } else if (c.nmax < 1 || 2 * c.nmax > c.dim) {
        fail("nmax", "must satisfy 1 <= nmax and 2*nmax <= dim");
    }

    // Model parameters
    if (c.model == "bosonic") {
        c.params = BosonicParams{};
    } else if (c.model == "shifted") {
        ShiftedParams p;
        if (j.contains("alpha")) p.alpha = complex_from_json(j["alpha"], "alpha");
        if (j.contains("beta")) p.beta = complex_from_json(j["beta"], "beta");
        c.params = p;
    } else if (c.model == "extended_oscillator") {
        ExtOscParams p;
        p.beta = get_double(j, "beta", 1.0, "beta");
        if (!(p.beta > 0)) fail("beta", "must be positive");
        c.params = p;
    } else if (c.model == "swanson") {
        SwansonParams p;
        p.theta = get_double(j, "theta", 0.3, "theta");
        if (!(std::abs(p.theta) < kPi / 4) || p.theta == 0)
            fail("theta", "must lie in (-pi/4, pi/4) and be nonzero");
        c.params = p;
    } else if (c.model == "susy") {
        SusyParams p;
        p.example = get_int(j, "example", 1, "example");
        if (p.example != 1 && p.example != 2) fail("example", "must be 1 or 2");
        if (j.contains("alpha")) p.alpha = complex_from_json(j["alpha"], "alpha");
        if (p.alpha.real() != 0 && p.alpha.imag() != 0) fail("alpha", "must be real or purely imaginary");
        if (j.contains("beta")) {
            if (!j["beta"].is_number()) fail("beta", "must be a real number");
            p.beta = j["beta"].get<double>();
        }
        if (j.contains("phi")) {
            const json& f = j["phi"];
            if (!f.is_object()) fail("phi", "expected an object");
            check_keys(f, {"kind", "lambda", "mu"}, "phi");
            std::string k = get_string(f, "kind", "zero", "phi.kind");
            if (k == "zero") p.phi.kind = PhiSpec::Kind::Zero;
            else if (k == "sin") p.phi.kind = PhiSpec::Kind::Sin;
            else if (k == "arctan") p.phi.kind = PhiSpec::Kind::Arctan;
            else fail("phi.kind", "expected zero, sin or arctan");
            p.phi.lambda = get_double(f, "lambda", 0.0, "phi.lambda");
            p.phi.mu = get_double(f, "mu", 1.0, "phi.mu");
        }
        if (p.example == 1 && p.phi.kind != PhiSpec::Kind::Zero) fail("phi", "example 1 takes no perturbation");
        c.params = p;
    } else if (c.model == "riesz_mult") {
        RhoSpec r;
        if (j.contains("rho")) {
            const json& f = j["rho"];
            if (!f.is_object()) fail("rho", "expected an object");
            check_keys(f, {"kind", "c", "eps", "mu", "lower", "upper"}, "rho");
            std::string k = get_string(f, "kind", "constant", "rho.kind");
            if (k == "constant") r.kind = RhoSpec::Kind::Constant;
            else if (k == "one_plus_eps_sin") r.kind = RhoSpec::Kind::OnePlusEpsSin;
            else if (k == "exp_i_mu_arctan") r.kind = RhoSpec::Kind::ExpIMuArctan;
            else fail("rho.kind", "expected constant, one_plus_eps_sin or exp_i_mu_arctan");
            if (f.contains("c")) r.c = complex_from_json(f["c"], "rho.c");
            r.eps = get_double(f, "eps", 0.0, "rho.eps");
            r.mu = get_double(f, "mu", 0.0, "rho.mu");
            if (f.contains("lower")) r.lower = get_double(f, "lower", 0.0, "rho.lower");
            if (f.contains("upper")) r.upper = get_double(f, "upper", 0.0, "rho.upper");
        }
        if (r.kind == RhoSpec::Kind::Constant && std::abs(r.c) == 0) fail("rho.c", "must be nonzero");
        if (r.kind == RhoSpec::Kind::OnePlusEpsSin && !(std::abs(r.eps) < 1)) fail("rho.eps", "|eps| must be below 1");
        double lo = std::isnan(r.lower) ? r.analytic_lower() : r.lower;
        double hi = std::isnan(r.upper) ? r.analytic_upper() : r.upper;
        if (!(lo > 0) || hi < lo) fail("rho", "bounds must satisfy 0 < lower <= upper");
        c.params = RieszParams{r};
    } else if (c.model == "gll") {
        GLLParams p;
        p.k1 = get_double(j, "k1", 0.0, "k1");
        p.k2 = get_double(j, "k2", 0.0, "k2");
        if (!(std::abs(p.k1) < 0.5)) fail("k1", "must lie in the box (-1/2, 1/2)");
        if (!(std::abs(p.k2) < 0.5)) fail("k2", "must lie in the box (-1/2, 1/2)");
        c.params = p;
    } else if (c.model == "dho") {
        DHOParams p;
        p.m = get_double(j, "m", 1.0, "m");
        p.gamma = get_double(j, "gamma", 0.1, "gamma");
        p.k = get_double(j, "k", 1.0, "k");
        if (j.contains("Gamma")) p.Gamma = complex_from_json(j["Gamma"], "Gamma");
        if (j.contains("delta")) p.delta = complex_from_json(j["delta"], "delta");
        if (!(p.m > 0)) fail("m", "must be positive");
        if (p.gamma < 0) fail("gamma", "must be nonnegative");
        if (p.k < p.gamma * p.gamma / (4 * p.m)) fail("k", "must be at least gamma^2/(4m)");
        CNum D = p.Gamma * std::conj(p.delta) - p.delta * std::conj(p.Gamma);
        if (std::abs(D) == 0) fail("delta", "Gamma conj(delta) must differ from delta conj(Gamma)");
        c.params = p;
        c.dho.params = p;
        c.dho.samples = get_int(j, "samples", 100, "samples");
        c.dho.grid = get_int(j, "grid", 64, "grid");
        if (c.dho.samples < 1 || c.dho.samples > 100000) fail("samples", "must lie in [1, 100000]");
        if (c.dho.grid < 2 || c.dho.grid > 1024) fail("grid", "must lie in [2, 1024]");
        if (j.contains("seed")) {
            if (!j["seed"].is_number_unsigned()) fail("seed", "expected a nonnegative integer");
            c.thresholds.seed = j["seed"].get<unsigned long long>();
        }
    } else if (c.model == "nogo") {
        if (j.contains("alpha")) c.nogo.alpha = complex_from_json(j["alpha"], "alpha");
        c.nogo.kmax = get_int(j, "kmax", 200, "kmax");
        c.nogo.n_deform = get_int(j, "n_deform", 2, "n_deform");
        if (c.nogo.kmax < 10 || c.nogo.kmax > limits().moment_kmax) fail("kmax", "must lie in [10, 200]");
        if (c.nogo.n_deform < 2) fail("n_deform", "must be at least 2");
        if (j.contains("variant")) {
            const json& v = j["variant"];
            if (!v.is_object()) fail("variant", "expected an object");
            check_keys(v, {"kind", "alpha", "beta", "n", "kmax"}, "variant");
            std::string k = get_string(v, "kind", "a_minus_alpha_adag_n", "variant.kind");
            if (k == "a_minus_alpha_adag_n") c.nogo.variant = VariantKind::AMinusAlphaAdagN;
            else if (k == "b_minus_beta_a_m") c.nogo.variant = VariantKind::BMinusBetaAM;
            else fail("variant.kind", "expected a_minus_alpha_adag_n or b_minus_beta_a_m");
            if (v.contains("alpha")) c.nogo.variant_params.alpha = complex_from_json(v["alpha"], "variant.alpha");
            if (v.contains("beta")) c.nogo.variant_params.beta = complex_from_json(v["beta"], "variant.beta");
            c.nogo.variant_params.n = get_int(v, "n", 2, "variant.n");
            c.nogo.variant_kmax = get_int(v, "kmax", 40, "variant.kmax");
            if (c.nogo.variant_params.n < 2) fail("variant.n", "must be at least 2");
            if (c.nogo.variant_kmax < 10 || c.nogo.variant_kmax > limits().moment_kmax)
                fail("variant.kmax", "must lie in [10, 200]");
            c.nogo.has_variant = true;
        }
    }

    // Suites
    if (j.contains("suites")) {
        if (!j["suites"].is_array()) fail("suites", "expected an array of suite names");
        auto ok = suites_for(c.model);
        std::set<std::string> s;
        for (const auto& e : j["suites"]) {
            if (!e.is_string()) fail("suites", "expected suite names as strings");
            std::string n = e.get<std::string>();
            if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
                fail("suites", "unknown suite '" + n + "'");
            if (std::find(ok.begin(), ok.end(), n) == ok.end())
                fail("suites", "suite '" + n + "' is not available for model " + c.model);
            s.insert(n);
        }
        c.suites.assign(s.begin(), s.end());
    } else {
        c.suites = suites_for(c.model);
    }

    if (j.contains("ladder")) {
        const json& l = j["ladder"];
        if (!l.is_array() || l.size() < 3) fail("ladder", "expected at least 3 increasing sizes");
        for (const auto& e : l) {
            if (!e.is_number_integer()) fail("ladder", "expected integers");
            c.ladder.push_back(e.get<int>());
        }
        for (size_t i = 0; i < c.ladder.size(); ++i) {
            if (c.ladder[i] < 1) fail("ladder", "sizes must be positive");
            if (i > 0 && c.ladder[i] <= c.ladder[i - 1]) fail("ladder", "sizes must increase");
        }
        if (c.ladder.back() > family_length(c)) fail("ladder", "largest size exceeds the family length");
    } else if (std::count(c.suites.begin(), c.suites.end(), "gram") || std::count(c.suites.begin(), c.suites.end(), "metric")) {
        if (c.model != "gll" && c.nmax < 4) fail("nmax", "must be at least 4 for the gram and metric suites");
    }

    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object()) fail("tolerances", "expected an object");
        check_keys(t, {"biorthogonality", "number", "gram_psd", "metric", "intertwine", "eigen_relation", "route",
                       "resolution", "nogo_pattern", "gll_metric"},
                   "tolerances");
        auto take = [&](const char* k, double& dst) {
            dst = get_double(t, k, dst, std::string("tolerances.") + k);
            if (!(dst > 0)) fail(std::string("tolerances.") + k, "must be positive");
        };
        take("biorthogonality", c.tol.biorthogonality);
        take("number", c.tol.number);
        take("gram_psd", c.tol.gram_psd);
        take("metric", c.tol.metric);
        take("intertwine", c.tol.intertwine);
        take("eigen_relation", c.tol.eigen_relation);
        take("route", c.tol.route);
        take("resolution", c.tol.resolution);
        take("nogo_pattern", c.tol.nogo_pattern);
        take("gll_metric", c.tol.gll_metric);
    }

    if (j.contains("thresholds")) {
        const json& t = j["thresholds"];
        if (!t.is_object()) fail("thresholds", "expected an object");
        check_keys(t, {"bounded_ratio", "unbounded_ratio", "min_eig_floor", "completeness_step", "completeness_floor"},
                   "thresholds");
        auto& th = c.thresholds;
        th.bounded_ratio = get_double(t, "bounded_ratio", th.bounded_ratio, "thresholds.bounded_ratio");
        th.unbounded_ratio = get_double(t, "unbounded_ratio", th.unbounded_ratio, "thresholds.unbounded_ratio");
        th.min_eig_floor = get_double(t, "min_eig_floor", th.min_eig_floor, "thresholds.min_eig_floor");
        th.completeness_step = get_double(t, "completeness_step", th.completeness_step, "thresholds.completeness_step");
        th.completeness_floor =
            get_double(t, "completeness_floor", th.completeness_floor, "thresholds.completeness_floor");
        if (!(th.bounded_ratio >= 1)) fail("thresholds.bounded_ratio", "must be at least 1");
        if (!(th.unbounded_ratio > th.bounded_ratio)) fail("thresholds.unbounded_ratio", "must exceed bounded_ratio");
        if (!(th.min_eig_floor > 0)) fail("thresholds.min_eig_floor", "must be positive");
        if (!(th.completeness_step > 0 && th.completeness_step < 1))
            fail("thresholds.completeness_step", "must lie in (0, 1)");
        if (!(th.completeness_floor > 0)) fail("thresholds.completeness_floor", "must be positive");
    }

    if (j.contains("z")) {
        if (!j["z"].is_array()) fail("z", "expected an array of complex points");
        c.z_points.clear();
        for (const auto& e : j["z"]) c.z_points.push_back(complex_from_json(e, "z"));
    }

    if (j.contains("quadrature")) {
        const json& q = j["quadrature"];
        if (!q.is_object()) fail("quadrature", "expected an object");
        check_keys(q, {"R", "M", "cutoff"}, "quadrature");
        c.quad.R = get_int(q, "R", c.quad.R, "quadrature.R");
        c.quad.M = get_int(q, "M", c.quad.M, "quadrature.M");
        c.quad.cutoff = get_double(q, "cutoff", c.quad.cutoff, "quadrature.cutoff");
        if (c.quad.R < 8 || c.quad.R > limits().quad_max_nodes) fail("quadrature.R", "must lie in [8, 256]");
        if (c.quad.M < 16) fail("quadrature.M", "must be at least 16");
        if (!(c.quad.cutoff > 0)) fail("quadrature.cutoff", "must be positive");
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        if (!o.is_object()) fail("output", "expected an object");
        check_keys(o, {"path", "format"}, "output");
        c.output_path = get_string(o, "path", "", "output.path");
        std::string f = lower(get_string(o, "format", "json", "output.format"));
        if (f == "json") c.format = Format::JSON;
        else if (f == "csv") c.format = Format::CSV;
        else fail("output.format", "expected JSON or CSV");
    }
    return c;
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        size_t upto = std::min<size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        int line = 1, col = 1;
        for (size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                              e.what(),
                          "", line, col);
    }
    return config_from_json(j);
}

json config_to_json(const RunConfig& c) {
    json j;
    j["model"] = c.model;
    j["rep"] = rep_name(c.rep);
    if (c.model != "dho" && c.model != "nogo") {
        j["dim"] = c.dim;
        j["nmax"] = c.nmax;
        j["ladder"] = effective_ladder(c);
    }
    if (const auto* p = std::get_if<ShiftedParams>(&c.params)) {
        j["alpha"] = complex_to_json(p->alpha);
        j["beta"] = complex_to_json(p->beta);
    } else if (const auto* p = std::get_if<ExtOscParams>(&c.params)) {
        j["beta"] = p->beta;
    } else if (const auto* p = std::get_if<SwansonParams>(&c.params)) {
        j["theta"] = p->theta;
    } else if (const auto* p = std::get_if<SusyParams>(&c.params)) {
        j["example"] = p->example;
        j["alpha"] = complex_to_json(p->alpha);
        j["beta"] = p->beta.real();
        j["phi"] = {{"kind", phi_kind_name(p->phi.kind)}, {"lambda", p->phi.lambda}, {"mu", p->phi.mu}};
    } else if (const auto* p = std::get_if<RieszParams>(&c.params)) {
        const RhoSpec& r = p->rho;
        json rj = {{"kind", rho_kind_name(r.kind)}, {"c", complex_to_json(r.c)}, {"eps", r.eps}, {"mu", r.mu}};
        rj["lower"] = std::isnan(r.lower) ? r.analytic_lower() : r.lower;
        rj["upper"] = std::isnan(r.upper) ? r.analytic_upper() : r.upper;
        j["rho"] = rj;
    } else if (const auto* p = std::get_if<GLLParams>(&c.params)) {
        j["k1"] = p->k1;
        j["k2"] = p->k2;
        j["lmax"] = c.lmax;
    }
    if (c.model == "dho") {
        const DHOParams& p = c.dho.params;
        j["m"] = p.m;
        j["k"] = p.k;
        j["gamma"] = p.gamma;
        j["Gamma"] = complex_to_json(p.Gamma);
        j["delta"] = complex_to_json(p.delta);
        j["samples"] = c.dho.samples;
        j["grid"] = c.dho.grid;
        j["seed"] = c.thresholds.seed;
    }
    if (c.model == "nogo") {
        j["alpha"] = complex_to_json(c.nogo.alpha);
        j["kmax"] = c.nogo.kmax;
        j["n_deform"] = c.nogo.n_deform;
        if (c.nogo.has_variant)
            j["variant"] = {{"kind", variant_name(c.nogo.variant)},
                            {"alpha", complex_to_json(c.nogo.variant_params.alpha)},
                            {"beta", complex_to_json(c.nogo.variant_params.beta)},
                            {"n", c.nogo.variant_params.n},
                            {"kmax", c.nogo.variant_kmax}};
    }
    j["suites"] = c.suites;
    const Tolerances& t = c.tol;
    j["tolerances"] = {{"biorthogonality", t.biorthogonality}, {"number", t.number},
                       {"gram_psd", t.gram_psd},               {"metric", t.metric},
                       {"intertwine", t.intertwine},           {"eigen_relation", t.eigen_relation},
                       {"route", t.route},                     {"resolution", t.resolution},
                       {"nogo_pattern", t.nogo_pattern},       {"gll_metric", t.gll_metric}};
    const Thresholds& th = c.thresholds;
    j["thresholds"] = {{"bounded_ratio", th.bounded_ratio},
                       {"unbounded_ratio", th.unbounded_ratio},
                       {"min_eig_floor", th.min_eig_floor},
                       {"completeness_step", th.completeness_step},
                       {"completeness_floor", th.completeness_floor}};
    json z = json::array();
    for (CNum w : c.z_points) z.push_back(complex_to_json(w));
    j["z"] = z;
    j["quadrature"] = {{"R", c.quad.R}, {"M", c.quad.M}, {"cutoff", c.quad.cutoff}};
    j["output"] = {{"path", c.output_path}, {"format", c.format == Format::JSON ? "JSON" : "CSV"}};
    return j;
}

BiorthSystem build_system(const RunConfig& c) {
    int nf = family_length(c);
    if (c.model == "bosonic") return bosonic_model(c.dim, nf);
    if (const auto* p = std::get_if<ShiftedParams>(&c.params)) return shifted_model(p->alpha, p->beta, c.dim, nf);
    if (const auto* p = std::get_if<ExtOscParams>(&c.params)) return extended_oscillator(p->beta, c.dim, nf);
    if (const auto* p = std::get_if<SwansonParams>(&c.params)) return swanson_model(p->theta, nf, c.rep, c.dim);
    if (const auto* p = std::get_if<SusyParams>(&c.params)) return susy_model(*p, nf, c.dim);
    if (const auto* p = std::get_if<RieszParams>(&c.params)) return riesz_mult_model(p->rho, nf, c.dim);
    if (const auto* p = std::get_if<GLLParams>(&c.params)) return gll_model(p->k1, p->k2, c.nmax, c.lmax);
    throw DomainError("build_system: model " + c.model + " has no biorthogonal system");
}

}  // namespace pblab
