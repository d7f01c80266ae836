#include "pblab/runner.hpp"

#include <chrono>
#include <cmath>
#include <optional>

#include "pblab/kernels.hpp"

namespace pblab {

namespace {

json cjson(CNum z) { return complex_to_json(z); }

json matrix_json(const CMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(cjson(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

json points_json(const std::vector<GramPoint>& pts) {
    json a = json::array();
    for (const auto& p : pts)
        a.push_back({{"N", p.N},
                     {"min_eig", p.min_eig},
                     {"max_eig", p.max_eig},
                     {"cond", p.min_eig > 0 ? p.max_eig / p.min_eig : INFINITY},
                     {"hermitian_defect", p.hermitian_defect}});
    return a;
}

struct Ctx {
    const RunConfig& c;
    std::optional<BiorthSystem> sys;
    std::vector<int> ladder;
    bool inconsistent = false;

    const BiorthSystem& system() {
        if (!sys) sys = build_system(c);
        return *sys;
    }
    Verdict verdict() {
        const auto& s = system();
        return combine_verdicts(riesz_verdict(gram_spectrum(s, Family::Phi, ladder), c.thresholds),
                                riesz_verdict(gram_spectrum(s, Family::Psi, ladder), c.thresholds));
    }
};

json suite_biorthogonality(Ctx& x) {
    const auto& s = x.system();
    const auto& tol = x.c.tol;
    int nb = s.rep == Rep::Coord2D ? s.nfam : std::min(x.c.nmax, s.nfam);
    BiorthCheck bc = check_biorthogonality(s, nb);
    BiorthCheck sw = check_biorthogonality(s, nb, true);
    double offdiag = 0, diagdev = 0;
    for (int n = 0; n < nb; ++n)
        for (int m = 0; m < nb; ++m) {
            CNum d = bc.G(n, m) - s.reference_overlap(n, m);
            if (n == m) diagdev = std::max(diagdev, std::abs(d));
            else offdiag = std::max(offdiag, std::abs(bc.G(n, m)));
        }
    json j;
    j["size"] = nb;
    j["maxdev"] = bc.maxdev;
    j["overlap_max_offdiag"] = offdiag;
    j["overlap_diag_dev"] = diagdev;
    j["swap_symmetry"] = max_abs(sw.G - bc.G.adjoint());
    j["overlap"] = matrix_json(bc.G);
    j["overlap_const"] = cjson(s.overlap_const);
    double number = 0;
    if (s.rep == Rep::Coord2D) {
        GLLResiduals g = gll_number_residuals(s, s.nfam);
        j["number_residual_h"] = g.h;
        j["number_residual_h_prime"] = g.h_prime;
        number = std::max(g.h, g.h_prime);
    } else if ((s.A && s.B) || s.lower_op) {
        number = number_residual(s, std::min(nb, 11));
    }
    j["number_residual"] = number;
    if (const auto* p = std::get_if<SwansonParams>(&s.params); p && s.rep == Rep::Coord1D) {
        NormProfile np = swanson_norm_profile(s, nb);
        j["norm_profile"] = {{"ratio_maxdev", np.ratio_maxdev},
                             {"fitted_prefactor", np.fitted_prefactor},
                             {"printed_prefactor", np.printed_prefactor},
                             {"sqrt_pi_over_cos", np.sqrt_prefactor}};
    }
    if (std::holds_alternative<ShiftedParams>(s.params)) {
        int top = std::min(12, s.nfam - 1);
        double margin = shifted_norm_margin(s, top);
        j["norm_lower_bound"] = {{"nmax", top}, {"min_margin", margin}, {"holds", margin >= -1e-10}};
    }
    if (!s.warnings.empty()) j["warnings"] = s.warnings;
    j["tolerance"] = tol.biorthogonality;
    j["pass"] = bc.maxdev <= tol.biorthogonality && number <= tol.number;
    return j;
}

json suite_gram(Ctx& x) {
    const auto& s = x.system();
    auto phi = gram_spectrum(s, Family::Phi, x.ladder);
    auto psi = gram_spectrum(s, Family::Psi, x.ladder);
    Verdict vphi = riesz_verdict(phi, x.c.thresholds), vpsi = riesz_verdict(psi, x.c.thresholds);
    DiagnosticsReport d = assumption_summary(s, x.ladder, x.c.thresholds, true);
    bool psd = true;
    for (const auto* pts : {&phi, &psi})
        for (const auto& p : *pts) {
            if (p.min_eig < -x.c.tol.gram_psd) psd = false;
            if (p.hermitian_defect > x.c.tol.gram_psd * std::max(1.0, p.max_eig)) psd = false;
        }
    json j;
    j["ladder"] = x.ladder;
    j["spectrum"] = {{"phi", points_json(phi)}, {"psi", points_json(psi)}};
    j["verdict_phi"] = verdict_name(vphi);
    j["verdict_psi"] = verdict_name(vpsi);
    j["verdict"] = verdict_name(combine_verdicts(vphi, vpsi));
    json a = json::object();
    for (int i = 0; i < 4; ++i) a["A" + std::to_string(i + 1)] = status_name(d.assumption[i]);
    j["assumptions"] = a;
    j["vacuum_residual_A"] = d.vacuum_residual_A;
    j["vacuum_residual_Bdag"] = d.vacuum_residual_Bdag;
    j["completeness_defect"] = d.completeness_defect;
    j["theorem1"] = {{"checked", d.resolution_checked},
                     {"deviation", d.resolution_deviation},
                     {"inconsistent", d.inconsistent}};
    j["notes"] = d.notes;
    j["psd_tolerance"] = x.c.tol.gram_psd;
    if (d.inconsistent) x.inconsistent = true;
    j["pass"] = psd && !d.inconsistent;
    return j;
}

json suite_metric(Ctx& x) {
    const auto& s = x.system();
    json j;
    if (s.rep == Rep::Coord2D) {
        const auto& p = std::get<GLLParams>(s.params);
        GLLMetric g = gll_metric_growth(p.k1, p.k2);
        double act = gll_metric_action_defect(s);
        j["sup_phi"] = {g.sup_phi_R5, g.sup_phi_R10, g.sup_phi_R20};
        j["sup_inverse"] = {g.sup_psi_R5, g.sup_psi_R10, g.sup_psi_R20};
        j["radii"] = {5, 10, 20};
        j["unbounded_certificate"] = g.unbounded_certificate;
        j["action_defect"] = act;
        j["tolerance"] = x.c.tol.gll_metric;
        j["pass"] = act <= x.c.tol.gll_metric;
        return j;
    }
    // Full family in the sums; the leading block is far from the truncation edge.
    int top = x.ladder.back();
    MetricPair mp = metric_operators(s, s.nfam, top / 2);
    Verdict v = x.verdict();
    bool enforced = v == Verdict::Bounded;
    j["family_length"] = s.nfam;
    j["block"] = top / 2;
    j["roundtrip_defect"] = mp.roundtrip;
    j["verdict"] = verdict_name(v);
    j["enforced"] = enforced;
    j["tolerance"] = x.c.tol.metric;
    j["pass"] = !enforced || mp.roundtrip <= x.c.tol.metric;
    return j;
}

json suite_intertwine(Ctx& x) {
    const auto& s = x.system();
    double r = intertwining_residual(s, x.ladder.back());
    return {{"size", x.ladder.back()}, {"residual", r}, {"tolerance", x.c.tol.intertwine},
            {"pass", r <= x.c.tol.intertwine}};
}

json suite_coherent(Ctx& x) {
    const auto& s = x.system();
    const auto& tol = x.c.tol;
    json pts = json::array();
    bool pass = true;
    for (CNum z : x.c.z_points) {
        CoherentPair cp = bicoherent(s, z);
        EigenResidual er = eigen_relation_residual(s, cp);
        json p{{"z", cjson(z)},
               {"tail_mass", cp.tail_mass},
               {"reliable", cp.reliable},
               {"residual_phi", er.phi},
               {"residual_psi", er.psi}};
        bool ok = er.phi <= tol.eigen_relation && er.psi <= tol.eigen_relation;
        if (s.B && s.has_coords()) {
            CVec orbit = coherent_by_orbit(s, z);
            int p_rows = std::max(1, s.protect - 1);
            double route = (cp.phi_z.head(p_rows) - orbit.head(p_rows)).cwiseAbs().maxCoeff();
            p["route_defect"] = route;
            ok = ok && route <= tol.route;
        }
        p["pass"] = ok;
        if (cp.reliable && !ok) pass = false;
        pts.push_back(std::move(p));
    }
    return {{"points", pts}, {"tolerance", tol.eigen_relation}, {"route_tolerance", tol.route}, {"pass", pass}};
}

json suite_resolution(Ctx& x) {
    const auto& s = x.system();
    int dim = static_cast<int>(s.phi.rows());
    CMat V = resolution_test_vectors(dim, x.c.thresholds.seed, std::max(0, x.c.thresholds.test_vectors - 8));
    ResolutionResult rr = resolution_matrix(s, x.c.quad, V, V);
    Verdict v = x.verdict();
    bool enforced = v == Verdict::Bounded;
    json j;
    j["quadrature"] = {{"R", x.c.quad.R}, {"M", x.c.quad.M}, {"cutoff", x.c.quad.cutoff}};
    j["max_deviation"] = rr.max_deviation;
    j["tail_bound"] = rr.tail_bound;
    j["T00"] = cjson(rr.T(0, 0));
    j["T"] = matrix_json(rr.T);
    j["verdict"] = verdict_name(v);
    j["enforced"] = enforced;
    if (std::holds_alternative<ShiftedParams>(s.params) || std::holds_alternative<ExtOscParams>(s.params)) {
        KernelFit k = shifted_kernel_fit(s, x.c.quad);
        j["kernel_fit"] = {{"T", cjson(k.T)},
                           {"candidate_x", cjson(k.candidate_x)},
                           {"candidate_const", cjson(k.candidate_const)},
                           {"err_x", k.err_x},
                           {"err_const", k.err_const}};
    }
    j["tolerance"] = x.c.tol.resolution;
    bool bad = enforced && rr.max_deviation > x.c.tol.resolution;
    if (bad) {
        double bio = check_biorthogonality(s, std::min(11, s.nfam)).maxdev;
        if (bio < x.c.thresholds.biorth_consistency) {
            j["inconsistent"] = true;
            x.inconsistent = true;
        }
    }
    j["pass"] = !bad;
    return j;
}

const char* variant_label(VariantKind k) {
    return k == VariantKind::AMinusAlphaAdagN ? "a_minus_alpha_adag_n" : "b_minus_beta_a_m";
}

json suite_nogo(Ctx& x) {
    const auto& n = x.c.nogo;
    NogoSequence seq = nogo_sequence(n.alpha, n.kmax, n.n_deform);
    Certificate cert = divergence_certificate(seq);
    json j;
    j["alpha"] = cjson(n.alpha);
    j["n_deform"] = n.n_deform;
    j["kmax"] = n.kmax;
    j["step"] = seq.step;
    j["verdict"] = nogo_verdict_name(cert.verdict);
    j["crossing_k"] = cert.crossing_k;
    j["crossing_extrapolated"] = cert.extrapolated;
    j["overflow_index"] = seq.overflow_index;
    j["ratios"] = cert.ratios;
    json lp = json::array();
    for (double v : seq.log_partial_norms) lp.push_back(v);
    j["log_partial_norms"] = lp;
    bool increasing = true;
    for (size_t k = 1; k < seq.log_partial_norms.size(); ++k)
        if (std::isfinite(seq.log_partial_norms[k]) && !(seq.log_partial_norms[k] > seq.log_partial_norms[k - 1]))
            increasing = false;
    j["partial_norms_increasing"] = increasing;
    bool pass = true;
    if (n.n_deform == 2) {
        double dev = 0;
        int K = std::min<int>(25, static_cast<int>(seq.coeffs.size() - 1) / 3);
        for (int k = 0; k <= K; ++k) {
            CNum ref = nogo_closed_coeff(n.alpha, k);
            if (!finite(ref) || std::abs(ref) == 0) continue;
            dev = std::max(dev, std::abs(seq.coeffs[3 * k] - ref) / std::abs(ref));
        }
        j["closed_pattern_dev"] = dev;
        j["tolerance"] = x.c.tol.nogo_pattern;
        pass = dev <= x.c.tol.nogo_pattern;
    }
    if (n.alpha != CNum(0.0) && !increasing) pass = false;
    if (n.has_variant) {
        VariantResult v = variant_check(n.variant, n.variant_params, n.variant_kmax);
        j["variant"] = {{"kind", variant_label(n.variant)},
                        {"verdict", nogo_verdict_name(v.cert.verdict)},
                        {"crossing_k", v.cert.crossing_k},
                        {"step", v.seq.step},
                        {"ratios", v.cert.ratios}};
    }
    j["pass"] = pass;
    return j;
}

json feasibility_json(const FeasibilityReport& f) {
    return {{"Omega", f.Omega},
            {"omega_plus", cjson(f.omega_plus)},
            {"omega_minus", cjson(f.omega_minus)},
            {"alpha", cjson(f.alpha)},
            {"beta", cjson(f.beta)},
            {"u1", f.u1},
            {"u2", f.u2},
            {"C1", f.c1},
            {"C2", f.c2},
            {"feasible", f.conjunction},
            {"constraint_defect", f.constraint_defect},
            {"weighted_feasible", f.weighted_feasible},
            {"weighted_hits", f.weighted_hits},
            {"undamped", f.undamped},
            {"notes", f.notes}};
}

json suite_dho(Ctx& x) {
    const auto& d = x.c.dho;
    FeasibilityReport own = dho_feasibility(d.params, d.grid);
    json j;
    j["configured"] = feasibility_json(own);
    long samples = d.samples;
    std::vector<char> feas(samples), weighted(samples);
    std::vector<double> defect(samples);
    count_if_index(samples, [&](long i) {
        FeasibilityReport f = dho_feasibility(dho_random_admissible(x.c.thresholds.seed, static_cast<int>(i)), d.grid);
        feas[i] = f.conjunction;
        weighted[i] = f.weighted_feasible;
        defect[i] = f.constraint_defect;
        return f.conjunction;
    });
    long nf = 0, nw = 0;
    double maxdef = 0;
    for (long i = 0; i < samples; ++i) {
        nf += feas[i];
        nw += weighted[i];
        maxdef = std::max(maxdef, defect[i]);
    }
    j["samples"] = samples;
    j["feasible_count"] = nf;
    j["weighted_feasible_count"] = nw;
    j["max_constraint_defect"] = maxdef;
    if (samples > 0) {
        FeasibilityReport w = dho_feasibility(dho_random_admissible(x.c.thresholds.seed, 0), d.grid);
        DiagnosticsReport a = dho_assumption_summary(w);
        j["witness"] = feasibility_json(w);
        j["assumption1"] = status_name(a.assumption[0]);
    }
    j["pass"] = true;
    return j;
}

}  // namespace

RunReport run(const RunConfig& c) {
    RunReport r;
    r.config = config_to_json(c);
    r.versions = versions_json();
    Ctx x{c, std::nullopt, {}, false};
    if (c.model != "dho" && c.model != "nogo") x.ladder = effective_ladder(c);
    for (const auto& name : c.suites) {
        auto t0 = std::chrono::steady_clock::now();
        json j;
        try {
            if (name == "biorthogonality") j = suite_biorthogonality(x);
            else if (name == "gram") j = suite_gram(x);
            else if (name == "metric") j = suite_metric(x);
            else if (name == "intertwine") j = suite_intertwine(x);
            else if (name == "coherent") j = suite_coherent(x);
            else if (name == "resolution") j = suite_resolution(x);
            else if (name == "nogo") j = suite_nogo(x);
            else if (name == "dho") j = suite_dho(x);
            else throw DomainError("unknown suite '" + name + "'");
        } catch (const std::exception& e) {
            j = {{"error", e.what()}, {"pass", false}};
        }
        if (!j.value("pass", false)) r.failures.push_back(name);
        r.suites[name] = std::move(j);
        r.timings[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    r.inconsistent = x.inconsistent;
    return r;
}

}  // namespace pblab
