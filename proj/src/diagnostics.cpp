#include "pblab/diagnostics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "pblab/coherent.hpp"
#include "pblab/kernels.hpp"

namespace pblab {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Bounded: return "BOUNDED";
        case Verdict::UnboundedTrend: return "UNBOUNDED_TREND";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Violated: return "VIOLATED";
        case Status::Inconclusive: return "INCONCLUSIVE";
        case Status::NotEvaluated: return "NOT_EVALUATED";
    }
    return "?";
}

namespace {

bool exact_1d(const BiorthSystem& s, int n) {
    return s.rep == Rep::Coord1D && s.pure_gauss() && static_cast<int>(s.phi_gp.size()) >= n &&
           static_cast<int>(s.psi_gp.size()) >= n;
}

double gp_norm(const GaussPoly& f) { return std::sqrt(std::abs(inner_product(f, f))); }
double gp2_norm(const GaussPoly2D& f) { return std::sqrt(std::abs(inner_product_2d(f, f))); }

Op1D adjoint(const Op1D& op) { return Op1D{-std::conj(op.c_d), std::conj(op.c_x), std::conj(op.c_0)}; }

double head_norm(const CVec& v, int p) { return v.head(std::min<int>(p, v.size())).norm(); }

}  // namespace

BiorthCheck check_biorthogonality(const BiorthSystem& sys, int nmax, bool swap) {
    if (nmax > sys.nfam || nmax < 1) throw DimensionError("check_biorthogonality: nmax outside the family length");
    BiorthCheck r;
    if (sys.rep == Rep::Coord2D) {
        const auto& L = swap ? sys.phi2 : sys.psi2;
        const auto& R = swap ? sys.psi2 : sys.phi2;
        r.G = tabulate(nmax, nmax, [&](int n, int m) { return inner_product_2d(L[n], R[m]); });
    } else if (exact_1d(sys, nmax)) {
        const auto& L = swap ? sys.phi_gp : sys.psi_gp;
        const auto& R = swap ? sys.psi_gp : sys.phi_gp;
        r.G = tabulate(nmax, nmax, [&](int n, int m) { return inner_product(L[n], R[m]); });
    } else if (sys.rep == Rep::Coord1D) {
        const auto& L = swap ? sys.phi_form : sys.psi_form;
        const auto& R = swap ? sys.psi_form : sys.phi_form;
        r.G = sampled_overlap(L, nmax, R, nmax).G;
    } else {
        const CMat& L = swap ? sys.phi : sys.psi;
        const CMat& R = swap ? sys.psi : sys.phi;
        r.G = overlap_matrix(L.leftCols(nmax), R.leftCols(nmax));
    }
    for (int n = 0; n < nmax; ++n)
        for (int m = 0; m < nmax; ++m) {
            CNum ref = swap ? std::conj(sys.reference_overlap(m, n)) : sys.reference_overlap(n, m);
            r.maxdev = std::max(r.maxdev, std::abs(r.G(n, m) - ref));
        }
    return r;
}

CMat gram_matrix(const BiorthSystem& sys, Family fam, int N) {
    if (N > sys.nfam || N < 1) throw DimensionError("gram_matrix: N outside the family length");
    bool phi = fam == Family::Phi;
    if (sys.rep == Rep::Coord2D) {
        const auto& F = phi ? sys.phi2 : sys.psi2;
        return tabulate(N, N, [&](int n, int m) { return inner_product_2d(F[n], F[m]); });
    }
    if (exact_1d(sys, N)) {
        const auto& F = phi ? sys.phi_gp : sys.psi_gp;
        return tabulate(N, N, [&](int n, int m) { return inner_product(F[n], F[m]); });
    }
    if (sys.rep == Rep::Coord1D) {
        const auto& f = phi ? sys.phi_form : sys.psi_form;
        return sampled_overlap(f, N, f, N).G;
    }
    const CMat& F = phi ? sys.phi : sys.psi;
    return overlap_matrix(F.leftCols(N), F.leftCols(N));
}

namespace {

std::vector<GramPoint> spectrum_of(const CMat& G, const std::vector<int>& ladder) {
    std::vector<GramPoint> out;
    for (int N : ladder) {
        if (N < 1 || N > G.rows()) throw DimensionError("gram_spectrum: ladder point outside the family");
        CMat B = G.topLeftCorner(N, N);
        GramPoint p;
        p.N = N;
        p.hermitian_defect = max_abs(B - B.adjoint());
        CMat H = 0.5 * (B + B.adjoint());
        Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw ConvergenceError("gram_spectrum: Hermitian eigensolver failed", N);
        p.min_eig = es.eigenvalues().minCoeff();
        p.max_eig = es.eigenvalues().maxCoeff();
        out.push_back(p);
    }
    return out;
}

}  // namespace

std::vector<GramPoint> gram_spectrum(const BiorthSystem& sys, Family fam, const std::vector<int>& ladder) {
    int top = *std::max_element(ladder.begin(), ladder.end());
    return spectrum_of(gram_matrix(sys, fam, top), ladder);
}

std::vector<GramPoint> gram_spectrum(const CMat& vectors, const std::vector<int>& ladder) {
    int top = *std::max_element(ladder.begin(), ladder.end());
    if (top > vectors.cols()) throw DimensionError("gram_spectrum: ladder point outside the family");
    return spectrum_of(overlap_matrix(vectors.leftCols(top), vectors.leftCols(top)), ladder);
}

Verdict riesz_verdict(const std::vector<double>& mn, const std::vector<double>& mx, const Thresholds& th) {
    if (mn.size() < 3 || mn.size() != mx.size()) throw DomainError("riesz_verdict: ladder needs at least 3 points");
    std::vector<double> cond(mn.size());
    for (size_t i = 0; i < mn.size(); ++i)
        cond[i] = mn[i] > 0 ? mx[i] / mn[i] : std::numeric_limits<double>::infinity();
    bool all_grow = true;
    for (size_t i = 1; i < cond.size(); ++i) {
        double r = cond[i] / cond[i - 1];
        if (!(r > th.unbounded_ratio)) all_grow = false;
    }
    size_t L = cond.size() - 1;
    double last = cond[L] / cond[L - 1];
    if (last <= th.bounded_ratio && mn[L] > th.min_eig_floor) return Verdict::Bounded;
    if (all_grow) return Verdict::UnboundedTrend;
    return Verdict::Inconclusive;
}

Verdict riesz_verdict(const std::vector<GramPoint>& pts, const Thresholds& th) {
    std::vector<double> mn, mx;
    for (const auto& p : pts) {
        mn.push_back(p.min_eig);
        mx.push_back(p.max_eig);
    }
    return riesz_verdict(mn, mx, th);
}

Verdict combine_verdicts(Verdict a, Verdict b) {
    if (a == Verdict::Bounded && b == Verdict::Bounded) return Verdict::Bounded;
    if (a == Verdict::UnboundedTrend || b == Verdict::UnboundedTrend) return Verdict::UnboundedTrend;
    return Verdict::Inconclusive;
}

std::vector<int> default_ladder(int nmax) {
    if (nmax < 4) throw DomainError("default_ladder: nmax must be at least 4");
    return {nmax / 4, nmax / 2, nmax};
}

MetricPair metric_operators(const BiorthSystem& sys, int nmax, int block) {
    if (!sys.has_coords()) throw DomainError("metric_operators: system has no coordinate vectors");
    if (nmax > sys.nfam || nmax < 2) throw DimensionError("metric_operators: nmax outside the family length");
    double c = std::abs(sys.overlap_const);
    CMat Phi = sys.phi.leftCols(nmax), Psi = sys.psi.leftCols(nmax);
    MetricPair r;
    r.S_phi = Phi * Phi.adjoint() / c;
    r.S_psi = Psi * Psi.adjoint() / c;
    int h = block > 0 ? std::min(block, nmax) : nmax / 2;
    CMat inner = overlap_matrix(Phi, Psi);
    CMat lead = Phi.topRows(h) * inner * Psi.topRows(h).adjoint() / (c * c);
    r.roundtrip = max_abs(lead - CMat::Identity(h, h));
    return r;
}

double intertwining_residual(const BiorthSystem& sys, int nmax) {
    if (!sys.A || !sys.B || !sys.has_coords()) throw DomainError("intertwining_residual: needs matrix operators");
    MetricPair mp = metric_operators(sys, nmax);
    CMat N = sys.B->m * sys.A->m;
    int h = nmax / 2;
    CMat left = mp.S_psi.topRows(h) * N.leftCols(h);
    CMat right = N.leftCols(h).adjoint() * mp.S_psi.leftCols(h);
    return max_abs(left - right);
}

double number_residual(const BiorthSystem& sys, int nmax) {
    if (nmax > sys.nfam) throw DimensionError("number_residual: nmax outside the family length");
    double worst = 0;
    if (sys.rep == Rep::Coord2D) {
        auto r = gll_number_residuals(sys, std::min(sys.n2, sys.l2) - 1);
        return std::max(r.h, r.h_prime);
    }
    if (exact_1d(sys, nmax) && sys.lower_op && sys.raise_op) {
        for (int n = 0; n < nmax; ++n) {
            const GaussPoly& f = sys.phi_gp[n];
            GaussPoly d = sys.raise_op->apply(sys.lower_op->apply(f)) - f.scaled(double(n));
            worst = std::max(worst, gp_norm(d) / gp_norm(f));
        }
        return worst;
    }
    if (!sys.A || !sys.B) throw DomainError("number_residual: system has no operator pair");
    CMat N = sys.B->m * sys.A->m;
    int p = std::max(1, sys.protect - 2);
    for (int n = 0; n < nmax; ++n) {
        CVec v = sys.phi.col(n);
        worst = std::max(worst, head_norm(N * v - double(n) * v, p) / v.norm());
    }
    return worst;
}

GLLResiduals gll_number_residuals(const BiorthSystem& sys, int nmax) {
    if (sys.rep != Rep::Coord2D) throw DomainError("gll_number_residuals: needs the 2D system");
    GLLResiduals r;
    for (int n = 0; n <= std::min(nmax, sys.n2 - 1); ++n)
        for (int l = 0; l <= std::min(nmax, sys.l2 - 1); ++l) {
            const GaussPoly2D& f = sys.phi2[n * sys.l2 + l];
            double nf = gp2_norm(f);
            GaussPoly2D hp = sys.B2p.apply(sys.A2p.apply(f)) - f.scaled(double(n));
            GaussPoly2D h = sys.B2.apply(sys.A2.apply(f)) - f.scaled(double(l));
            r.h_prime = std::max(r.h_prime, gp2_norm(hp) / nf);
            r.h = std::max(r.h, gp2_norm(h) / nf);
        }
    return r;
}

double gll_metric_action_defect(const BiorthSystem& sys) {
    const auto* p = std::get_if<GLLParams>(&sys.params);
    if (!p) throw DomainError("gll_metric_action_defect: needs the 2D system");
    double worst = 0;
    for (int i = 0; i < sys.nfam; ++i) {
        GaussPoly2D g = sys.psi2[i];
        g.ax += p->k2;
        g.ay -= p->k1;
        worst = std::max(worst, coeff_distance(g, sys.phi2[i]));
    }
    return worst;
}

NormProfile swanson_norm_profile(const BiorthSystem& sys, int nmax) {
    const auto* p = std::get_if<SwansonParams>(&sys.params);
    if (!p || !exact_1d(sys, nmax)) throw DomainError("swanson_norm_profile: needs the coordinate Swanson system");
    double x = 1.0 / std::cos(2 * p->theta);
    NormProfile r;
    double n0 = std::abs(inner_product(sys.phi_gp[0], sys.phi_gp[0]));
    for (int n = 0; n < nmax; ++n) {
        double ratio = std::abs(inner_product(sys.phi_gp[n], sys.phi_gp[n])) / n0;
        double ref = legendre_value(n, x);
        r.ratio_maxdev = std::max(r.ratio_maxdev, std::abs(ratio - ref) / ref);
    }
    r.fitted_prefactor = n0 / std::norm(sys.phi_form.norm);
    r.printed_prefactor = std::cos(kPi * x);
    r.sqrt_prefactor = std::sqrt(kPi * x);
    return r;
}

double shifted_norm_margin(const BiorthSystem& sys, int nmax) {
    const auto* p = std::get_if<ShiftedParams>(&sys.params);
    if (!p || nmax >= sys.nfam) throw DomainError("shifted_norm_margin: needs the shifted system with nmax < nfam");
    double d = std::norm(std::conj(p->alpha) - p->beta);
    double worst = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= nmax; ++n) worst = std::min(worst, sys.phi.col(n).squaredNorm() - (1.0 + n * d));
    return worst;
}

CMat smooth_test_vectors(int dim, int count, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    CMat V(dim, count);
    for (int j = 0; j < count; ++j) {
        for (int k = 0; k < dim; ++k) {
            double re = g(rng), im = g(rng);
            V(k, j) = CNum(re, im) * std::exp(-double(k) * k / 32.0);
        }
        V.col(j).normalize();
    }
    return V;
}

DiagnosticsReport assumption_summary(const BiorthSystem& sys, int nmax, const Thresholds& th,
                                     bool check_resolution) {
    return assumption_summary(sys, default_ladder(std::min(nmax, sys.nfam)), th, check_resolution);
}

DiagnosticsReport assumption_summary(const BiorthSystem& sys, const std::vector<int>& ladder,
                                     const Thresholds& th, bool check_resolution) {
    DiagnosticsReport rep;
    rep.ladder = ladder;
    const int nmax = ladder.back();

    int nb = std::min(nmax, 11);
    auto bc = check_biorthogonality(sys, nb);
    rep.biorth_maxdev = bc.maxdev;
    for (int n = 0; n < nb; ++n)
        for (int m = 0; m < nb; ++m) {
            if (n == m) rep.overlap_diag_dev = std::max(rep.overlap_diag_dev, std::abs(bc.G(n, n) - sys.reference_overlap(n, n)));
            else rep.overlap_max_offdiag = std::max(rep.overlap_max_offdiag, std::abs(bc.G(n, m)));
        }

    auto gp = gram_spectrum(sys, Family::Phi, rep.ladder);
    auto gq = gram_spectrum(sys, Family::Psi, rep.ladder);
    for (size_t i = 0; i < gp.size(); ++i) {
        rep.gram_min_eig.push_back(gp[i].min_eig);
        rep.gram_max_eig.push_back(gp[i].max_eig);
        rep.gram_psi_min_eig.push_back(gq[i].min_eig);
        rep.gram_psi_max_eig.push_back(gq[i].max_eig);
    }
    rep.riesz_verdict = combine_verdicts(riesz_verdict(gp, th), riesz_verdict(gq, th));

    if (sys.has_coords()) {
        rep.metric_roundtrip_defect = metric_operators(sys, sys.nfam, nmax / 2).roundtrip;
        if (sys.A && sys.B) rep.intertwine_residual = intertwining_residual(sys, nmax);
    }

    // Assumptions 1 and 2: vacuum annihilation and finite norms along the ladder.
    bool norms_phi = true, norms_psi = true;
    if (sys.rep == Rep::Coord2D) {
        const GaussPoly2D& f = sys.phi2[0];
        const GaussPoly2D& g = sys.psi2[0];
        rep.vacuum_residual_A = std::max(gp2_norm(sys.A2p.apply(f)), gp2_norm(sys.A2.apply(f)));
        rep.vacuum_residual_Bdag =
            std::max(gp2_norm(sys.B2p.adjoint().apply(g)), gp2_norm(sys.B2.adjoint().apply(g)));
        for (int i = 0; i < sys.nfam; ++i) {
            norms_phi = norms_phi && std::isfinite(gp2_norm(sys.phi2[i]));
            norms_psi = norms_psi && std::isfinite(gp2_norm(sys.psi2[i]));
        }
    } else if (exact_1d(sys, 1) && sys.lower_op && sys.raise_op) {
        rep.vacuum_residual_A = gp_norm(sys.lower_op->apply(sys.phi_gp[0]));
        rep.vacuum_residual_Bdag = gp_norm(adjoint(*sys.raise_op).apply(sys.psi_gp[0]));
    } else if (sys.A && sys.B) {
        rep.vacuum_residual_A = head_norm(sys.A->m * sys.phi.col(0), sys.protect);
        rep.vacuum_residual_Bdag = head_norm(sys.B->m.adjoint() * sys.psi.col(0), sys.protect);
    } else {
        rep.notes.push_back("no operator pair available for the vacuum residuals");
    }
    if (sys.has_coords()) {
        norms_phi = sys.phi.leftCols(nmax).allFinite();
        norms_psi = sys.psi.leftCols(nmax).allFinite();
    }
    bool a1 = rep.vacuum_residual_A < th.vacuum_tol && norms_phi;
    bool a2 = rep.vacuum_residual_Bdag < th.vacuum_tol && norms_psi;
    rep.assumption[0] = a1 ? Status::Pass : Status::Fail;
    rep.assumption[1] = a2 ? Status::Pass : Status::Fail;

    // Assumption 3: projection defect of smooth vectors onto span{phi_n, n < N}.
    if (sys.has_coords()) {
        CMat T = smooth_test_vectors(static_cast<int>(sys.phi.rows()), th.test_vectors, th.seed);
        for (int N : rep.ladder) {
            Eigen::HouseholderQR<CMat> qr(sys.phi.leftCols(N));
            CMat Q = qr.householderQ() * CMat::Identity(sys.phi.rows(), N);
            CMat R = T - Q * (Q.adjoint() * T);
            double worst = 0;
            for (int j = 0; j < R.cols(); ++j) worst = std::max(worst, R.col(j).norm());
            rep.completeness_defect.push_back(worst);
        }
        bool ok = true;
        for (size_t i = 1; i < rep.completeness_defect.size(); ++i) {
            double prev = rep.completeness_defect[i - 1], cur = rep.completeness_defect[i];
            if (cur < th.completeness_floor) continue;
            if (!(cur <= (1.0 - th.completeness_step) * prev)) ok = false;
        }
        rep.assumption[2] = ok ? Status::Pass : Status::Fail;
    } else {
        rep.notes.push_back("completeness evidence needs coordinate vectors; not evaluated");
    }

    switch (rep.riesz_verdict) {
        case Verdict::Bounded: rep.assumption[3] = Status::Pass; break;
        case Verdict::UnboundedTrend: rep.assumption[3] = Status::Fail; break;
        case Verdict::Inconclusive: rep.assumption[3] = Status::Inconclusive; break;
    }

    // Bounded families with good biorthogonality must also resolve the identity.
    if (check_resolution && sys.has_coords() && rep.riesz_verdict == Verdict::Bounded &&
        rep.biorth_maxdev < th.biorth_consistency) {
        CMat V = resolution_test_vectors(static_cast<int>(sys.phi.rows()), th.seed);
        auto res = resolution_matrix(sys, PlaneQuadrature{}, V, V);
        rep.resolution_checked = true;
        rep.resolution_deviation = res.max_deviation;
        if (res.max_deviation > th.resolution_tol) {
            rep.inconsistent = true;
            rep.notes.push_back("INCONSISTENT: bounded verdict but the resolution of the identity fails");
        }
    }
    return rep;
}

DiagnosticsReport dho_assumption_summary(const FeasibilityReport& f) {
    DiagnosticsReport rep;
    if (f.undamped) {
        rep.assumption[0] = Status::Pass;
        rep.notes.push_back("undamped branch: ordinary bosons, vacuum exists");
        return rep;
    }
    rep.assumption[0] = f.conjunction ? Status::Pass : Status::Violated;
    rep.notes.push_back("C1 = " + std::string(f.c1 ? "true" : "false") + " (u1 = " + std::to_string(f.u1) +
                        "), C2 = " + std::string(f.c2 ? "true" : "false") + " (u2 = " + std::to_string(f.u2) + ")");
    return rep;
}

}  // namespace pblab
