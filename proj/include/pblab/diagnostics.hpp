#pragma once

#include <string>
#include <vector>

#include "pblab/models.hpp"

namespace pblab {

// Every numeric threshold used by the checks, in one place.
struct Thresholds {
    double bounded_ratio = 1.2;     // cond(N)/cond(N/2) at most this for BOUNDED
    double unbounded_ratio = 2.0;   // every step above this for UNBOUNDED_TREND
    double min_eig_floor = 1e-6;    // BOUNDED also needs min_eig above this
    double completeness_step = 0.10;
    double completeness_floor = 1e-12;
    double vacuum_tol = 1e-8;
    double resolution_tol = 1e-4;
    double biorth_consistency = 1e-8;
    unsigned long long seed = 0xB105EB;
    int test_vectors = 16;
};

enum class Verdict { Bounded, UnboundedTrend, Inconclusive };
const char* verdict_name(Verdict v);

enum class Status { Pass, Fail, Violated, Inconclusive, NotEvaluated };
const char* status_name(Status s);

struct BiorthCheck {
    CMat G;
    double maxdev = 0;
};
// G[n,m] = <Psi_n, phi_m>; with swap, <phi_n, Psi_m>.
BiorthCheck check_biorthogonality(const BiorthSystem& sys, int nmax, bool swap = false);

struct GramPoint {
    int N = 0;
    double min_eig = 0, max_eig = 0;
    double hermitian_defect = 0;
};
enum class Family { Phi, Psi };
std::vector<GramPoint> gram_spectrum(const BiorthSystem& sys, Family fam, const std::vector<int>& ladder);
// Columns of `vectors` are the family members in an orthonormal basis.
std::vector<GramPoint> gram_spectrum(const CMat& vectors, const std::vector<int>& ladder);
// Gram matrix [<f_n, f_m>] for n, m < N.
CMat gram_matrix(const BiorthSystem& sys, Family fam, int N);

Verdict riesz_verdict(const std::vector<double>& min_seq, const std::vector<double>& max_seq,
                      const Thresholds& th = {});
Verdict riesz_verdict(const std::vector<GramPoint>& pts, const Thresholds& th = {});
Verdict combine_verdicts(Verdict phi, Verdict psi);
std::vector<int> default_ladder(int nmax);

struct MetricPair {
    CMat S_phi, S_psi;
    double roundtrip = 0;
};
// Sums over the first nmax members; the roundtrip is measured on the leading `block` rows (default nmax/2).
MetricPair metric_operators(const BiorthSystem& sys, int nmax, int block = -1);

double intertwining_residual(const BiorthSystem& sys, int nmax);

// max over n < nmax of ||N phi_n - n phi_n|| / ||phi_n|| with N = BA.
double number_residual(const BiorthSystem& sys, int nmax);
// GLL: the two number residuals (h' via B'A', h via BA).
struct GLLResiduals {
    double h_prime = 0, h = 0;
};
GLLResiduals gll_number_residuals(const BiorthSystem& sys, int nmax);
// GLL: max coefficient defect of S_phi Psi_{n,l} - phi_{n,l}.
double gll_metric_action_defect(const BiorthSystem& sys);

// Swanson, coordinate form: squared norms against the Legendre profile P_n(1/cos 2theta).
struct NormProfile {
    double ratio_maxdev = 0;        // max |(|phi_n|^2/|phi_0|^2) - P_n(1/cos 2theta)|, relative
    double fitted_prefactor = 0;    // |phi_0|^2 / |N_1|^2
    double printed_prefactor = 0;   // cos(pi / cos 2theta)
    double sqrt_prefactor = 0;      // sqrt(pi / cos 2theta)
};
NormProfile swanson_norm_profile(const BiorthSystem& sys, int nmax);

// Shifted model: min over n <= nmax of |phi_n|^2 - (1 + n |conj(alpha) - beta|^2).
double shifted_norm_margin(const BiorthSystem& sys, int nmax);

// Smooth pseudo-random vectors with coefficients r_k exp(-k^2/32), unit norm.
CMat smooth_test_vectors(int dim, int count, unsigned long long seed);

struct DiagnosticsReport {
    double overlap_max_offdiag = 0;
    double overlap_diag_dev = 0;
    double biorth_maxdev = 0;
    std::vector<int> ladder;
    std::vector<double> gram_min_eig, gram_max_eig;          // phi family
    std::vector<double> gram_psi_min_eig, gram_psi_max_eig;  // psi family
    Verdict riesz_verdict = Verdict::Inconclusive;
    double metric_roundtrip_defect = 0;
    double intertwine_residual = 0;
    double vacuum_residual_A = 0, vacuum_residual_Bdag = 0;
    std::vector<double> completeness_defect;
    Status assumption[4] = {Status::NotEvaluated, Status::NotEvaluated, Status::NotEvaluated,
                            Status::NotEvaluated};
    bool resolution_checked = false;
    double resolution_deviation = 0;
    bool inconsistent = false;
    std::vector<std::string> notes;
};

DiagnosticsReport assumption_summary(const BiorthSystem& sys, const std::vector<int>& ladder,
                                     const Thresholds& th = {}, bool check_resolution = true);
DiagnosticsReport assumption_summary(const BiorthSystem& sys, int nmax = 24, const Thresholds& th = {},
                                     bool check_resolution = true);
DiagnosticsReport dho_assumption_summary(const FeasibilityReport& f);

}  // namespace pblab
