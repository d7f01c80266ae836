#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pblab/fockrep.hpp"
#include "pblab/gaussmath.hpp"

namespace pblab {

enum class Rep { Fock, Coord1D, Coord2D };
const char* rep_name(Rep r);

struct RhoSpec {
    enum class Kind { Constant, OnePlusEpsSin, ExpIMuArctan } kind = Kind::Constant;
    CNum c{1.0};
    double eps = 0.0;
    double mu = 0.0;
    // Certified bounds lower <= |rho| <= upper; NaN means "derive from the formula".
    double lower = std::numeric_limits<double>::quiet_NaN();
    double upper = std::numeric_limits<double>::quiet_NaN();

    CNum value(double x) const;
    CNum derivative(double x) const;
    double analytic_lower() const;
    double analytic_upper() const;
};

// Smooth factor multiplying the Gaussian part of a coordinate eigenfunction.
struct Envelope {
    enum class Kind { None, ExpPhi, Rho, InvConjRho } kind = Kind::None;
    PhiSpec phi;
    double sign = -1.0;  // ExpPhi: exp(sign * Phi(x))
    RhoSpec rho;

    bool trivial() const { return kind == Kind::None; }
    CNum value(double x) const;
};

// f_n(x) = norm * hn(s x + t) * exp(-(a x^2 + b x + c)) * env(x), hn = H_n / sqrt(2^n n!).
struct HermiteForm {
    CNum norm{1.0};
    CNum s{1.0}, t{0.0};
    CNum a{0.5}, b{0.0}, c{0.0};
    Envelope env;

    std::vector<CNum> values(int nmax, double x) const;
    // Values multiplied by exp(g) where g is a caller-supplied exponent, combined before exponentiation.
    std::vector<CNum> values_shifted(int nmax, double x, double extra_exponent) const;
};

// c_d d/dx + c_x x + c_0, plus c_w * w(x) when `w` is set (pointwise only).
struct Op1D {
    CNum c_d{0.0}, c_x{0.0}, c_0{0.0};
    GaussPoly apply(const GaussPoly& f) const;
};

// c_dx d/dx + c_dy d/dy + c_x x + c_y y + c_0
struct Op2D {
    CNum c_dx{0.0}, c_dy{0.0}, c_x{0.0}, c_y{0.0}, c_0{0.0};
    GaussPoly2D apply(const GaussPoly2D& f) const;
    Op2D adjoint() const;
};

struct BosonicParams {};
struct ShiftedParams {
    CNum alpha{0.0}, beta{0.0};
};
struct ExtOscParams {
    double beta = 1.0;
};
struct SwansonParams {
    double theta = 0.3;
};
struct SusyParams {
    int example = 1;
    CNum alpha{0.0};
    CNum beta{0.0};
    PhiSpec phi;
};
struct RieszParams {
    RhoSpec rho;
};
struct GLLParams {
    double k1 = 0.0, k2 = 0.0;
};
struct DHOParams {
    double m = 1.0, k = 1.0, gamma = 0.1;
    CNum Gamma{1.0}, delta{0.0, 1.0};
};

using ModelParams =
    std::variant<BosonicParams, ShiftedParams, ExtOscParams, SwansonParams, SusyParams, RieszParams, GLLParams, DHOParams>;

struct BiorthSystem {
    std::string model;
    Rep rep = Rep::Fock;
    ModelParams params;
    int nfam = 0;

    // Families as columns in an orthonormal coordinate basis: the number basis for FOCK,
    // Hermite functions for COORD1D. Empty for COORD2D.
    CMat phi, psi;
    int protect = 0;  // leading rows of phi/psi unaffected by truncation
    // Pair (A, B) in the same coordinate basis when available.
    std::optional<FockOp> A, B;
    std::optional<FockOp> H;
    std::vector<CNum> reference_eigenvalues;

    // COORD1D exact forms.
    std::vector<GaussPoly> phi_gp, psi_gp;
    HermiteForm phi_form, psi_form;
    std::optional<Op1D> lower_op, raise_op;  // a and b as differential operators

    // COORD2D (pairs (n,l) in row-major order over n < n2, l < l2).
    std::vector<GaussPoly2D> phi2, psi2;
    int n2 = 0, l2 = 0;
    Op2D A2, B2, A2p, B2p;

    CNum overlap_const{1.0};
    std::function<CNum(int, int)> reference_overlap;
    std::vector<std::string> warnings;

    bool has_coords() const { return phi.size() > 0; }
    bool pure_gauss() const { return phi_form.env.trivial() && psi_form.env.trivial(); }
};

BiorthSystem bosonic_model(int dim, int nfam);
BiorthSystem shifted_model(CNum alpha, CNum beta, int dim, int nfam = -1);
BiorthSystem extended_oscillator(double beta, int dim, int nfam = -1);
BiorthSystem swanson_model(double theta, int nmax, Rep rep, int dim = -1);
BiorthSystem susy_model(const SusyParams& p, int nmax, int dim = -1);
BiorthSystem riesz_mult_model(const RhoSpec& rho, int nmax, int dim = -1);
BiorthSystem gll_model(double k1, double k2, int nmax, int lmax);

// Hermite-basis projections <e_k, f_n> for k < K, n < N by Gauss-Hermite sampling.
CMat hermite_projection(const HermiteForm& f, int K, int N, int nodes = 256);
// Matrix of multiplication by w(x) in the Hermite basis, K x K.
CMat hermite_multiplication(const std::function<CNum(double)>& w, int K, int nodes = 256);
// Sampled inner-product matrix [<f_n, g_m>]_{n<Nf, m<Ng} by quadrature.
struct SampledOverlap {
    CMat G;
    double diff;  // discrepancy against half the nodes
};
SampledOverlap sampled_overlap(const HermiteForm& f, int Nf, const HermiteForm& g, int Ng, int nodes = 192);

// Vacuum-tail mass of a coherent state |w> above dim.
double coherent_tail(double absw, int dim);

// GLL extras
struct GLLMetric {
    double sup_phi_R5, sup_phi_R10, sup_phi_R20;
    double sup_psi_R5, sup_psi_R10, sup_psi_R20;
    bool unbounded_certificate;
};
GLLMetric gll_metric_growth(double k1, double k2);
CNum gll_metric_phi(double k1, double k2, double x, double y);

// ---- damped oscillator ----
struct FeasibilityReport {
    bool undamped = false;
    double Omega = 0;
    CNum omega_plus, omega_minus, alpha, beta;
    double u1 = 0, u2 = 0;  // Re(beta w+/(2 Gamma)), Re(delta/(alpha w+))
    bool c1 = false, c2 = false, conjunction = false;
    double constraint_defect = 0;  // |Re(w+ conj(delta) conj(Gamma))| normalized
    bool weighted_feasible = false;
    long weighted_hits = 0;
    std::vector<std::string> notes;
};

FeasibilityReport dho_feasibility(const DHOParams& p, int grid = 64);
// Random admissible parameters from a seeded generator.
DHOParams dho_random_admissible(unsigned long long seed, int index);
// delta chosen so that the pair is admissible (w+ conj(delta) conj(Gamma) purely imaginary).
CNum dho_admissible_delta(const DHOParams& p, double t);

}  // namespace pblab
