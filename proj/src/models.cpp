#include "pblab/models.hpp"

#include <algorithm>
#include <cmath>

#include "pblab/kernels.hpp"

namespace pblab {

const char* rep_name(Rep r) {
    switch (r) {
        case Rep::Fock: return "FOCK";
        case Rep::Coord1D: return "COORD1D";
        case Rep::Coord2D: return "COORD2D";
    }
    return "?";
}

namespace {

const CNum I(0.0, 1.0);

double log_factorial(int n) { return std::lgamma(n + 1.0); }

std::function<CNum(int, int)> diagonal_overlap(CNum c) {
    return [c](int n, int m) { return n == m ? c : CNum(0.0); };
}

}  // namespace

// ---- multiplier menu ----

CNum RhoSpec::value(double x) const {
    switch (kind) {
        case Kind::Constant: return c;
        case Kind::OnePlusEpsSin: return 1.0 + eps * std::sin(x);
        case Kind::ExpIMuArctan: return std::exp(I * (mu * std::atan(x)));
    }
    return 1.0;
}

CNum RhoSpec::derivative(double x) const {
    switch (kind) {
        case Kind::Constant: return 0.0;
        case Kind::OnePlusEpsSin: return eps * std::cos(x);
        case Kind::ExpIMuArctan: return I * mu / (1 + x * x) * value(x);
    }
    return 0.0;
}

double RhoSpec::analytic_lower() const {
    switch (kind) {
        case Kind::Constant: return std::abs(c);
        case Kind::OnePlusEpsSin: return 1.0 - std::abs(eps);
        case Kind::ExpIMuArctan: return 1.0;
    }
    return 0.0;
}

double RhoSpec::analytic_upper() const {
    switch (kind) {
        case Kind::Constant: return std::abs(c);
        case Kind::OnePlusEpsSin: return 1.0 + std::abs(eps);
        case Kind::ExpIMuArctan: return 1.0;
    }
    return 0.0;
}

CNum Envelope::value(double x) const {
    switch (kind) {
        case Kind::None: return 1.0;
        case Kind::ExpPhi: return std::exp(sign * phi.value(x));
        case Kind::Rho: return rho.value(x);
        case Kind::InvConjRho: return 1.0 / std::conj(rho.value(x));
    }
    return 1.0;
}

std::vector<CNum> HermiteForm::values_shifted(int nmax, double x, double extra) const {
    auto h = hermite_normalized_values(nmax, s * x + t);
    CNum pref = norm * env.value(x) * std::exp(-(a * x * x + b * x + c) + extra);
    for (auto& v : h) v *= pref;
    return h;
}

std::vector<CNum> HermiteForm::values(int nmax, double x) const { return values_shifted(nmax, x, 0.0); }

GaussPoly Op1D::apply(const GaussPoly& f) const {
    GaussPoly d = f.derivative().scaled(c_d);
    GaussPoly r = d + f.times_x().scaled(c_x);
    return r + f.scaled(c_0);
}

GaussPoly2D Op2D::apply(const GaussPoly2D& f) const {
    GaussPoly2D r = f.d_dx().scaled(c_dx) + f.d_dy().scaled(c_dy);
    r = r + f.times_x().scaled(c_x);
    r = r + f.times_y().scaled(c_y);
    return r + f.scaled(c_0);
}

Op2D Op2D::adjoint() const {
    return Op2D{-std::conj(c_dx), -std::conj(c_dy), std::conj(c_x), std::conj(c_y), std::conj(c_0)};
}

// ---- quadrature projections ----

SampledOverlap sampled_overlap(const HermiteForm& f, int Nf, const HermiteForm& g, int Ng, int nodes) {
    CNum A = std::conj(f.a) + g.a;
    CNum B = std::conj(f.b) + g.b;
    if (!(A.real() > 0)) throw DomainError("sampled_overlap: combined exponent is not integrable");
    double sc = 1.0 / std::sqrt(A.real());
    double sh = -B.real() / (2.0 * A.real());
    double share_f = std::conj(f.a).real() / A.real();
    auto build = [&](int n_nodes) {
        const auto& rule = cached_hermite_rule(n_nodes);
        int q = static_cast<int>(rule.nodes.size());
        CMat F(q, Nf), G(q, Ng);
        for (int i = 0; i < q; ++i) {
            double u = rule.nodes[i];
            double x = sh + sc * u;
            double lw = 0.5 * std::log(rule.weights[i] * sc);
            auto fv = f.values_shifted(Nf - 1, x, share_f * u * u + lw);
            auto gv = g.values_shifted(Ng - 1, x, (1.0 - share_f) * u * u + lw);
            for (int n = 0; n < Nf; ++n) F(i, n) = fv[n];
            for (int m = 0; m < Ng; ++m) G(i, m) = gv[m];
        }
        return overlap_matrix(F, G);
    };
    CMat fine = build(nodes);
    CMat coarse = build(std::max(1, nodes / 2));
    return {fine, max_abs(fine - coarse)};
}

CMat hermite_projection(const HermiteForm& f, int K, int N, int nodes) {
    HermiteForm e;
    e.norm = std::pow(kPi, -0.25);
    const auto& rule = cached_hermite_rule(nodes);
    (void)rule;
    return sampled_overlap(e, K, f, N, nodes).G;
}

CMat hermite_multiplication(const std::function<CNum(double)>& w, int K, int nodes) {
    const auto& rule = cached_hermite_rule(nodes);
    int q = static_cast<int>(rule.nodes.size());
    CMat F(q, K), G(q, K);
    for (int i = 0; i < q; ++i) {
        double x = rule.nodes[i];
        auto h = hermite_normalized_values(K - 1, x);
        double sw = std::sqrt(rule.weights[i] / std::sqrt(kPi));
        CNum wx = w(x);
        for (int k = 0; k < K; ++k) {
            F(i, k) = h[k] * sw;
            G(i, k) = h[k] * sw * wx;
        }
    }
    return overlap_matrix(F, G);
}

double coherent_tail(double absw, int dim) {
    double lam = absw * absw;
    if (lam == 0) return 0.0;
    double tail = 0;
    for (int n = dim; n < dim + 2000; ++n) {
        double t = std::exp(-lam + n * std::log(lam) - log_factorial(n));
        tail += t;
        if (n > lam && t < 1e-30 * std::max(tail, 1e-300)) break;
    }
    return tail;
}

// ---- FOCK models ----

BiorthSystem bosonic_model(int dim, int nfam) {
    if (nfam < 0) nfam = dim / 2;
    if (nfam > dim) throw DimensionError("bosonic_model: family longer than dim");
    auto L = ladder(dim);
    BiorthSystem s;
    s.model = "bosonic";
    s.rep = Rep::Fock;
    s.params = BosonicParams{};
    s.nfam = nfam;
    s.phi = CMat::Identity(dim, nfam);
    s.psi = s.phi;
    s.protect = dim - 1;
    s.A = L.a;
    s.B = L.adag;
    s.H = matadd(matmul(L.adag, L.a), scalar_mul(0.5, identity(dim)));
    for (int k = 0; k < nfam; ++k) s.reference_eigenvalues.push_back(k + 0.5);
    s.reference_overlap = diagonal_overlap(1.0);
    return s;
}

BiorthSystem shifted_model(CNum alpha, CNum beta, int dim, int nfam) {
    if (dim < 16) throw DomainError("shifted_model: dim must be at least 16");
    if (nfam < 0) nfam = dim / 2;
    if (nfam > dim) throw DimensionError("shifted_model: family longer than dim");
    auto L = ladder(dim);
    BiorthSystem s;
    s.model = "shifted";
    s.rep = Rep::Fock;
    s.params = ShiftedParams{alpha, beta};
    s.nfam = nfam;
    s.phi.resize(dim, nfam);
    s.psi.resize(dim, nfam);
    // Raising-type recursions never feed truncated components back into retained ones.
    s.phi.col(0) = displacement(alpha, L.a, L.adag).m.col(0);
    s.psi.col(0) = displacement(std::conj(beta), L.a, L.adag).m.col(0);
    CMat Bm = L.adag.m - beta * CMat::Identity(dim, dim);
    CMat Adag = L.adag.m - std::conj(alpha) * CMat::Identity(dim, dim);
    for (int n = 0; n + 1 < nfam; ++n) {
        s.phi.col(n + 1) = Bm * s.phi.col(n) / std::sqrt(n + 1.0);
        s.psi.col(n + 1) = Adag * s.psi.col(n) / std::sqrt(n + 1.0);
    }
    s.protect = dim - 1;
    s.A = FockOp(L.a.m - alpha * CMat::Identity(dim, dim), dim - 1);
    s.B = FockOp(Bm, dim - 1);
    s.overlap_const = std::exp(std::conj(alpha) * std::conj(beta) - 0.5 * (std::norm(alpha) + std::norm(beta)));
    s.reference_overlap = diagonal_overlap(s.overlap_const);
    double tail = std::max(coherent_tail(std::abs(alpha), dim), coherent_tail(std::abs(beta), dim));
    if (tail > 1e-12)
        s.warnings.push_back("truncation: coherent vacuum tail above dim is " + std::to_string(tail));
    return s;
}

BiorthSystem extended_oscillator(double beta, int dim, int nfam) {
    if (!(beta > 0)) throw DomainError("extended_oscillator: beta must be positive");
    BiorthSystem s = shifted_model(1.0 / beta, -1.0 / beta, dim, nfam);
    s.model = "extended_oscillator";
    s.params = ExtOscParams{beta};
    double g = (2.0 + beta * beta) / (2.0 * beta * beta);
    s.H = FockOp(beta * (s.B->m * s.A->m + g * CMat::Identity(dim, dim)), dim - 1);
    s.reference_eigenvalues.clear();
    for (int k = 0; k < s.nfam; ++k) s.reference_eigenvalues.push_back(beta * (k + g));
    return s;
}

namespace {

void check_theta(double theta) {
    if (!(std::abs(theta) < kPi / 4) || theta == 0.0)
        throw DomainError("theta must lie in (-pi/4, pi/4) and be nonzero");
}

// Number-basis families of the Swanson pair, built from the closed vacuum series.
void swanson_fock(BiorthSystem& s, double theta, int dim, int nfam) {
    auto L = ladder(dim);
    double c = std::cos(theta), sn = std::sin(theta), t = std::tan(theta);
    CVec phi0 = CVec::Zero(dim), psi0 = CVec::Zero(dim);
    phi0[0] = psi0[0] = 1.0 / std::sqrt(c);
    for (int k = 0; 2 * k + 2 < dim; ++k) {
        double r = std::sqrt((2.0 * k + 1) / (2.0 * k + 2));
        phi0[2 * k + 2] = -I * t * r * phi0[2 * k];
        psi0[2 * k + 2] = I * t * r * psi0[2 * k];
    }
    CMat A = c * L.a.m + I * sn * L.adag.m;
    CMat B = c * L.adag.m + I * sn * L.a.m;
    CMat Adag = A.adjoint();
    s.phi.resize(dim, nfam);
    s.psi.resize(dim, nfam);
    s.phi.col(0) = phi0;
    s.psi.col(0) = psi0;
    for (int n = 0; n + 1 < nfam; ++n) {
        s.phi.col(n + 1) = B * s.phi.col(n) / std::sqrt(n + 1.0);
        s.psi.col(n + 1) = Adag * s.psi.col(n) / std::sqrt(n + 1.0);
    }
    // Each step through the truncated lowering part spoils one more trailing component.
    s.protect = std::max(0, dim - nfam - 1);
    s.A = FockOp(A, dim - 1);
    s.B = FockOp(B, dim - 1);
    double w = 1.0 / std::cos(2 * theta);
    s.H = FockOp(w * (B * A + 0.5 * CMat::Identity(dim, dim)), dim - 2);
    s.reference_eigenvalues.clear();
    for (int k = 0; k < nfam; ++k) s.reference_eigenvalues.push_back(w * (k + 0.5));
}

}  // namespace

BiorthSystem swanson_model(double theta, int nmax, Rep rep, int dim) {
    check_theta(theta);
    if (rep == Rep::Coord2D) throw DomainError("swanson_model: 2D representation not supported");
    if (nmax < 1) throw DomainError("swanson_model: nmax must be positive");
    if (dim < 0) dim = std::max(64, 2 * nmax + 40);
    if (nmax > dim) throw DimensionError("swanson_model: nmax exceeds dim");
    BiorthSystem s;
    s.model = "swanson";
    s.rep = rep;
    s.params = SwansonParams{theta};
    s.nfam = nmax;
    swanson_fock(s, theta, dim, nmax);
    s.reference_overlap = diagonal_overlap(1.0);
    if (rep == Rep::Coord1D) {
        CNum e1 = std::exp(I * theta), e2 = std::exp(2.0 * I * theta);
        s.phi_form.norm = std::exp(0.5 * I * theta) * std::pow(kPi, -0.25);
        s.phi_form.s = e1;
        s.phi_form.a = 0.5 * e2;
        s.psi_form.norm = std::exp(-0.5 * I * theta) * std::pow(kPi, -0.25);
        s.psi_form.s = std::conj(e1);
        s.psi_form.a = 0.5 * std::conj(e2);
        int ngp = std::min(nmax, limits().poly_nmax + 1);
        for (int n = 0; n < ngp; ++n) {
            double lnorm = -0.5 * (n * std::log(2.0) + log_factorial(n));
            Poly h = hermite(n);
            s.phi_gp.push_back(
                GaussPoly{(s.phi_form.norm * std::exp(lnorm)) * h.compose_affine(e1, 0.0), s.phi_form.a, 0.0, 0.0});
            s.psi_gp.push_back(GaussPoly{(s.psi_form.norm * std::exp(lnorm)) * h.compose_affine(std::conj(e1), 0.0),
                                         s.psi_form.a, 0.0, 0.0});
        }
        double r2 = 1.0 / std::sqrt(2.0);
        s.lower_op = Op1D{std::conj(e1) * r2, e1 * r2, 0.0};
        s.raise_op = Op1D{-std::conj(e1) * r2, e1 * r2, 0.0};
    }
    return s;
}

BiorthSystem susy_model(const SusyParams& p, int nmax, int dim) {
    if (p.alpha.real() != 0.0 && p.alpha.imag() != 0.0)
        throw DomainError("susy_model: alpha must be real or purely imaginary");
    if (p.beta.imag() != 0.0) throw DomainError("susy_model: beta must be real");
    if (p.example != 1 && p.example != 2) throw DomainError("susy_model: example must be 1 or 2");
    if (p.example == 1 && p.phi.kind != PhiSpec::Kind::Zero)
        throw DomainError("susy_model: example 1 has no perturbation Phi");
    if (nmax < 1 || nmax > limits().poly_nmax + 1) throw DomainError("susy_model: nmax outside supported range");
    if (dim < 0) dim = std::max(64, 2 * nmax + 40);
    CNum al = p.alpha, alc = std::conj(p.alpha);

    BiorthSystem s;
    s.model = "susy";
    s.rep = Rep::Coord1D;
    s.params = p;
    s.nfam = nmax;
    s.phi_form.norm = std::pow(kPi, -0.25);
    s.phi_form.t = 0.5 * al;
    // Psi carries exp(-conj(w_b)) and the conjugated polynomial; the constant makes <Psi_0, phi_0> = 1.
    s.psi_form.norm = std::conj(std::exp(p.beta - al * al / 4.0)) * std::pow(kPi, -0.25);
    s.psi_form.t = 0.5 * alc;
    s.psi_form.b = alc;
    s.psi_form.c = std::conj(p.beta);
    if (p.example == 2) {
        s.phi_form.env.kind = Envelope::Kind::ExpPhi;
        s.phi_form.env.phi = p.phi;
        s.phi_form.env.sign = -1.0;
        s.psi_form.env = s.phi_form.env;
        s.psi_form.env.sign = 1.0;
    }
    auto pa = pn_family(al, std::min(nmax - 1, limits().poly_nmax));
    auto pc = pn_family(alc, std::min(nmax - 1, limits().poly_nmax));
    for (size_t n = 0; n < pa.size(); ++n) {
        double lnorm = -0.5 * (n * std::log(2.0) + log_factorial(static_cast<int>(n)));
        s.phi_gp.push_back(GaussPoly{(s.phi_form.norm * std::exp(lnorm)) * pa[n], 0.5, 0.0, 0.0});
        s.psi_gp.push_back(GaussPoly{(s.psi_form.norm * std::exp(lnorm)) * pc[n], 0.5, alc, std::conj(p.beta)});
    }
    double r2 = 1.0 / std::sqrt(2.0);
    if (p.example == 1) {
        s.lower_op = Op1D{r2, r2, 0.0};
        s.raise_op = Op1D{-r2, r2, al * r2};
    }
    s.phi = hermite_projection(s.phi_form, dim, nmax);
    s.psi = hermite_projection(s.psi_form, dim, nmax);
    s.protect = std::max(0, dim - nmax - 1);
    auto L = ladder(dim);
    CMat A = L.a.m, B = L.adag.m + al * r2 * CMat::Identity(dim, dim);
    if (p.example == 2) {
        PhiSpec phi = p.phi;
        CMat W = hermite_multiplication([phi](double x) { return CNum(phi.derivative(x)); }, dim);
        A += r2 * W;
        B -= r2 * W;
    }
    s.A = FockOp(A, dim - 1);
    s.B = FockOp(B, dim - 1);
    s.reference_overlap = diagonal_overlap(1.0);
    return s;
}

BiorthSystem riesz_mult_model(const RhoSpec& rho_in, int nmax, int dim) {
    RhoSpec rho = rho_in;
    if (rho.kind == RhoSpec::Kind::OnePlusEpsSin && !(std::abs(rho.eps) < 1))
        throw DomainError("riesz_mult_model: |eps| must be below 1");
    if (std::isnan(rho.lower)) rho.lower = rho.analytic_lower();
    if (std::isnan(rho.upper)) rho.upper = rho.analytic_upper();
    if (!(rho.lower > 0) || rho.upper < rho.lower)
        throw DomainError("riesz_mult_model: bounds must satisfy 0 < lower <= upper");
    const auto& rule = cached_hermite_rule(256);
    for (double x : rule.nodes) {
        double r = std::abs(rho.value(x));
        if (r < rho.lower * (1 - 1e-12) || r > rho.upper * (1 + 1e-12))
            throw DomainError("riesz_mult_model: |rho| violates the supplied bounds at x = " + std::to_string(x));
    }
    if (nmax < 1) throw DomainError("riesz_mult_model: nmax must be positive");
    if (dim < 0) dim = std::max(64, 2 * nmax + 40);

    BiorthSystem s;
    s.model = "riesz_mult";
    s.rep = Rep::Coord1D;
    s.params = RieszParams{rho};
    s.nfam = nmax;
    s.phi_form.norm = std::pow(kPi, -0.25);
    s.phi_form.env.kind = Envelope::Kind::Rho;
    s.phi_form.env.rho = rho;
    s.psi_form = s.phi_form;
    s.psi_form.env.kind = Envelope::Kind::InvConjRho;
    for (int n = 0; n < std::min(nmax, limits().poly_nmax + 1); ++n) {
        double lnorm = -0.5 * (n * std::log(2.0) + log_factorial(n));
        GaussPoly e{(std::pow(kPi, -0.25) * std::exp(lnorm)) * hermite(n), 0.5, 0.0, 0.0};
        s.phi_gp.push_back(e);
        s.psi_gp.push_back(e);
    }
    s.phi = hermite_projection(s.phi_form, dim, nmax);
    s.psi = hermite_projection(s.psi_form, dim, nmax);
    s.protect = std::max(0, dim - nmax - 1);
    auto L = ladder(dim);
    CMat Mr = hermite_multiplication([rho](double x) { return rho.value(x); }, dim);
    CMat Mi = hermite_multiplication([rho](double x) { return 1.0 / rho.value(x); }, dim);
    s.A = FockOp(Mr * L.a.m * Mi, dim - 1);
    s.B = FockOp(Mr * L.adag.m * Mi, dim - 1);
    s.reference_overlap = diagonal_overlap(1.0);
    return s;
}

// ---- generalized Landau levels ----

BiorthSystem gll_model(double k1, double k2, int nmax, int lmax) {
    if (!(std::abs(k1) < 0.5) || !(std::abs(k2) < 0.5))
        throw DomainError("gll_model: k1 and k2 must lie in the open box (-1/2, 1/2)");
    if (nmax < 0 || lmax < 0) throw DomainError("gll_model: index bounds must be nonnegative");
    double r = 1.0 / std::sqrt(2.0);
    BiorthSystem s;
    s.model = "gll";
    s.rep = Rep::Coord2D;
    s.params = GLLParams{k1, k2};
    s.A2p = Op2D{r, -I * r, r * (1 + 2 * k2) / 2.0, -I * r * (1 - 2 * k1) / 2.0, 0.0};
    s.B2p = Op2D{-r, -I * r, r * (1 - 2 * k2) / 2.0, I * r * (1 + 2 * k1) / 2.0, 0.0};
    s.A2 = Op2D{-I * r, r, -I * r * (1 + 2 * k2) / 2.0, r * (1 - 2 * k1) / 2.0, 0.0};
    s.B2 = Op2D{-I * r, -r, I * r * (1 - 2 * k2) / 2.0, r * (1 + 2 * k1) / 2.0, 0.0};
    double N = 1.0 / std::sqrt(2 * kPi);
    GaussPoly2D phi00, psi00;
    phi00.coeffs = {{N}};
    phi00.ax = (1 + 2 * k2) / 4;
    phi00.ay = (1 - 2 * k1) / 4;
    psi00.coeffs = {{N}};
    psi00.ax = (1 - 2 * k2) / 4;
    psi00.ay = (1 + 2 * k1) / 4;
    Op2D Apd = s.A2p.adjoint(), Ad = s.A2.adjoint();
    s.n2 = nmax + 1;
    s.l2 = lmax + 1;
    s.nfam = s.n2 * s.l2;
    std::vector<GaussPoly2D> phil(s.l2), psil(s.l2);
    phil[0] = phi00;
    psil[0] = psi00;
    for (int l = 1; l < s.l2; ++l) {
        phil[l] = s.B2.apply(phil[l - 1]).scaled(1.0 / std::sqrt(double(l)));
        psil[l] = Ad.apply(psil[l - 1]).scaled(1.0 / std::sqrt(double(l)));
    }
    s.phi2.resize(s.nfam);
    s.psi2.resize(s.nfam);
    for (int l = 0; l < s.l2; ++l) {
        GaussPoly2D f = phil[l], g = psil[l];
        for (int n = 0; n < s.n2; ++n) {
            if (n > 0) {
                f = s.B2p.apply(f).scaled(1.0 / std::sqrt(double(n)));
                g = Apd.apply(g).scaled(1.0 / std::sqrt(double(n)));
            }
            s.phi2[n * s.l2 + l] = f;
            s.psi2[n * s.l2 + l] = g;
        }
    }
    s.reference_overlap = diagonal_overlap(1.0);
    return s;
}

CNum gll_metric_phi(double k1, double k2, double x, double y) { return std::exp(-x * x * k2 + y * y * k1); }

GLLMetric gll_metric_growth(double k1, double k2) {
    auto sup = [](double R, const std::function<double(double, double)>& f) {
        const int n = 200;
        double m = 0;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                double x = -R + 2 * R * i / n, y = -R + 2 * R * j / n;
                m = std::max(m, f(x, y));
            }
        return m;
    };
    auto sphi = [&](double x, double y) { return std::abs(gll_metric_phi(k1, k2, x, y)); };
    auto spsi = [&](double x, double y) { return std::abs(1.0 / gll_metric_phi(k1, k2, x, y)); };
    GLLMetric g;
    g.sup_phi_R5 = sup(5, sphi);
    g.sup_phi_R10 = sup(10, sphi);
    g.sup_phi_R20 = sup(20, sphi);
    g.sup_psi_R5 = sup(5, spsi);
    g.sup_psi_R10 = sup(10, spsi);
    g.sup_psi_R20 = sup(20, spsi);
    auto grows = [](double a, double b, double c) { return b > 2 * a && c > 2 * b; };
    g.unbounded_certificate =
        grows(g.sup_phi_R5, g.sup_phi_R10, g.sup_phi_R20) || grows(g.sup_psi_R5, g.sup_psi_R10, g.sup_psi_R20);
    return g;
}

}  // namespace pblab
