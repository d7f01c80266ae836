#include "pblab/coherent.hpp"

#include <cmath>

#include "pblab/diagnostics.hpp"
#include "pblab/kernels.hpp"

namespace pblab {

namespace {

// e^{-|z|^2/2} z^n / sqrt(n!) for n < count
std::vector<CNum> series_weights(CNum z, int count) {
    std::vector<CNum> w(count);
    CNum t = std::exp(-0.5 * std::norm(z));
    for (int n = 0; n < count; ++n) {
        w[n] = t;
        t *= z / std::sqrt(n + 1.0);
    }
    return w;
}

}  // namespace

CoherentPair bicoherent(const BiorthSystem& sys, CNum z, double tail_cap) {
    if (sys.rep == Rep::Coord2D) throw DomainError("bicoherent: 2D systems are not supported");
    CoherentPair p;
    p.z = z;
    int n = sys.nfam;
    auto w = series_weights(z, n);
    if (sys.has_coords()) {
        CVec wv = Eigen::Map<const CVec>(w.data(), n);
        p.phi_z = sys.phi.leftCols(n) * wv;
        p.psi_z = sys.psi.leftCols(n) * wv;
    }
    if (sys.rep == Rep::Coord1D && sys.pure_gauss() && !sys.phi_gp.empty()) {
        int m = std::min<int>(n, sys.phi_gp.size());
        GaussPoly f = sys.phi_gp[0].scaled(w[0]), g = sys.psi_gp[0].scaled(w[0]);
        for (int k = 1; k < m; ++k) {
            f = f + sys.phi_gp[k].scaled(w[k]);
            g = g + sys.psi_gp[k].scaled(w[k]);
        }
        p.phi_gp = f;
        p.psi_gp = g;
        n = std::min(n, m);
    }
    p.tail_mass = coherent_tail(std::abs(z), n);
    p.reliable = p.tail_mass < tail_cap;
    return p;
}

CVec coherent_by_orbit(const BiorthSystem& sys, CNum z) {
    if (!sys.B || !sys.has_coords()) throw DomainError("coherent_by_orbit: needs matrix operators");
    CVec term = sys.phi.col(0);
    CVec acc = term;
    int dim = static_cast<int>(term.size());
    for (int k = 1; k <= 4 * dim; ++k) {
        term = (z / double(k)) * (sys.B->m * term);
        acc += term;
        if (term.norm() < 1e-18 * acc.norm()) break;
    }
    return std::exp(-0.5 * std::norm(z)) * acc;
}

EigenResidual eigen_relation_residual(const BiorthSystem& sys, const CoherentPair& pair) {
    EigenResidual r;
    if (sys.A && sys.B && pair.phi_z.size() > 0) {
        int p = std::max(1, sys.protect - 1);
        CVec u = sys.A->m * pair.phi_z - pair.z * pair.phi_z;
        CVec v = sys.B->m.adjoint() * pair.psi_z - pair.z * pair.psi_z;
        r.phi = u.head(p).norm() / pair.phi_z.norm();
        r.psi = v.head(p).norm() / pair.psi_z.norm();
        return r;
    }
    if (pair.phi_gp && sys.lower_op && sys.raise_op) {
        const Op1D& lo = *sys.lower_op;
        const Op1D& ra = *sys.raise_op;
        Op1D radj{-std::conj(ra.c_d), std::conj(ra.c_x), std::conj(ra.c_0)};
        GaussPoly u = lo.apply(*pair.phi_gp) - pair.phi_gp->scaled(pair.z);
        GaussPoly v = radj.apply(*pair.psi_gp) - pair.psi_gp->scaled(pair.z);
        auto nrm = [](const GaussPoly& f) { return std::sqrt(std::abs(inner_product(f, f))); };
        r.phi = nrm(u) / nrm(*pair.phi_gp);
        r.psi = nrm(v) / nrm(*pair.psi_gp);
        return r;
    }
    throw DomainError("eigen_relation_residual: system has no operator pair");
}

ResolutionResult resolution_matrix(const BiorthSystem& sys, const PlaneQuadrature& quad, const CMat& F,
                                   const CMat& G) {
    if (quad.R < 8 || quad.M < 16) throw DomainError("resolution: need R >= 8 and M >= 16");
    if (!(quad.cutoff > 0)) throw DomainError("resolution: cutoff must be positive");
    if (!sys.has_coords()) throw DomainError("resolution: system has no coordinate vectors");
    if (F.rows() != sys.phi.rows() || G.rows() != sys.psi.rows())
        throw DimensionError("resolution: test vectors do not match the system dimension");
    const int n = sys.nfam;
    CMat a = overlap_matrix(F, sys.phi.leftCols(n));  // <f_i, phi_n>
    CMat b = overlap_matrix(sys.psi.leftCols(n), G);  // <Psi_n, g_j>
    auto rule = gauss_laguerre_rule(quad.R);
    const double c2 = quad.cutoff * quad.cutoff;
    std::vector<CMat> part(quad.R);
    // Radial nodes are independent; the final sum runs in node order.
    evaluate_all(quad.R, [&](int j) {
        double u = rule.nodes[j];
        double r = std::sqrt(u);
        CMat acc = CMat::Zero(F.cols(), G.cols());
        CVec zp(n), zc(n);
        for (int l = 0; l < quad.M; ++l) {
            CNum z = std::polar(r, 2 * kPi * l / quad.M);
            CNum t = 1.0;
            for (int k = 0; k < n; ++k) {
                zp[k] = t;
                zc[k] = std::conj(t);
                t *= z / std::sqrt(k + 1.0);
            }
            CVec s1 = a * zp;
            CVec s2 = b.transpose() * zc;
            acc += s1 * s2.transpose();
        }
        part[j] = acc * (rule.weights[j] / quad.M);
        return CNum(0.0);
    });
    ResolutionResult res;
    res.T = CMat::Zero(F.cols(), G.cols());
    CMat dropped = CMat::Zero(F.cols(), G.cols());
    for (int j = 0; j < quad.R; ++j) {
        if (rule.nodes[j] > c2) dropped += part[j];
        else res.T += part[j];
    }
    res.tail_bound = max_abs(dropped);
    res.reference = overlap_matrix(F, G);
    res.max_deviation = max_abs(res.T - res.reference);
    return res;
}

CNum resolution_check(const BiorthSystem& sys, const PlaneQuadrature& quad, const CVec& f, const CVec& g) {
    CMat F = f, G = g;
    return resolution_matrix(sys, quad, F, G).T(0, 0);
}

CMat resolution_test_vectors(int dim, unsigned long long seed, int random_count) {
    int nb = std::min(8, dim);
    CMat V = CMat::Zero(dim, nb + random_count);
    for (int k = 0; k < nb; ++k) V(k, k) = 1.0;
    if (random_count > 0) V.rightCols(random_count) = smooth_test_vectors(dim, random_count, seed);
    return V;
}

GaussPoly coordinate_coherent(CNum z, CNum shift) {
    CNum w = z + shift;
    return GaussPoly{Poly({CNum(std::pow(kPi, -0.25))}), 0.5, -std::sqrt(2.0) * w, w.real() * w.real()};
}

KernelFit shifted_kernel_fit(const BiorthSystem& sys, const PlaneQuadrature& quad) {
    CNum al, be;
    if (const auto* p = std::get_if<ShiftedParams>(&sys.params)) {
        al = p->alpha;
        be = p->beta;
    } else if (const auto* q = std::get_if<ExtOscParams>(&sys.params)) {
        al = 1.0 / q->beta;
        be = -1.0 / q->beta;
    } else {
        throw DomainError("shifted_kernel_fit: needs the shifted model");
    }
    int dim = static_cast<int>(sys.phi.rows());
    CVec e0 = CVec::Zero(dim);
    e0[0] = 1.0;
    KernelFit k;
    k.T = resolution_check(sys, quad, e0, e0);
    double d = al.real() - be.real(), s = al.imag() + be.imag();
    double damp = std::exp(-0.5 * d * d);
    GaussPoly g0 = coordinate_coherent(0.0);
    GaussPoly tw = g0;
    tw.b = CNum(0.0, -std::sqrt(2.0) * s);
    k.candidate_x = damp * inner_product(g0, tw);
    k.candidate_const = damp * std::exp(CNum(0.0, std::sqrt(2.0) * s));
    // T carries an extra global phase exp(i Im(alpha beta)); the candidates are compared in modulus.
    k.err_x = std::abs(std::abs(k.T) - std::abs(k.candidate_x));
    k.err_const = std::abs(std::abs(k.T) - std::abs(k.candidate_const));
    return k;
}

}  // namespace pblab
