#pragma once

#include <optional>

#include "pblab/models.hpp"

namespace pblab {

struct CoherentPair {
    CNum z;
    CVec phi_z, psi_z;  // coordinates in the system basis
    std::optional<GaussPoly> phi_gp, psi_gp;
    double tail_mass = 0;  // Poisson weight of the series beyond the family length
    bool reliable = true;
};

CoherentPair bicoherent(const BiorthSystem& sys, CNum z, double tail_cap = 1e-10);
// exp(-|z|^2/2) exp(z B) phi_0 summed directly with the operator B.
CVec coherent_by_orbit(const BiorthSystem& sys, CNum z);

struct EigenResidual {
    double phi = 0, psi = 0;
};
EigenResidual eigen_relation_residual(const BiorthSystem& sys, const CoherentPair& pair);

struct PlaneQuadrature {
    int R = 32;
    int M = 64;
    double cutoff = 6.0;
};

struct ResolutionResult {
    CMat T;          // T(f_i, g_j)
    CMat reference;  // <f_i, g_j>
    double max_deviation = 0;
    double tail_bound = 0;  // contribution of nodes beyond the cutoff
};
// T(f, g) = (1/pi) int <f, phi(z)> <Psi(z), g> d^2z over the cutoff disk, for all column pairs.
ResolutionResult resolution_matrix(const BiorthSystem& sys, const PlaneQuadrature& quad, const CMat& F,
                                   const CMat& G);
CNum resolution_check(const BiorthSystem& sys, const PlaneQuadrature& quad, const CVec& f, const CVec& g);

// First 8 basis states followed by seeded smooth random vectors.
CMat resolution_test_vectors(int dim, unsigned long long seed = 0xB105EB, int random_count = 8);

// eta(x; z + shift) = pi^{-1/4} exp(-x^2/2 + sqrt2 w x - Re(w)^2).
GaussPoly coordinate_coherent(CNum z, CNum shift = 0.0);

// Shifted model, f = g = ground state: measured T against the two kernel candidates.
struct KernelFit {
    CNum T;
    CNum candidate_x;      // exp(-(ar-br)^2/2) <f, exp(i sqrt2 (ai+bi) x) f>
    CNum candidate_const;  // exp(-(ar-br)^2/2) exp(i sqrt2 (ai+bi))
    double err_x = 0, err_const = 0;  // ||T| - |candidate||
};
KernelFit shifted_kernel_fit(const BiorthSystem& sys, const PlaneQuadrature& quad = {});

}  // namespace pblab
