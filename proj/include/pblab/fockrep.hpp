#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pblab/types.hpp"

namespace pblab {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

struct FockOp {
    CMat m;
    int protect = 0;  // leading block on which truncation does not interfere

    FockOp() = default;
    FockOp(CMat mat, int protect_) : m(std::move(mat)), protect(protect_) {}
    int dim() const { return static_cast<int>(m.rows()); }
};

struct FockVec {
    CVec v;
    int dim() const { return static_cast<int>(v.size()); }
};

struct Ladder {
    FockOp a, adag;
};

Ladder ladder(int dim);
FockOp identity(int dim);

double commutator_defect(const FockOp& A, const FockOp& B, int k);

// exp(z*raise) exp(-conj(z)*lower) e^{-|z|^2/2}, summed as terminating series.
FockOp displacement(CNum z, const FockOp& lower, const FockOp& raise);
// exp(z*M) for a nilpotent (or effectively nilpotent) M, summing until terms vanish.
CMat nilpotent_exp(CNum z, const CMat& M);
// Leading block on which U(z)U(-z) = I survives truncation at `dim` for |z| <= zmax.
int displacement_protect(int dim, double zmax);

struct EigPair {
    CNum value;
    FockVec vec;
    double residual;
};

struct EigOptions {
    // Polish tridiagonal spectra through the characteristic three-term recurrence.
    bool refine_tridiagonal = true;
    double tie_tol = 1e-10;
};

std::vector<EigPair> eigpairs(const FockOp& M, const EigOptions& opt = {});

FockVec apply(const FockOp& M, const FockVec& v);
FockOp matmul(const FockOp& A, const FockOp& B);
FockOp matadd(const FockOp& A, const FockOp& B);
FockOp scalar_mul(CNum c, const FockOp& A);
FockOp adjoint(const FockOp& A);

FockVec basis_vec(int dim, int n);
double max_abs(const CMat& m);

// True when every entry outside the three central diagonals is zero.
bool is_tridiagonal(const CMat& m);
// Roots of det(T - lambda) for tridiagonal T by Aberth iteration seeded with `guess`.
std::vector<CNum> tridiagonal_roots(const CMat& T, std::vector<CNum> guess, int max_iter = 200,
                                    std::vector<bool>* converged = nullptr);

}  // namespace pblab
