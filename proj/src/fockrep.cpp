#include "pblab/fockrep.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace pblab {

namespace {

void require_same_dim(const FockOp& A, const FockOp& B, const char* what) {
    if (A.dim() != B.dim()) throw DimensionError(std::string(what) + ": dimension mismatch");
}

struct Entry {
    int row, col;
    CNum value;
};

// M * S where S has few nonzeros (ladder-like); O(dim * nnz).
CMat mul_sparse_right(const CMat& M, const std::vector<Entry>& S, int dim) {
    CMat r = CMat::Zero(M.rows(), dim);
    for (const auto& t : S) r.col(t.col) += M.col(t.row) * t.value;
    return r;
}

std::vector<Entry> nonzeros(const CMat& M) {
    std::vector<Entry> t;
    for (int j = 0; j < M.cols(); ++j)
        for (int i = 0; i < M.rows(); ++i)
            if (M(i, j) != CNum(0)) t.push_back({i, j, M(i, j)});
    return t;
}

}  // namespace

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Ladder ladder(int dim) {
    if (dim < 2) throw DimensionError("ladder: dim must be at least 2");
    if (dim > limits().fock_max_dim) throw DimensionError("ladder: dim exceeds supported maximum");
    CMat a = CMat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    CMat ad = a.adjoint();
    return {FockOp(a, dim - 1), FockOp(ad, dim - 1)};
}

FockOp identity(int dim) { return FockOp(CMat::Identity(dim, dim), dim); }

double commutator_defect(const FockOp& A, const FockOp& B, int k) {
    require_same_dim(A, B, "commutator_defect");
    int dim = A.dim();
    if (k < 0 || k >= dim) throw DimensionError("commutator_defect: k must lie in [0, dim)");
    CMat c = A.m * B.m - B.m * A.m - CMat::Identity(dim, dim);
    int b = dim - k;
    return max_abs(c.topLeftCorner(b, b));
}

CMat nilpotent_exp(CNum z, const CMat& M) {
    int dim = static_cast<int>(M.rows());
    auto S = nonzeros(M);
    CMat result = CMat::Identity(dim, dim);
    CMat term = CMat::Identity(dim, dim);
    for (int k = 1; k <= dim; ++k) {
        term = mul_sparse_right(term, S, dim) * (z / double(k));
        double t = max_abs(term);
        if (t == 0.0) break;
        result += term;
        if (t < 1e-300) break;
    }
    return result;
}

int displacement_protect(int dim, double zmax) {
    double r = std::sqrt(double(dim)) - 2.0 * zmax - 1.0;
    if (r <= 0) return 0;
    return std::min(dim, static_cast<int>(std::floor(r * r)));
}

FockOp displacement(CNum z, const FockOp& lower, const FockOp& raise) {
    require_same_dim(lower, raise, "displacement");
    CMat up = nilpotent_exp(z, raise.m);
    CMat down = nilpotent_exp(-std::conj(z), lower.m);
    CMat u = std::exp(-0.5 * std::norm(z)) * (up * down);
    return FockOp(u, displacement_protect(lower.dim(), std::abs(z)));
}

bool is_tridiagonal(const CMat& m) {
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
            if (std::abs(i - j) > 1 && m(i, j) != CNum(0)) return false;
    return true;
}

namespace {

// Newton correction p/p' of det(T - lambda) from the three-term recurrence, rescaled to avoid overflow.
CNum char_newton_ratio(const std::vector<CNum>& d, const std::vector<CNum>& prod, CNum lam) {
    CNum p0 = 1.0, p1 = d[0] - lam, q0 = 0.0, q1 = -1.0;
    for (size_t k = 1; k < d.size(); ++k) {
        CNum p2 = (d[k] - lam) * p1 - prod[k - 1] * p0;
        CNum q2 = (d[k] - lam) * q1 - p1 - prod[k - 1] * q0;
        p0 = p1;
        p1 = p2;
        q0 = q1;
        q1 = q2;
        double s = std::max({std::abs(p0), std::abs(p1), std::abs(q1), 1e-300});
        p0 /= s;
        p1 /= s;
        q0 /= s;
        q1 /= s;
    }
    return p1 / q1;
}

}  // namespace

std::vector<CNum> tridiagonal_roots(const CMat& T, std::vector<CNum> z, int max_iter, std::vector<bool>* converged) {
    int n = static_cast<int>(T.rows());
    std::vector<CNum> d(n), prod(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) d[k] = T(k, k);
    for (int k = 0; k + 1 < n; ++k) prod[k] = T(k, k + 1) * T(k + 1, k);
    std::vector<bool> done(n, false);
    double scale = 1.0;
    for (auto v : d) scale = std::max(scale, std::abs(v));
    for (int it = 0; it < max_iter; ++it) {
        bool all = true;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            CNum w = char_newton_ratio(d, prod, z[i]);
            CNum s = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            CNum dz = w / (1.0 - w * s);
            if (!finite(dz)) {
                all = false;
                continue;
            }
            z[i] -= dz;
            if (std::abs(dz) < 1e-15 * scale) done[i] = true;
            else all = false;
        }
        if (all) break;
    }
    if (converged) *converged = done;
    return z;
}

std::vector<EigPair> eigpairs(const FockOp& M, const EigOptions& opt) {
    int dim = M.dim();
    if (dim > limits().fock_max_dim) throw DimensionError("eigpairs: dim exceeds 512");
    Eigen::ComplexEigenSolver<CMat> es;
    es.setMaxIterations(60 * dim);
    es.compute(M.m, true);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigpairs: QR iteration did not converge", 60L * dim);
    std::vector<CNum> vals(es.eigenvalues().data(), es.eigenvalues().data() + dim);
    CMat vecs = es.eigenvectors();
    double mnorm = max_abs(M.m);

    if (opt.refine_tridiagonal && dim > 2 && is_tridiagonal(M.m)) {
        std::vector<bool> conv;
        auto polished = tridiagonal_roots(M.m, vals, 200, &conv);
        for (int i = 0; i < dim; ++i) {
            if (!conv[i]) continue;
            // Inverse iteration at the polished eigenvalue gives the matching vector.
            CNum lam = polished[i];
            CMat shifted = M.m - (lam + CNum(1e-13 * std::max(1.0, mnorm))) * CMat::Identity(dim, dim);
            Eigen::PartialPivLU<CMat> lu(shifted);
            CVec v = vecs.col(i);
            for (int it = 0; it < 3; ++it) {
                v = lu.solve(v);
                double nv = v.norm();
                if (!std::isfinite(nv) || nv == 0) break;
                v /= nv;
            }
            if (!v.allFinite()) continue;
            double r_old = (M.m * vecs.col(i) - vals[i] * vecs.col(i)).norm();
            double r_new = (M.m * v - lam * v).norm();
            if (r_new <= std::max(r_old, 1e-8 * mnorm)) {
                vals[i] = lam;
                vecs.col(i) = v;
            }
        }
    }

    std::vector<EigPair> out(dim);
    for (int i = 0; i < dim; ++i) {
        CVec v = vecs.col(i);
        double nv = v.norm();
        if (nv > 0) v /= nv;
        // Fix the phase: largest component real and positive.
        Eigen::Index k;
        v.cwiseAbs().maxCoeff(&k);
        if (std::abs(v[k]) > 0) v *= std::conj(v[k]) / std::abs(v[k]);
        out[i].value = vals[i];
        out[i].vec.v = v;
        out[i].residual = (M.m * v - vals[i] * v).norm();
    }
    double tol = opt.tie_tol;
    std::stable_sort(out.begin(), out.end(), [tol](const EigPair& x, const EigPair& y) {
        if (std::abs(x.value.real() - y.value.real()) > tol) return x.value.real() < y.value.real();
        if (std::abs(x.value.imag() - y.value.imag()) > tol) return x.value.imag() < y.value.imag();
        return false;
    });
    return out;
}

FockVec apply(const FockOp& M, const FockVec& v) {
    if (M.dim() != v.dim()) throw DimensionError("apply: dimension mismatch");
    return FockVec{M.m * v.v};
}

FockOp matmul(const FockOp& A, const FockOp& B) {
    require_same_dim(A, B, "matmul");
    // Each factor can corrupt one extra trailing row through the truncated ladder.
    int p = std::max(0, std::min(A.protect, B.protect) - 1);
    return FockOp(A.m * B.m, p);
}

FockOp matadd(const FockOp& A, const FockOp& B) {
    require_same_dim(A, B, "matadd");
    return FockOp(A.m + B.m, std::min(A.protect, B.protect));
}

FockOp scalar_mul(CNum c, const FockOp& A) { return FockOp(c * A.m, A.protect); }

FockOp adjoint(const FockOp& A) { return FockOp(A.m.adjoint(), A.protect); }

FockVec basis_vec(int dim, int n) {
    if (n < 0 || n >= dim) throw DimensionError("basis_vec: index outside the truncated space");
    FockVec v{CVec::Zero(dim)};
    v.v[n] = 1.0;
    return v;
}

}  // namespace pblab
