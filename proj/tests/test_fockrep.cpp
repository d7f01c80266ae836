#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "oracle.hpp"
#include "pblab/fockrep.hpp"

using namespace pblab;

TEST_CASE("ladder matrices") {
    auto L = ladder(2);
    CHECK(L.a.m(0, 1) == CNum(1.0));
    CHECK(L.a.m(0, 0) == CNum(0.0));
    CHECK(L.a.m(1, 0) == CNum(0.0));
    CHECK(L.a.m(1, 1) == CNum(0.0));
    auto L3 = ladder(3);
    CMat c = L3.a.m * L3.adag.m - L3.adag.m * L3.a.m;
    CMat ref = CMat::Zero(3, 3);
    ref.diagonal() << 1.0, 1.0, -2.0;
    CHECK(max_abs(c - ref) < 1e-15);
    CHECK(max_abs(L3.adag.m - L3.a.m.adjoint()) == 0);
}

TEST_CASE("commutator_defect") {
    auto L = ladder(30);
    CHECK(commutator_defect(L.a, L.adag, 1) < 1e-14);
    CNum al(0.4, -0.2), be(-0.3, 0.5);
    FockOp A = matadd(L.a, scalar_mul(-al, identity(30)));
    FockOp B = matadd(L.adag, scalar_mul(-be, identity(30)));
    CHECK(commutator_defect(A, B, 1) < 1e-13);
    // Bogoliubov-type pair
    auto L40 = ladder(40);
    double th = 0.3;
    FockOp At = matadd(scalar_mul(std::cos(th), L40.a), scalar_mul(CNum(0, std::sin(th)), L40.adag));
    FockOp Bt = matadd(scalar_mul(std::cos(th), L40.adag), scalar_mul(CNum(0, std::sin(th)), L40.a));
    CHECK(commutator_defect(At, Bt, 2) < 1e-12);
    CHECK_THROWS_AS(commutator_defect(L.a, ladder(10).adag, 1), DimensionError);
}

TEST_CASE("displacement") {
    auto L = ladder(60);
    FockOp U0 = displacement(0.0, L.a, L.adag);
    CHECK(max_abs(U0.m - CMat::Identity(60, 60)) == 0);
    CNum z(0.6, 0.3);
    FockOp U = displacement(z, L.a, L.adag);
    for (int n = 0; n < 20; ++n) {
        CNum ref = std::exp(-0.5 * std::norm(z)) * std::pow(z, n) / std::sqrt(oracle::factorial(n));
        CHECK(std::abs(U.m(n, 0) - ref) < 1e-14);
    }
    for (CNum w : {CNum(1.0), CNum(0.0, 1.0), CNum(0.6, -0.8), CNum(0.3, 0.2)}) {
        FockOp P = displacement(w, L.a, L.adag), M = displacement(-w, L.a, L.adag);
        REQUIRE(P.protect >= 8);
        CMat prod = P.m * M.m;
        CHECK(max_abs(prod.topLeftCorner(8, 8) - CMat::Identity(8, 8)) < 1e-10);
    }
}

TEST_CASE("displacement is invertible and unitary on its protected block") {
    for (int dim : {50, 60, 96, 128}) {
        auto L = ladder(dim);
        for (double r : {0.01, 0.3, 0.6, 1.0})
            for (double ph : {0.0, 1.0, 2.5}) {
                CNum w = std::polar(r, ph);
                FockOp P = displacement(w, L.a, L.adag), M = displacement(-w, L.a, L.adag);
                int k = P.protect;
                REQUIRE(k > 0);
                CMat inv = P.m * M.m, uni = P.m.adjoint() * P.m;
                CHECK(max_abs(inv.topLeftCorner(k, k) - CMat::Identity(k, k)) < 1e-9);
                CHECK(max_abs(uni.topLeftCorner(k, k) - CMat::Identity(k, k)) < 1e-9);
            }
    }
    CHECK(displacement_protect(60, 1.0) <= 60);
    CHECK(displacement_protect(16, 3.0) == 0);
}

TEST_CASE("nilpotent_exp") {
    CMat N = CMat::Zero(3, 3);
    N(0, 1) = 2.0;
    N(1, 2) = 3.0;
    CMat E = nilpotent_exp(CNum(0.5, 0.1), N);
    CNum z(0.5, 0.1);
    CMat ref = CMat::Identity(3, 3) + z * N + 0.5 * z * z * N * N;
    CHECK(max_abs(E - ref) < 1e-15);
}

TEST_CASE("eigpairs on diagonal and number operators") {
    CMat D = CMat::Zero(3, 3);
    D.diagonal() << 0.0, 1.0, 2.0;
    auto ep = eigpairs(FockOp(D, 3));
    REQUIRE(ep.size() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(ep[k].value - double(k)) < 1e-14);
        CHECK(std::abs(std::abs(ep[k].vec.v[k]) - 1.0) < 1e-14);
        CHECK(ep[k].residual < 1e-14);
    }
    auto L = ladder(10);
    auto en = eigpairs(matmul(L.adag, L.a));
    for (int k = 0; k < 10; ++k) CHECK(std::abs(en[k].value - double(k)) < 1e-12);
}

TEST_CASE("eigpairs on a similarity-transformed symmetric tridiagonal") {
    int n = 24;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) {
        H(i, i) = i + 0.5;
        d[i] = std::pow(1.3, i);
        if (i + 1 < n) H(i, i + 1) = H(i + 1, i) = 0.2 * std::sqrt(i + 1.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    CMat T = (d.asDiagonal().inverse() * H * d.asDiagonal()).cast<CNum>();
    CHECK(is_tridiagonal(T));
    auto ep = eigpairs(FockOp(T, n));
    std::vector<double> got;
    for (auto& p : ep) {
        CHECK(std::abs(p.value.imag()) < 1e-10);
        got.push_back(p.value.real());
    }
    std::sort(got.begin(), got.end());
    for (int i = 0; i < n; ++i) CHECK(std::abs(got[i] - es.eigenvalues()[i]) < 1e-10);
}

TEST_CASE("tridiagonal_roots polishes rough guesses") {
    CMat T = CMat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) T(i, i) = CNum(i, 0.1 * i);
    T(0, 1) = 0.1;
    T(1, 0) = 0.2;
    Eigen::ComplexEigenSolver<CMat> es(T);
    std::vector<CNum> guess{0.1, 0.9, 2.1, 3.05};
    std::vector<bool> conv;
    auto r = tridiagonal_roots(T, guess, 200, &conv);
    for (size_t i = 0; i < r.size(); ++i) {
        CHECK(conv[i]);
        double best = 1e9;
        for (int j = 0; j < 4; ++j) best = std::min(best, std::abs(r[i] - es.eigenvalues()[j]));
        CHECK(best < 1e-12);
    }
}

TEST_CASE("apply and algebra helpers") {
    auto L = ladder(8);
    FockVec v = basis_vec(8, 3);
    FockVec w = apply(identity(8), v);
    CHECK((w.v - v.v).norm() == 0);
    FockVec av = apply(L.a, v);
    CHECK(std::abs(av.v[2] - std::sqrt(3.0)) < 1e-15);
    CHECK(av.v.norm() - std::sqrt(3.0) < 1e-15);
    FockVec nv = apply(matmul(L.adag, L.a), v);
    CHECK((nv.v - 3.0 * v.v).norm() < 1e-14);
    CHECK(max_abs(adjoint(L.a).m - L.adag.m) == 0);
    CHECK_THROWS_AS(apply(L.a, basis_vec(5, 0)), DimensionError);
    CHECK_THROWS_AS(matmul(L.a, ladder(5).a), DimensionError);
    CHECK(!is_tridiagonal(matmul(L.a, L.a).m + L.adag.m));
}
