#include <doctest.h>

#include "oracle.hpp"
#include "pblab/coherent.hpp"
#include "pblab/kernels.hpp"

using namespace pblab;

TEST_CASE("bi-coherent states at z = 0 are the vacua") {
    auto s = shifted_model(0.5, 0.3, 80);
    auto p = bicoherent(s, 0.0);
    CHECK((p.phi_z - s.phi.col(0)).norm() == 0);
    CHECK((p.psi_z - s.psi.col(0)).norm() == 0);
    CHECK(p.reliable);
    auto r = eigen_relation_residual(s, p);
    CHECK(r.phi < 1e-15);
    CHECK(r.psi < 1e-15);
}

TEST_CASE("bosonic coherent coefficients") {
    auto b = bosonic_model(80, 40);
    auto p = bicoherent(b, 1.0);
    for (int n = 0; n < 20; ++n) CHECK(std::abs(p.phi_z[n] - std::exp(-0.5) / std::sqrt(oracle::factorial(n))) < 1e-15);
    auto q = bicoherent(b, CNum(0.7, 0.2));
    auto r = eigen_relation_residual(b, q);
    CHECK(r.phi < 1e-9);
    CHECK(r.psi < 1e-9);
}

TEST_CASE("Swanson eigen relation") {
    for (Rep rep : {Rep::Fock, Rep::Coord1D}) {
        auto s = swanson_model(0.25, 24, rep);
        auto r = eigen_relation_residual(s, bicoherent(s, 0.5));
        CHECK(r.phi < 1e-8);
        CHECK(r.psi < 1e-8);
    }
}

TEST_CASE("series and orbit routes agree") {
    auto s = shifted_model(0.5, 0.3, 80);
    for (CNum z : {CNum(0.3), CNum(0.0, 1.0), CNum(0.6, -0.8), CNum(-1.0)}) {
        CVec a = bicoherent(s, z).phi_z, b = coherent_by_orbit(s, z);
        int p = s.protect - 1;
        CHECK((a.head(p) - b.head(p)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("tail cap flags unreliable pairs") {
    auto b = bosonic_model(32, 16);
    CHECK(!bicoherent(b, 3.0).reliable);
    CHECK(bicoherent(b, 0.2).reliable);
    auto p = bicoherent(b, 3.0, 1.0);
    CHECK(p.reliable);
}

TEST_CASE("resolution of the identity, bosonic") {
    auto b = bosonic_model(96, 48);
    CVec e0 = CVec::Zero(96);
    e0[0] = 1;
    CHECK(std::abs(resolution_check(b, {32, 64, 6.0}, e0, e0) - 1.0) < 1e-6);

    CMat V = resolution_test_vectors(96);
    double prev = 1e9;
    for (PlaneQuadrature q : {PlaneQuadrature{16, 32, 5.0}, PlaneQuadrature{32, 64, 6.0}, PlaneQuadrature{48, 96, 7.0}}) {
        double d = resolution_matrix(b, q, V, V).max_deviation;
        CHECK(d <= prev);
        prev = d;
    }
    CHECK(prev < 1e-12);
    auto rr = resolution_matrix(b, {}, V, V);
    CHECK(max_abs(rr.T - rr.T.adjoint()) < 1e-12);
}

TEST_CASE("resolution for shifted systems") {
    CNum al(0.4, 0.3);
    auto reg = shifted_model(al, std::conj(al), 96);
    CMat V = resolution_test_vectors(96);
    CHECK(resolution_matrix(reg, {}, V, V).max_deviation < 1e-6);

    for (auto [a, b] : {std::pair<double, double>{0.5, 0.0}, {1.0, 0.0}, {0.8, 0.3}}) {
        auto s = shifted_model(a, b, 96);
        CHECK(resolution_matrix(s, {}, V, V).max_deviation > 0.01);
    }
}

TEST_CASE("kernel candidates for the shifted model") {
    auto s = shifted_model(CNum(0.5, 0.2), CNum(0.3, 0.1), 96);
    auto k = shifted_kernel_fit(s);
    // only the x-dependent phase reproduces the modulus once alpha_i + beta_i != 0
    CHECK(k.err_x < 1e-8);
    CHECK(k.err_const > 0.01);
    auto real = shifted_kernel_fit(shifted_model(0.5, 0.3, 96));
    CHECK(real.err_x < 1e-8);
    CHECK(real.err_const < 1e-8);
    CHECK(std::abs(real.T - std::exp(-0.02)) < 1e-8);
    CHECK_THROWS_AS(shifted_kernel_fit(bosonic_model(32, 16)), DomainError);
}

TEST_CASE("resolution argument checks") {
    auto b = bosonic_model(32, 16);
    CMat V = resolution_test_vectors(32);
    CHECK_THROWS_AS(resolution_matrix(b, {4, 64, 6.0}, V, V), DomainError);
    CHECK_THROWS_AS(resolution_matrix(b, {32, 8, 6.0}, V, V), DomainError);
    CHECK_THROWS_AS(resolution_matrix(b, {32, 64, 0.0}, V, V), DomainError);
    CHECK_THROWS_AS(resolution_matrix(b, {}, CMat::Identity(10, 2), V), DimensionError);
    CHECK(V(3, 3) == CNum(1.0));
    CHECK(V.cols() == 16);
}

TEST_CASE("coordinate coherent states are normalized") {
    GaussPoly g0 = coordinate_coherent(0.0);
    for (double x : {-1.0, 0.0, 2.0}) CHECK(std::abs(g0(x) - std::pow(kPi, -0.25) * std::exp(-x * x / 2)) < 1e-15);
    for (CNum z : {CNum(1.0), CNum(0.0, 1.0), CNum(0.3, -0.4)}) {
        GaussPoly g = coordinate_coherent(z);
        CHECK(std::abs(inner_product(g, g) - 1.0) < 1e-14);
        CNum ref = oracle::trapezoid([&](double x) { return CNum(std::norm(g(x))); });
        CHECK(std::abs(ref - 1.0) < 1e-12);
    }
}
