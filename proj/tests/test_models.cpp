#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pblab/kernels.hpp"
#include "pblab/models.hpp"

using namespace pblab;

namespace {

double overlap_dev(const BiorthSystem& s, int n, CNum expected_diag) {
    CMat G = overlap_matrix(s.psi.leftCols(n), s.phi.leftCols(n));
    return max_abs(G - expected_diag * CMat::Identity(n, n));
}

double ev_residual(const BiorthSystem& s, int k) {
    CVec v = s.phi.col(k);
    int p = s.H->protect;
    CVec r = (s.H->m * v).head(p) - s.reference_eigenvalues[k] * v.head(p);
    return r.norm() / v.head(p).norm();
}

}  // namespace

TEST_CASE("bosonic model is orthonormal") {
    auto s = bosonic_model(40, 20);
    CHECK(overlap_dev(s, 20, 1.0) == 0);
    CHECK(max_abs(s.phi - s.psi) == 0);
    for (int n = 0; n < 5; ++n) CHECK(std::abs(s.reference_eigenvalues[n] - (n + 0.5)) < 1e-15);
}

TEST_CASE("shifted model overlaps and closed-form constant") {
    auto s = shifted_model(0.5, 0.3, 64);
    CHECK(s.nfam == 32);
    CNum c = std::exp(CNum(0.15 - 0.17));
    CHECK(std::abs(s.overlap_const - c) < 1e-15);
    CHECK(overlap_dev(s, 9, c) < 1e-12);
    CHECK(s.warnings.empty());

    CNum al(0.4, 0.3);
    auto r = shifted_model(al, std::conj(al), 64);
    CHECK(max_abs(r.phi - r.psi) < 1e-15);
    CHECK(std::abs(std::abs(r.overlap_const) - 1.0) < 1e-15);

    auto z = shifted_model(0.0, 0.0, 32);
    CHECK(overlap_dev(z, 16, 1.0) < 1e-14);
}

TEST_CASE("shifted model norm growth") {
    for (auto [al, be] : {std::pair<CNum, CNum>{1.0, 0.0}, {0.5, 0.3}, {CNum(0.2, 0.4), CNum(-0.1, 0.2)}}) {
        auto s = shifted_model(al, be, 96);
        double d = std::norm(std::conj(al) - be);
        for (int n = 0; n <= 12; ++n) CHECK(s.phi.col(n).squaredNorm() >= 1 + n * d - 1e-12);
    }
}

TEST_CASE("shifted model warns on truncation") {
    auto s = shifted_model(3.0, 3.0, 16);
    CHECK(!s.warnings.empty());
    CHECK_THROWS_AS(shifted_model(0.1, 0.1, 8), DomainError);
}

TEST_CASE("extended oscillator") {
    for (double beta : {1.0, std::sqrt(2.0), 2.0}) {
        auto s = extended_oscillator(beta, 96);
        CHECK(std::abs(s.overlap_const - std::exp(-2 / (beta * beta))) < 1e-15);
        CHECK(overlap_dev(s, 9, std::exp(-2 / (beta * beta))) < 1e-8);
        double gam = (2 + beta * beta) / (2 * beta * beta);
        for (int k = 0; k <= 5; ++k) CHECK(std::abs(s.reference_eigenvalues[k] - beta * (k + gam)) < 1e-14);
    }
    auto s1 = extended_oscillator(1.0, 80);
    CHECK(std::abs(s1.reference_eigenvalues[0] - 1.5) < 1e-15);
    CHECK(ev_residual(s1, 2) < 1e-8);
    CHECK_THROWS_AS(extended_oscillator(-1.0, 64), DomainError);
}

TEST_CASE("extended oscillator truncated spectrum") {
    for (double beta : {1.0, std::sqrt(2.0), 2.0}) {
        auto s = extended_oscillator(beta, 96);
        auto ep = eigpairs(*s.H);
        std::vector<CNum> ev;
        for (auto& p : ep) ev.push_back(p.value);
        std::sort(ev.begin(), ev.end(), [](CNum a, CNum b) { return a.real() < b.real(); });
        double gam = (2 + beta * beta) / (2 * beta * beta);
        for (int k = 0; k <= 5; ++k) CHECK(std::abs(ev[k] - beta * (k + gam)) < 1e-6);
    }
}

TEST_CASE("Swanson Fock spectrum") {
    for (double th : {0.2, kPi / 6}) {
        auto s = swanson_model(th, 24, Rep::Fock, 80);
        auto ep = eigpairs(*s.H);
        std::vector<CNum> ev;
        for (auto& p : ep) ev.push_back(p.value);
        std::sort(ev.begin(), ev.end(), [](CNum a, CNum b) { return std::abs(a) < std::abs(b); });
        double w = 1 / std::cos(2 * th);
        for (int n = 0; n < 5; ++n) CHECK(std::abs(ev[n] - w * (n + 0.5)) < 1e-6);
    }
}

TEST_CASE("Swanson coordinate forms") {
    double th = 0.3;
    auto s = swanson_model(th, 24, Rep::Coord1D);
    REQUIRE(s.phi_gp.size() >= 9);
    CHECK(std::abs(inner_product(s.psi_gp[0], s.phi_gp[0]) - 1.0) < 1e-14);
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; m <= 8; ++m)
            CHECK(std::abs(inner_product(s.psi_gp[n], s.phi_gp[m]) - (n == m ? 1.0 : 0.0)) < 1e-9);
    // coordinate vectors are the Hermite-function expansion of the closed forms
    for (int n : {0, 3, 6})
        for (int k : {0, 1, 2, 5, 8}) {
            CNum ref = oracle::trapezoid([&](double x) {
                auto h = hermite_functions(k, x);
                return h[k] * s.phi_gp[n](x);
            }, 15.0, 4000);
            CHECK(std::abs(s.phi(k, n) - ref) < 1e-10);
        }
    CHECK_THROWS_AS(swanson_model(0.8, 24, Rep::Fock), DomainError);
    CHECK_THROWS_AS(swanson_model(0.0, 24, Rep::Fock), DomainError);
}

TEST_CASE("susy example 1") {
    SusyParams p;
    auto s0 = susy_model(p, 12);
    for (int n = 0; n < 12; ++n)
        for (int m = 0; m < 12; ++m) {
            CHECK(std::abs(inner_product(s0.phi_gp[n], s0.phi_gp[m]) - (n == m ? 1.0 : 0.0)) < 1e-12);
            CHECK(std::abs(inner_product(s0.psi_gp[n], s0.phi_gp[m]) - s0.reference_overlap(n, m)) < 1e-12);
        }
    for (CNum al : {CNum(0.5), CNum(0.0, 0.7)}) {
        p.alpha = al;
        auto s = susy_model(p, 10);
        for (int n = 0; n < 10; ++n)
            for (int m = 0; m < 10; ++m)
                CHECK(std::abs(inner_product(s.psi_gp[n], s.phi_gp[m]) - s.reference_overlap(n, m)) < 1e-9);
    }
    p.alpha = CNum(0.3, 0.3);
    CHECK_THROWS_AS(susy_model(p, 10), DomainError);
}

TEST_CASE("susy example 2 sampled overlaps") {
    SusyParams p;
    p.example = 2;
    p.phi = PhiSpec{PhiSpec::Kind::Sin, 0.3, 1.0};
    auto s = susy_model(p, 12);
    auto so = sampled_overlap(s.psi_form, 12, s.phi_form, 12);
    CHECK(so.diff < 1e-10);
    for (int n = 0; n < 12; ++n)
        for (int m = 0; m < 12; ++m) CHECK(std::abs(so.G(n, m) - s.reference_overlap(n, m)) < 1e-9);
}

TEST_CASE("riesz multiplication model") {
    RhoSpec one;
    auto s = riesz_mult_model(one, 12);
    CMat G = overlap_matrix(s.phi.leftCols(12), s.phi.leftCols(12));
    CHECK(max_abs(G - CMat::Identity(12, 12)) < 1e-12);
    CHECK(max_abs(s.phi - s.psi) < 1e-12);

    RhoSpec r;
    r.kind = RhoSpec::Kind::OnePlusEpsSin;
    r.eps = 0.5;
    CHECK(std::abs(r.analytic_lower() - 0.5) < 1e-15);
    CHECK(std::abs(r.analytic_upper() - 1.5) < 1e-15);
    r.lower = 0.9;  // false claim, violated where sin x = -1
    CHECK_THROWS_AS(riesz_mult_model(r, 12), DomainError);
}

TEST_CASE("GLL vacua and biorthogonality") {
    auto s = gll_model(0.1, 0.1, 2, 2);
    REQUIRE(s.l2 == 3);
    CHECK(std::abs(inner_product_2d(s.phi2[0], s.psi2[0]) - 1.0) < 1e-14);
    auto at = [&](int n, int l) { return n * s.l2 + l; };
    CNum direct = inner_product_2d(s.psi2[at(1, 0)], s.phi2[0]);
    CNum quad = oracle::trapezoid2d([&](double x, double y) { return std::conj(s.psi2[at(1, 0)](x, y)) * s.phi2[0](x, y); });
    CHECK(std::abs(direct) < 1e-14);
    CHECK(std::abs(quad) < 1e-10);

    auto z = gll_model(0.0, 0.0, 1, 1);
    CHECK(coeff_distance(z.phi2[0], z.psi2[0]) < 1e-15);
    CHECK(std::abs(z.phi2[0].ax - 0.25) < 1e-15);
    CHECK_THROWS_AS(gll_model(0.6, 0.0, 2, 2), DomainError);
    CHECK_THROWS_AS(gll_model(0.0, -0.5, 2, 2), DomainError);
}

TEST_CASE("GLL metric grows without bound") {
    auto g = gll_metric_growth(0.2, -0.1);
    CHECK(g.unbounded_certificate);
    CHECK(g.sup_phi_R10 > 2 * g.sup_phi_R5);
    auto flat = gll_metric_growth(0.0, 0.0);
    CHECK(!flat.unbounded_certificate);
    CHECK(std::abs(gll_metric_phi(0.0, 0.0, 3.0, -2.0) - gll_metric_phi(0.0, 0.0, 0.0, 0.0)) < 1e-14);
}

TEST_CASE("Hermite projection matches direct quadrature") {
    HermiteForm f;
    f.a = CNum(0.6, 0.1);
    f.b = CNum(0.1, -0.2);
    CMat P = hermite_projection(f, 10, 4);
    for (int k : {0, 3, 9})
        for (int n : {0, 2, 3}) {
            CNum ref = oracle::trapezoid([&](double x) { return hermite_functions(k, x)[k] * f.values(n, x)[n]; });
            CHECK(std::abs(P(k, n) - ref) < 1e-11);
        }
}

TEST_CASE("coherent tail") {
    double prev = 1;
    for (int dim : {16, 32, 64}) {
        double t = coherent_tail(1.5, dim);
        CHECK(t < prev);
        prev = t;
    }
    CHECK(coherent_tail(0.5, 40) < coherent_tail(2.0, 40));
}

TEST_CASE("damped oscillator feasibility") {
    DHOParams p;
    p.m = 1;
    p.k = 2;
    p.gamma = 0.3;
    p.Gamma = CNum(1.0, 0.5);
    p.delta = dho_admissible_delta(p, 0.7);
    auto f = dho_feasibility(p, 64);
    CHECK(f.constraint_defect < 1e-12);
    CHECK(!f.conjunction);
    CHECK(!f.weighted_feasible);
    CHECK(f.u1 * f.u2 > 0);

    for (int i = 0; i < 100; ++i) {
        auto q = dho_random_admissible(0xB105EB, i);
        auto r = dho_feasibility(q, 64);
        CHECK(r.constraint_defect < 1e-9);
        CHECK(r.u1 * r.u2 >= 0);
        CHECK(!r.conjunction);
        CHECK(!r.weighted_feasible);
    }

    DHOParams bad = p;
    bad.m = 0;
    CHECK_THROWS_AS(dho_feasibility(bad), DomainError);
    bad = p;
    bad.k = 0.001;
    CHECK_THROWS_AS(dho_feasibility(bad), DomainError);
    bad = p;
    bad.delta = bad.Gamma * 2.0;
    CHECK_THROWS_AS(dho_feasibility(bad), DomainError);

    DHOParams free = p;
    free.gamma = 0;
    free.delta = dho_admissible_delta(free, 0.5);
    CHECK(dho_feasibility(free).undamped);
}
