#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pblab/gaussmath.hpp"

using namespace pblab;

namespace {
const double kSqrtPi = std::sqrt(kPi);

Poly poly_x(std::initializer_list<CNum> c) { return Poly(std::vector<CNum>(c)); }
}  // namespace

TEST_CASE("gauss_moment on the real Gaussian") {
    CHECK(std::abs(gauss_moment(0, 1.0, 0.0) - kSqrtPi) < 1e-15);
    CHECK(std::abs(gauss_moment(1, 1.0, 0.0)) < 1e-15);
    // trapezoid oracle for x^2 e^{-x^2}, first checked against sqrt(pi)/2
    CNum ref = oracle::trapezoid([](double x) { return CNum(x * x * std::exp(-x * x)); });
    CHECK(std::abs(ref - kSqrtPi / 2) < 1e-13);
    CHECK(std::abs(gauss_moment(2, 1.0, 0.0) - ref) < 1e-14);
}

TEST_CASE("gauss_moment with complex parameters matches the trapezoid oracle") {
    CNum a(1.0, 0.5), b(0.3, -0.2);
    for (int k = 0; k <= 6; ++k) {
        CNum ref = oracle::trapezoid([&](double x) { return std::pow(x, k) * std::exp(-a * x * x + b * x); });
        CHECK(std::abs(gauss_moment(k, a, b) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
    }
    auto all = gauss_moments(8, a, b);
    for (int k = 0; k <= 8; ++k) CHECK(all[k] == gauss_moment(k, a, b));
}

TEST_CASE("gauss_moment errors") {
    CHECK_THROWS_AS(gauss_moment(0, CNum(0.0, 1.0), 0.0), DomainError);
    CHECK_THROWS_AS(gauss_moment(0, -1.0, 0.0), DomainError);
    CHECK_THROWS_AS(gauss_moment(limits().moment_kmax + 1, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(gauss_moment(180, 1e-3, 0.0), OverflowError);
}

TEST_CASE("inner_product examples") {
    GaussPoly g{Poly({1.0}), 0.5, 0.0, 0.0};
    CHECK(std::abs(inner_product(g, g) - kSqrtPi) < 1e-15);

    // p_1 e^{-x^2/2}/sqrt2 with alpha = 0: right side of the normalized identity at n = m = 1
    GaussPoly p1{pn_family(0.0, 1)[1], 0.5, 0.0, 0.0};
    p1 = p1.scaled(1.0 / std::sqrt(2.0));
    CNum quad = oracle::trapezoid([&](double x) { return std::conj(p1(x)) * p1(x); });
    CHECK(std::abs(quad - kSqrtPi) < 1e-12);
    CHECK(std::abs(inner_product(p1, p1) - kSqrtPi) < 1e-14);

    GaussPoly bad{Poly({1.0}), -0.5, 0.0, 0.0};
    CHECK_THROWS_AS(inner_product(bad, g), DomainError);
}

TEST_CASE("inner_product is conjugate linear in the first slot") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    auto rnd = [&] { return CNum(u(rng), u(rng)); };
    for (int trial = 0; trial < 20; ++trial) {
        GaussPoly f{poly_x({rnd(), rnd(), rnd()}), CNum(0.6 + 0.3 * u(rng), 0.2 * u(rng)), rnd(), rnd()};
        GaussPoly g{poly_x({rnd(), rnd()}), CNum(0.7, 0.1 * u(rng)), rnd(), rnd()};
        CNum lam = rnd();
        CHECK(std::abs(inner_product(f.scaled(lam), g) - std::conj(lam) * inner_product(f, g)) < 1e-12);
        CHECK(std::abs(inner_product(f, g) - std::conj(inner_product(g, f))) < 1e-12);
        CNum ref = oracle::trapezoid([&](double x) { return std::conj(f(x)) * g(x); }, 20.0, 8000);
        CHECK(std::abs(inner_product(f, g) - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("inner_product_2d") {
    GaussPoly2D g;
    g.coeffs = {{1.0}};
    CHECK(std::abs(inner_product_2d(g, g) - kPi) < 1e-14);

    GaussPoly2D f;
    f.coeffs = {{0.0, 1.0}, {CNum(0.5, 0.2), 0.0}};  // y + (0.5+0.2i) x
    f.ax = CNum(0.6, 0.1);
    f.by = CNum(0.2, -0.3);
    CNum ref = oracle::trapezoid2d([&](double x, double y) { return std::conj(f(x, y)) * g(x, y); });
    CHECK(std::abs(inner_product_2d(f, g) - ref) < 1e-10);
}

TEST_CASE("pn_family closed forms") {
    CNum al(0.3, -0.4);
    auto p = pn_family(al, 3);
    Poly u = poly_x({al, 2.0});  // 2x + alpha
    CHECK(max_abs_coeff(p[1] - u) < 1e-15);
    CHECK(max_abs_coeff(p[2] - (u * u - Poly({2.0}))) < 1e-14);
    CHECK(max_abs_coeff(p[3] - u * (u * u - Poly({6.0}))) < 1e-13);
    auto q = pn_family(al, 20);
    for (int n = 0; n <= 20; ++n) {
        CHECK(q[n].degree() == n);
        CHECK(std::abs(q[n].coeffs.back() - std::pow(2.0, n)) < 1e-12 * std::pow(2.0, n));
    }
}

TEST_CASE("pn_family agrees with shifted Hermite polynomials") {
    for (CNum al : {CNum(0.0), CNum(0.5), CNum(0.0, 0.7), CNum(-1.3)}) {
        auto p = pn_family(al, 20);
        for (int n = 0; n <= 20; ++n) {
            Poly h = hermite(n).compose_affine(1.0, al / 2.0);
            double scale = max_abs_coeff(h);
            CHECK(max_abs_coeff(p[n] - h) <= 1e-11 * scale);
        }
    }
}

TEST_CASE("polynomial coefficient cap raises") {
    CHECK_THROWS_AS(pn_family(1e40, 6), OverflowError);
    CHECK_THROWS_AS(hermite(limits().poly_nmax + 1), DomainError);
}

TEST_CASE("hermite and legendre") {
    CHECK(max_abs_coeff(hermite(1) - poly_x({0.0, 2.0})) == 0);
    CHECK(max_abs_coeff(hermite(3) - poly_x({0.0, -12.0, 0.0, 8.0})) < 1e-15);
    CHECK(max_abs_coeff(legendre(1) - poly_x({0.0, 1.0})) == 0);
    CHECK(std::abs(legendre(2)(3.0) - 13.0) < 1e-14);
    CHECK(std::abs(legendre_value(2, 3.0) - 13.0) < 1e-14);
    for (int n = 0; n <= 12; ++n)
        for (double x : {-0.7, 0.0, 0.4, 1.0, 1.7}) CHECK(std::abs(legendre_value(n, x) - legendre(n)(x).real()) < 1e-9 * std::max(1.0, std::abs(legendre_value(n, x))));
    for (int n = 0; n <= 15; ++n)
        for (double x : {-1.2, 0.3, 2.5}) {
            CNum ref = oracle::hermite_h(n, x);
            CHECK(std::abs(hermite(n)(x) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
        }
}

TEST_CASE("normalized Hermite values and Hermite functions") {
    for (CNum y : {CNum(0.3), CNum(1.1, -0.4)}) {
        auto v = hermite_normalized_values(12, y);
        for (int n = 0; n <= 12; ++n) {
            CNum ref = oracle::hermite_h(n, y) / std::sqrt(std::pow(2.0, n) * oracle::factorial(n));
            CHECK(std::abs(v[n] - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
        }
    }
    // orthonormality on a fine trapezoid grid
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; m <= 8; ++m) {
            CNum s = oracle::trapezoid([&](double x) {
                auto h = hermite_functions(8, x);
                return CNum(h[n] * h[m]);
            }, 15.0, 3000);
            CHECK(std::abs(s - (n == m ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("Gauss-Hermite rules") {
    auto r1 = gauss_hermite_rule(1);
    REQUIRE(r1.nodes.size() == 1);
    CHECK(std::abs(r1.nodes[0]) < 1e-15);
    CHECK(std::abs(r1.weights[0] - kSqrtPi) < 1e-14);
    for (int n : {2, 5, 10, 31, 64, 128, 256}) {
        auto r = gauss_hermite_rule(n);
        double s = 0;
        for (size_t i = 0; i < r.nodes.size(); ++i) {
            CHECK(r.weights[i] > 0);
            if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
            s += r.weights[i];
        }
        CHECK(std::abs(s - kSqrtPi) < 1e-13);
    }
    auto r10 = gauss_hermite_rule(10);
    double x2 = 0;
    for (int i = 0; i < 10; ++i) x2 += r10.weights[i] * r10.nodes[i] * r10.nodes[i];
    CHECK(std::abs(x2 - kSqrtPi / 2) < 1e-13);
    CHECK_THROWS_AS(gauss_hermite_rule(0), DomainError);
    CHECK_THROWS_AS(gauss_hermite_rule(limits().quad_max_nodes + 1), DomainError);
}

TEST_CASE("Gauss-Laguerre rule integrates polynomials against e^{-u}") {
    auto r = gauss_laguerre_rule(24);
    for (int k = 0; k <= 10; ++k) {
        double s = 0;
        for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
        CHECK(std::abs(s - oracle::factorial(k)) < 1e-11 * oracle::factorial(k));
    }
}

TEST_CASE("quad_integrate") {
    const auto& r = cached_hermite_rule(32);
    CHECK(std::abs(quad_integrate(r, [](CNum) { return CNum(1.0); }, 0.0, 1.0) - kSqrtPi) < 1e-13);
    CHECK(std::abs(quad_integrate(r, [](CNum x) { return x * x; }, 0.0, 1.0) - kSqrtPi / 2) < 1e-13);
    // shifted and scaled window: int cos(x) exp(-((x-1)/2)^2) dx = 2 sqrt(pi) e^{-1} cos(1)
    CNum v = quad_integrate(cached_hermite_rule(64), [](CNum x) { return std::cos(x); }, 1.0, 2.0);
    CHECK(std::abs(v - 2 * kSqrtPi * std::exp(-1.0) * std::cos(1.0)) < 1e-12);
    auto est = quad_integrate_checked([](CNum x) { return x * x; }, 0.0, 1.0, 16);
    CHECK(est.diff < 1e-13);
    CHECK_THROWS_AS(quad_integrate(r, [](CNum) { return CNum(1.0); }, 0.0, 0.0), DomainError);
}

TEST_CASE("GaussPoly calculus") {
    GaussPoly f{poly_x({1.0, CNum(0.0, 2.0), 0.5}), CNum(0.7, 0.2), CNum(0.1, -0.3), 0.05};
    GaussPoly d = f.derivative();
    for (double x : {-1.0, 0.2, 1.5}) {
        double h = 1e-5;
        CNum fd = (f(x + h) - f(x - h)) / (2 * h);
        CHECK(std::abs(d(x) - fd) < 1e-8);
        CHECK(std::abs(f.times_x()(x) - x * f(x)) < 1e-14);
    }
    CHECK(coeff_distance(f + f, f.scaled(2.0)) == 0);
    GaussPoly other = f;
    other.a += 0.1;
    CHECK_THROWS_AS(f + other, DomainError);

    GaussPoly2D g;
    g.coeffs = {{1.0, 0.5}, {CNum(0, 1), 0.0}};
    g.ax = 0.6;
    g.by = 0.2;
    double h = 1e-5;
    CHECK(std::abs(g.d_dx()(0.3, -0.2) - (g(0.3 + h, -0.2) - g(0.3 - h, -0.2)) / (2 * h)) < 1e-8);
    CHECK(std::abs(g.d_dy()(0.3, -0.2) - (g(0.3, -0.2 + h) - g(0.3, -0.2 - h)) / (2 * h)) < 1e-8);
}

TEST_CASE("Poly arithmetic") {
    Poly p = poly_x({1.0, 1.0}), q = poly_x({-1.0, 1.0});
    CHECK(max_abs_coeff(p * q - poly_x({-1.0, 0.0, 1.0})) == 0);
    Poly r = poly_x({1.0, 2.0, 3.0}).compose_affine(2.0, 1.0);  // 1 + 2(2x+1) + 3(2x+1)^2
    CHECK(max_abs_coeff(r - poly_x({6.0, 16.0, 12.0})) < 1e-14);
    CHECK(max_abs_coeff(poly_x({1.0, 2.0, 3.0}).derivative() - poly_x({2.0, 6.0})) == 0);
    Poly z = p - p;
    z.trim();
    CHECK(z.degree() == 0);
    CHECK(z.coeffs[0] == CNum(0.0));
}

TEST_CASE("PhiSpec bounds hold on a grid") {
    for (auto kind : {PhiSpec::Kind::Sin, PhiSpec::Kind::Arctan}) {
        PhiSpec s{kind, 0.4, 1.3};
        for (double x = -30; x <= 30; x += 0.01) {
            CHECK(s.value(x) >= s.lower_bound() - 1e-15);
            CHECK(s.value(x) <= s.upper_bound() + 1e-15);
        }
        double h = 1e-5, x = 0.37;
        CHECK(std::abs(s.derivative(x) - (s.value(x + h) - s.value(x - h)) / (2 * h)) < 1e-8);
        CHECK(std::abs(s.second_derivative(x) - (s.derivative(x + h) - s.derivative(x - h)) / (2 * h)) < 1e-8);
    }
}
