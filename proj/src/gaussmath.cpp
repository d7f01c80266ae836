#include "pblab/gaussmath.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace pblab {

Limits& limits() {
    static Limits l;
    return l;
}

namespace {

using LCNum = std::complex<long double>;

void check_cap(const Poly& p, const char* what) {
    for (const auto& c : p.coeffs) {
        if (!finite(c) || std::abs(c) > limits().coeff_cap)
            throw OverflowError(std::string(what) + ": coefficient magnitude exceeds cap", p.degree());
    }
}

}  // namespace

Poly::Poly(std::vector<CNum> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    trim();
}

void Poly::trim() {
    while (coeffs.size() > 1 && coeffs.back() == CNum(0)) coeffs.pop_back();
}

CNum Poly::operator()(CNum x) const {
    CNum acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs.size() <= 1) return Poly();
    std::vector<CNum> d(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * double(i);
    return Poly(std::move(d));
}

Poly Poly::conj() const {
    std::vector<CNum> d(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) d[i] = std::conj(coeffs[i]);
    return Poly(std::move(d));
}

Poly Poly::compose_affine(CNum s, CNum t) const {
    // Horner in the polynomial ring: acc = acc*(s x + t) + c_k
    Poly lin({t, s});
    Poly acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * lin;
        acc.coeffs[0] += *it;
    }
    acc.trim();
    return acc;
}

Poly operator+(const Poly& p, const Poly& q) {
    std::vector<CNum> r(std::max(p.coeffs.size(), q.coeffs.size()), 0.0);
    for (size_t i = 0; i < p.coeffs.size(); ++i) r[i] += p.coeffs[i];
    for (size_t i = 0; i < q.coeffs.size(); ++i) r[i] += q.coeffs[i];
    return Poly(std::move(r));
}

Poly operator-(const Poly& p, const Poly& q) { return p + CNum(-1.0) * q; }

Poly operator*(const Poly& p, const Poly& q) {
    std::vector<CNum> r(p.coeffs.size() + q.coeffs.size() - 1, 0.0);
    for (size_t i = 0; i < p.coeffs.size(); ++i)
        for (size_t j = 0; j < q.coeffs.size(); ++j) r[i + j] += p.coeffs[i] * q.coeffs[j];
    return Poly(std::move(r));
}

Poly operator*(CNum c, const Poly& p) {
    std::vector<CNum> r(p.coeffs);
    for (auto& v : r) v *= c;
    return Poly(std::move(r));
}

Poly shift_up(const Poly& p) {
    std::vector<CNum> r(p.coeffs.size() + 1, 0.0);
    for (size_t i = 0; i < p.coeffs.size(); ++i) r[i + 1] = p.coeffs[i];
    return Poly(std::move(r));
}

double max_abs_coeff(const Poly& p) {
    double m = 0;
    for (const auto& c : p.coeffs) m = std::max(m, std::abs(c));
    return m;
}

// ---- GaussPoly ----

CNum GaussPoly::operator()(double x) const { return poly(x) * std::exp(-(a * x * x + b * x + c)); }

GaussPoly GaussPoly::derivative() const {
    // (P' - P Q') e^{-Q}, Q' = 2 a x + b
    Poly qprime({b, 2.0 * a});
    return GaussPoly{poly.derivative() - poly * qprime, a, b, c};
}

GaussPoly GaussPoly::times_x() const { return GaussPoly{shift_up(poly), a, b, c}; }

GaussPoly GaussPoly::scaled(CNum s) const { return GaussPoly{s * poly, a, b, c}; }

static void require_same_exponent(const GaussPoly& f, const GaussPoly& g) {
    if (std::abs(f.a - g.a) > 1e-14 * (1 + std::abs(f.a)) || std::abs(f.b - g.b) > 1e-14 * (1 + std::abs(f.b)) ||
        std::abs(f.c - g.c) > 1e-14 * (1 + std::abs(f.c)))
        throw DomainError("GaussPoly sum requires a common exponent");
}

GaussPoly operator+(const GaussPoly& f, const GaussPoly& g) {
    require_same_exponent(f, g);
    return GaussPoly{f.poly + g.poly, f.a, f.b, f.c};
}

GaussPoly operator-(const GaussPoly& f, const GaussPoly& g) {
    require_same_exponent(f, g);
    return GaussPoly{f.poly - g.poly, f.a, f.b, f.c};
}

double coeff_distance(const GaussPoly& f, const GaussPoly& g) { return max_abs_coeff((f - g).poly); }

// ---- GaussPoly2D ----

CNum GaussPoly2D::coeff(int i, int j) const {
    if (i < 0 || i >= static_cast<int>(coeffs.size())) return 0.0;
    if (j < 0 || j >= static_cast<int>(coeffs[i].size())) return 0.0;
    return coeffs[i][j];
}

CNum GaussPoly2D::operator()(double x, double y) const {
    CNum acc = 0;
    for (int i = deg_x(); i >= 0; --i) {
        CNum row = 0;
        for (int j = static_cast<int>(coeffs[i].size()) - 1; j >= 0; --j) row = row * y + coeffs[i][j];
        acc = acc * x + row;
    }
    return acc * std::exp(-(ax * x * x + bx * x + ay * y * y + by * y + c));
}

static GaussPoly2D with_shape(const GaussPoly2D& like, int nx, int ny) {
    GaussPoly2D r = like;
    r.coeffs.assign(nx, std::vector<CNum>(ny, 0.0));
    return r;
}

GaussPoly2D GaussPoly2D::d_dx() const {
    int nx = deg_x() + 2, ny = deg_y() + 1;
    GaussPoly2D r = with_shape(*this, nx, ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            r.coeffs[i][j] = double(i + 1) * coeff(i + 1, j) - 2.0 * ax * coeff(i - 1, j) - bx * coeff(i, j);
    return r;
}

GaussPoly2D GaussPoly2D::d_dy() const {
    int nx = deg_x() + 1, ny = deg_y() + 2;
    GaussPoly2D r = with_shape(*this, nx, ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            r.coeffs[i][j] = double(j + 1) * coeff(i, j + 1) - 2.0 * ay * coeff(i, j - 1) - by * coeff(i, j);
    return r;
}

GaussPoly2D GaussPoly2D::times_x() const {
    GaussPoly2D r = with_shape(*this, deg_x() + 2, deg_y() + 1);
    for (int i = 0; i <= deg_x(); ++i)
        for (int j = 0; j <= deg_y(); ++j) r.coeffs[i + 1][j] = coeff(i, j);
    return r;
}

GaussPoly2D GaussPoly2D::times_y() const {
    GaussPoly2D r = with_shape(*this, deg_x() + 1, deg_y() + 2);
    for (int i = 0; i <= deg_x(); ++i)
        for (int j = 0; j <= deg_y(); ++j) r.coeffs[i][j + 1] = coeff(i, j);
    return r;
}

GaussPoly2D GaussPoly2D::scaled(CNum s) const {
    GaussPoly2D r = *this;
    for (auto& row : r.coeffs)
        for (auto& v : row) v *= s;
    return r;
}

static GaussPoly2D combine(const GaussPoly2D& f, const GaussPoly2D& g, double sign) {
    if (std::abs(f.ax - g.ax) > 1e-14 || std::abs(f.bx - g.bx) > 1e-14 || std::abs(f.ay - g.ay) > 1e-14 ||
        std::abs(f.by - g.by) > 1e-14 || std::abs(f.c - g.c) > 1e-14)
        throw DomainError("GaussPoly2D sum requires a common exponent");
    int nx = std::max(f.deg_x(), g.deg_x()) + 1, ny = std::max(f.deg_y(), g.deg_y()) + 1;
    GaussPoly2D r = with_shape(f, nx, ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) r.coeffs[i][j] = f.coeff(i, j) + sign * g.coeff(i, j);
    return r;
}

GaussPoly2D operator+(const GaussPoly2D& f, const GaussPoly2D& g) { return combine(f, g, 1.0); }
GaussPoly2D operator-(const GaussPoly2D& f, const GaussPoly2D& g) { return combine(f, g, -1.0); }

double coeff_distance(const GaussPoly2D& f, const GaussPoly2D& g) {
    double m = 0;
    for (const auto& row : (f - g).coeffs)
        for (const auto& v : row) m = std::max(m, std::abs(v));
    return m;
}

// ---- moments and inner products ----

std::vector<CNum> gauss_moments(int kmax, CNum a, CNum b) {
    if (!(a.real() > 0)) throw DomainError("gauss_moment: Re(a) must be positive");
    if (kmax > limits().moment_kmax) throw DomainError("gauss_moment: k exceeds configured maximum");
    std::vector<CNum> m(kmax + 1);
    m[0] = std::sqrt(kPi / a) * std::exp(b * b / (4.0 * a));
    if (kmax >= 1) m[1] = b / (2.0 * a) * m[0];
    for (int k = 1; k < kmax; ++k) m[k + 1] = (b * m[k] + double(k) * m[k - 1]) / (2.0 * a);
    for (int k = 0; k <= kmax; ++k)
        if (!finite(m[k])) throw OverflowError("gauss_moment: magnitude exceeds representable range", k);
    return m;
}

CNum gauss_moment(int k, CNum a, CNum b) {
    if (k < 0) throw DomainError("gauss_moment: k must be nonnegative");
    return gauss_moments(k, a, b)[k];
}

namespace {

// Moments in extended precision; the polynomial sums below cancel heavily for large degrees.
std::vector<LCNum> moments_ld(int kmax, CNum a_, CNum b_) {
    if (!(a_.real() > 0)) throw DomainError("inner_product: combined exponent is not integrable");
    if (kmax > limits().moment_kmax) throw DomainError("inner_product: degree exceeds moment cap");
    LCNum a(a_.real(), a_.imag()), b(b_.real(), b_.imag());
    const long double pi = 3.141592653589793238462643383279502884L;
    std::vector<LCNum> m(kmax + 1);
    m[0] = std::sqrt(pi / a) * std::exp(b * b / (4.0L * a));
    if (kmax >= 1) m[1] = b / (2.0L * a) * m[0];
    for (int k = 1; k < kmax; ++k) m[k + 1] = (b * m[k] + (long double)k * m[k - 1]) / (2.0L * a);
    return m;
}

LCNum to_ld(CNum z) { return LCNum(z.real(), z.imag()); }

}  // namespace

CNum inner_product(const GaussPoly& f, const GaussPoly& g) {
    CNum A = std::conj(f.a) + g.a;
    CNum B = -(std::conj(f.b) + g.b);
    CNum C = std::conj(f.c) + g.c;
    int df = f.poly.degree(), dg = g.poly.degree();
    auto m = moments_ld(df + dg, A, B);
    LCNum acc = 0;
    for (int i = 0; i <= df; ++i) {
        LCNum ci = std::conj(to_ld(f.poly.coeffs[i]));
        if (ci == LCNum(0)) continue;
        for (int j = 0; j <= dg; ++j) acc += ci * to_ld(g.poly.coeffs[j]) * m[i + j];
    }
    CNum r = CNum(double(acc.real()), double(acc.imag())) * std::exp(-C);
    if (!finite(r)) throw OverflowError("inner_product: result not representable");
    return r;
}

CNum inner_product_2d(const GaussPoly2D& f, const GaussPoly2D& g) {
    CNum Ax = std::conj(f.ax) + g.ax, Bx = -(std::conj(f.bx) + g.bx);
    CNum Ay = std::conj(f.ay) + g.ay, By = -(std::conj(f.by) + g.by);
    CNum C = std::conj(f.c) + g.c;
    auto mx = moments_ld(f.deg_x() + g.deg_x(), Ax, Bx);
    auto my = moments_ld(f.deg_y() + g.deg_y(), Ay, By);
    LCNum acc = 0;
    for (int i = 0; i <= f.deg_x(); ++i)
        for (int j = 0; j <= f.deg_y(); ++j) {
            LCNum cf = std::conj(to_ld(f.coeff(i, j)));
            if (cf == LCNum(0)) continue;
            for (int k = 0; k <= g.deg_x(); ++k)
                for (int l = 0; l <= g.deg_y(); ++l) acc += cf * to_ld(g.coeff(k, l)) * mx[i + k] * my[j + l];
        }
    CNum r = CNum(double(acc.real()), double(acc.imag())) * std::exp(-C);
    if (!finite(r)) throw OverflowError("inner_product_2d: result not representable");
    return r;
}

// ---- polynomial families ----

std::vector<Poly> pn_family(CNum alpha, int nmax) {
    if (nmax < 0 || nmax > limits().poly_nmax) throw DomainError("pn_family: nmax outside supported range");
    std::vector<Poly> p;
    p.reserve(nmax + 1);
    p.emplace_back(std::vector<CNum>{1.0});
    Poly lin({alpha, 2.0});
    for (int n = 0; n < nmax; ++n) {
        p.push_back(p[n] * lin - p[n].derivative());
        check_cap(p.back(), "pn_family");
    }
    return p;
}

Poly hermite(int n) {
    if (n < 0 || n > limits().poly_nmax) throw DomainError("hermite: n outside supported range");
    Poly h0({1.0});
    if (n == 0) return h0;
    Poly h1({0.0, 2.0});
    for (int k = 1; k < n; ++k) {
        Poly h2 = CNum(2.0) * shift_up(h1) - CNum(2.0 * k) * h0;
        check_cap(h2, "hermite");
        h0 = std::move(h1);
        h1 = std::move(h2);
    }
    return h1;
}

Poly legendre(int n) {
    if (n < 0 || n > limits().poly_nmax) throw DomainError("legendre: n outside supported range");
    Poly p0({1.0});
    if (n == 0) return p0;
    Poly p1({0.0, 1.0});
    for (int k = 1; k < n; ++k) {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        Poly p2 = CNum(1.0 / (k + 1)) * (CNum(2 * k + 1) * shift_up(p1) - CNum(k) * p0);
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

double legendre_value(int n, double x) {
    double p0 = 1, p1 = x;
    if (n == 0) return p0;
    for (int k = 1; k < n; ++k) {
        double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

std::vector<CNum> hermite_normalized_values(int n, CNum y) {
    std::vector<CNum> h(n + 1);
    h[0] = 1.0;
    if (n >= 1) h[1] = std::sqrt(2.0) * y;
    for (int k = 1; k < n; ++k)
        h[k + 1] = std::sqrt(2.0 / (k + 1)) * y * h[k] - std::sqrt(double(k) / (k + 1)) * h[k - 1];
    return h;
}

std::vector<double> hermite_functions(int n, double x) {
    std::vector<double> h(n + 1);
    h[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (n >= 1) h[1] = std::sqrt(2.0) * x * h[0];
    for (int k = 1; k < n; ++k)
        h[k + 1] = std::sqrt(2.0 / (k + 1)) * x * h[k] - std::sqrt(double(k) / (k + 1)) * h[k - 1];
    return h;
}

// ---- quadrature ----

QuadratureRule gauss_hermite_rule(int n) {
    if (n < 1 || n > limits().quad_max_nodes) throw DomainError("gauss_hermite_rule: n outside [1,256]");
    QuadratureRule r;
    r.order = n;
    if (n == 1) {
        r.nodes = {0.0};
        r.weights = {std::sqrt(kPi)};
        return r;
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), sub(n - 1);
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(k / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("gauss_hermite_rule: tridiagonal eigensolve failed", n);
    std::vector<double> x(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(x.begin(), x.end());
    // Newton polish on the Hermite function h_n, whose zeros are the nodes.
    for (double& xi : x) {
        for (int it = 0; it < 8; ++it) {
            auto h = hermite_functions(n, xi);
            double dh = std::sqrt(2.0 * n) * h[n - 1] - xi * h[n];
            if (dh == 0) break;
            double step = h[n] / dh;
            xi -= step;
            if (std::abs(step) < 1e-16 * (1 + std::abs(xi))) break;
        }
    }
    for (int i = 0; i < n / 2; ++i) {
        double s = 0.5 * (x[n - 1 - i] - x[i]);
        x[i] = -s;
        x[n - 1 - i] = s;
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
    r.nodes = x;
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        auto h = hermite_functions(n - 1, x[i]);
        double s = 0;
        for (double v : h) s += v * v;
        r.weights[i] = std::exp(-x[i] * x[i]) / s;
    }
    return r;
}

QuadratureRule gauss_laguerre_rule(int n) {
    if (n < 1 || n > limits().quad_max_nodes) throw DomainError("gauss_laguerre_rule: n outside [1,256]");
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) diag[k] = 2 * k + 1;
    for (int k = 1; k < n; ++k) sub[k - 1] = k;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw ConvergenceError("gauss_laguerre_rule: tridiagonal eigensolve failed", n);
    QuadratureRule r;
    r.order = n;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = es.eigenvalues()[i];
        double v0 = es.eigenvectors()(0, i);
        r.weights[i] = v0 * v0;
    }
    return r;
}

const QuadratureRule& cached_hermite_rule(int n) {
    static std::mutex mu;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_hermite_rule(n)).first;
    return it->second;
}

CNum quad_integrate(const QuadratureRule& rule, const CFn& f, CNum shift, double scale) {
    if (!(scale > 0)) throw DomainError("quad_integrate: scale must be positive");
    CNum acc = 0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(shift + scale * rule.nodes[i]);
    return acc * scale;
}

QuadEstimate quad_integrate_checked(const CFn& f, CNum shift, double scale, int n) {
    CNum fine = quad_integrate(cached_hermite_rule(n), f, shift, scale);
    CNum coarse = quad_integrate(cached_hermite_rule(std::max(1, n / 2)), f, shift, scale);
    return {fine, std::abs(fine - coarse)};
}

// ---- bounded perturbation menu ----

double PhiSpec::value(double x) const {
    switch (kind) {
        case Kind::Sin: return lambda * std::sin(mu * x);
        case Kind::Arctan: return lambda * std::atan(x);
        default: return 0.0;
    }
}

double PhiSpec::derivative(double x) const {
    switch (kind) {
        case Kind::Sin: return lambda * mu * std::cos(mu * x);
        case Kind::Arctan: return lambda / (1 + x * x);
        default: return 0.0;
    }
}

double PhiSpec::second_derivative(double x) const {
    switch (kind) {
        case Kind::Sin: return -lambda * mu * mu * std::sin(mu * x);
        case Kind::Arctan: return -2 * lambda * x / ((1 + x * x) * (1 + x * x));
        default: return 0.0;
    }
}

double PhiSpec::lower_bound() const {
    switch (kind) {
        case Kind::Sin: return -std::abs(lambda);
        case Kind::Arctan: return -std::abs(lambda) * kPi / 2;
        default: return 0.0;
    }
}

double PhiSpec::upper_bound() const { return -lower_bound(); }

}  // namespace pblab
