#pragma once

#include <functional>
#include <vector>

#include "pblab/types.hpp"

namespace pblab {

// Coefficients in ascending degree. The zero polynomial is {0}.
struct Poly {
    std::vector<CNum> coeffs{CNum(0)};

    Poly() = default;
    explicit Poly(std::vector<CNum> c);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    CNum operator()(CNum x) const;
    Poly derivative() const;
    Poly conj() const;
    // p(s*x + t)
    Poly compose_affine(CNum s, CNum t) const;
    void trim();
};

Poly operator+(const Poly& p, const Poly& q);
Poly operator-(const Poly& p, const Poly& q);
Poly operator*(const Poly& p, const Poly& q);
Poly operator*(CNum c, const Poly& p);
// x * p
Poly shift_up(const Poly& p);
double max_abs_coeff(const Poly& p);

// poly(x) * exp(-(a x^2 + b x + c))
struct GaussPoly {
    Poly poly;
    CNum a{1.0}, b{0.0}, c{0.0};

    CNum operator()(double x) const;
    GaussPoly derivative() const;
    GaussPoly times_x() const;
    GaussPoly scaled(CNum s) const;
};

GaussPoly operator+(const GaussPoly& f, const GaussPoly& g);
GaussPoly operator-(const GaussPoly& f, const GaussPoly& g);
// Distance between two GaussPolys that share an exponent, in coefficient max-norm.
double coeff_distance(const GaussPoly& f, const GaussPoly& g);

// sum coeffs[i][j] x^i y^j * exp(-(ax x^2 + bx x + ay y^2 + by y + c))
struct GaussPoly2D {
    std::vector<std::vector<CNum>> coeffs{{CNum(0)}};
    CNum ax{0.5}, bx{0.0}, ay{0.5}, by{0.0}, c{0.0};

    int deg_x() const { return static_cast<int>(coeffs.size()) - 1; }
    int deg_y() const { return static_cast<int>(coeffs.empty() ? 0 : coeffs[0].size()) - 1; }
    CNum coeff(int i, int j) const;
    CNum operator()(double x, double y) const;
    GaussPoly2D d_dx() const;
    GaussPoly2D d_dy() const;
    GaussPoly2D times_x() const;
    GaussPoly2D times_y() const;
    GaussPoly2D scaled(CNum s) const;
};

GaussPoly2D operator+(const GaussPoly2D& f, const GaussPoly2D& g);
GaussPoly2D operator-(const GaussPoly2D& f, const GaussPoly2D& g);
double coeff_distance(const GaussPoly2D& f, const GaussPoly2D& g);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
};

// Integral of x^k exp(-a x^2 + b x) over the real line.
CNum gauss_moment(int k, CNum a, CNum b);
// All moments 0..kmax in one pass.
std::vector<CNum> gauss_moments(int kmax, CNum a, CNum b);

CNum inner_product(const GaussPoly& f, const GaussPoly& g);
CNum inner_product_2d(const GaussPoly2D& f, const GaussPoly2D& g);

std::vector<Poly> pn_family(CNum alpha, int nmax);
Poly hermite(int n);
Poly legendre(int n);
double legendre_value(int n, double x);

// Values of H_k(y)/sqrt(2^k k!) for k = 0..n, by the stable recurrence.
std::vector<CNum> hermite_normalized_values(int n, CNum y);
// Orthonormal Hermite functions at real x, k = 0..n.
std::vector<double> hermite_functions(int n, double x);

QuadratureRule gauss_hermite_rule(int n);
// Gauss-Laguerre in u for weight e^{-u} on [0, inf).
QuadratureRule gauss_laguerre_rule(int n);

using CFn = std::function<CNum(CNum)>;

CNum quad_integrate(const QuadratureRule& rule, const CFn& f, CNum shift, double scale);

struct QuadEstimate {
    CNum value;
    double diff;  // |value(n) - value(n/2)|
};
// Integrates f(x) exp(-((x-shift)/scale)^2) with n nodes and with n/2 nodes.
QuadEstimate quad_integrate_checked(const CFn& f, CNum shift, double scale, int n);

// Cached rule, shared across threads once built.
const QuadratureRule& cached_hermite_rule(int n);

// Bounded perturbations for the second superpotential example.
struct PhiSpec {
    enum class Kind { Zero, Sin, Arctan } kind = Kind::Zero;
    double lambda = 0.0;
    double mu = 1.0;

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;
    double lower_bound() const;
    double upper_bound() const;
};

}  // namespace pblab
