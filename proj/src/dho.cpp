#include <cmath>
#include <random>

#include "pblab/kernels.hpp"
#include "pblab/models.hpp"

namespace pblab {

namespace {

const CNum I(0.0, 1.0);

double Omega_of(const DHOParams& p) {
    if (!(p.m > 0)) throw DomainError("dho: mass m must be positive");
    if (p.gamma < 0) throw DomainError("dho: gamma must be nonnegative");
    double disc = p.k - p.gamma * p.gamma / (4 * p.m);
    if (disc < 0) throw DomainError("dho: k must be at least gamma^2/(4m) so that Omega is real");
    return std::sqrt(disc / p.m);
}

}  // namespace

CNum dho_admissible_delta(const DHOParams& p, double t) {
    double Om = Omega_of(p);
    CNum wm = Om - I * p.gamma / (2 * p.m);
    return -I * t / (wm * p.Gamma);
}

DHOParams dho_random_admissible(unsigned long long seed, int index) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<unsigned long long>(index + 1));
    std::uniform_real_distribution<double> u(0.1, 3.0), ang(-kPi, kPi), sgn(0.0, 1.0);
    for (;;) {
        DHOParams p;
        p.m = u(rng);
        p.gamma = u(rng);
        p.k = p.gamma * p.gamma / (4 * p.m) + u(rng);
        p.Gamma = std::polar(u(rng), ang(rng));
        double t = u(rng) * (sgn(rng) < 0.5 ? -1.0 : 1.0);
        p.delta = dho_admissible_delta(p, t);
        CNum D = p.Gamma * std::conj(p.delta) - p.delta * std::conj(p.Gamma);
        if (std::abs(D) > 1e-6 * std::abs(p.Gamma) * std::abs(p.delta)) return p;
    }
}

FeasibilityReport dho_feasibility(const DHOParams& p, int grid) {
    FeasibilityReport r;
    r.Omega = Omega_of(p);
    CNum D = p.Gamma * std::conj(p.delta) - p.delta * std::conj(p.Gamma);
    if (std::abs(D) <= 1e-14 * std::max(1.0, std::abs(p.Gamma) * std::abs(p.delta)))
        throw DomainError("dho: Gamma conj(delta) must differ from delta conj(Gamma)");
    r.omega_plus = r.Omega + I * p.gamma / (2 * p.m);
    r.omega_minus = r.Omega - I * p.gamma / (2 * p.m);
    r.alpha = std::conj(p.Gamma) / D;
    r.beta = std::conj(p.delta) / D;
    CNum X = r.omega_plus * std::conj(p.delta) * std::conj(p.Gamma);
    r.constraint_defect = std::abs(X.real()) / std::abs(X);
    if (p.gamma == 0) {
        r.undamped = true;
        r.notes.push_back("undamped branch: omega_+ = omega_- = Omega is real, the pair reduces to ordinary bosons");
    }
    CNum u = r.beta * r.omega_plus / p.Gamma;      // twice the C1 quantity
    CNum v = p.delta / (r.alpha * r.omega_plus);  // the C2 quantity
    r.u1 = (u / 2.0).real();
    r.u2 = v.real();
    r.c1 = r.u1 > 0;
    r.c2 = r.u2 < 0;
    r.conjunction = r.c1 && r.c2;
    if (r.constraint_defect > 1e-9)
        r.notes.push_back("parameters violate the admissibility constraint w+/w- = -(delta/conj(delta))(Gamma/conj(Gamma))");
    else
        r.notes.push_back("admissible: C1 and C2 quantities are real with u1*u2 >= 0, so at most one sign condition holds");

    // Weighted-space conditions on a logarithmic (c1, c2) grid in (0, 10]^2.
    const double ur = u.real(), vr = v.real();
    const long n = grid;
    auto cval = [n](long i) { return 10.0 * std::pow(10.0, -4.0 * double(n - 1 - i) / double(n - 1)); };
    auto hit = count_if_index(n * n, [&](long idx) {
        double c1 = cval(idx / n), c2 = cval(idx % n);
        bool first = (c1 + ur > 0) && (c2 - vr > 0);
        bool second = (ur - c1 > 0) && (c2 + vr < 0);
        return first && second;
    });
    r.weighted_hits = hit.count;
    r.weighted_feasible = hit.count > 0;
    return r;
}

}  // namespace pblab
