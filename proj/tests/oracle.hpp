#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

using C = std::complex<double>;

// Trapezoid rule on [-L, L]; exponentially accurate for smooth integrands that decay like a Gaussian.
inline C trapezoid(const std::function<C(double)>& f, double L = 30.0, int n = 12000) {
    double h = 2 * L / n;
    C s = 0.5 * (f(-L) + f(L));
    for (int i = 1; i < n; ++i) s += f(-L + i * h);
    return s * h;
}

inline C trapezoid2d(const std::function<C(double, double)>& f, double L = 12.0, int n = 600) {
    double h = 2 * L / n;
    C s = 0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            double w = (i == 0 || i == n ? 0.5 : 1.0) * (j == 0 || j == n ? 0.5 : 1.0);
            s += w * f(-L + i * h, -L + j * h);
        }
    return s * h * h;
}

// Physicists' Hermite polynomial by its three-term recurrence.
inline C hermite_h(int n, C x) {
    C h0 = 1.0, h1 = 2.0 * x;
    if (n == 0) return h0;
    for (int k = 1; k < n; ++k) {
        C h2 = 2.0 * x * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace oracle
