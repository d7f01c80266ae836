#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pblab {

using CNum = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error {
    using Error::Error;
};
struct OverflowError : Error {
    OverflowError(const std::string& what, long index = -1) : Error(what), index(index) {}
    long index;
};
struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, long iterations) : Error(what), iterations(iterations) {}
    long iterations;
};
struct DimensionError : Error {
    using Error::Error;
};

// Size and magnitude caps shared by the numeric modules.
struct Limits {
    int moment_kmax = 200;
    int poly_nmax = 60;
    double coeff_cap = 1e150;
    int quad_max_nodes = 256;
    int fock_max_dim = 512;
};

Limits& limits();

inline bool finite(CNum z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace pblab
