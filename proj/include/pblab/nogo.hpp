#pragma once

#include <vector>

#include "pblab/types.hpp"

namespace pblab {

// Coefficients of the would-be vacuum, kept as log-magnitude and phase so that they never overflow.
struct NogoSequence {
    CNum alpha;
    int n_deform = 2;
    int step = 3;                    // nonzero entries sit at multiples of step
    std::vector<CNum> coeffs;        // plain values, zero once the magnitude cap is passed
    std::vector<double> log_abs;     // log|c_j|, -inf for zero entries
    std::vector<double> phase;
    std::vector<double> log_partial_norms;  // log sum_{i<=k} |c_{step i}|^2
    std::vector<double> partial_norms;      // same, inf after overflow
    long overflow_index = -1;
};

// Vacuum of A = a - alpha (a^dag)^n; kmax counts nonzero terms after c_0.
NogoSequence nogo_sequence(CNum alpha, int kmax, int n_deform = 2, bool strict = false);

// Closed pattern c_{3k} = alpha^k sqrt((3k)!) / (3^k k!).
CNum nogo_closed_coeff(CNum alpha, int k);

enum class NogoVerdict { Diverges, Converges, Inconclusive };
const char* nogo_verdict_name(NogoVerdict v);

struct Certificate {
    NogoVerdict verdict = NogoVerdict::Inconclusive;
    std::vector<double> ratios;  // t_{k+1}/t_k
    double crossing_k = -1;      // first k with ratio > 1, possibly extrapolated
    bool extrapolated = false;
};
Certificate divergence_certificate(const NogoSequence& seq);

// sum of coef * (a^dag)^p a^q
struct LadderTerm {
    CNum coef;
    int p = 0, q = 0;
};
// Solves O phi = 0 for phi = sum c_j e_j, c_0 = 1, where O contains the single lowering term a.
NogoSequence vacuum_recursion(const std::vector<LadderTerm>& op, int kmax);

enum class VariantKind { AMinusAlphaAdagN, BMinusBetaAM };
struct VariantParams {
    CNum alpha{1.0}, beta{0.0};
    int n = 2;
};
struct VariantResult {
    NogoSequence seq;
    Certificate cert;
};
VariantResult variant_check(VariantKind kind, const VariantParams& p, int kmax);

}  // namespace pblab
