#include "pblab/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pblab {

const char* nogo_verdict_name(NogoVerdict v) {
    switch (v) {
        case NogoVerdict::Diverges: return "DIVERGES";
        case NogoVerdict::Converges: return "CONVERGES";
        case NogoVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log sqrt(j! / (j - q)!) + log sqrt((j - q + p)! / (j - q)!)
double log_ladder_factor(int j, int p, int q) {
    double r = 0.5 * (std::lgamma(j + 1.0) - std::lgamma(j - q + 1.0));
    r += 0.5 * (std::lgamma(j - q + p + 1.0) - std::lgamma(j - q + 1.0));
    return r;
}

double log_add(double x, double y) {
    if (x == kNegInf) return y;
    if (y == kNegInf) return x;
    double m = std::max(x, y);
    return m + std::log(std::exp(x - m) + std::exp(y - m));
}

}  // namespace

NogoSequence vacuum_recursion(const std::vector<LadderTerm>& op, int kmax) {
    if (kmax < 0 || kmax > limits().moment_kmax) throw DomainError("vacuum_recursion: kmax outside [0, 200]");
    int lead = -1;
    int g = 0;
    for (size_t t = 0; t < op.size(); ++t) {
        if (op[t].p == 0 && op[t].q == 1) {
            if (lead >= 0) throw DomainError("vacuum_recursion: the lowering term must appear once");
            lead = static_cast<int>(t);
            continue;
        }
        int d = op[t].p - op[t].q;
        if (d < 0) throw DomainError("vacuum_recursion: only raising-type perturbations are supported");
        g = std::gcd(g, d + 1);
    }
    if (lead < 0) throw DomainError("vacuum_recursion: operator has no plain lowering term");
    if (std::abs(op[lead].coef) == 0) throw DomainError("vacuum_recursion: lowering coefficient is zero");

    NogoSequence s;
    s.step = g > 0 ? g : 1;
    const int jmax = s.step * kmax;
    s.log_abs.assign(jmax + 1, kNegInf);
    s.phase.assign(jmax + 1, 0.0);
    s.coeffs.assign(jmax + 1, CNum(0.0));
    s.log_abs[0] = 0.0;
    const double lead_log = std::log(std::abs(op[lead].coef));
    const double lead_arg = std::arg(op[lead].coef);

    // Component m of O phi = 0 fixes c_{m+1}; every other term reaches back to index m - (p - q).
    for (int m = 0; m < jmax; ++m) {
        std::vector<double> ls;
        std::vector<double> ph;
        for (size_t t = 0; t < op.size(); ++t) {
            if (static_cast<int>(t) == lead || std::abs(op[t].coef) == 0) continue;
            int j = m + op[t].q - op[t].p;
            if (j < op[t].q || j < 0) continue;
            if (s.log_abs[j] == kNegInf) continue;
            ls.push_back(std::log(std::abs(op[t].coef)) + s.log_abs[j] + log_ladder_factor(j, op[t].p, op[t].q));
            ph.push_back(std::arg(op[t].coef) + s.phase[j]);
        }
        if (ls.empty()) continue;
        double top = *std::max_element(ls.begin(), ls.end());
        CNum sum = 0;
        for (size_t i = 0; i < ls.size(); ++i) sum += std::polar(std::exp(ls[i] - top), ph[i]);
        if (std::abs(sum) == 0) continue;
        // lead * sqrt(m+1) c_{m+1} = -sum
        s.log_abs[m + 1] = top + std::log(std::abs(sum)) - lead_log - 0.5 * std::log(m + 1.0);
        s.phase[m + 1] = std::arg(-sum) - lead_arg;
    }

    const double cap = std::log(limits().coeff_cap);
    for (int j = 0; j <= jmax; ++j) {
        if (s.log_abs[j] == kNegInf) continue;
        if (s.log_abs[j] > cap) {
            if (s.overflow_index < 0) s.overflow_index = j;
            continue;
        }
        s.coeffs[j] = std::polar(std::exp(s.log_abs[j]), s.phase[j]);
    }
    double acc = kNegInf;
    for (int k = 0; k <= kmax; ++k) {
        acc = log_add(acc, 2 * s.log_abs[s.step * k]);
        s.log_partial_norms.push_back(acc);
        s.partial_norms.push_back(std::exp(acc));
    }
    return s;
}

NogoSequence nogo_sequence(CNum alpha, int kmax, int n_deform, bool strict) {
    if (n_deform < 2) throw DomainError("nogo_sequence: n_deform must be at least 2");
    auto s = vacuum_recursion({{1.0, 0, 1}, {-alpha, n_deform, 0}}, kmax);
    s.alpha = alpha;
    s.n_deform = n_deform;
    s.step = n_deform + 1;
    if (strict && s.overflow_index >= 0)
        throw OverflowError("nogo_sequence: coefficient magnitude cap exceeded", s.overflow_index);
    return s;
}

CNum nogo_closed_coeff(CNum alpha, int k) {
    double l = 0.5 * std::lgamma(3.0 * k + 1) - k * std::log(3.0) - std::lgamma(k + 1.0);
    return std::pow(alpha, k) * std::exp(l);
}

Certificate divergence_certificate(const NogoSequence& seq) {
    Certificate c;
    std::vector<double> lt;
    for (size_t k = 0; k * seq.step < seq.log_abs.size(); ++k) lt.push_back(2 * seq.log_abs[k * seq.step]);
    bool all_zero = std::all_of(lt.begin() + 1, lt.end(), [](double x) { return x == kNegInf; });
    if (all_zero) {
        c.verdict = NogoVerdict::Converges;
        return c;
    }
    int nonzero = 0;
    for (double x : lt)
        if (x != kNegInf) ++nonzero;
    if (nonzero < 10 && seq.overflow_index < 0) return c;
    for (size_t k = 0; k + 1 < lt.size(); ++k) {
        if (lt[k] == kNegInf || lt[k + 1] == kNegInf) return c;
        c.ratios.push_back(std::exp(lt[k + 1] - lt[k]));
    }
    const auto& r = c.ratios;
    size_t K = r.size();
    size_t w0 = K - std::max<size_t>(5, K / 2);
    bool increasing = true;
    for (size_t k = w0 + 1; k < K; ++k)
        if (!(r[k] > r[k - 1])) increasing = false;
    if (increasing && r[K - 1] > 1) {
        size_t k0 = K - 1;
        while (k0 > 0 && r[k0 - 1] > 1) --k0;
        c.crossing_k = static_cast<double>(k0);
        c.verdict = NogoVerdict::Diverges;
        return c;
    }
    if (increasing) {
        // Increments that do not shrink mean at least linear growth; extrapolate the crossing of 1.
        double d_first = r[w0 + 1] - r[w0];
        double d_last = r[K - 1] - r[K - 2];
        if (d_last > 0 && d_last >= 0.5 * d_first) {
            c.crossing_k = static_cast<double>(K - 1) + (1.0 - r[K - 1]) / d_last;
            c.extrapolated = true;
            c.verdict = NogoVerdict::Diverges;
        } else if (r[K - 1] + d_last * static_cast<double>(K) < 1) {
            // Increments decaying at least like 1/k^2 leave a tail below d_last * K: the ratio limit stays under 1.
            c.verdict = NogoVerdict::Converges;
        }
        return c;
    }
    bool nonincreasing = true;
    for (size_t k = w0 + 1; k < K; ++k)
        if (r[k] > r[k - 1] * (1 + 1e-12)) nonincreasing = false;
    if (nonincreasing && r[K - 1] < 1) c.verdict = NogoVerdict::Converges;
    return c;
}

VariantResult variant_check(VariantKind kind, const VariantParams& p, int kmax) {
    if (p.n < 2) throw DomainError("variant_check: exponent must be at least 2");
    VariantResult v;
    if (kind == VariantKind::AMinusAlphaAdagN) {
        // The vacuum of A alone decides Assumption 1; the shift in B plays no role in it.
        v.seq = vacuum_recursion({{1.0, 0, 1}, {-p.alpha, p.n, 0}}, kmax);
        v.seq.alpha = p.alpha;
    } else {
        // B = a^dag - beta a^m, so B^dag = a - conj(beta) (a^dag)^m must annihilate Psi_0.
        v.seq = vacuum_recursion({{1.0, 0, 1}, {-std::conj(p.beta), p.n, 0}}, kmax);
        v.seq.alpha = std::conj(p.beta);
    }
    v.seq.n_deform = p.n;
    v.cert = divergence_certificate(v.seq);
    return v;
}

}  // namespace pblab
