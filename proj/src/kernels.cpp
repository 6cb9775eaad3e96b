#include "ffdist/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace ffdist::kernels {
namespace {

double mpz_log(const mpz_class& v) {
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + double(exp2) * M_LN2;
}

// One multiplication pass: row[m] += sum_j w[j] * old_row[m - d*j] shifted by
// j in the z-direction. Rows below m still hold pre-pass values, so updating
// m in descending order is an in-place multiply.
inline void apply_factor_to_row(std::vector<double>& tab, int m, int d,
                                const std::vector<double>& w, int k_cap) {
    const int stride = k_cap + 1;
    double* row = tab.data() + size_t(m) * stride;
    const int j_max = std::min<int>(int(w.size()) - 1, m / d);
    for (int j = 1; j <= j_max; ++j) {
        const double wj = w[j];
        const double* src = tab.data() + size_t(m - d * j) * stride;
        const int k_hi = std::min(k_cap, m - d * j + j);
        for (int k = j; k <= k_hi; ++k) row[k] += wj * src[k - j];
    }
}

}  // namespace

std::vector<double> omega_factor_weights(const PrimeCountTable& pt, int d, int j_max) {
    // long double accumulators: log_rising and d*j*log q nearly cancel, and
    // the difference is what survives
    const long double log_q = std::log((long double)pt.q);
    std::vector<double> w;
    w.reserve(j_max + 1);
    w.push_back(1.0);
    long double log_rising = 0.0;  // sum_{i<j} log(pi_q(d) + i)
    mpz_class pi_plus = pt[d];
    for (int j = 1; j <= j_max; ++j) {
        log_rising += (long double)mpz_log(pi_plus);
        pi_plus += 1;
        const long double lw =
            log_rising - std::lgamma((long double)j + 1.0L) - (long double)d * j * log_q;
        const double wj = double(std::exp(lw));
        if (wj == 0.0) break;  // weights only decrease from here
        w.push_back(wj);
    }
    return w;
}

std::vector<double> omega_float_table_serial(const PrimeCountTable& pt, int n, int k_cap) {
    const int stride = k_cap + 1;
    std::vector<double> tab(size_t(n + 1) * stride, 0.0);
    tab[0] = 1.0;  // empty product at degree 0
    for (int d = 1; d <= n; ++d) {
        const auto w = omega_factor_weights(pt, d, std::min(n / d, k_cap));
        if (w.size() < 2) continue;
        for (int m = n; m >= d; --m) apply_factor_to_row(tab, m, d, w, k_cap);
    }
    return tab;
}

std::vector<double> omega_float_table_parallel(const PrimeCountTable& pt, int n, int k_cap) {
    const int stride = k_cap + 1;
    std::vector<double> tab(size_t(n + 1) * stride, 0.0);
    std::vector<double> scratch;
    tab[0] = 1.0;
    for (int d = 1; d <= n; ++d) {
        const auto w = omega_factor_weights(pt, d, std::min(n / d, k_cap));
        if (w.size() < 2) continue;
        if (d == 1) {
            // Single dependency chain; go two-buffer so rows parallelize.
            scratch = tab;
#pragma omp parallel for schedule(static)
            for (int m = 1; m <= n; ++m) {
                double* row = tab.data() + size_t(m) * stride;
                const int j_max = std::min<int>(int(w.size()) - 1, m);
                for (int j = 1; j <= j_max; ++j) {
                    const double wj = w[j];
                    const double* src = scratch.data() + size_t(m - j) * stride;
                    const int k_hi = std::min(k_cap, m);
                    for (int k = j; k <= k_hi; ++k) row[k] += wj * src[k - j];
                }
            }
        } else {
            // Rows m and m - d*j share m mod d: the residue classes are
            // independent chains and each class keeps the serial in-place
            // descending order.
#pragma omp parallel for schedule(dynamic)
            for (int r = 0; r < d; ++r) {
                for (int m = n - (n - r) % d; m >= d; m -= d)
                    apply_factor_to_row(tab, m, d, w, k_cap);
            }
        }
    }
    return tab;
}

std::vector<double> stirling_float_row_serial(int n) {
    std::vector<double> p(size_t(n) + 1, 0.0);
    p[1] = 1.0;  // the single permutation of S_1
    for (int i = 2; i <= n; ++i) {
        const double inv = 1.0 / double(i);
        const double a = double(i - 1);
        for (int k = i; k >= 1; --k) p[k] = (a * p[k] + p[k - 1]) * inv;
    }
    return p;
}

std::vector<double> stirling_float_row_parallel(int n) {
    std::vector<double> p(size_t(n) + 1, 0.0), next(size_t(n) + 1, 0.0);
    p[1] = 1.0;
    for (int i = 2; i <= n; ++i) {
        const double inv = 1.0 / double(i);
        const double a = double(i - 1);
#pragma omp parallel for schedule(static)
        for (int k = 1; k <= i; ++k) next[k] = (a * p[k] + p[k - 1]) * inv;
        std::swap(p, next);
    }
    return p;
}

}  // namespace ffdist::kernels
