#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ffdist/exact_dist.hpp"

namespace ffdist {

// One k of the pointwise comparison between P(Omega(f_n)=k) and
// P(K(pi_n)=k) h_q(r), r = (k-1)/log n.
struct ComparisonRow {
    int n = 0;
    long q = 0;
    long k = 0;
    double r = 0;
    double p_omega = 0;
    double p_cycles = 0;
    double ratio = 0;       // p_omega / p_cycles
    double hq_r = 0;        // h_q(r)
    double residual = 0;    // |ratio - hq_r|
    double normalized = 0;  // residual * q (log n)^2 / k
    double envelope = 0;    // |p_omega - p_cycles hq_r| / (pmf(log n,k-1) k / (q (log n)^2))
};

// Total variation of the two distributions at (q, n), with the proof's
// interval split S_i = sum_{k in I_i} |P_Omega(k) - P_K(k)| (unhalved, so
// s1+s2+s3 = 2 d_tv).
struct TVReport {
    int n = 0;
    long q = 0;
    double d_tv = 0;
    double scaled = 0;  // d_tv * q * sqrt(log n)
    double s1 = 0, s2 = 0, s3 = 0;
    DistMode mode = DistMode::Float;
    std::optional<mpq_class> d_tv_exact;
};

struct Moments {
    double mean = 0;
    double variance = 0;
    double e_two_to_k = 0;  // log-space accumulation in float mode
};

struct ExactMoments {
    mpq_class mean, variance, e_two_to_k;
};

struct AbtRow {
    long k = 0;
    double value = 0;  // |ratio - 1| * q (log n - k) / k
};

struct AbtReport {
    long q = 0;
    int n = 0;
    std::vector<AbtRow> rows;  // k < log n
    double supremum = 0;
};

// (1/2) sum_k |a_k - b_k|. Requires a.n == b.n.
double total_variation(const DistributionRow& a, const DistributionRow& b);
mpq_class total_variation_exact(const DistributionRow& a, const DistributionRow& b);

// Default report depth min(n, ceil(3 log n)); past it both masses are below
// 1e-15 at the grid sizes used.
int default_k_max(int n);

std::vector<ComparisonRow> ratio_report(long q, int n, int k_max = 0);
std::vector<ComparisonRow> ratio_report_from(const DistributionRow& cycles,
                                             const DistributionRow& omega, long q,
                                             int k_max = 0);

// The envelope statistic of the pointwise theorem under its hypotheses
// n >= 4(1-delta)/delta^2, q >= 1/(1-delta)^2, r <= q(1-delta); a domain
// error names the failed inequality.
double theorem_residual(long q, int n, long k, double delta);

TVReport tv_report(long q, int n, DistMode mode);
TVReport tv_report_from(const DistributionRow& cycles, const DistributionRow& omega, long q);

// One TVReport per (q, n) cell, ordered by q then n. Cells run in parallel;
// the output order is deterministic regardless.
std::vector<TVReport> tv_scaling_study(const std::vector<long>& qs, const std::vector<int>& ns,
                                       DistMode mode);

// (S1, S2, S3) with I1 = [1, 3 log n/2], I2 = (3 log n/2, sqrt(q) log n],
// I3 = (sqrt(q) log n, n], clipped so the three cover [1, n]; for q = 2
// (sqrt q < 3/2) I2 is empty and I3 starts at 3 log n/2.
std::array<double, 3> tv_decomposition(long q, int n, DistMode mode);

Moments moments(const DistributionRow& d);
ExactMoments moments_exact(const DistributionRow& d);

AbtReport abt_bound_check(long q, int n);

}  // namespace ffdist
