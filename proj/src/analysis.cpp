#include "ffdist/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ffdist/asymptotics.hpp"
#include "ffdist/errors.hpp"

namespace ffdist {
namespace {

// Exact rows when the caps allow, float otherwise; the caller's choice wins.
std::pair<DistributionRow, DistributionRow> rows_for(long q, int n, DistMode mode, int k_need = 0) {
    if (mode == DistMode::Exact)
        return {stirling_row(n), omega_dist_exact(q, n)};
    std::optional<int> cap;
    if (k_need > default_k_cap(n)) cap = std::min(n, k_need);
    return {stirling_row_float(n), omega_dist_float(q, n, cap)};
}

DistMode auto_mode(int n) { return n <= kOmegaExactCap ? DistMode::Exact : DistMode::Float; }

// Interval index of k for the S1/S2/S3 split.
int interval_of(long k, double b1, double b2) {
    if (double(k) <= b1) return 0;
    if (double(k) <= b2) return 1;
    return 2;
}

void interval_bounds(long q, int n, double& b1, double& b2) {
    const double log_n = std::log(double(n));
    b1 = 1.5 * log_n;
    b2 = std::sqrt(double(q)) * log_n;
    if (b2 <= b1) b2 = b1;  // I2 empty for sqrt(q) <= 3/2
}

}  // namespace

double total_variation(const DistributionRow& a, const DistributionRow& b) {
    if (a.n != b.n) throw validation_error("total_variation: length mismatch");
    double sum = 0.0;
    for (int k = 1; k <= a.n; ++k) sum += std::abs(a.value_at(k) - b.value_at(k));
    return 0.5 * sum;
}

mpq_class total_variation_exact(const DistributionRow& a, const DistributionRow& b) {
    if (a.n != b.n) throw validation_error("total_variation_exact: length mismatch");
    if (a.mode != DistMode::Exact || b.mode != DistMode::Exact)
        throw validation_error("total_variation_exact: both rows must be exact");
    mpq_class sum = 0;
    for (int k = 1; k <= a.n; ++k) {
        mpq_class diff = a.exact[k] - b.exact[k];
        sum += abs(diff);
    }
    return sum / 2;
}

int default_k_max(int n) {
    return std::min(n, int(std::ceil(3.0 * std::log(double(n)))));
}

std::vector<ComparisonRow> ratio_report_from(const DistributionRow& cycles,
                                             const DistributionRow& omega, long q, int k_max) {
    const int n = cycles.n;
    if (k_max <= 0) k_max = default_k_max(n);
    if (k_max > n) throw validation_error("ratio_report: k_max must be <= n");
    const double log_n = std::log(double(n));

    std::vector<ComparisonRow> rows;
    rows.reserve(k_max);
    for (long k = 1; k <= k_max; ++k) {
        ComparisonRow row;
        row.n = n;
        row.q = q;
        row.k = k;
        row.r = double(k - 1) / log_n;
        row.p_omega = omega.value_at(int(k));
        row.p_cycles = cycles.value_at(int(k));
        row.ratio = row.p_omega / row.p_cycles;
        row.hq_r = hq(q, row.r, 1e-10);
        row.residual = std::abs(row.ratio - row.hq_r);
        row.normalized = row.residual * double(q) * log_n * log_n / double(k);
        const double denom =
            poisson_pmf(log_n, k - 1) * double(k) / (double(q) * log_n * log_n);
        row.envelope = std::abs(row.p_omega - row.p_cycles * row.hq_r) / denom;
        rows.push_back(row);
    }
    return rows;
}

std::vector<ComparisonRow> ratio_report(long q, int n, int k_max) {
    if (n < 2) throw validation_error("ratio_report: n must be >= 2");
    auto [cycles, omega] = rows_for(q, n, auto_mode(n), k_max);
    return ratio_report_from(cycles, omega, q, k_max);
}

double theorem_residual(long q, int n, long k, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("theorem_residual: delta must lie in (0,1)");
    const double min_n = 4.0 * (1.0 - delta) / (delta * delta);
    if (double(n) < min_n)
        throw std::domain_error("theorem_residual: hypothesis n >= 4(1-delta)/delta^2 fails");
    const double min_q = 1.0 / ((1.0 - delta) * (1.0 - delta));
    if (double(q) < min_q)
        throw std::domain_error("theorem_residual: hypothesis q >= 1/(1-delta)^2 fails");
    const double log_n = std::log(double(n));
    const double r = double(k - 1) / log_n;
    if (r > double(q) * (1.0 - delta))
        throw std::domain_error("theorem_residual: hypothesis r <= q(1-delta) fails");

    auto [cycles, omega] = rows_for(q, n, auto_mode(n), int(k));
    const double p_omega = omega.value_at(int(k));
    const double p_cycles = cycles.value_at(int(k));
    const double denom = poisson_pmf(log_n, k - 1) * double(k) / (double(q) * log_n * log_n);
    return std::abs(p_omega - p_cycles * hq(q, r, 1e-10)) / denom;
}

TVReport tv_report_from(const DistributionRow& cycles, const DistributionRow& omega, long q) {
    const int n = cycles.n;
    double b1, b2;
    if (n >= 2)
        interval_bounds(q, n, b1, b2);
    else
        b1 = b2 = 0.0;  // n = 1: everything lands in S3, d_tv = 0 anyway

    TVReport rep;
    rep.n = n;
    rep.q = q;
    rep.mode = (cycles.mode == DistMode::Exact && omega.mode == DistMode::Exact)
                   ? DistMode::Exact
                   : DistMode::Float;

    if (rep.mode == DistMode::Exact) {
        mpq_class s[3] = {0, 0, 0};
        for (int k = 1; k <= n; ++k) {
            mpq_class diff = omega.exact[k] - cycles.exact[k];
            s[interval_of(k, b1, b2)] += abs(diff);
        }
        mpq_class total = s[0] + s[1] + s[2];
        rep.d_tv_exact = total / 2;
        rep.d_tv = mpq_get_d(rep.d_tv_exact->get_mpq_t());
        rep.s1 = mpq_get_d(s[0].get_mpq_t());
        rep.s2 = mpq_get_d(s[1].get_mpq_t());
        rep.s3 = mpq_get_d(s[2].get_mpq_t());
    } else {
        double s[3] = {0, 0, 0};
        for (int k = 1; k <= n; ++k)
            s[interval_of(k, b1, b2)] += std::abs(omega.value_at(k) - cycles.value_at(k));
        rep.s1 = s[0];
        rep.s2 = s[1];
        rep.s3 = s[2];
        rep.d_tv = 0.5 * (s[0] + s[1] + s[2]);
    }
    rep.scaled = rep.d_tv * double(q) * std::sqrt(std::log(double(n)));
    return rep;
}

TVReport tv_report(long q, int n, DistMode mode) {
    auto [cycles, omega] = rows_for(q, n, mode);
    return tv_report_from(cycles, omega, q);
}

std::vector<TVReport> tv_scaling_study(const std::vector<long>& qs, const std::vector<int>& ns,
                                       DistMode mode) {
    std::vector<std::pair<long, int>> cells;
    for (long q : qs)
        for (int n : ns) cells.emplace_back(q, n);
    std::sort(cells.begin(), cells.end());

    std::vector<TVReport> out(cells.size());
#pragma omp parallel for schedule(dynamic)
    for (int64_t i = 0; i < int64_t(cells.size()); ++i) {
        const auto [q, n] = cells[size_t(i)];
        if (mode == DistMode::Exact) {
            out[size_t(i)] = tv_report_from(stirling_row(n), omega_dist_exact(q, n), q);
        } else {
            // cells already run in parallel; keep the inner DP single-threaded
            auto omega = omega_float_table(q, n, std::nullopt, /*parallel=*/false).row(n);
            auto cycles = stirling_row_float(n);
            out[size_t(i)] = tv_report_from(cycles, omega, q);
        }
    }
    return out;
}

std::array<double, 3> tv_decomposition(long q, int n, DistMode mode) {
    if (n < 2) throw validation_error("tv_decomposition: n must be >= 2");
    TVReport rep = tv_report(q, n, mode);
    return {rep.s1, rep.s2, rep.s3};
}

Moments moments(const DistributionRow& d) {
    Moments m;
    if (d.mode == DistMode::Exact) {
        ExactMoments em = moments_exact(d);
        m.mean = mpq_get_d(em.mean.get_mpq_t());
        m.variance = mpq_get_d(em.variance.get_mpq_t());
        m.e_two_to_k = mpq_get_d(em.e_two_to_k.get_mpq_t());
        return m;
    }
    double mean = 0, second = 0;
    for (int k = 1; k <= d.n; ++k) {
        mean += double(k) * d.values[k];
        second += double(k) * double(k) * d.values[k];
    }
    m.mean = mean;
    m.variance = second - mean * mean;
    // E[2^K] in log-space: 2^k overflows long before the sum does
    double peak = -HUGE_VAL;
    for (int k = 1; k <= d.n; ++k)
        if (d.values[k] > 0) peak = std::max(peak, double(k) * M_LN2 + std::log(d.values[k]));
    double acc = 0;
    for (int k = 1; k <= d.n; ++k)
        if (d.values[k] > 0)
            acc += std::exp(double(k) * M_LN2 + std::log(d.values[k]) - peak);
    m.e_two_to_k = std::exp(peak) * acc;
    return m;
}

ExactMoments moments_exact(const DistributionRow& d) {
    if (d.mode != DistMode::Exact)
        throw validation_error("moments_exact: row is not exact");
    ExactMoments m;
    m.mean = 0;
    m.e_two_to_k = 0;
    mpq_class second = 0;
    mpz_class two_k = 1;
    for (int k = 1; k <= d.n; ++k) {
        two_k *= 2;
        m.mean += k * d.exact[k];
        second += k * k * d.exact[k];
        m.e_two_to_k += two_k * d.exact[k];
    }
    m.variance = second - m.mean * m.mean;
    return m;
}

AbtReport abt_bound_check(long q, int n) {
    if (n < 3) throw validation_error("abt_bound_check: n must be >= 3");
    const double log_n = std::log(double(n));
    AbtReport rep;
    rep.q = q;
    rep.n = n;
    rep.supremum = 0;
    if (log_n <= 1.0) return rep;  // empty range

    auto [cycles, omega] = rows_for(q, n, auto_mode(n));
    for (long k = 1; double(k) < log_n; ++k) {
        const double ratio = omega.value_at(int(k)) / cycles.value_at(int(k));
        AbtRow row;
        row.k = k;
        row.value = std::abs(ratio - 1.0) * double(q) * (log_n - double(k)) / double(k);
        rep.supremum = std::max(rep.supremum, row.value);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace ffdist
