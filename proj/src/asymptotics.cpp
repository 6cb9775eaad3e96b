#include "ffdist/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ffdist/errors.hpp"
#include "ffdist/prime_tab.hpp"

namespace ffdist {
namespace {

double mpz_log(const mpz_class& v) {
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + double(exp2) * M_LN2;
}

void check_hq_domain(long q, double x) {
    if (!is_prime_power(q)) throw validation_error("q must be a prime power");
    if (!(x >= 0.0) || x >= double(q))
        throw std::domain_error("h_q(x) requires 0 <= x < q (the product diverges as x -> q)");
}

// sum_{m>N} m t^m for t in (0,1)
double weighted_geom_tail(double t, int N) {
    return std::pow(t, N + 1) * (double(N + 1) - double(N) * t) / ((1 - t) * (1 - t));
}

}  // namespace

double HqSeries::log_sum(double x) const {
    if (x == 0.0) return 0.0;  // every summand x^{m/d} - x vanishes
    const double lx = std::log(x);
    double total = 0.0;
    for (int m = 2; m <= n_trunc; ++m)
        for (const Term& t : terms[m])
            total += std::exp(t.log_weight + double(t.exponent) * lx) -
                     std::exp(t.log_weight + lx);
    return total;
}

double HqSeries::log_sum_derivative(double x) const {
    const double lx = x > 0.0 ? std::log(x) : -HUGE_VAL;
    double total = 0.0;
    for (int m = 2; m <= n_trunc; ++m)
        for (const Term& t : terms[m])
            total += std::exp(t.log_weight + std::log(double(t.exponent)) +
                              double(t.exponent - 1) * lx) -
                     std::exp(t.log_weight);
    return total;
}

double HqSeries::tail_bound(double x) const {
    const double qd = double(q);
    const int N = n_trunc;
    // geometric part from the t = 1 endpoint of s(t) = q^t x^{m/t}, plus the
    // q^{m/2} endpoint and the linear -x terms
    const double g1 = qd * std::pow(x / qd, N + 1) / (1.0 - x / qd);
    const double rt = 1.0 / std::sqrt(qd);
    const double g2 = (1.0 + x + x * x) * std::pow(rt, N + 1) / (1.0 - rt);
    return g1 + g2;
}

double HqSeries::derivative_tail_bound(double x) const {
    const double qd = double(q);
    const double y = std::max(x, 1.0);
    return qd * weighted_geom_tail(y / qd, n_trunc) +
           (y * y + 1.0) * weighted_geom_tail(1.0 / std::sqrt(qd), n_trunc);
}

HqSeries build_hq_series(long q, int n_trunc) {
    const PrimeCountTable pt = prime_counts(q, std::max(1, n_trunc / 2));
    const double log_q = std::log(double(q));

    HqSeries s;
    s.q = q;
    s.n_trunc = n_trunc;
    s.terms.resize(size_t(n_trunc) + 1);
    for (int m = 2; m <= n_trunc; ++m) {
        for (int d = 1; d * 2 <= m; ++d) {
            if (m % d != 0) continue;
            const double lw =
                std::log(double(d)) + mpz_log(pt[d]) - double(m) * log_q - std::log(double(m));
            s.terms[m].push_back({m / d, lw});
        }
    }
    return s;
}

HqValue hq_certified(long q, double x, double tol) {
    check_hq_domain(q, x);
    if (!(tol > 0.0)) throw validation_error("hq: tol must be positive");

    int N = 40;
    if (x >= 1.0)
        N = std::max(N, int(std::ceil(2.0 * std::log(1.0 / tol) / std::log(double(q) / x))));
    HqSeries probe;
    probe.q = q;
    for (;;) {
        probe.n_trunc = N;
        if (probe.tail_bound(x) < tol / 2) break;
        N += N / 2 + 1;
        if (N > 200000) throw resource_error("hq: truncation did not certify");
    }

    // Build at 2N; doubling must move the value by less than tol.
    HqSeries series = build_hq_series(q, 2 * N);
    series.n_trunc = N;
    const double at_n = std::exp(series.log_sum(x));
    series.n_trunc = 2 * N;
    const double at_2n = std::exp(series.log_sum(x));
    if (std::abs(at_2n - at_n) >= tol)
        throw std::logic_error("hq: doubling self-check failed");

    return {at_2n, series.tail_bound(x), 2 * N};
}

double hq(long q, double x, double tol) { return hq_certified(q, x, tol).value; }

double hq_direct_product(long q, double x, int d_max) {
    check_hq_domain(q, x);
    if (d_max < 1) throw validation_error("hq_direct_product: d_max must be >= 1");
    const PrimeCountTable pt = prime_counts(q, d_max);
    double log_total = 0.0;
    for (int d = 1; d <= d_max; ++d) {
        const double t = std::pow(double(q), -double(d));
        // (1 - x/|P|)^{-1} (1 - 1/|P|)^x per prime of degree d
        const double log_factor = x * std::log1p(-t) - std::log1p(-x * t);
        log_total += mpz_get_d(pt[d].get_mpz_t()) * log_factor;
    }
    return std::exp(log_total);
}

double hq_direct_product_tail(long q, double x, int d_max) {
    // |log factor| per degree-d prime is <= sum_{i>=2} q^{-di} (x^i + x)/i;
    // with pi_q(d) <= q^d/d the degree-d block contributes at most
    // q^{-d} (x^2/(1 - x q^{-d}) + x/(1 - q^{-d})) / d.
    const double qd = double(q);
    const double t0 = std::pow(qd, -double(d_max + 1));
    const double cx = x * x / (1.0 - x * t0) + x / (1.0 - t0);
    return cx / double(d_max + 1) * t0 / (1.0 - 1.0 / qd);
}

double hq_log_derivative(long q, double x, double tol) {
    check_hq_domain(q, x);
    if (!(tol > 0.0)) throw validation_error("hq_log_derivative: tol must be positive");
    int N = 40;
    HqSeries probe;
    probe.q = q;
    for (;;) {
        probe.n_trunc = N;
        if (probe.derivative_tail_bound(x) < tol / 2) break;
        N += N / 2 + 1;
        if (N > 200000) throw resource_error("hq_log_derivative: truncation did not certify");
    }
    HqSeries series = build_hq_series(q, 2 * N);
    return series.log_sum_derivative(x);
}

double gamma_real(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_real: argument must be positive");
    if (x > 20.0) throw std::domain_error("gamma_real: argument capped at 20");
    // Lanczos, gamma = 7, kmax = 8
    static const double c[9] = {
        0.99999999999980993227684700473478,  676.520368121885098567009190444019,
        -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
        -176.61502916214059906584551354,     12.507343278686904814458936853,
        -0.13857109526572011689554707,       9.984369578019570859563e-6,
        1.50563273514931155834e-7};
    const double z = x - 1.0;
    double ag = c[0];
    for (int k = 1; k <= 8; ++k) ag += c[k] / (z + k);
    const double t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * ag;
}

double poisson_pmf(double lambda, long k) {
    if (!(lambda > 0.0)) throw std::domain_error("poisson_pmf: lambda must be positive");
    if (k < 0) throw std::domain_error("poisson_pmf: k must be >= 0");
    return std::exp(-lambda + double(k) * std::log(lambda) - std::lgamma(double(k) + 1.0));
}

double poisson_tail(double lambda, double x) {
    if (!(lambda > 0.0)) throw std::domain_error("poisson_tail: lambda must be positive");
    long k = std::max(0L, long(std::ceil(x)));
    double term = poisson_pmf(lambda, k);
    double sum = term;
    for (;;) {
        term *= lambda / double(k + 1);
        sum += term;
        ++k;
        if (double(k + 1) > lambda) {
            // remaining mass <= term * rho/(1-rho), rho = lambda/(k+2)
            const double rho = lambda / double(k + 2);
            if (term * rho / (1.0 - rho) < 1e-13 * sum) break;
        }
    }
    return std::min(sum, 1.0);
}

double poisson_tail_bound(double lambda, double x) {
    if (!(lambda > 0.0)) throw std::domain_error("poisson_tail_bound: lambda must be positive");
    if (!(x > lambda)) throw std::domain_error("poisson_tail_bound: requires x > lambda");
    return std::exp(x * (1.0 + std::log(lambda) - std::log(x)) - lambda);
}

double hwang_main_term(long n, long k) {
    if (n < 2 || k < 1 || k > n) throw std::domain_error("hwang_main_term: need n >= 2, 1 <= k <= n");
    if (k == 1) return 1.0 / double(n);  // r = 0 and Gamma(1) = 1
    const double log_n = std::log(double(n));
    const double r = double(k - 1) / log_n;
    const double log_mt =
        double(k - 1) * std::log(log_n) - std::lgamma(double(k)) - log_n;
    return std::exp(log_mt) / gamma_real(r + 1.0);
}

double warlimont_main_term(long n, long k, long q) {
    const double r = double(k - 1) / std::log(double(n));
    return hwang_main_term(n, k) * hq(q, r, 1e-12);
}

double new_main_term(double p_cycles, double r, long q) {
    return p_cycles * hq(q, r, 1e-12);
}

double binom_real(long n, double z) {
    if (n < 1) throw std::domain_error("binom_real: n must be >= 1");
    // prod_{j=1}^n (z+j-1)/j in log-space, tracking the sign
    double log_abs = -std::lgamma(double(n) + 1.0);
    int sign = 1;
    for (long j = 1; j <= n; ++j) {
        const double f = z + double(j - 1);
        if (f == 0.0) return 0.0;
        if (f < 0.0) sign = -sign;
        log_abs += std::log(std::abs(f));
    }
    return double(sign) * std::exp(log_abs);
}

double binom_gamma_residual(long n, double z) {
    const double approx = std::exp((z - 1.0) * std::log(double(n))) / gamma_real(z);
    return std::abs(binom_real(n, z) - approx);
}

}  // namespace ffdist
