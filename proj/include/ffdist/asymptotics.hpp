#pragma once

#include <vector>

namespace ffdist {

// Truncated log-series for h_q on the real slice: for 2 <= m <= n_trunc,
//   coeffs[m](x) = q^{-m} m^{-1} sum_{d|m, d!=m} d pi_q(d) (x^{m/d} - x),
// stored termwise with the scalar factor folded into `weight`. Each
// coefficient vanishes at x = 0 and x = 1 and has degree <= m/2.
// Immutable after construction; evaluation is pure.
struct HqSeries {
    long q = 0;
    int n_trunc = 0;

    struct Term {
        int exponent;       // m/d >= 2
        double log_weight;  // log(d pi_q(d) q^{-m} / m); kept in log scale since
                            // both the weight and x^{m/d} overflow separately
    };
    std::vector<std::vector<Term>> terms;  // index m; [0], [1] empty

    double log_sum(double x) const;             // sum_{m<=N} coeffs[m](x)
    double log_sum_derivative(double x) const;  // termwise d/dx of the above

    // Certified bounds on the dropped tails sum_{m>N} |...|; valid for
    // 0 <= x < q.
    double tail_bound(double x) const;
    double derivative_tail_bound(double x) const;
};

HqSeries build_hq_series(long q, int n_trunc);

struct HqValue {
    double value = 0;
    double tail = 0;  // certified series tail at the truncation used
    int n_trunc = 0;
};

// h_q(x) = exp(series), truncation chosen so the certified tail is < tol/2,
// with a doubling self-check. Domain: real 0 <= x < q.
HqValue hq_certified(long q, double x, double tol);
double hq(long q, double x, double tol = 1e-10);

// Literal truncated Euler product over the irreducibles of degree <= d_max,
// grouped by degree; the independent oracle for hq. Monotone nondecreasing
// in d_max for x >= 1.
double hq_direct_product(long q, double x, int d_max);
// Bound on |log h_q(x) - log(product to d_max)| from the degree > d_max
// factors, scaled to value units by the caller if needed.
double hq_direct_product_tail(long q, double x, int d_max);

// d/dx log h_q(x), termwise-differentiated series with its own certificate.
double hq_log_derivative(long q, double x, double tol = 1e-10);

// Gamma on (0, 20] by the fixed-coefficient Lanczos approximation (g = 7,
// 9 terms); relative error well under 1e-12 there. Errors outside.
double gamma_real(double x);

double poisson_pmf(double lambda, long k);
// P(X >= x) for X ~ Pois(lambda), direct summation, relative error <= 1e-10.
double poisson_tail(double lambda, double x);
// Chernoff-type bound (e lambda / x)^x e^-lambda; requires x > lambda.
double poisson_tail_bound(double lambda, double x);

// The three main terms. r = (k-1)/log n throughout, natural log.
double hwang_main_term(long n, long k);               // (1/n)(log n)^{k-1}/((k-1)! Gamma(r+1))
double warlimont_main_term(long n, long k, long q);   // hwang * h_q(r)
double new_main_term(double p_cycles, double r, long q);  // P(K=k) * h_q(r)

// C(n+z-1, n) for real z, log-space with sign tracking, and its distance
// from the n^{z-1}/Gamma(z) approximation.
double binom_real(long n, double z);
double binom_gamma_residual(long n, double z);

}  // namespace ffdist
