#pragma once

#include <vector>

#include "ffdist/prime_tab.hpp"

namespace ffdist::kernels {

// Probability-weighted coefficient extraction from the Euler product
//   prod_{d>=1} (1 - z u^d)^{-pi_q(d)},
// with each u^d factor carrying weight q^{-dj} * C(pi_q(d)+j-1, j) so the
// table entries are probabilities directly. Row m of the result holds
// P(Omega(f_m) = k) for 0 <= k <= k_cap; truncating the z-degree at k_cap
// leaves the retained coefficients exact (higher z-degrees never feed back).
//
// The serial and parallel variants perform the identical per-cell arithmetic
// in the identical order, so their outputs are bitwise equal; the serial one
// is the reference the tests hold the OpenMP one against.
//
// Layout: row-major (n+1) x (k_cap+1).
std::vector<double> omega_float_table_serial(const PrimeCountTable& pt, int n, int k_cap);
std::vector<double> omega_float_table_parallel(const PrimeCountTable& pt, int n, int k_cap);

// P(K(pi_n) = k) for k in [0..n] by the normalized triangle recurrence
//   P_n(k) = ((n-1) P_{n-1}(k) + P_{n-1}(k-1)) / n,
// which never leaves [0,1]. Same bitwise serial/parallel contract as above.
std::vector<double> stirling_float_row_serial(int n);
std::vector<double> stirling_float_row_parallel(int n);

// Factor weights q^{-dj} * C(pi_q(d)+j-1, j) for j = 0..j_max, evaluated in
// log-space (the binomial overflows any fixed width long before d gets
// interesting). Weights are decreasing in j; the vector is cut at the first
// underflow to 0. Exposed for the unit tests.
std::vector<double> omega_factor_weights(const PrimeCountTable& pt, int d, int j_max);

}  // namespace ffdist::kernels
