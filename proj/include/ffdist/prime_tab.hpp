#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

namespace ffdist {

// Moebius function mu(m), m >= 1. By trial division.
int mobius(long m);

// Returns (p, e) with q = p^e when q >= 2 is a prime power, empty otherwise.
std::optional<std::pair<long, int>> is_prime_power(long q);

// Exact counts of monic irreducible polynomials per degree over F_q.
// counts[d] = pi_q(d) for 1 <= d <= d_max, obtained by Moebius inversion of
// Gauss's identity sum_{d|n} d*pi_q(d) = q^n. The identity, pi_q(d) >= 1 and
// d*pi_q(d) <= q^d are re-verified for every degree on construction.
// Immutable after construction; safe to share across threads.
struct PrimeCountTable {
    long q = 0;
    int d_max = 0;
    std::vector<mpz_class> counts;  // counts[0] unused

    const mpz_class& operator[](int d) const { return counts[d]; }
};

// Builds the table. Rejects non-prime-power q with validation_error.
PrimeCountTable prime_counts(long q, int d_max);

}  // namespace ffdist
