#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "ffdist/gfq.hpp"

namespace ffdist {

// Exact-mode caps. Beyond them big-integer growth makes exact rows slow;
// float mode covers the asymptotic regime.
inline constexpr int kStirlingExactCap = 1000;
inline constexpr int kOmegaExactCap = 400;

enum class DistKind { Cycles, Omega };
enum class DistMode { Exact, Float };

// Probability mass function of K(pi_n) or Omega(f_n) on k in [1..n].
// Exact mode stores canonical rationals; float mode binary64. Index 0 unused.
struct DistributionRow {
    int n = 0;
    DistKind kind = DistKind::Cycles;
    long q = 0;  // 0 for cycle rows
    DistMode mode = DistMode::Exact;
    int k_cap = 0;  // z-truncation actually applied (== n when none)
    std::vector<mpq_class> exact;
    std::vector<double> values;

    double value_at(int k) const {
        return mode == DistMode::Exact ? mpq_get_d(exact[k].get_mpq_t()) : values[k];
    }
};

// counts[m][k] = N_q(m,k), the number of monic degree-m polynomials over F_q
// with exactly k prime factors counted with multiplicity; 0 <= k <= m <= n.
struct OmegaCountTable {
    long q = 0;
    int n = 0;
    std::vector<std::vector<mpz_class>> counts;  // counts[m] has size m+1
};

struct IrreduciblesList {
    long q = 0;
    int d_max = 0;
    std::vector<std::vector<Poly>> polys;  // polys[d], d in [1..d_max]
};

// All float omega rows m <= n from one DP run (row m is unaffected by the
// factors d > m, so the table is valid at every degree).
struct OmegaFloatTable {
    long q = 0;
    int n = 0;
    int k_cap = 0;
    std::vector<double> data;  // row-major (n+1) x (k_cap+1)

    double at(int m, int k) const {
        return k <= k_cap ? data[size_t(m) * (k_cap + 1) + k] : 0.0;
    }
    DistributionRow row(int m) const;
};

// --- cycle counts -----------------------------------------------------------

// P(K(pi_n)=k) = |s(n,k)|/n!, exact. resource_error beyond the cap.
DistributionRow stirling_row(int n);

// Same quantity by the normalized recurrence, binary64, no cap.
DistributionRow stirling_row_float(int n);

// Row of unsigned Stirling numbers of the first kind |s(n,k)|, k in [0..n].
std::vector<mpz_class> stirling_numbers(int n);

// --- polynomial prime-factor counts ------------------------------------------

// Exact N_q(m,k) for all m <= n by coefficient extraction from the Euler
// product prod_d (1 - z u^d)^{-pi_q(d)} truncated at u^n.
OmegaCountTable omega_counts(long q, int n);

// Exact probability row at degree m of a computed table, or at degree n
// directly from (q, n).
DistributionRow omega_row_exact(const OmegaCountTable& tab, int m);
DistributionRow omega_dist_exact(long q, int n);

// Default z-truncation and the smallest cap passing the discarded-tail
// certificate P(Omega > K) <= P(Pois(2 log n + 2) >= K) < 1e-15.
int default_k_cap(int n);
int minimal_certified_k_cap(int n);

// Float omega table / row. If k_cap is given and the certificate fails,
// throws validation_error naming the minimal safe cap.
OmegaFloatTable omega_float_table(long q, int n, std::optional<int> k_cap = std::nullopt,
                                  bool parallel = true);
DistributionRow omega_dist_float(long q, int n, std::optional<int> k_cap = std::nullopt);

// --- oracles ------------------------------------------------------------------

// Monic irreducibles per degree by divisibility sieve, degree order.
IrreduciblesList enumerate_irreducibles(long q, int d_max,
                                        uint64_t degree_budget = 1'000'000);

// Independent oracle for N_q(n,k): enumerate all q^n monic polynomials of
// degree n and fully factor each by trial division. Returns the k-indexed
// row (size n+1).
std::vector<mpz_class> brute_force_omega(long q, int n, uint64_t budget = 2'000'000);

}  // namespace ffdist
