#include "ffdist/exact_dist.hpp"

#include <cmath>
#include <string>

#include "ffdist/asymptotics.hpp"
#include "ffdist/errors.hpp"
#include "ffdist/kernels.hpp"
#include "ffdist/prime_tab.hpp"

namespace ffdist {

DistributionRow OmegaFloatTable::row(int m) const {
    DistributionRow r;
    r.n = m;
    r.kind = DistKind::Omega;
    r.q = q;
    r.mode = DistMode::Float;
    r.k_cap = std::min(m, k_cap);
    r.values.assign(size_t(m) + 1, 0.0);
    for (int k = 0; k <= std::min(m, k_cap); ++k) r.values[k] = at(m, k);
    return r;
}

std::vector<mpz_class> stirling_numbers(int n) {
    std::vector<mpz_class> s(size_t(n) + 1);
    s[0] = 0;
    if (n >= 1) s[1] = 1;
    for (int i = 2; i <= n; ++i) {
        // |s(i,k)| = |s(i-1,k-1)| + (i-1)|s(i-1,k)|
        for (int k = i; k >= 1; --k) s[k] = s[k - 1] + (i - 1) * s[k];
    }
    return s;
}

DistributionRow stirling_row(int n) {
    if (n < 1) throw validation_error("stirling_row: n must be >= 1");
    if (n > kStirlingExactCap)
        throw resource_error("stirling_row: n exceeds exact-mode cap " +
                             std::to_string(kStirlingExactCap) + "; use float mode");
    auto s = stirling_numbers(n);
    mpz_class fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;

    DistributionRow row;
    row.n = n;
    row.kind = DistKind::Cycles;
    row.mode = DistMode::Exact;
    row.k_cap = n;
    row.exact.assign(size_t(n) + 1, mpq_class(0));
    for (int k = 1; k <= n; ++k) {
        row.exact[k] = mpq_class(s[k], fact);
        row.exact[k].canonicalize();
    }
    return row;
}

DistributionRow stirling_row_float(int n) {
    if (n < 1) throw validation_error("stirling_row_float: n must be >= 1");
    DistributionRow row;
    row.n = n;
    row.kind = DistKind::Cycles;
    row.mode = DistMode::Float;
    row.k_cap = n;
    row.values = kernels::stirling_float_row_parallel(n);
    return row;
}

OmegaCountTable omega_counts(long q, int n) {
    if (n < 1) throw validation_error("omega_counts: n must be >= 1");
    if (n > kOmegaExactCap)
        throw resource_error("omega_counts: n exceeds exact-mode cap " +
                             std::to_string(kOmegaExactCap) + "; use float mode");
    const PrimeCountTable pt = prime_counts(q, n);

    OmegaCountTable tab;
    tab.q = q;
    tab.n = n;
    tab.counts.resize(size_t(n) + 1);
    for (int m = 0; m <= n; ++m) tab.counts[m].assign(size_t(m) + 1, mpz_class(0));
    tab.counts[0][0] = 1;

    // Multiply by (1 - z u^d)^{-pi_q(d)} = sum_j C(pi_q(d)+j-1, j) z^j u^{dj},
    // in place, u-degree descending so the rows read are pre-factor values.
    std::vector<mpz_class> binom;
    for (int d = 1; d <= n; ++d) {
        const int j_max = n / d;
        binom.assign(size_t(j_max) + 1, mpz_class(1));
        for (int j = 1; j <= j_max; ++j) {
            // C(pi+j-1, j) = C(pi+j-2, j-1) * (pi+j-1) / j
            binom[j] = binom[j - 1] * (pt[d] + (j - 1));
            mpz_divexact_ui(binom[j].get_mpz_t(), binom[j].get_mpz_t(), j);
        }
        for (int m = n; m >= d; --m) {
            auto& row = tab.counts[m];
            for (int j = 1; j <= m / d; ++j) {
                const auto& src = tab.counts[m - d * j];
                const mpz_class& c = binom[j];
                const int k_hi = m - d * j + j;
                for (int k = j; k <= k_hi; ++k)
                    mpz_addmul(row[k].get_mpz_t(), c.get_mpz_t(), src[k - j].get_mpz_t());
            }
        }
    }
    return tab;
}

DistributionRow omega_row_exact(const OmegaCountTable& tab, int m) {
    mpz_class qm;
    mpz_ui_pow_ui(qm.get_mpz_t(), unsigned(tab.q), unsigned(m));
    DistributionRow row;
    row.n = m;
    row.kind = DistKind::Omega;
    row.q = tab.q;
    row.mode = DistMode::Exact;
    row.k_cap = m;
    row.exact.assign(size_t(m) + 1, mpq_class(0));
    for (int k = 1; k <= m; ++k) {
        row.exact[k] = mpq_class(tab.counts[m][k], qm);
        row.exact[k].canonicalize();
    }
    return row;
}

DistributionRow omega_dist_exact(long q, int n) {
    return omega_row_exact(omega_counts(q, n), n);
}

int default_k_cap(int n) {
    return int(std::ceil(8.0 * std::log(double(n)))) + 16;
}

int minimal_certified_k_cap(int n) {
    const double lambda = 2.0 * std::log(double(n)) + 2.0;
    int k = int(std::floor(lambda)) + 1;
    while (poisson_tail_bound(lambda, double(k)) >= 1e-15) ++k;
    return k;
}

OmegaFloatTable omega_float_table(long q, int n, std::optional<int> k_cap, bool parallel) {
    if (n < 1) throw validation_error("omega_float_table: n must be >= 1");
    if (!is_prime_power(q)) throw validation_error("q must be a prime power");

    int cap = k_cap.value_or(default_k_cap(n));
    if (cap >= n) {
        cap = n;  // no truncation, nothing to certify
    } else {
        const int safe = minimal_certified_k_cap(n);
        if (cap < safe)
            throw validation_error("k_cap " + std::to_string(cap) +
                                   " fails the tail certificate; minimal safe cap for n=" +
                                   std::to_string(n) + " is " + std::to_string(safe));
    }

    const PrimeCountTable pt = prime_counts(q, n);
    OmegaFloatTable tab;
    tab.q = q;
    tab.n = n;
    tab.k_cap = cap;
    tab.data = parallel ? kernels::omega_float_table_parallel(pt, n, cap)
                        : kernels::omega_float_table_serial(pt, n, cap);
    return tab;
}

DistributionRow omega_dist_float(long q, int n, std::optional<int> k_cap) {
    return omega_float_table(q, n, k_cap).row(n);
}

IrreduciblesList enumerate_irreducibles(long q, int d_max, uint64_t degree_budget) {
    const GFq F(q);
    IrreduciblesList list;
    list.q = q;
    list.d_max = d_max;
    list.polys.resize(size_t(d_max) + 1);

    std::vector<const Poly*> known;  // degree order
    for (int d = 1; d <= d_max; ++d) {
        double count = std::pow(double(q), double(d));
        if (count > double(degree_budget))
            throw resource_error("enumerate_irreducibles: q^" + std::to_string(d) +
                                 " exceeds the per-degree budget");
        const uint64_t total = uint64_t(count + 0.5);
        for (uint64_t code = 0; code < total; ++code) {
            Poly f = decode_monic(F, d, code);
            bool reducible = false;
            for (const Poly* g : known) {
                if (2 * (int(g->size()) - 1) > d) break;
                if (poly_divides(F, f, *g)) {
                    reducible = true;
                    break;
                }
            }
            if (!reducible) list.polys[d].push_back(std::move(f));
        }
        for (const Poly& g : list.polys[d]) known.push_back(&g);
    }
    return list;
}

namespace {

// Synthetic division of f by monic g, in place: on success f becomes the
// quotient and true is returned; on nonzero remainder f is left unchanged.
bool try_divide(const GFq& F, Poly& f, const Poly& g, Poly& work) {
    const int df = int(f.size()) - 1;
    const int dg = int(g.size()) - 1;
    if (df < dg) return false;
    work = f;
    for (int s = df - dg; s >= 0; --s) {
        const uint8_t c = work[s + dg];  // becomes the quotient coefficient
        if (c == 0) continue;
        for (int i = 0; i < dg; ++i) work[s + i] = F.sub(work[s + i], F.mul(c, g[i]));
    }
    for (int i = 0; i < dg; ++i)
        if (work[i] != 0) return false;
    f.assign(work.begin() + dg, work.end());
    return true;
}

}  // namespace

std::vector<mpz_class> brute_force_omega(long q, int n, uint64_t budget) {
    if (n < 1) throw validation_error("brute_force_omega: n must be >= 1");
    const double total_d = std::pow(double(q), double(n));
    if (total_d > double(budget))
        throw resource_error("brute_force_omega: q^n exceeds the enumeration budget");

    const GFq F(q);
    const IrreduciblesList irr = enumerate_irreducibles(q, std::max(1, n / 2));
    std::vector<const Poly*> primes;  // degree order
    for (int d = 1; d <= irr.d_max; ++d)
        for (const Poly& g : irr.polys[d]) primes.push_back(&g);

    const uint64_t total = uint64_t(total_d + 0.5);
    std::vector<uint64_t> tally(size_t(n) + 1, 0);  // counts fit: q^n <= budget
#pragma omp parallel
    {
        std::vector<uint64_t> local(size_t(n) + 1, 0);
        Poly f, work;
#pragma omp for schedule(static)
        for (int64_t code = 0; code < int64_t(total); ++code) {
            f.assign(size_t(n) + 1, 0);
            uint64_t c = uint64_t(code);
            for (int i = 0; i < n; ++i) {
                f[i] = uint8_t(c % uint64_t(q));
                c /= uint64_t(q);
            }
            f[n] = 1;
            int omega = 0;
            for (const Poly* g : primes) {
                const int dg = int(g->size()) - 1;
                if (2 * dg > int(f.size()) - 1) break;
                while (try_divide(F, f, *g, work)) ++omega;
            }
            if (int(f.size()) - 1 >= 1) ++omega;  // leftover cofactor is prime
            local[omega] += 1;
        }
#pragma omp critical
        for (int k = 0; k <= n; ++k) tally[k] += local[k];
    }

    std::vector<mpz_class> row(size_t(n) + 1);
    for (int k = 0; k <= n; ++k) row[k] = mpz_class(static_cast<unsigned long>(tally[k]));
    return row;
}

}  // namespace ffdist
