#include "ffdist/prime_tab.hpp"

#include <stdexcept>

#include "ffdist/errors.hpp"

namespace ffdist {

int mobius(long m) {
    if (m < 1) throw validation_error("mobius: argument must be >= 1");
    int primes = 0;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return 0;  // square factor
            ++primes;
        }
    }
    if (m > 1) ++primes;
    return (primes % 2 == 0) ? 1 : -1;
}

std::optional<std::pair<long, int>> is_prime_power(long q) {
    if (q < 2) return std::nullopt;
    long p = q;
    for (long d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    int e = 0;
    long rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) return std::nullopt;  // a second prime divides q
    return std::make_pair(p, e);
}

PrimeCountTable prime_counts(long q, int d_max) {
    if (!is_prime_power(q)) throw validation_error("q must be a prime power");
    if (d_max < 1) throw validation_error("prime_counts: d_max must be >= 1");

    // powers[d] = q^d, d = 0..d_max
    std::vector<mpz_class> powers(d_max + 1);
    powers[0] = 1;
    for (int d = 1; d <= d_max; ++d) powers[d] = powers[d - 1] * q;

    PrimeCountTable tab;
    tab.q = q;
    tab.d_max = d_max;
    tab.counts.assign(d_max + 1, mpz_class(0));

    for (int d = 1; d <= d_max; ++d) {
        mpz_class sum = 0;
        for (int e = 1; e <= d; ++e) {
            if (d % e != 0) continue;
            int mu = mobius(e);
            if (mu == 1)
                sum += powers[d / e];
            else if (mu == -1)
                sum -= powers[d / e];
        }
        mpz_class& cnt = tab.counts[d];
        mpz_divexact_ui(cnt.get_mpz_t(), sum.get_mpz_t(), d);
    }

    // Gauss identity and size bounds, every degree.
    for (int n = 1; n <= d_max; ++n) {
        mpz_class gauss = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) gauss += d * tab.counts[d];
        if (gauss != powers[n])
            throw std::logic_error("prime_counts: Gauss identity failed");
        if (tab.counts[n] < 1)
            throw std::logic_error("prime_counts: pi_q(n) < 1");
        if (n * tab.counts[n] > powers[n])
            throw std::logic_error("prime_counts: n*pi_q(n) > q^n");
    }
    return tab;
}

}  // namespace ffdist
