#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ffdist/errors.hpp"
#include "ffdist/exact_dist.hpp"
#include "ffdist/prime_tab.hpp"

using namespace ffdist;

TEST_CASE("mobius on small arguments") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(2) == -1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK(mobius(49) == 0);
    CHECK(mobius(97) == -1);
    CHECK_THROWS_AS(mobius(0), validation_error);
}

TEST_CASE("is_prime_power") {
    auto pe = is_prime_power(9);
    REQUIRE(pe.has_value());
    CHECK(pe->first == 3);
    CHECK(pe->second == 2);
    pe = is_prime_power(16);
    REQUIRE(pe.has_value());
    CHECK(pe->first == 2);
    CHECK(pe->second == 4);
    CHECK(is_prime_power(2).has_value());
    CHECK(is_prime_power(343).has_value());
    CHECK_FALSE(is_prime_power(12).has_value());
    CHECK_FALSE(is_prime_power(1).has_value());
    CHECK_FALSE(is_prime_power(6).has_value());
}

TEST_CASE("prime_counts matches known tables") {
    auto t = prime_counts(2, 5);
    CHECK(t.counts[1] == 2);
    CHECK(t.counts[2] == 1);
    CHECK(t.counts[3] == 2);
    CHECK(t.counts[4] == 3);
    CHECK(t.counts[5] == 6);

    auto t3 = prime_counts(3, 1);
    CHECK(t3.counts[1] == 3);

    // Gauss identity at q=2, n=4: 1*2 + 2*1 + 4*3 = 16
    CHECK(1 * t.counts[1] + 2 * t.counts[2] + 4 * t.counts[4] == 16);

    CHECK_THROWS_AS(prime_counts(6, 3), validation_error);
    CHECK_THROWS_AS(prime_counts(2, 0), validation_error);
}

TEST_CASE("prime_counts agrees with exhaustive enumeration") {
    for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L, 11L, 13L, 16L}) {
        int d_max = 0;
        double power = 1;
        while (d_max < 8 && power * double(q) <= 1e6) {
            power *= double(q);
            ++d_max;
        }
        auto tab = prime_counts(q, d_max);
        auto list = enumerate_irreducibles(q, d_max);
        for (int d = 1; d <= d_max; ++d)
            CHECK(tab.counts[d] == mpz_class(long(list.polys[d].size())));
    }
}

TEST_CASE("weak prime polynomial theorem bound") {
    // |n pi_q(n) - q^n| <= 2 q^{floor(n/2)}
    for (auto [q, d_max] : {std::pair<long, int>{2, 60}, {3, 40}, {5, 30}, {9, 20}}) {
        auto tab = prime_counts(q, d_max);
        mpz_class qn = 1;
        for (int n = 1; n <= d_max; ++n) {
            qn *= q;
            mpz_class half_pow;
            mpz_ui_pow_ui(half_pow.get_mpz_t(), unsigned(q), unsigned(n / 2));
            CHECK(abs(n * tab.counts[n] - qn) <= 2 * half_pow);
        }
    }
}
