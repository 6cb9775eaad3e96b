#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "ffdist/errors.hpp"
#include "ffdist/exact_dist.hpp"
#include "ffdist/prime_tab.hpp"

using namespace ffdist;

TEST_CASE("stirling_row on tiny cases") {
    auto r1 = stirling_row(1);
    CHECK(r1.exact[1] == 1);

    // enumerate S_3: cycle counts 3,1,1,2,2,2 -> [1/3, 1/2, 1/6]
    auto r3 = stirling_row(3);
    CHECK(r3.exact[1] == mpq_class(1, 3));
    CHECK(r3.exact[2] == mpq_class(1, 2));
    CHECK(r3.exact[3] == mpq_class(1, 6));

    // cycle types of S_4: k=2 from 4-cycles? no: |s(4,2)| = 11
    auto r4 = stirling_row(4);
    CHECK(r4.exact[2] == mpq_class(11, 24));

    CHECK_THROWS_AS(stirling_row(0), validation_error);
    CHECK_THROWS_AS(stirling_row(kStirlingExactCap + 1), resource_error);
}

TEST_CASE("exact rows sum to one with full support") {
    for (int n : {1, 2, 7, 40}) {
        auto row = stirling_row(n);
        mpq_class sum = 0;
        for (int k = 1; k <= n; ++k) {
            CHECK(row.exact[k] > 0);
            sum += row.exact[k];
        }
        CHECK(sum == 1);
    }
    for (auto [q, n] : {std::pair<long, int>{2, 30}, {9, 12}}) {
        auto row = omega_dist_exact(q, n);
        mpq_class sum = 0;
        for (int k = 1; k <= n; ++k) {
            CHECK(row.exact[k] > 0);
            sum += row.exact[k];
        }
        CHECK(sum == 1);
    }
}

TEST_CASE("stirling_row_float basics") {
    auto r2 = stirling_row_float(2);
    CHECK(r2.values[1] == 0.5);
    CHECK(r2.values[2] == 0.5);

    auto r100 = stirling_row_float(100);
    CHECK(r100.values[1] == doctest::Approx(0.01).epsilon(1e-12));

    auto r50 = stirling_row_float(50);
    double sum = 0;
    for (int k = 1; k <= 50; ++k) sum += r50.values[k];
    CHECK(std::abs(sum - 1.0) <= 1e-12);
}

TEST_CASE("omega_counts tiny tables") {
    auto t = omega_counts(2, 2);
    CHECK(t.counts[2][1] == 1);  // the irreducible quadratic over F_2
    CHECK(t.counts[2][2] == 3);  // T^2, (T+1)^2, T(T+1)
    CHECK(t.counts[0][0] == 1);
    CHECK(t.counts[1][1] == 2);

    auto t3 = omega_counts(3, 1);
    CHECK(t3.counts[1][1] == 3);

    // counts[n][n] = C(q+n-1, n)
    for (long q : {2L, 5L, 9L}) {
        auto tab = omega_counts(q, 10);
        for (int n = 1; n <= 10; ++n) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), unsigned(q + n - 1), unsigned(n));
            CHECK(tab.counts[n][n] == binom);
        }
    }

    CHECK_THROWS_AS(omega_counts(2, kOmegaExactCap + 1), resource_error);
    CHECK_THROWS_AS(omega_counts(10, 5), validation_error);
}

TEST_CASE("enumerate_irreducibles small fields") {
    auto l2 = enumerate_irreducibles(2, 2);
    REQUIRE(l2.polys[1].size() == 2);  // T, T+1
    REQUIRE(l2.polys[2].size() == 1);
    CHECK(l2.polys[2][0] == Poly{1, 1, 1});  // T^2+T+1

    auto l3 = enumerate_irreducibles(3, 1);
    CHECK(l3.polys[1].size() == 3);

    CHECK_THROWS_AS(enumerate_irreducibles(2, 25), resource_error);
}

TEST_CASE("brute_force_omega tiny cases") {
    auto r = brute_force_omega(2, 3);
    CHECK(r[1] == 2);
    CHECK(r[2] == 2);
    CHECK(r[3] == 4);

    auto r1 = brute_force_omega(2, 1);
    CHECK(r1[1] == 2);

    auto r32 = brute_force_omega(3, 2);
    CHECK(r32[1] == 3);
    CHECK(r32[2] == 6);

    CHECK_THROWS_AS(brute_force_omega(2, 60), resource_error);
}

TEST_CASE("oracle equivalence on a small grid") {
    for (long q : {2L, 3L, 5L}) {
        int n_max = 0;
        double power = 1;
        while (power * double(q) <= 1e4) {
            power *= double(q);
            ++n_max;
        }
        auto tab = omega_counts(q, n_max);
        for (int n = 1; n <= n_max; ++n) {
            auto brute = brute_force_omega(q, n);
            for (int k = 0; k <= n; ++k) CHECK(brute[k] == tab.counts[n][k]);
        }
    }
}

TEST_CASE("omega_dist_float matches exact and the prime count at k=1") {
    auto row = omega_dist_float(2, 2);
    CHECK(row.values[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(row.values[2] == doctest::Approx(0.75).epsilon(1e-12));

    for (auto [q, n] : {std::pair<long, int>{2, 50}, {3, 30}, {9, 40}}) {
        auto fr = omega_dist_float(q, n);
        double sum = 0;
        for (int k = 1; k <= n; ++k) {
            CHECK(fr.values[k] >= 0.0);
            CHECK(fr.values[k] <= 1.0 + 1e-12);
            sum += fr.values[k];
        }
        CHECK(std::abs(sum - 1.0) <= 1e-10);

        // n * mass[1] = n pi_q(n) / q^n
        auto pt = prime_counts(q, n);
        mpq_class expect(pt[n], 1);
        mpz_class qn;
        mpz_ui_pow_ui(qn.get_mpz_t(), unsigned(q), unsigned(n));
        expect /= mpq_class(qn);
        CHECK(fr.values[1] ==
              doctest::Approx(mpq_get_d(expect.get_mpq_t())).epsilon(1e-11));
    }
}

TEST_CASE("k_cap certificate") {
    CHECK(default_k_cap(10000) == int(std::ceil(8.0 * std::log(10000.0))) + 16);
    // requesting a cap below the certified minimum names the safe cap
    try {
        omega_dist_float(2, 10000, 20);
        FAIL("expected validation_error");
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("minimal safe cap") != std::string::npos);
    }
    // the default cap passes its own certificate
    const int safe = minimal_certified_k_cap(10000);
    CHECK(default_k_cap(10000) >= safe);
    // a generous explicit cap is accepted
    auto row = omega_dist_float(2, 300, 120);
    CHECK(row.k_cap == 120);
}

TEST_CASE("float omega table exposes consistent rows") {
    auto ft = omega_float_table(3, 60);
    auto direct = omega_dist_float(3, 25);
    auto from_table = ft.row(25);
    REQUIRE(from_table.n == 25);
    for (int k = 1; k <= 25; ++k)
        CHECK(from_table.values[k] == direct.values[k]);  // same DP, same bits
}
