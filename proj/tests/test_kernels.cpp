#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "ffdist/kernels.hpp"
#include "ffdist/prime_tab.hpp"

using namespace ffdist;

TEST_CASE("omega factor weights match the closed form at d=1") {
    // w[j] = C(q+j-1, j) q^{-j}; for q=2 that is (j+1)/2^j
    auto pt = prime_counts(2, 4);
    auto w = kernels::omega_factor_weights(pt, 1, 12);
    REQUIRE(w.size() >= 13);
    CHECK(w[0] == 1.0);
    for (int j = 1; j <= 12; ++j)
        CHECK(w[j] == doctest::Approx(double(j + 1) / std::pow(2.0, j)).epsilon(1e-14));
}

TEST_CASE("omega factor weights decrease in j") {
    auto pt = prime_counts(9, 40);
    for (int d : {1, 2, 7, 40}) {
        auto w = kernels::omega_factor_weights(pt, d, 30);
        for (size_t j = 2; j < w.size(); ++j) CHECK(w[j] < w[j - 1]);
    }
}

TEST_CASE("serial and parallel omega tables are bitwise equal") {
    for (auto [q, n, cap] : {std::tuple<long, int, int>{2, 50, 20}, {3, 120, 40}, {9, 80, 30}}) {
        auto pt = prime_counts(q, n);
        auto a = kernels::omega_float_table_serial(pt, n, cap);
        auto b = kernels::omega_float_table_parallel(pt, n, cap);
        REQUIRE(a.size() == b.size());
        CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
    }
}

TEST_CASE("serial and parallel stirling rows are bitwise equal") {
    for (int n : {1, 2, 37, 400}) {
        auto a = kernels::stirling_float_row_serial(n);
        auto b = kernels::stirling_float_row_parallel(n);
        REQUIRE(a.size() == b.size());
        CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
    }
}

TEST_CASE("table rows are probability vectors") {
    auto pt = prime_counts(5, 64);
    auto tab = kernels::omega_float_table_parallel(pt, 64, 64);
    for (int m = 1; m <= 64; ++m) {
        double sum = 0;
        for (int k = 0; k <= 64; ++k) {
            const double v = tab[size_t(m) * 65 + k];
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-11);
    }
}
