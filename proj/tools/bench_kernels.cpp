// Times the serial reference kernels against the OpenMP ones and checks the
// outputs stay bitwise identical. Usage: bench_kernels [n] [q] [reps]

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "ffdist/exact_dist.hpp"
#include "ffdist/kernels.hpp"
#include "ffdist/prime_tab.hpp"

using namespace ffdist;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const double t0 = omp_get_wtime();
        f();
        const double t = omp_get_wtime() - t0;
        if (t < best) best = t;
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 2000;
    const long q = argc > 2 ? std::atol(argv[2]) : 3;
    const int reps = argc > 3 ? std::atoi(argv[3]) : 3;
    const int k_cap = default_k_cap(n);

    std::printf("omega float DP: q=%ld n=%d k_cap=%d, stirling row: n=%d\n", q, n, k_cap,
                8 * n);
    std::printf("threads available: %d, best of %d reps\n\n", omp_get_max_threads(), reps);

    const PrimeCountTable pt = prime_counts(q, n);

    std::vector<double> serial, parallel;
    const double t_omega_s =
        best_of(reps, [&] { serial = kernels::omega_float_table_serial(pt, n, k_cap); });
    const double t_omega_p =
        best_of(reps, [&] { parallel = kernels::omega_float_table_parallel(pt, n, k_cap); });
    const bool omega_same =
        serial.size() == parallel.size() &&
        std::memcmp(serial.data(), parallel.data(), serial.size() * sizeof(double)) == 0;

    std::vector<double> row_s, row_p;
    const double t_stir_s =
        best_of(reps, [&] { row_s = kernels::stirling_float_row_serial(8 * n); });
    const double t_stir_p =
        best_of(reps, [&] { row_p = kernels::stirling_float_row_parallel(8 * n); });
    const bool stir_same = row_s.size() == row_p.size() &&
                           std::memcmp(row_s.data(), row_p.data(),
                                       row_s.size() * sizeof(double)) == 0;

    std::printf("%-22s %10s %10s %8s %s\n", "kernel", "serial", "openmp", "speedup",
                "bitwise");
    std::printf("%-22s %9.3fs %9.3fs %7.2fx %s\n", "omega_float_table", t_omega_s, t_omega_p,
                t_omega_s / t_omega_p, omega_same ? "equal" : "DIFFER");
    std::printf("%-22s %9.3fs %9.3fs %7.2fx %s\n", "stirling_float_row", t_stir_s, t_stir_p,
                t_stir_s / t_stir_p, stir_same ? "equal" : "DIFFER");

    return (omega_same && stir_same) ? 0 : 1;
}
