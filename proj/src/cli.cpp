#include "ffdist/cli.hpp"

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ffdist/analysis.hpp"
#include "ffdist/asymptotics.hpp"
#include "ffdist/errors.hpp"
#include "ffdist/exact_dist.hpp"
#include "ffdist/prime_tab.hpp"
#include "ffdist/report.hpp"
#include "ffdist/verify.hpp"

namespace ffdist::cli {
namespace {

struct Common {
    std::string format = "csv";
    std::string out_path;
    int threads = 0;
    double tol = 1e-10;
};

void add_common(CLI::App* cmd, Common& c, bool with_tol = true) {
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out_path, "Write output to a file instead of stdout");
    cmd->add_option("--threads", c.threads, "Worker threads (default: available parallelism)");
    if (with_tol)
        cmd->add_option("--tol", c.tol, "Series tolerance (natural-log scale throughout)");
}

void apply_threads(const Common& c) {
    int threads = c.threads;
    if (const char* env = std::getenv("FFDIST_THREADS")) {
        // the environment variable overrides --threads
        threads = std::atoi(env);
    }
    if (threads > 0) omp_set_num_threads(threads);
}

void validate_common(const Common& c) {
    if (!(c.tol > 0.0) || c.tol > 1e-3)
        throw validation_error("tol must lie in (0, 1e-3]");
}

long validated_q(long q) {
    if (!is_prime_power(q)) throw validation_error("q must be a prime power");
    return q;
}

void emit(const Common& c, const std::string& csv, const nlohmann::json& json,
          std::ostream& out) {
    std::string payload = c.format == "json" ? json.dump(2) + "\n" : csv;
    if (c.out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw validation_error("cannot write to " + c.out_path);
    f << payload;
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stol(item));
    }
    if (out.empty()) throw validation_error("empty list argument");
    return out;
}

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Distributions of prime-factor counts of random polynomials over F_q "
                 "versus cycle counts of random permutations. Logs are natural (base e): "
                 "the Poisson mean is log n and r = (k-1)/log n."};
    app.require_subcommand(1);

    // --- pi ---
    auto* pi_cmd = app.add_subcommand("pi", "Counts of monic irreducibles per degree");
    Common pi_common;
    long pi_q = 0;
    int pi_dmax = 0;
    pi_cmd->add_option("--q", pi_q, "Prime power")->required();
    pi_cmd->add_option("--dmax", pi_dmax, "Largest degree")->required();
    add_common(pi_cmd, pi_common, false);

    // --- dist ---
    auto* dist_cmd = app.add_subcommand("dist", "Distribution of K(pi_n) or Omega(f_n)");
    Common dist_common;
    std::string dist_kind;
    int dist_n = 0;
    long dist_q = 0;
    std::string dist_mode = "auto";
    int dist_kcap = 0;
    dist_cmd->add_option("--kind", dist_kind, "cycles or omega")
        ->required()
        ->check(CLI::IsMember({"cycles", "omega"}));
    dist_cmd->add_option("--n", dist_n, "Degree / permutation size")->required();
    dist_cmd->add_option("--q", dist_q, "Prime power (omega only)");
    dist_cmd->add_option("--mode", dist_mode, "exact, float, or auto")
        ->check(CLI::IsMember({"exact", "float", "auto"}));
    dist_cmd->add_option("--kcap", dist_kcap, "z-truncation for the float omega DP");
    add_common(dist_cmd, dist_common);

    // --- hq ---
    auto* hq_cmd = app.add_subcommand("hq", "Evaluate h_q(x) with a certified tail");
    Common hq_common;
    long hq_q = 0;
    double hq_x = 0;
    bool hq_oracle = false;
    hq_cmd->add_option("--q", hq_q, "Prime power")->required();
    hq_cmd->add_option("--x", hq_x, "Argument, 0 <= x < q")->required();
    hq_cmd->add_flag("--oracle", hq_oracle, "Also evaluate the direct-product oracle");
    add_common(hq_cmd, hq_common);

    // --- mainterm ---
    auto* mt_cmd = app.add_subcommand("mainterm", "Hwang / Warlimont / new main terms");
    Common mt_common;
    long mt_n = 0, mt_k = 0, mt_q = 0;
    std::string mt_which;
    mt_cmd->add_option("--n", mt_n)->required();
    mt_cmd->add_option("--k", mt_k)->required();
    mt_cmd->add_option("--q", mt_q)->required();
    mt_cmd->add_option("--which", mt_which, "hwang, warlimont or new")
        ->required()
        ->check(CLI::IsMember({"hwang", "warlimont", "new"}));
    add_common(mt_cmd, mt_common);

    // --- compare ---
    auto* cmp_cmd = app.add_subcommand("compare", "Pointwise ratio residuals per k");
    Common cmp_common;
    long cmp_q = 0;
    int cmp_n = 0, cmp_kmax = 0;
    cmp_cmd->add_option("--q", cmp_q)->required();
    cmp_cmd->add_option("--n", cmp_n)->required();
    cmp_cmd->add_option("--kmax", cmp_kmax, "Rows for k = 1..kmax");
    add_common(cmp_cmd, cmp_common);

    // --- tv ---
    auto* tv_cmd = app.add_subcommand("tv", "Total variation distance at (q, n)");
    Common tv_common;
    long tv_q = 0;
    int tv_n = 0;
    bool tv_decompose = false;
    std::string tv_mode = "auto";
    tv_cmd->add_option("--q", tv_q)->required();
    tv_cmd->add_option("--n", tv_n)->required();
    tv_cmd->add_flag("--decompose", tv_decompose, "Include the S1/S2/S3 interval split");
    tv_cmd->add_option("--mode", tv_mode)->check(CLI::IsMember({"exact", "float", "auto"}));
    add_common(tv_cmd, tv_common);

    // --- scaling ---
    auto* sc_cmd = app.add_subcommand("scaling", "d_tv * q * sqrt(log n) over a grid");
    Common sc_common;
    std::string sc_q = "2,3,5,7,9", sc_n = "100,1000,10000";
    std::string sc_mode = "float";
    sc_cmd->add_option("--q", sc_q, "Comma-separated prime powers");
    sc_cmd->add_option("--n", sc_n, "Comma-separated sizes");
    sc_cmd->add_option("--mode", sc_mode)->check(CLI::IsMember({"exact", "float"}));
    add_common(sc_cmd, sc_common);

    // --- verify ---
    auto* vf_cmd = app.add_subcommand("verify", "Run the invariant suites");
    Common vf_common;
    std::string vf_suite = "fast";
    vf_cmd->add_option("--suite", vf_suite)->check(CLI::IsMember({"all", "fast"}));
    add_common(vf_cmd, vf_common);

    std::vector<const char*> argv;
    argv.push_back("ffdist");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (pi_cmd->parsed()) {
        validate_common(pi_common);
        apply_threads(pi_common);
        validated_q(pi_q);
        if (pi_dmax < 1) throw validation_error("dmax must be >= 1");
        PiReport rep = PiReport::from(prime_counts(pi_q, pi_dmax));
        emit(pi_common, to_csv(rep), rep, out);
        return 0;
    }

    if (dist_cmd->parsed()) {
        validate_common(dist_common);
        apply_threads(dist_common);
        if (dist_n < 1) throw validation_error("n must be >= 1");
        DistributionRow row;
        if (dist_kind == "cycles") {
            bool exact = dist_mode == "exact" ||
                         (dist_mode == "auto" && dist_n <= kStirlingExactCap);
            row = exact ? stirling_row(dist_n) : stirling_row_float(dist_n);
        } else {
            validated_q(dist_q);
            bool exact =
                dist_mode == "exact" || (dist_mode == "auto" && dist_n <= kOmegaExactCap);
            std::optional<int> cap;
            if (dist_kcap > 0) cap = dist_kcap;
            row = exact ? omega_dist_exact(dist_q, dist_n)
                        : omega_dist_float(dist_q, dist_n, cap);
        }
        emit(dist_common, to_csv(row), row, out);
        return 0;
    }

    if (hq_cmd->parsed()) {
        validate_common(hq_common);
        apply_threads(hq_common);
        validated_q(hq_q);
        HqValue v = hq_certified(hq_q, hq_x, hq_common.tol);
        HqReport rep{hq_q, hq_x, hq_common.tol, v.value, v.tail, v.n_trunc, {}, {}, {}};
        if (hq_oracle) {
            const int d_max = 30;
            const double oracle = hq_direct_product(hq_q, hq_x, d_max);
            const double log_tail = hq_direct_product_tail(hq_q, hq_x, d_max);
            rep.oracle_value = oracle;
            rep.oracle_tail = oracle * std::expm1(log_tail);
            rep.abs_diff = std::abs(v.value - oracle);
        }
        emit(hq_common, to_csv(rep), rep, out);
        return 0;
    }

    if (mt_cmd->parsed()) {
        validate_common(mt_common);
        apply_threads(mt_common);
        validated_q(mt_q);
        if (mt_n < 2 || mt_k < 1 || mt_k > mt_n)
            throw validation_error("mainterm requires n >= 2 and 1 <= k <= n");
        const double r = double(mt_k - 1) / std::log(double(mt_n));
        double value = 0;
        if (mt_which == "hwang") {
            value = hwang_main_term(mt_n, mt_k);
        } else if (mt_which == "warlimont") {
            value = warlimont_main_term(mt_n, mt_k, mt_q);
        } else {
            DistributionRow cycles = mt_n <= kStirlingExactCap ? stirling_row(int(mt_n))
                                                               : stirling_row_float(int(mt_n));
            value = new_main_term(cycles.value_at(int(mt_k)), r, mt_q);
        }
        MaintermReport rep{mt_n, mt_k, mt_q, r, mt_which, value};
        emit(mt_common, to_csv(rep), rep, out);
        return 0;
    }

    if (cmp_cmd->parsed()) {
        validate_common(cmp_common);
        apply_threads(cmp_common);
        validated_q(cmp_q);
        if (cmp_n < 2) throw validation_error("n must be >= 2");
        auto rows = ratio_report(cmp_q, cmp_n, cmp_kmax);
        emit(cmp_common, to_csv(rows), rows, out);
        return 0;
    }

    if (tv_cmd->parsed()) {
        validate_common(tv_common);
        apply_threads(tv_common);
        validated_q(tv_q);
        if (tv_n < 1) throw validation_error("n must be >= 1");
        DistMode mode = tv_mode == "exact" ? DistMode::Exact
                        : tv_mode == "float"
                            ? DistMode::Float
                            : (tv_n <= kOmegaExactCap ? DistMode::Exact : DistMode::Float);
        std::vector<TVReport> reps = {tv_report(tv_q, tv_n, mode)};
        nlohmann::json j = reps;
        if (!tv_decompose)
            for (auto& item : j) {
                item.erase("s1");
                item.erase("s2");
                item.erase("s3");
            }
        emit(tv_common, to_csv(reps, tv_decompose), j, out);
        return 0;
    }

    if (sc_cmd->parsed()) {
        validate_common(sc_common);
        apply_threads(sc_common);
        std::vector<long> qs = parse_long_list(sc_q);
        for (long q : qs) validated_q(q);
        std::vector<int> ns;
        for (long n : parse_long_list(sc_n)) {
            if (n < 1) throw validation_error("n must be >= 1");
            ns.push_back(int(n));
        }
        auto reps = tv_scaling_study(
            qs, ns, sc_mode == "exact" ? DistMode::Exact : DistMode::Float);
        emit(sc_common, to_csv(reps), reps, out);
        return 0;
    }

    if (vf_cmd->parsed()) {
        validate_common(vf_common);
        apply_threads(vf_common);
        auto results = ffdist::verify::run_suite(vf_suite == "fast", out);
        return ffdist::verify::all_passed(results) ? 0 : 1;
    }

    return 1;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(std::move(args), out, err);
    } catch (const resource_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ffdist::cli
