#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffdist/analysis.hpp"
#include "ffdist/exact_dist.hpp"
#include "ffdist/prime_tab.hpp"

namespace ffdist {

// Reports mirror the module fields and serialize byte-identically for
// identical inputs: CSV with a header row, '.' decimal separator, floats at
// 18 significant digits, rationals as "p/q" next to a decimal column.

struct PiReport {
    long q = 0;
    int d_max = 0;
    std::vector<mpz_class> counts;  // index d in [1..d_max]

    static PiReport from(const PrimeCountTable& t) { return {t.q, t.d_max, t.counts}; }
    bool operator==(const PiReport&) const = default;
};

struct HqReport {
    long q = 0;
    double x = 0, tol = 0, value = 0, tail = 0;
    int n_trunc = 0;
    std::optional<double> oracle_value, oracle_tail, abs_diff;
    bool operator==(const HqReport&) const = default;
};

struct MaintermReport {
    long n = 0, k = 0, q = 0;
    double r = 0;
    std::string which;
    double value = 0;
    bool operator==(const MaintermReport&) const = default;
};

bool operator==(const DistributionRow& a, const DistributionRow& b);
bool operator==(const ComparisonRow& a, const ComparisonRow& b);
bool operator==(const TVReport& a, const TVReport& b);
bool operator==(const AbtRow& a, const AbtRow& b);
bool operator==(const AbtReport& a, const AbtReport& b);

std::string format_double(double v);
std::string format_rational(const mpq_class& v);  // canonical "p/q" (or "p" when q = 1)
mpq_class parse_rational(const std::string& s);

std::string to_csv(const PiReport& r);
std::string to_csv(const DistributionRow& r);
std::string to_csv(const std::vector<ComparisonRow>& rows);
std::string to_csv(const std::vector<TVReport>& rows, bool decompose = true);
std::string to_csv(const AbtReport& r);
std::string to_csv(const HqReport& r);
std::string to_csv(const MaintermReport& r);

void to_json(nlohmann::json& j, const PiReport& r);
void from_json(const nlohmann::json& j, PiReport& r);
void to_json(nlohmann::json& j, const DistributionRow& r);
void from_json(const nlohmann::json& j, DistributionRow& r);
void to_json(nlohmann::json& j, const ComparisonRow& r);
void from_json(const nlohmann::json& j, ComparisonRow& r);
void to_json(nlohmann::json& j, const TVReport& r);
void from_json(const nlohmann::json& j, TVReport& r);
void to_json(nlohmann::json& j, const AbtReport& r);
void from_json(const nlohmann::json& j, AbtReport& r);
void to_json(nlohmann::json& j, const HqReport& r);
void from_json(const nlohmann::json& j, HqReport& r);
void to_json(nlohmann::json& j, const MaintermReport& r);
void from_json(const nlohmann::json& j, MaintermReport& r);

}  // namespace ffdist
