#include "ffdist/report.hpp"

#include <cstdio>
#include <sstream>

#include "ffdist/errors.hpp"

namespace ffdist {
namespace {

const char* kind_name(DistKind k) { return k == DistKind::Cycles ? "cycles" : "omega"; }
const char* mode_name(DistMode m) { return m == DistMode::Exact ? "exact" : "float"; }

DistKind kind_from(const std::string& s) {
    if (s == "cycles") return DistKind::Cycles;
    if (s == "omega") return DistKind::Omega;
    throw validation_error("unknown kind: " + s);
}

DistMode mode_from(const std::string& s) {
    if (s == "exact") return DistMode::Exact;
    if (s == "float") return DistMode::Float;
    throw validation_error("unknown mode: " + s);
}

}  // namespace

bool operator==(const DistributionRow& a, const DistributionRow& b) {
    return a.n == b.n && a.kind == b.kind && a.q == b.q && a.mode == b.mode &&
           a.k_cap == b.k_cap && a.exact == b.exact && a.values == b.values;
}

bool operator==(const ComparisonRow& a, const ComparisonRow& b) {
    return a.n == b.n && a.q == b.q && a.k == b.k && a.r == b.r && a.p_omega == b.p_omega &&
           a.p_cycles == b.p_cycles && a.ratio == b.ratio && a.hq_r == b.hq_r &&
           a.residual == b.residual && a.normalized == b.normalized && a.envelope == b.envelope;
}

bool operator==(const TVReport& a, const TVReport& b) {
    return a.n == b.n && a.q == b.q && a.d_tv == b.d_tv && a.scaled == b.scaled &&
           a.s1 == b.s1 && a.s2 == b.s2 && a.s3 == b.s3 && a.mode == b.mode &&
           a.d_tv_exact == b.d_tv_exact;
}

bool operator==(const AbtRow& a, const AbtRow& b) { return a.k == b.k && a.value == b.value; }

bool operator==(const AbtReport& a, const AbtReport& b) {
    return a.q == b.q && a.n == b.n && a.rows == b.rows && a.supremum == b.supremum;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.18g", v);
    return buf;
}

std::string format_rational(const mpq_class& v) { return v.get_str(); }

mpq_class parse_rational(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw validation_error("bad rational: " + s);
    v.canonicalize();
    return v;
}

std::string to_csv(const PiReport& r) {
    std::ostringstream out;
    out << "d,pi\n";
    for (int d = 1; d <= r.d_max; ++d) out << d << ',' << r.counts[d].get_str() << '\n';
    return out.str();
}

std::string to_csv(const DistributionRow& r) {
    std::ostringstream out;
    out << "# kind=" << kind_name(r.kind);
    if (r.kind == DistKind::Omega) out << " q=" << r.q;
    out << " n=" << r.n << " mode=" << mode_name(r.mode) << " k_cap=" << r.k_cap << '\n';
    if (r.mode == DistMode::Exact) {
        out << "k,probability,decimal\n";
        for (int k = 1; k <= r.n; ++k)
            out << k << ',' << format_rational(r.exact[k]) << ','
                << format_double(mpq_get_d(r.exact[k].get_mpq_t())) << '\n';
    } else {
        out << "k,probability\n";
        for (int k = 1; k <= r.n; ++k) out << k << ',' << format_double(r.values[k]) << '\n';
    }
    return out.str();
}

std::string to_csv(const std::vector<ComparisonRow>& rows) {
    std::ostringstream out;
    out << "n,q,k,r,p_omega,p_cycles,ratio,hq_r,residual,normalized,envelope\n";
    for (const auto& c : rows)
        out << c.n << ',' << c.q << ',' << c.k << ',' << format_double(c.r) << ','
            << format_double(c.p_omega) << ',' << format_double(c.p_cycles) << ','
            << format_double(c.ratio) << ',' << format_double(c.hq_r) << ','
            << format_double(c.residual) << ',' << format_double(c.normalized) << ','
            << format_double(c.envelope) << '\n';
    return out.str();
}

std::string to_csv(const std::vector<TVReport>& rows, bool decompose) {
    std::ostringstream out;
    out << "n,q,mode,d_tv,d_tv_decimal,scaled";
    if (decompose) out << ",s1,s2,s3";
    out << '\n';
    for (const auto& t : rows) {
        out << t.n << ',' << t.q << ',' << mode_name(t.mode) << ','
            << (t.d_tv_exact ? format_rational(*t.d_tv_exact) : format_double(t.d_tv)) << ','
            << format_double(t.d_tv) << ',' << format_double(t.scaled);
        if (decompose)
            out << ',' << format_double(t.s1) << ',' << format_double(t.s2) << ','
                << format_double(t.s3);
        out << '\n';
    }
    return out.str();
}

std::string to_csv(const AbtReport& r) {
    std::ostringstream out;
    out << "q,n,k,value\n";
    for (const auto& row : r.rows)
        out << r.q << ',' << r.n << ',' << row.k << ',' << format_double(row.value) << '\n';
    return out.str();
}

std::string to_csv(const HqReport& r) {
    std::ostringstream out;
    out << "q,x,tol,value,tail,n_trunc";
    if (r.oracle_value) out << ",oracle_value,oracle_tail,abs_diff";
    out << '\n';
    out << r.q << ',' << format_double(r.x) << ',' << format_double(r.tol) << ','
        << format_double(r.value) << ',' << format_double(r.tail) << ',' << r.n_trunc;
    if (r.oracle_value)
        out << ',' << format_double(*r.oracle_value) << ',' << format_double(*r.oracle_tail)
            << ',' << format_double(*r.abs_diff);
    out << '\n';
    return out.str();
}

std::string to_csv(const MaintermReport& r) {
    std::ostringstream out;
    out << "n,k,q,r,which,value\n";
    out << r.n << ',' << r.k << ',' << r.q << ',' << format_double(r.r) << ',' << r.which << ','
        << format_double(r.value) << '\n';
    return out.str();
}

void to_json(nlohmann::json& j, const PiReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (int d = 1; d <= r.d_max; ++d)
        rows.push_back({{"d", d}, {"pi", r.counts[d].get_str()}});
    j = {{"q", r.q}, {"d_max", r.d_max}, {"rows", rows}};
}

void from_json(const nlohmann::json& j, PiReport& r) {
    r.q = j.at("q").get<long>();
    r.d_max = j.at("d_max").get<int>();
    r.counts.assign(size_t(r.d_max) + 1, mpz_class(0));
    for (const auto& row : j.at("rows"))
        r.counts[row.at("d").get<int>()] = mpz_class(row.at("pi").get<std::string>());
}

void to_json(nlohmann::json& j, const DistributionRow& r) {
    j = {{"kind", kind_name(r.kind)},
         {"n", r.n},
         {"mode", mode_name(r.mode)},
         {"k_cap", r.k_cap}};
    if (r.kind == DistKind::Omega) j["q"] = r.q;
    nlohmann::json mass = nlohmann::json::array();
    for (int k = 1; k <= r.n; ++k) {
        if (r.mode == DistMode::Exact)
            mass.push_back({{"k", k},
                            {"probability", format_rational(r.exact[k])},
                            {"decimal", mpq_get_d(r.exact[k].get_mpq_t())}});
        else
            mass.push_back({{"k", k}, {"probability", r.values[k]}});
    }
    j["mass"] = mass;
}

void from_json(const nlohmann::json& j, DistributionRow& r) {
    r.kind = kind_from(j.at("kind").get<std::string>());
    r.n = j.at("n").get<int>();
    r.mode = mode_from(j.at("mode").get<std::string>());
    r.k_cap = j.at("k_cap").get<int>();
    r.q = r.kind == DistKind::Omega ? j.at("q").get<long>() : 0;
    r.exact.clear();
    r.values.clear();
    if (r.mode == DistMode::Exact) {
        r.exact.assign(size_t(r.n) + 1, mpq_class(0));
        for (const auto& m : j.at("mass"))
            r.exact[m.at("k").get<int>()] =
                parse_rational(m.at("probability").get<std::string>());
    } else {
        r.values.assign(size_t(r.n) + 1, 0.0);
        for (const auto& m : j.at("mass"))
            r.values[m.at("k").get<int>()] = m.at("probability").get<double>();
    }
}

void to_json(nlohmann::json& j, const ComparisonRow& r) {
    j = {{"n", r.n},           {"q", r.q},
         {"k", r.k},           {"r", r.r},
         {"p_omega", r.p_omega}, {"p_cycles", r.p_cycles},
         {"ratio", r.ratio},   {"hq_r", r.hq_r},
         {"residual", r.residual}, {"normalized", r.normalized},
         {"envelope", r.envelope}};
}

void from_json(const nlohmann::json& j, ComparisonRow& r) {
    r.n = j.at("n").get<int>();
    r.q = j.at("q").get<long>();
    r.k = j.at("k").get<long>();
    r.r = j.at("r").get<double>();
    r.p_omega = j.at("p_omega").get<double>();
    r.p_cycles = j.at("p_cycles").get<double>();
    r.ratio = j.at("ratio").get<double>();
    r.hq_r = j.at("hq_r").get<double>();
    r.residual = j.at("residual").get<double>();
    r.normalized = j.at("normalized").get<double>();
    r.envelope = j.at("envelope").get<double>();
}

void to_json(nlohmann::json& j, const TVReport& r) {
    j = {{"n", r.n},       {"q", r.q},   {"d_tv", r.d_tv}, {"scaled", r.scaled},
         {"s1", r.s1},     {"s2", r.s2}, {"s3", r.s3},     {"mode", mode_name(r.mode)}};
    if (r.d_tv_exact) j["d_tv_exact"] = format_rational(*r.d_tv_exact);
}

void from_json(const nlohmann::json& j, TVReport& r) {
    r.n = j.at("n").get<int>();
    r.q = j.at("q").get<long>();
    r.d_tv = j.at("d_tv").get<double>();
    r.scaled = j.at("scaled").get<double>();
    r.s1 = j.at("s1").get<double>();
    r.s2 = j.at("s2").get<double>();
    r.s3 = j.at("s3").get<double>();
    r.mode = mode_from(j.at("mode").get<std::string>());
    if (j.contains("d_tv_exact"))
        r.d_tv_exact = parse_rational(j.at("d_tv_exact").get<std::string>());
    else
        r.d_tv_exact.reset();
}

void to_json(nlohmann::json& j, const AbtReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) rows.push_back({{"k", row.k}, {"value", row.value}});
    j = {{"q", r.q}, {"n", r.n}, {"rows", rows}, {"supremum", r.supremum}};
}

void from_json(const nlohmann::json& j, AbtReport& r) {
    r.q = j.at("q").get<long>();
    r.n = j.at("n").get<int>();
    r.rows.clear();
    for (const auto& row : j.at("rows"))
        r.rows.push_back({row.at("k").get<long>(), row.at("value").get<double>()});
    r.supremum = j.at("supremum").get<double>();
}

void to_json(nlohmann::json& j, const HqReport& r) {
    j = {{"q", r.q},     {"x", r.x},       {"tol", r.tol},
         {"value", r.value}, {"tail", r.tail}, {"n_trunc", r.n_trunc}};
    if (r.oracle_value) {
        j["oracle_value"] = *r.oracle_value;
        j["oracle_tail"] = *r.oracle_tail;
        j["abs_diff"] = *r.abs_diff;
    }
}

void from_json(const nlohmann::json& j, HqReport& r) {
    r.q = j.at("q").get<long>();
    r.x = j.at("x").get<double>();
    r.tol = j.at("tol").get<double>();
    r.value = j.at("value").get<double>();
    r.tail = j.at("tail").get<double>();
    r.n_trunc = j.at("n_trunc").get<int>();
    if (j.contains("oracle_value")) {
        r.oracle_value = j.at("oracle_value").get<double>();
        r.oracle_tail = j.at("oracle_tail").get<double>();
        r.abs_diff = j.at("abs_diff").get<double>();
    } else {
        r.oracle_value.reset();
        r.oracle_tail.reset();
        r.abs_diff.reset();
    }
}

void to_json(nlohmann::json& j, const MaintermReport& r) {
    j = {{"n", r.n}, {"k", r.k},         {"q", r.q},
         {"r", r.r}, {"which", r.which}, {"value", r.value}};
}

void from_json(const nlohmann::json& j, MaintermReport& r) {
    r.n = j.at("n").get<long>();
    r.k = j.at("k").get<long>();
    r.q = j.at("q").get<long>();
    r.r = j.at("r").get<double>();
    r.which = j.at("which").get<std::string>();
    r.value = j.at("value").get<double>();
}

}  // namespace ffdist
