#include "hcross/experiments.hpp"

#include "hcross/errors.hpp"
#include "hcross/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace hcross {

namespace {

ScalingRecord base_record(double q, const MinimalMOptions& o, bool real, std::size_t n) {
    ScalingRecord r;
    r.q = q;
    r.generator = to_string(o.generator.kind);
    r.seed = o.seed;
    r.trials = o.trials;
    r.theta = o.theta;
    r.real = real;
    r.target_c1 = o.target.c1;
    r.target_c2 = o.target.c2;
    const double factor = real ? std::pow(2.0, q + 1.0) : 1.0;
    r.complex_c1 = o.target.c1 / factor;
    r.complex_c2 = o.target.c2 * factor;
    r.cap = o.cap_factor * n;
    r.restarts = o.search.restarts;
    r.steps = o.search.steps;
    return r;
}

}  // namespace

std::vector<ScalingRecord> scaling_study(double q, const AnisotropyWeights& gamma, int n_min, int n_max,
                                         const ScalingOptions& options) {
    if (!(q >= 1.0) || !std::isfinite(q)) throw ValidationError("q must lie in [1, infinity)");
    if (n_min < 0 || n_max < n_min) throw ValidationError("scaling study needs 0 <= n_min <= n_max");
    const auto top = cross_cardinality(n_max, gamma);
    if (top > options.max_cardinality)
        throw BudgetError("|Q_" + std::to_string(n_max) + "| = " + std::to_string(top) + " exceeds the study limit " +
                          std::to_string(options.max_cardinality));
    std::vector<ScalingRecord> records;
    for (int n = n_min; n <= n_max; ++n) {
        auto support = share(anisotropic_cross(n, gamma));
        auto level = options.search;
        level.seed = derive_seed(options.search.seed, {static_cast<std::uint64_t>(n)});
        level.search.real = options.real;
        const auto result = minimal_m_search(support, q, level);
        auto r = base_record(q, options.search, options.real, support->size());
        r.gamma = gamma.to_string();
        r.n = n;
        r.cardinality = support->size();
        r.m_star = result.m_star;
        r.censored = result.censored;
        records.push_back(std::move(r));
    }
    return records;
}

double reference_exponent(std::size_t nu, double q) {
    if (nu < 1) throw ValidationError("nu must be at least 1");
    if (!(q >= 1.0) || !std::isfinite(q)) throw ValidationError("q must lie in [1, infinity)");
    if (q == 1.0) return 3.0;
    if (q <= 2.0) return 2.0;
    return (static_cast<double>(nu) - 1.0) * (q - 2.0) + std::min(q, 3.0);
}

double arbitrary_set_exponent(double q) {
    if (!(q >= 1.0 && q < 2.0)) throw ValidationError("general sets are studied for q in [1, 2)");
    return q == 1.0 ? 3.0 : 2.0;
}

ExponentFit fit_exponent(const std::vector<ScalingRecord>& records) {
    std::vector<double> x, y;
    std::set<int> levels;
    ExponentFit fit;
    for (const auto& r : records) {
        if (r.censored) continue;
        if (r.n < 1 || r.cardinality == 0 || r.m_star == 0)
            throw ValidationError("exponent fit needs n >= 1 and positive N, m_star");
        x.push_back(std::log(static_cast<double>(r.n)));
        y.push_back(std::log(static_cast<double>(r.m_star) / static_cast<double>(r.cardinality)));
        levels.insert(r.n);
    }
    if (x.size() < 3) throw ValidationError("exponent fit needs at least 3 uncensored records");
    if (levels.size() < 2) throw ValidationError("exponent fit needs at least two distinct levels n");
    const double k = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    fit.w_hat = sxy / sxx;
    fit.intercept = my - fit.w_hat * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - fit.intercept - fit.w_hat * x[i];
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / k);
    fit.n_min = *levels.begin();
    fit.n_max = *levels.rbegin();
    fit.points = x.size();

    const auto& first = records.front();
    if (!first.gamma.empty() && first.gamma != "custom") {
        try {
            fit.reference = reference_exponent(AnisotropyWeights::parse(first.gamma).nu(), first.q);
        } catch (const ValidationError&) {
            fit.reference.reset();
        }
    }
    return fit;
}

std::vector<ScalingRecord> arbitrary_q_study(const std::vector<SupportPtr>& sets, double q,
                                             const MinimalMOptions& options) {
    const double w = arbitrary_set_exponent(q);
    std::vector<ScalingRecord> records;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto& support = sets[i];
        if (support->empty()) throw ValidationError("empty frequency set in study");
        auto level = options;
        level.seed = derive_seed(options.seed, {static_cast<std::uint64_t>(i)});
        level.search.real = false;
        const auto result = minimal_m_search(support, q, level);
        auto r = base_record(q, options, false, support->size());
        r.gamma = "custom";
        r.n = static_cast<int>(i);
        r.cardinality = support->size();
        r.m_star = result.m_star;
        r.censored = result.censored;
        const double big_n = static_cast<double>(support->size());
        r.normalized = static_cast<double>(result.m_star) / (big_n * std::pow(std::log(2.0 * big_n), w));
        records.push_back(std::move(r));
    }
    return records;
}

// ------------------------------------------------------------------ csv

const std::vector<std::string>& scaling_csv_columns() {
    static const std::vector<std::string> columns = {
        "q",      "gamma",     "n",         "N",          "m_star",     "censored", "generator",
        "seed",   "trials",    "theta",     "real",       "target_c1",  "target_c2", "complex_c1",
        "complex_c2", "cap",   "restarts",  "steps",      "normalized"};
    return columns;
}

namespace {

std::string gamma_field(const std::string& gamma) {
    std::string s = gamma;
    std::replace(s.begin(), s.end(), ',', ';');
    return s;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s, const char* what) {
    if (s == "nan") return std::nan("");
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw ValidationError(std::string("bad ") + what + " field '" + s + "'");
    return v;
}

unsigned long long parse_unsigned(const std::string& s, const char* what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || s.front() == '-')
        throw ValidationError(std::string("bad ") + what + " field '" + s + "'");
    return v;
}

}  // namespace

void write_scaling_csv(std::ostream& os, const std::vector<ScalingRecord>& records) {
    const auto& cols = scaling_csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : records) {
        os << format_double(r.q) << ',' << gamma_field(r.gamma) << ',' << r.n << ',' << r.cardinality << ','
           << r.m_star << ',' << (r.censored ? 1 : 0) << ',' << r.generator << ',' << r.seed << ',' << r.trials << ','
           << format_double(r.theta) << ',' << (r.real ? 1 : 0) << ',' << format_double(r.target_c1) << ','
           << format_double(r.target_c2) << ',' << format_double(r.complex_c1) << ','
           << format_double(r.complex_c2) << ',' << r.cap << ',' << r.restarts << ',' << r.steps << ','
           << (r.normalized ? format_double(*r.normalized) : std::string()) << '\n';
    }
}

std::vector<ScalingRecord> read_scaling_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ValidationError("records file is empty");
    const auto header = split(line, ',');
    const auto& cols = scaling_csv_columns();
    if (header != cols) throw ValidationError("records header does not match the scaling columns");
    std::vector<ScalingRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != cols.size())
            throw ValidationError("records line has " + std::to_string(f.size()) + " fields, expected " +
                                  std::to_string(cols.size()));
        ScalingRecord r;
        r.q = parse_double(f[0], "q");
        r.gamma = f[1];
        std::replace(r.gamma.begin(), r.gamma.end(), ';', ',');
        r.n = static_cast<int>(parse_unsigned(f[2], "n"));
        r.cardinality = parse_unsigned(f[3], "N");
        r.m_star = parse_unsigned(f[4], "m_star");
        r.censored = parse_unsigned(f[5], "censored") != 0;
        r.generator = f[6];
        r.seed = parse_unsigned(f[7], "seed");
        r.trials = static_cast<int>(parse_unsigned(f[8], "trials"));
        r.theta = parse_double(f[9], "theta");
        r.real = parse_unsigned(f[10], "real") != 0;
        r.target_c1 = parse_double(f[11], "target_c1");
        r.target_c2 = parse_double(f[12], "target_c2");
        r.complex_c1 = parse_double(f[13], "complex_c1");
        r.complex_c2 = parse_double(f[14], "complex_c2");
        r.cap = parse_unsigned(f[15], "cap");
        r.restarts = static_cast<int>(parse_unsigned(f[16], "restarts"));
        r.steps = static_cast<int>(parse_unsigned(f[17], "steps"));
        if (!f[18].empty()) r.normalized = parse_double(f[18], "normalized");
        out.push_back(std::move(r));
    }
    return out;
}

NikolskiiEntropyCheck nikolskii_entropy_check(double m_lower, double eps1, std::size_t cardinality, double q,
                                              double slack) {
    NikolskiiEntropyCheck c;
    c.m_lower = m_lower;
    c.eps1 = eps1;
    c.bound = 4.0 * eps1 * std::pow(static_cast<double>(cardinality), 1.0 / q) * (1.0 + slack);
    c.holds = m_lower <= c.bound;
    return c;
}

}  // namespace hcross
