#include "hcross/discretization.hpp"
#include "hcross/entropy.hpp"
#include "hcross/errors.hpp"
#include "hcross/experiments.hpp"
#include "hcross/index_sets.hpp"
#include "hcross/nikolskii.hpp"
#include "hcross/seeding.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace hcross {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

struct Common {
    std::string out_dir = "results";
    std::string tag;
};

// Frequency set flags shared by most subcommands.
struct SetFlags {
    std::size_t d = 1;
    int n = 1;
    std::string gamma;
    std::string kind = "cross";
    std::string block;

    [[nodiscard]] AnisotropyWeights weights() const {
        if (gamma.empty()) return AnisotropyWeights::ones(d);
        auto w = AnisotropyWeights::parse(gamma);
        return w;
    }

    [[nodiscard]] std::size_t dim() const { return gamma.empty() ? d : weights().dim(); }

    [[nodiscard]] IndexSet build(int level) const {
        if (!block.empty()) {
            std::vector<int> s;
            std::stringstream ss(block);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                try {
                    s.push_back(std::stoi(cell));
                } catch (const std::exception&) {
                    throw ValidationError("bad block entry '" + cell + "'");
                }
            }
            return dyadic_block(s);
        }
        if (kind == "cube") return cube(level, dim());
        if (kind != "cross") throw ValidationError("unknown set kind '" + kind + "' (cross, cube)");
        return anisotropic_cross(level, weights());
    }
};

void add_set_flags(CLI::App* app, SetFlags& f, const char* level_flag) {
    app->add_option("--d", f.d, "dimension (isotropic weights)")->check(CLI::PositiveNumber);
    app->add_option(level_flag, f.n, "level n of the frequency set")->check(CLI::NonNegativeNumber);
    app->add_option("--gamma", f.gamma, "anisotropy weights, e.g. 1,3/2");
    app->add_option("--kind", f.kind, "cross or cube");
    app->add_option("--block", f.block, "dyadic block s, e.g. 1,2");
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--out", c.out_dir, "results root directory");
    app->add_option("--tag", c.tag, "run directory name (default: UTC timestamp)");
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const std::string& sub) {
    if (!seed) throw ValidationError(sub + ": --seed is required for randomized runs");
    return *seed;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

fs::path run_directory(const Common& c, const std::string& sub) {
    const fs::path base = fs::path(c.out_dir) / sub;
    fs::path dir;
    if (!c.tag.empty()) {
        if (c.tag.find('/') != std::string::npos || c.tag == "." || c.tag == "..")
            throw ValidationError("--tag must be a plain directory name");
        dir = base / c.tag;
    } else {
        const auto stamp = timestamp();
        dir = base / stamp;
        for (int i = 2; fs::exists(dir); ++i) dir = base / (stamp + "-" + std::to_string(i));
    }
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw ValidationError("cannot write " + p.string());
    os << text;
}

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

struct Outputs {
    json params;
    std::string records;
    json summary;
};

void emit(const Common& c, const std::string& sub, const Outputs& o, std::ostream& out) {
    const auto dir = run_directory(c, sub);
    write_json(dir / "params.json", o.params);
    write_text(dir / "records.csv", o.records);
    write_json(dir / "summary.json", o.summary);
    out << "results: " << dir.string() << '\n';
}

json set_json(const IndexSet& q) { return {{"tag", q.tag()}, {"d", q.dim()}, {"N", q.size()}, {"level", q.origin().level}}; }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ------------------------------------------------------------------ subcommands

int run_index_set(const Common& c, const SetFlags& f, std::ostream& out) {
    const auto q = f.build(f.n);
    out << "cardinality " << q.size() << '\n';
    write_index_set(out, q);

    Outputs o;
    o.params = {{"d", q.dim()}, {"n", f.n}, {"kind", f.block.empty() ? f.kind : "block"}, {"gamma", f.gamma},
                {"block", f.block}};
    std::ostringstream rec;
    for (std::size_t j = 0; j < q.dim(); ++j) rec << (j ? "," : "") << 'k' << j + 1;
    rec << '\n';
    for (const auto& k : q) {
        for (std::size_t j = 0; j < k.dim(); ++j) rec << (j ? "," : "") << k[j];
        rec << '\n';
    }
    o.records = rec.str();
    o.summary = set_json(q);
    o.summary["cardinality"] = q.size();
    o.summary["columns"] = "k1..kd: one frequency vector per row, lexicographic order";
    emit(c, "index-set", o, out);
    return kExitOk;
}

struct CertifyFlags {
    double q = 2.0;
    std::size_t grid = 0;
    std::size_t m = 0;
    std::string generator = "uniform";
    std::optional<std::uint64_t> seed;
    double c1 = 0.5;
    double c2 = 1.5;
    int restarts = 32;
    int steps = 200;
    bool real = false;
};

int run_certify(const Common& c, const SetFlags& f, const CertifyFlags& cf, std::ostream& out) {
    const auto q = share(f.build(f.n));
    const std::size_t d = q->dim();
    const bool randomized_points = cf.grid == 0;
    if (randomized_points && cf.m == 0) throw ValidationError("certify: give --grid or --m");
    std::uint64_t seed = 0;
    if (randomized_points || cf.q != 2.0) seed = require_seed(cf.seed, "certify");

    std::optional<PointSet> xi;
    if (!randomized_points) {
        xi = equispaced_grid(std::vector<std::size_t>(d, cf.grid));
    } else {
        PointGenerator g{parse_generator(cf.generator), derive_seed(seed, {0}), {}};
        if (g.kind == GeneratorKind::equispaced_grid) throw ValidationError("certify: use --grid for equispaced points");
        if (g.kind == GeneratorKind::subsampled_grid)
            for (auto a : q->max_abs()) g.sizes.push_back(4 * (2 * static_cast<std::size_t>(a) + 1));
        xi = generate_points(g, cf.m, d);
    }
    RatioSearchOptions search;
    search.restarts = cf.restarts;
    search.steps = cf.steps;
    search.seed = derive_seed(seed, {1});
    search.real = cf.real;
    const auto result = certify(q, *xi, cf.q, {cf.c1, cf.c2}, search);

    Outputs o;
    o.params = {{"q", cf.q},          {"set", set_json(*q)}, {"grid", cf.grid},       {"m", xi->size()},
                {"generator", randomized_points ? cf.generator : "equispaced"},
                {"seed", cf.seed ? json(*cf.seed) : json(nullptr)},
                {"c1", cf.c1},        {"c2", cf.c2},         {"restarts", cf.restarts}, {"steps", cf.steps},
                {"real", cf.real}};
    json report = result.report;
    o.summary = {{"report", report},
                 {"accepted", result.accepted},
                 {"provisional", result.provisional},
                 {"columns", "q,m,N,C1,C2,exact,accepted,provisional"}};
    std::ostringstream rec;
    rec << "q,m,N,C1,C2,exact,accepted,provisional\n"
        << fmt(cf.q) << ',' << result.report.m << ',' << result.report.n << ',' << fmt(result.report.c1) << ','
        << fmt(result.report.c2) << ',' << result.report.exact << ',' << result.accepted << ','
        << result.provisional << '\n';
    o.records = rec.str();

    char line[200];
    std::snprintf(line, sizeof line, "C1=%.12g C2=%.12g exact=%s accepted=%s%s\n", result.report.c1,
                  result.report.c2, result.report.exact ? "true" : "false", result.accepted ? "true" : "false",
                  result.provisional ? " (provisional)" : "");
    out << line;
    emit(c, "certify", o, out);
    return kExitOk;
}

struct NikolskiiFlags {
    double q = 4.0;
    std::optional<int> n_min;
    std::optional<int> n_max;
    std::optional<std::uint64_t> seed;
    int restarts = 16;
    int steps = 200;
};

int run_nikolskii(const Common& c, const SetFlags& f, const NikolskiiFlags& nf, std::ostream& out) {
    const auto seed = require_seed(nf.seed, "nikolskii");
    const int lo = nf.n_min.value_or(f.n);
    const int hi = nf.n_max.value_or(nf.n_min ? lo : f.n);
    if (hi < lo) throw ValidationError("nikolskii: --n-max below --n-min");
    NikolskiiOptions opts{nf.restarts, nf.steps, seed, kDefaultOversampling};

    std::vector<AsymptoticRow> rows;
    std::vector<std::string> witness_tags;
    if (nf.q > 2.0 && std::isfinite(nf.q) && f.block.empty() && f.kind == "cross") {
        const auto w = f.weights();
        rows = asymptotic_comparison(w.nu(), w, nf.q, std::max(lo, 1), hi, opts, kDefaultElementBudget);
    } else {
        std::optional<TrigPolynomial> previous;
        for (int n = lo; n <= hi; ++n) {
            const auto q = share(f.build(n));
            auto level = opts;
            level.seed = derive_seed(seed, {static_cast<std::uint64_t>(n)});
            const auto est = nikolskii_constant(q, nf.q, level, previous ? &*previous : nullptr);
            AsymptoticRow r;
            r.n = n;
            r.cardinality = q->size();
            r.m_lower = est.m_lower;
            r.predicted = est.m_reference.value_or(std::nan(""));
            r.ratio = r.m_lower / r.predicted;
            rows.push_back(r);
            previous = est.witness;
        }
    }
    Outputs o;
    o.params = {{"q", nf.q},       {"n_min", lo},         {"n_max", hi},   {"d", f.dim()}, {"gamma", f.gamma},
                {"kind", f.kind},  {"seed", seed},         {"restarts", nf.restarts}, {"steps", nf.steps}};
    std::ostringstream rec;
    write_asymptotic_csv(rec, rows);
    o.records = rec.str();
    json table = json::array();
    for (const auto& r : rows) table.push_back({{"n", r.n}, {"N", r.cardinality}, {"M_lower", r.m_lower}});
    o.summary = {{"rows", table},
                 {"columns",
                  "n,N,M_lower,predicted,ratio; predicted is 2^{n/q} n^{(nu-1)(1-1/q)} for q > 2 and sqrt(N) for "
                  "q = 2"}};
    for (const auto& r : rows) {
        char line[160];
        std::snprintf(line, sizeof line, "n=%d N=%zu M_lower=%.12g\n", r.n, r.cardinality, r.m_lower);
        out << line;
    }
    emit(c, "nikolskii", o, out);
    return kExitOk;
}

struct EntropyFlags {
    double q = 2.0;
    std::optional<std::uint64_t> seed;
    std::size_t budget = kDefaultCloudBudget;
    std::size_t points = 0;
    std::string grid;
    std::string ks;
    double factor = 4.0;
    bool real = false;
    int nikolskii_restarts = 8;
};

std::vector<long long> parse_list(const std::string& text, const char* what) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw ValidationError(std::string("bad ") + what + " entry '" + cell + "'");
        }
    }
    if (out.empty()) throw ValidationError(std::string("empty ") + what + " list");
    return out;
}

int run_entropy(const Common& c, const SetFlags& f, const EntropyFlags& ef, std::ostream& out) {
    const auto seed = require_seed(ef.seed, "entropy");
    const auto q = share(f.build(f.n));
    std::optional<CloudMetric> metric;
    if (ef.points > 0) {
        metric = CloudMetric::sup_points(uniform_random_points(ef.points, q->dim(), derive_seed(seed, {2})));
    } else if (!ef.grid.empty()) {
        std::vector<std::size_t> sizes;
        for (auto v : parse_list(ef.grid, "grid")) {
            if (v <= 0) throw ValidationError("grid sizes must be positive");
            sizes.push_back(static_cast<std::size_t>(v));
        }
        metric = CloudMetric::sup_grid(std::move(sizes));
    } else {
        metric = CloudMetric::default_grid(*q);
    }
    std::vector<int> ks;
    if (ef.ks.empty()) {
        ks = default_k_ladder(q->size());
    } else {
        for (auto v : parse_list(ef.ks, "k")) {
            if (v < 1 || v > 4096) throw ValidationError("k ladder entries must lie in [1, 4096]");
            ks.push_back(static_cast<int>(v));
        }
    }
    CloudOptions co;
    co.budget = ef.budget;
    co.seed = derive_seed(seed, {0});
    co.real = ef.real;
    const auto cloud = build_cloud(q, ef.q, *metric, co);
    const auto estimates = entropy_ladder(cloud, ks);

    NikolskiiOptions no{ef.nikolskii_restarts, 200, derive_seed(seed, {1}), kDefaultOversampling};
    const auto nik = nikolskii_constant(q, ef.q, no);
    const auto shape = compare_bound_shape(estimates, ef.q, f.n, q->size(), nik.m_lower, ef.factor);
    const auto eps1 = covering_upper_estimate(cloud, 1).upper_heuristic;
    const auto d4 = nikolskii_entropy_check(nik.m_lower, eps1, q->size(), ef.q);

    Outputs o;
    o.params = {{"q", ef.q},         {"set", set_json(*q)}, {"seed", seed},       {"budget", ef.budget},
                {"metric", metric->tag()}, {"k", ks},       {"factor", ef.factor}, {"real", ef.real},
                {"nikolskii_restarts", ef.nikolskii_restarts}};
    std::ostringstream rec;
    write_entropy_csv(rec, shape);
    o.records = rec.str();
    o.summary = {{"cloud_size", cloud.size()},
                 {"M_lower", nik.m_lower},
                 {"violations", shape.violations},
                 {"nikolskii_entropy_check",
                  {{"M_lower", d4.m_lower}, {"eps1", d4.eps1}, {"bound", d4.bound}, {"holds", d4.holds}}},
                 {"columns",
                  "k,lower (packing, rigorous on any superset of the cloud),upper (covering radius of the cloud),"
                  "normalized_lower = lower (k/N)^{1/q},baseline_BP1 = n^{1/q} (N/k)^{1/q},"
                  "baseline_BL2 = (log N)^{1/q} M N^{-1/q} (N/k)^{1/q}"}};
    bool has_tail = std::any_of(ks.begin(), ks.end(), [&](int k) { return static_cast<std::size_t>(k) > q->size(); });
    bool has_body = std::any_of(ks.begin(), ks.end(), [&](int k) { return static_cast<std::size_t>(k) <= q->size(); });
    if (has_tail && has_body) {
        json tail = json::array();
        for (const auto& r : tail_regime_check(estimates, ef.q, q->size()))
            tail.push_back({{"k", r.k}, {"lower", r.lower}, {"bound", r.bound}, {"holds", r.holds}});
        o.summary["tail"] = tail;
    }
    for (const auto& v : shape.violations) out << "violation: " << v << '\n';
    if (!d4.holds) out << "diagnostic: M_lower exceeds the entropy-implied bound\n";
    out << "cloud " << cloud.size() << " samples, " << shape.rows.size() << " rows\n";
    emit(c, "entropy", o, out);
    return kExitOk;
}

struct ScalingFlags {
    double q = 2.0;
    int n_min = 1;
    int n_max = 4;
    std::string generator = "uniform";
    int trials = 20;
    double theta = 0.9;
    std::optional<std::uint64_t> seed;
    double c1 = 0.5;
    double c2 = 1.5;
    bool complex_space = false;
    int restarts = 32;
    int steps = 200;
    std::size_t cap_factor = 4096;
    std::size_t max_n = kDefaultStudyCardinality;
};

json fit_json(const ExponentFit& fit) {
    return {{"w_hat", fit.w_hat},   {"intercept", fit.intercept}, {"residual", fit.residual},
            {"n_min", fit.n_min},   {"n_max", fit.n_max},         {"points", fit.points},
            {"w_reference", fit.reference ? json(*fit.reference) : json(nullptr)}};
}

int run_scaling(const Common& c, const SetFlags& f, const ScalingFlags& sf, std::ostream& out) {
    const auto seed = require_seed(sf.seed, "scaling");
    const auto gamma = f.weights();
    ScalingOptions opts;
    opts.real = !sf.complex_space;
    opts.max_cardinality = sf.max_n;
    opts.search.generator.kind = parse_generator(sf.generator);
    opts.search.target = {sf.c1, sf.c2};
    opts.search.trials = sf.trials;
    opts.search.theta = sf.theta;
    opts.search.seed = seed;
    opts.search.cap_factor = sf.cap_factor;
    opts.search.search.restarts = sf.restarts;
    opts.search.search.steps = sf.steps;
    const auto records = scaling_study(sf.q, gamma, sf.n_min, sf.n_max, opts);

    Outputs o;
    o.params = {{"q", sf.q},          {"gamma", gamma.to_string()}, {"n_min", sf.n_min},     {"n_max", sf.n_max},
                {"generator", sf.generator}, {"trials", sf.trials}, {"theta", sf.theta},     {"seed", seed},
                {"c1", sf.c1},        {"c2", sf.c2},                {"real", opts.real},     {"restarts", sf.restarts},
                {"steps", sf.steps},  {"cap_factor", sf.cap_factor}, {"max_N", sf.max_n}};
    std::ostringstream rec;
    write_scaling_csv(rec, records);
    o.records = rec.str();
    const auto censored = std::count_if(records.begin(), records.end(), [](const auto& r) { return r.censored; });
    o.summary = {{"records", records.size()}, {"censored", censored}, {"columns", scaling_csv_columns()}};
    o.summary["w_reference"] = reference_exponent(gamma.nu(), sf.q);
    try {
        o.summary["fit"] = fit_json(fit_exponent(records));
    } catch (const ValidationError& e) {
        o.summary["fit"] = nullptr;
        o.summary["fit_skipped"] = e.what();
    }
    for (const auto& r : records) {
        out << "n=" << r.n << " N=" << r.cardinality << " m_star=" << r.m_star << (r.censored ? " (censored)" : "")
            << '\n';
    }
    emit(c, "scaling", o, out);
    return censored > 0 ? kExitBudget : kExitOk;
}

int run_fit(const Common& c, const std::string& path, std::ostream& out) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot read records file " + path);
    const auto records = read_scaling_csv(is);
    const auto fit = fit_exponent(records);
    Outputs o;
    o.params = {{"records", path}};
    std::ostringstream rec;
    rec << "w_hat,intercept,residual,n_min,n_max,points,w_reference\n"
        << fmt(fit.w_hat) << ',' << fmt(fit.intercept) << ',' << fmt(fit.residual) << ',' << fit.n_min << ','
        << fit.n_max << ',' << fit.points << ',' << (fit.reference ? fmt(*fit.reference) : std::string()) << '\n';
    o.records = rec.str();
    o.summary = fit_json(fit);
    o.summary["columns"] = "w_hat,intercept,residual,n_min,n_max,points,w_reference";
    char line[160];
    std::snprintf(line, sizeof line, "w_hat=%.12g residual=%.3g points=%zu\n", fit.w_hat, fit.residual, fit.points);
    out << line;
    emit(c, "fit", o, out);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperbolic cross sampling laboratory", "hclab"};
    app.require_subcommand(1);
    Common common;
    SetFlags set;
    CertifyFlags cf;
    NikolskiiFlags nf;
    EntropyFlags ef;
    ScalingFlags sf;
    std::string records_path;

    auto* index_cmd = app.add_subcommand("index-set", "build a frequency set and print it");
    add_common(index_cmd, common);
    add_set_flags(index_cmd, set, "--n");

    auto* certify_cmd = app.add_subcommand("certify", "discretization constants of T(Q) at a point set");
    add_common(certify_cmd, common);
    add_set_flags(certify_cmd, set, "--Qn");
    certify_cmd->add_option("--q", cf.q, "exponent q >= 1");
    certify_cmd->add_option("--grid", cf.grid, "equispaced grid with this many nodes per axis");
    certify_cmd->add_option("--m", cf.m, "number of random points");
    certify_cmd->add_option("--generator", cf.generator, "uniform or subsampled");
    certify_cmd->add_option("--seed", cf.seed, "base seed");
    certify_cmd->add_option("--c1", cf.c1, "target lower constant");
    certify_cmd->add_option("--c2", cf.c2, "target upper constant");
    certify_cmd->add_option("--restarts", cf.restarts, "random restarts per direction (q != 2)");
    certify_cmd->add_option("--steps", cf.steps, "gradient steps per restart (q != 2)");
    certify_cmd->add_flag("--real", cf.real, "search the real subspace");

    auto* nik_cmd = app.add_subcommand("nikolskii", "witness lower bounds for the Nikol'skii constant");
    add_common(nik_cmd, common);
    add_set_flags(nik_cmd, set, "--Qn");
    nik_cmd->add_option("--q", nf.q, "exponent q >= 1");
    nik_cmd->add_option("--n-min", nf.n_min, "first level");
    nik_cmd->add_option("--n-max", nf.n_max, "last level");
    nik_cmd->add_option("--seed", nf.seed, "base seed");
    nik_cmd->add_option("--restarts", nf.restarts, "restarts per level");
    nik_cmd->add_option("--steps", nf.steps, "gradient steps per restart");

    auto* ent_cmd = app.add_subcommand("entropy", "packing and covering estimates of entropy numbers");
    add_common(ent_cmd, common);
    add_set_flags(ent_cmd, set, "--Qn");
    ent_cmd->add_option("--q", ef.q, "exponent q >= 1");
    ent_cmd->add_option("--seed", ef.seed, "base seed");
    ent_cmd->add_option("--budget", ef.budget, "cloud size");
    ent_cmd->add_option("--points", ef.points, "use the sup over this many random points");
    ent_cmd->add_option("--grid", ef.grid, "grid sizes per axis for the sup metric, e.g. 30,30");
    ent_cmd->add_option("--k", ef.ks, "k ladder, e.g. 1,2,4,8");
    ent_cmd->add_option("--factor", ef.factor, "violation factor against the baselines");
    ent_cmd->add_flag("--real", ef.real, "sample the real subspace");
    ent_cmd->add_option("--nikolskii-restarts", ef.nikolskii_restarts, "restarts for the M estimate");

    auto* sc_cmd = app.add_subcommand("scaling", "minimal sampling budgets over a range of levels");
    add_common(sc_cmd, common);
    add_set_flags(sc_cmd, set, "--Qn");
    sc_cmd->add_option("--q", sf.q, "exponent q >= 1");
    sc_cmd->add_option("--n-min", sf.n_min, "first level");
    sc_cmd->add_option("--n-max", sf.n_max, "last level");
    sc_cmd->add_option("--generator", sf.generator, "uniform, equispaced or subsampled");
    sc_cmd->add_option("--trials", sf.trials, "point sets per budget");
    sc_cmd->add_option("--theta", sf.theta, "required success fraction");
    sc_cmd->add_option("--seed", sf.seed, "base seed");
    sc_cmd->add_option("--c1", sf.c1, "target lower constant");
    sc_cmd->add_option("--c2", sf.c2, "target upper constant");
    sc_cmd->add_flag("--complex", sf.complex_space, "search T(Q) instead of its real subspace");
    sc_cmd->add_option("--restarts", sf.restarts, "random restarts per direction (q != 2)");
    sc_cmd->add_option("--steps", sf.steps, "gradient steps per restart (q != 2)");
    sc_cmd->add_option("--cap-factor", sf.cap_factor, "censor beyond this multiple of |Q|");
    sc_cmd->add_option("--max-N", sf.max_n, "largest admissible |Q|");

    auto* fit_cmd = app.add_subcommand("fit", "fit the budget exponent to scaling records");
    add_common(fit_cmd, common);
    fit_cmd->add_option("--records", records_path, "records.csv of a scaling run")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    try {
        if (index_cmd->parsed()) return run_index_set(common, set, out);
        if (certify_cmd->parsed()) return run_certify(common, set, cf, out);
        if (nik_cmd->parsed()) return run_nikolskii(common, set, nf, out);
        if (ent_cmd->parsed()) return run_entropy(common, set, ef, out);
        if (sc_cmd->parsed()) return run_scaling(common, set, sf, out);
        if (fit_cmd->parsed()) return run_fit(common, records_path, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const BudgetError& e) {
        err << "budget: " << e.what() << '\n';
        return kExitBudget;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    err << app.help();
    return kExitValidation;
}

}  // namespace hcross
