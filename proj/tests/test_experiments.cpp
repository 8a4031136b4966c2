#include "hcross/errors.hpp"
#include "hcross/experiments.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace hcross;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("hclab_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int rc = run_cli(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return rc;
}

std::vector<ScalingRecord> synthetic(double w, int n_min, int n_max) {
    std::vector<ScalingRecord> out;
    for (int n = n_min; n <= n_max; ++n) {
        ScalingRecord r;
        r.q = 2.0;
        r.gamma = "1,1";
        r.n = n;
        r.cardinality = std::size_t{1} << n;
        r.m_star = static_cast<std::size_t>(std::llround(static_cast<double>(r.cardinality) * std::pow(n, w)));
        out.push_back(r);
    }
    return out;
}

}  // namespace

TEST(ReferenceExponent, Values) {
    EXPECT_EQ(reference_exponent(1, 4.0), 3.0);
    EXPECT_EQ(reference_exponent(2, 4.0), 5.0);
    EXPECT_EQ(reference_exponent(3, 1.0), 3.0);
    EXPECT_EQ(reference_exponent(3, 1.5), 2.0);
    EXPECT_EQ(reference_exponent(3, 2.0), 2.0);
    EXPECT_DOUBLE_EQ(reference_exponent(1, 2.5), 2.5);
    EXPECT_EQ(arbitrary_set_exponent(1.0), 3.0);
    EXPECT_EQ(arbitrary_set_exponent(1.5), 2.0);
    EXPECT_THROW((void)arbitrary_set_exponent(2.0), ValidationError);
}

TEST(FitExponent, RecoversExactPowerLaws) {
    for (double w : {1.0, 2.0, 3.0, 5.0}) {
        const auto fit = fit_exponent(synthetic(w, 2, 9));
        EXPECT_NEAR(fit.w_hat, w, 1e-10);
        EXPECT_LT(fit.residual, 1e-10);
        EXPECT_EQ(fit.points, 8u);
        EXPECT_EQ(fit.n_min, 2);
        EXPECT_EQ(fit.n_max, 9);
        ASSERT_TRUE(fit.reference);
        EXPECT_EQ(*fit.reference, 2.0);
    }
}

TEST(FitExponent, NeedsThreeUncensoredPoints) {
    auto r = synthetic(2.0, 2, 4);
    r[1].censored = true;
    EXPECT_THROW((void)fit_exponent(r), ValidationError);
    EXPECT_NO_THROW((void)fit_exponent(synthetic(2.0, 2, 4)));
    auto flat = synthetic(2.0, 3, 3);
    flat.push_back(flat[0]);
    flat.push_back(flat[0]);
    EXPECT_THROW((void)fit_exponent(flat), ValidationError);
}

TEST(ScalingStudy, EquispacedOneDimensionalIsExact) {
    ScalingOptions o;
    o.search.generator.kind = GeneratorKind::equispaced_grid;
    o.search.trials = 3;
    o.search.seed = 4;
    const auto records = scaling_study(2.0, AnisotropyWeights::ones(1), 1, 6, o);
    ASSERT_EQ(records.size(), 6u);
    for (const auto& r : records) {
        EXPECT_EQ(r.m_star, r.cardinality) << "n=" << r.n;
        EXPECT_FALSE(r.censored);
        EXPECT_TRUE(r.real);
        EXPECT_DOUBLE_EQ(r.complex_c1, 0.5 / 8.0);
        EXPECT_DOUBLE_EQ(r.complex_c2, 1.5 * 8.0);
    }
}

TEST(ScalingStudy, RandomTwoDimensionalRecordsEmitted) {
    ScalingOptions o;
    o.search.trials = 5;
    o.search.theta = 0.8;
    o.search.seed = 9;
    const auto records = scaling_study(2.0, AnisotropyWeights::ones(2), 1, 3, o);
    ASSERT_EQ(records.size(), 3u);
    for (const auto& r : records) {
        EXPECT_TRUE(r.censored || r.m_star >= r.cardinality);
        EXPECT_EQ(r.cardinality, cross_cardinality(r.n, AnisotropyWeights::ones(2)));
        EXPECT_EQ(r.generator, "uniform_random");
    }
}

TEST(ScalingStudy, BudgetAndValidation) {
    ScalingOptions o;
    o.max_cardinality = 100;
    EXPECT_THROW((void)scaling_study(2.0, AnisotropyWeights::ones(2), 1, 8, o), BudgetError);
    EXPECT_THROW((void)scaling_study(0.5, AnisotropyWeights::ones(2), 1, 2, o), ValidationError);
    EXPECT_THROW((void)AnisotropyWeights::parse("1,1/2"), ValidationError);
}

TEST(ArbitrarySets, RandomSparseSetAndSingleton) {
    Rng rng(5);
    std::uniform_int_distribution<int> pick(-100, 100);
    std::set<int> chosen;
    while (chosen.size() < 16) chosen.insert(pick(rng));
    std::vector<FrequencyIndex> e;
    for (int k : chosen) e.push_back(FrequencyIndex({k}));
    auto sparse = share(IndexSet::custom(1, e));
    auto single = share(IndexSet::custom(1, {FrequencyIndex({7})}));

    MinimalMOptions o;
    o.trials = 3;
    o.theta = 0.6;
    o.seed = 1;
    o.search.restarts = 3;
    o.search.steps = 60;
    const auto a = arbitrary_q_study({sparse, single}, 1.0, o);
    ASSERT_EQ(a.size(), 2u);
    ASSERT_TRUE(a[0].normalized);
    EXPECT_GT(*a[0].normalized, 0.0);
    EXPECT_EQ(a[1].m_star, 1u);
    EXPECT_FALSE(a[0].real);

    o.seed = 2;
    const auto b = arbitrary_q_study({sparse}, 1.0, o);
    EXPECT_EQ(b[0].cardinality, a[0].cardinality);
    EXPECT_EQ(b[0].seed, 2u);
    EXPECT_THROW((void)arbitrary_q_study({sparse}, 2.0, o), ValidationError);
}

TEST(ScalingCsv, RoundTrip) {
    auto records = synthetic(3.0, 1, 4);
    records[2].censored = true;
    records[1].normalized = 0.25;
    records[0].gamma = "1,3/2";
    std::stringstream ss;
    write_scaling_csv(ss, records);
    const auto back = read_scaling_csv(ss);
    ASSERT_EQ(back.size(), records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].gamma, records[i].gamma);
        EXPECT_EQ(back[i].m_star, records[i].m_star);
        EXPECT_EQ(back[i].censored, records[i].censored);
        EXPECT_EQ(back[i].normalized, records[i].normalized);
    }
    std::stringstream bad("q,n\n1,2\n");
    EXPECT_THROW((void)read_scaling_csv(bad), ValidationError);
}

TEST(NikolskiiEntropyCheck, Bound) {
    const auto c = nikolskii_entropy_check(3.0, 0.5, 16, 2.0);
    EXPECT_DOUBLE_EQ(c.bound, 4.0 * 0.5 * 4.0 * 1.5);
    EXPECT_TRUE(c.holds);
    EXPECT_FALSE(nikolskii_entropy_check(20.0, 0.5, 16, 2.0).holds);
}

TEST(Cli, IndexSetPrintsCardinality) {
    const auto dir = scratch_dir("index");
    std::string out;
    ASSERT_EQ(cli({"index-set", "--d", "2", "--n", "2", "--out", dir.string(), "--tag", "a"}, &out), 0);
    EXPECT_EQ(out.rfind("cardinality 17\n", 0), 0u);
    EXPECT_TRUE(fs::exists(dir / "index-set" / "a" / "params.json"));
    EXPECT_TRUE(fs::exists(dir / "index-set" / "a" / "summary.json"));
    const auto rec = slurp(dir / "index-set" / "a" / "records.csv");
    EXPECT_EQ(std::count(rec.begin(), rec.end(), '\n'), 18);
}

TEST(Cli, CertifyDftExactness) {
    const auto dir = scratch_dir("certify");
    std::string out;
    ASSERT_EQ(cli({"certify", "--q", "2", "--grid", "8", "--Qn", "1", "--d", "1", "--out", dir.string(), "--tag", "t"},
                  &out),
              0);
    const auto summary = nlohmann::json::parse(slurp(dir / "certify" / "t" / "summary.json"));
    EXPECT_NEAR(summary["report"]["C1"].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(summary["report"]["C2"].get<double>(), 1.0, 1e-12);
    EXPECT_TRUE(summary["accepted"].get<bool>());
    EXPECT_NE(out.find("C1=1 C2=1"), std::string::npos) << out;
}

TEST(Cli, ExitCodes) {
    const auto dir = scratch_dir("codes");
    std::string out, err;
    EXPECT_EQ(cli({"scaling", "--q", "2", "--d", "1", "--out", dir.string()}, &out, &err), 2);
    EXPECT_NE(err.find("--seed"), std::string::npos);
    EXPECT_EQ(cli({"certify", "--bogus", "1"}, &out, &err), 2);
    EXPECT_EQ(cli({}, &out, &err), 2);
    EXPECT_EQ(cli({"nikolskii", "--q", "4", "--Qn", "1", "--d", "1", "--out", dir.string()}, &out, &err), 2);
    EXPECT_EQ(cli({"entropy", "--q", "2", "--Qn", "1", "--d", "1", "--out", dir.string()}, &out, &err), 2);
    EXPECT_EQ(cli({"index-set", "--d", "2", "--n", "2", "--gamma", "1,1/2", "--out", dir.string()}, &out, &err), 2);
    EXPECT_EQ(cli({"index-set", "--d", "2", "--n", "2", "--help"}, &out, &err), 0);
    // |Q| cap of 1 censors every level.
    EXPECT_EQ(cli({"scaling", "--q", "2", "--d", "1", "--n-min", "1", "--n-max", "2", "--seed", "1", "--trials", "2",
                   "--cap-factor", "1", "--c1", "0.99", "--c2", "1.01", "--out", dir.string(), "--tag", "cens"},
                  &out, &err),
              3);
    EXPECT_EQ(cli({"index-set", "--d", "4", "--n", "40", "--out", dir.string()}, &out, &err), 3);
}

TEST(Cli, ScalingIsReproducibleAndFits) {
    const auto dir = scratch_dir("scaling");
    const std::vector<std::string> base = {"scaling", "--q",      "2",     "--d",   "2",      "--n-min", "1",
                                           "--n-max", "3",        "--seed", "7",    "--trials", "4",     "--out",
                                           dir.string()};
    auto a = base, b = base;
    a.insert(a.end(), {"--tag", "a"});
    b.insert(b.end(), {"--tag", "b"});
    ASSERT_EQ(cli(a), 0);
    ASSERT_EQ(cli(b), 0);
    const auto ra = slurp(dir / "scaling" / "a" / "records.csv");
    EXPECT_FALSE(ra.empty());
    EXPECT_EQ(ra, slurp(dir / "scaling" / "b" / "records.csv"));
    EXPECT_EQ(slurp(dir / "scaling" / "a" / "summary.json"), slurp(dir / "scaling" / "b" / "summary.json"));

    std::string out;
    ASSERT_EQ(cli({"fit", "--records", (dir / "scaling" / "a" / "records.csv").string(), "--out", dir.string(), "--tag",
                   "f"},
                  &out),
              0);
    EXPECT_NE(out.find("w_hat="), std::string::npos);
}

TEST(Cli, NikolskiiAndEntropyRuns) {
    const auto dir = scratch_dir("misc");
    ASSERT_EQ(cli({"nikolskii", "--q", "2", "--Qn", "2", "--d", "2", "--seed", "1", "--restarts", "2", "--out",
                   dir.string(), "--tag", "n"}),
              0);
    const auto rec = slurp(dir / "nikolskii" / "n" / "records.csv");
    EXPECT_EQ(rec.rfind("n,N,M_lower,predicted,ratio\n", 0), 0u);
    ASSERT_EQ(cli({"nikolskii", "--q", "4", "--n-min", "1", "--n-max", "3", "--d", "1", "--seed", "1", "--restarts",
                   "2", "--out", dir.string(), "--tag", "a"}),
              0);
    ASSERT_EQ(cli({"entropy", "--q", "2", "--Qn", "2", "--d", "2", "--seed", "3", "--budget", "300", "--out",
                   dir.string(), "--tag", "e"}),
              0);
    const auto ent = slurp(dir / "entropy" / "e" / "records.csv");
    EXPECT_EQ(ent.rfind("k,lower,upper,normalized_lower,baseline_BP1,baseline_BL2\n", 0), 0u);
    const auto summary = nlohmann::json::parse(slurp(dir / "entropy" / "e" / "summary.json"));
    EXPECT_TRUE(summary.contains("nikolskii_entropy_check"));
}
