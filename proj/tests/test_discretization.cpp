#include "hcross/discretization.hpp"
#include "hcross/errors.hpp"
#include "hcross/ratio_search.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <numbers>
#include <set>
#include <sstream>

using namespace hcross;

namespace {

SupportPtr interval(int k) {
    std::vector<FrequencyIndex> e;
    for (int j = -k; j <= k; ++j) e.push_back(FrequencyIndex({j}));
    return share(IndexSet::custom(1, e));
}

RatioSearchOptions quick(std::uint64_t seed, int restarts = 8, int steps = 150) {
    RatioSearchOptions o;
    o.restarts = restarts;
    o.steps = steps;
    o.seed = seed;
    return o;
}

// Extreme eigenvalues of the sampled Gram matrix, computed directly.
std::pair<double, double> gram_range(const IndexSet& q, const PointSet& xi) {
    const auto e = detail::sampling_matrix(q, xi.points());
    const Eigen::MatrixXcd g = e.adjoint() * e / static_cast<double>(xi.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(g, Eigen::EigenvaluesOnly);
    return {s.eigenvalues()[0], s.eigenvalues()[s.eigenvalues().size() - 1]};
}

}  // namespace

TEST(PointSets, Generators) {
    const auto g = equispaced_grid({4});
    ASSERT_EQ(g.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(g[i][0], i * std::numbers::pi / 2, 1e-15);

    const auto a = uniform_random_points(20, 3, 5);
    const auto b = uniform_random_points(20, 3, 5);
    EXPECT_EQ(a.points(), b.points());
    EXPECT_NE(a.points(), uniform_random_points(20, 3, 6).points());

    const auto full = subsampled_grid({3, 4}, 12, 9);
    const auto grid = equispaced_grid({3, 4});
    std::set<std::vector<double>> lhs, rhs;
    for (const auto& p : full.points()) lhs.insert({p.coords().begin(), p.coords().end()});
    for (const auto& p : grid.points()) rhs.insert({p.coords().begin(), p.coords().end()});
    EXPECT_EQ(lhs, rhs);
    EXPECT_THROW((void)subsampled_grid({3, 4}, 13, 9), ValidationError);
    EXPECT_THROW((void)uniform_random_points(0, 1, 1), ValidationError);
}

TEST(FrameBounds, ConstantSupport) {
    auto q = share(step_hyperbolic_cross(0, 2));
    const auto r = frame_bounds_q2(q, uniform_random_points(3, 2, 1));
    EXPECT_NEAR(r.c1, 1.0, 1e-14);
    EXPECT_NEAR(r.c2, 1.0, 1e-14);
    EXPECT_TRUE(r.exact);
}

TEST(FrameBounds, DiscreteOrthogonality) {
    for (int k : {0, 1, 5, 20}) {
        for (std::size_t extra : {0u, 1u, 7u}) {
            const auto r = frame_bounds_q2(interval(k), equispaced_grid({2 * static_cast<std::size_t>(k) + 1 + extra}));
            EXPECT_NEAR(r.c1, 1.0, 1e-10);
            EXPECT_NEAR(r.c2, 1.0, 1e-10);
        }
    }
}

TEST(FrameBounds, RankDeficiency) {
    auto q = share(step_hyperbolic_cross(3, 2));
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto r = frame_bounds_q2(q, uniform_random_points(q->size() - 1 - s, 2, s));
        EXPECT_NEAR(r.c1, 0.0, 1e-10);
    }
}

TEST(FrameBounds, MatchesDirectEigenvalues) {
    auto q = share(step_hyperbolic_cross(2, 2));
    const auto xi = uniform_random_points(40, 2, 3);
    const auto r = frame_bounds_q2(q, xi);
    const auto [lo, hi] = gram_range(*q, xi);
    EXPECT_NEAR(r.c1, lo, 1e-12);
    EXPECT_NEAR(r.c2, hi, 1e-12);
    EXPECT_NEAR(discretization_ratio(*r.minimizer, xi, 2.0), r.c1, 1e-8);
    EXPECT_NEAR(discretization_ratio(*r.maximizer, xi, 2.0), r.c2, 1e-8);
    EXPECT_THROW((void)frame_bounds_q2(q, xi, 5), BudgetError);
}

TEST(FrameBounds, MergedSetsRespectWeightedBound) {
    auto q = share(step_hyperbolic_cross(2, 2));
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto a = uniform_random_points(20 + s, 2, 2 * s);
        const auto b = uniform_random_points(35, 2, 2 * s + 1);
        const auto ra = frame_bounds_q2(q, a);
        const auto rb = frame_bounds_q2(q, b);
        const auto rm = frame_bounds_q2(q, merge(a, b));
        const double wa = static_cast<double>(a.size()) / static_cast<double>(a.size() + b.size());
        EXPECT_GE(rm.c1, wa * ra.c1 + (1 - wa) * rb.c1 - 1e-12);
        EXPECT_LE(rm.c2, wa * ra.c2 + (1 - wa) * rb.c2 + 1e-12);
    }
}

TEST(RatioExtremize, ConstantSupportGivesUnitRatio) {
    auto q = share(step_hyperbolic_cross(0, 1));
    const auto xi = uniform_random_points(5, 1, 1);
    for (double p : {1.0, 2.0, 3.0, 4.0}) {
        const auto r = ratio_extremize(q, xi, p, quick(1, 2, 20));
        EXPECT_NEAR(r.c1, 1.0, 1e-12);
        EXPECT_NEAR(r.c2, 1.0, 1e-12);
        EXPECT_FALSE(r.exact);
    }
}

TEST(RatioExtremize, ConstantWitnessFeasible) {
    const auto q = interval(1);
    const auto r = ratio_extremize(q, equispaced_grid({16}), 4.0, quick(3));
    EXPECT_LE(r.c1, 1.0 + 1e-12);
    EXPECT_GE(r.c2, 1.0 - 1e-12);
}

TEST(RatioExtremize, QuadraticStaysInsideSpectrum) {
    auto q = share(step_hyperbolic_cross(2, 2));
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto xi = uniform_random_points(2 * q->size(), 2, s);
        const auto exact = frame_bounds_q2(q, xi);
        auto opts = quick(s);
        opts.spectral_starts = false;
        const auto r = ratio_extremize(q, xi, 2.0, opts);
        EXPECT_GE(r.c1, exact.c1 - 1e-10);
        EXPECT_LE(r.c2, exact.c2 + 1e-10);
    }
}

TEST(RatioExtremize, WitnessesReproduceReportedRatios) {
    auto q = share(step_hyperbolic_cross(2, 2));
    const auto xi = uniform_random_points(30, 2, 4);
    for (double p : {1.0, 3.0, 4.0}) {
        for (bool real : {false, true}) {
            auto opts = quick(7, 4, 100);
            opts.real = real;
            const auto r = ratio_extremize(q, xi, p, opts);
            ASSERT_TRUE(r.minimizer && r.maximizer);
            EXPECT_NEAR(discretization_ratio(*r.minimizer, xi, p), r.c1, 1e-8 * std::max(1.0, r.c1));
            EXPECT_NEAR(discretization_ratio(*r.maximizer, xi, p), r.c2, 1e-8 * std::max(1.0, r.c2));
            EXPECT_LE(r.c1, 1.0 + 1e-12);
            EXPECT_GE(r.c2, 1.0 - 1e-12);
            if (real) {
                EXPECT_TRUE(r.minimizer->is_real());
                EXPECT_TRUE(r.maximizer->is_real());
            }
        }
    }
}

TEST(RatioExtremize, DeterministicPerSeed) {
    auto q = share(step_hyperbolic_cross(2, 1));
    const auto xi = uniform_random_points(12, 1, 8);
    const auto a = ratio_extremize(q, xi, 3.0, quick(5, 4, 60));
    const auto b = ratio_extremize(q, xi, 3.0, quick(5, 4, 60));
    EXPECT_EQ(a.c1, b.c1);
    EXPECT_EQ(a.c2, b.c2);
}

TEST(RatioGradient, MatchesFiniteDifferences) {
    auto q = share(step_hyperbolic_cross(2, 1));
    const auto xi = uniform_random_points(9, 1, 2);
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
        detail::RatioProblem problem(q, xi, p, 4, false);
        const auto f = random_polynomial(q, false, 3);
        std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
        std::vector<Complex> g;
        const double r0 = problem.ratio_and_gradient(c, g);
        const double h = 1e-6;
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (Complex dir : {Complex(1.0), Complex(0.0, 1.0)}) {
                auto cp = c, cm = c;
                cp[i] += h * dir;
                cm[i] -= h * dir;
                const auto pp = problem.parts(cp);
                const auto pm = problem.parts(cm);
                const double fd = (pp.numerator / pp.denominator - pm.numerator / pm.denominator) / (2 * h);
                const double an = g[i].real() * dir.real() + g[i].imag() * dir.imag();
                EXPECT_NEAR(fd, an, 1e-5 * std::max(1.0, std::abs(r0))) << "q=" << p << " i=" << i;
            }
        }
    }
}

TEST(Certify, Examples) {
    const auto q = interval(3);
    const auto full = certify(q, equispaced_grid({7}), 2.0);
    EXPECT_TRUE(full.accepted);
    EXPECT_FALSE(full.provisional);

    auto cross = share(step_hyperbolic_cross(3, 2));
    const auto few = uniform_random_points(cross->size() / 2, 2, 3);
    EXPECT_FALSE(certify(cross, few, 2.0, {1e-6, 1e6}).accepted);

    const auto r4 = certify(cross, few, 4.0, {}, quick(3, 2, 50));
    EXPECT_FALSE(r4.accepted);
    EXPECT_LT(r4.report.c1, 1e-8);
    ASSERT_TRUE(r4.report.minimizer);
    EXPECT_LT(discrete_lq(*r4.report.minimizer, few, 4.0).value, 1e-4);
    EXPECT_THROW((void)certify(q, equispaced_grid({7}), 2.0, {2.0, 1.0}), ValidationError);
}

TEST(Certify, MonotoneInTarget) {
    auto q = share(step_hyperbolic_cross(2, 2));
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto xi = uniform_random_points(3 * q->size(), 2, s);
        const auto narrow = certify(q, xi, 2.0, {0.6, 1.4});
        const auto wide = certify(q, xi, 2.0, {0.3, 1.8});
        if (narrow.accepted) EXPECT_TRUE(wide.accepted);
        EXPECT_FALSE(within_target(narrow.report, {0.6, 1.4}) && !within_target(narrow.report, {0.3, 1.8}));
    }
}

TEST(MinimalM, TrivialAndEquispaced) {
    MinimalMOptions opts;
    opts.trials = 5;
    opts.seed = 3;
    EXPECT_EQ(minimal_m_search(share(step_hyperbolic_cross(0, 2)), 2.0, opts).m_star, 1u);

    opts.generator.kind = GeneratorKind::equispaced_grid;
    const auto r = minimal_m_search(interval(2), 2.0, opts);
    EXPECT_EQ(r.m_star, 5u);
    EXPECT_FALSE(r.censored);
    for (std::size_t i = 1; i < r.ladder.size(); ++i) EXPECT_LT(r.ladder[i - 1].m, r.ladder[i].m);
    std::ostringstream os;
    write_ladder_csv(os, r);
    EXPECT_EQ(os.str().rfind("m,successes,trials\n", 0), 0u);
}

TEST(MinimalM, SuccessFractionGrowsWithBudget) {
    auto q = share(step_hyperbolic_cross(2, 1));
    MinimalMOptions opts;
    opts.trials = 20;
    opts.seed = 11;
    const auto r = minimal_m_search(q, 2.0, opts);
    ASSERT_FALSE(r.censored);
    EXPECT_GE(r.m_star, q->size());
    const auto at = certify_at(q, 2.0, r.m_star, opts);
    const auto twice = certify_at(q, 2.0, 2 * r.m_star, opts);
    EXPECT_GE(at.successes, 18);
    // Independent draws at 2 m*: allow one binomial standard deviation of slack.
    EXPECT_GE(twice.successes + 2, at.successes);
}

TEST(MinimalM, CensoringReported) {
    auto q = share(step_hyperbolic_cross(2, 1));
    MinimalMOptions opts;
    opts.trials = 3;
    opts.seed = 1;
    opts.cap_factor = 1;
    opts.target = {0.99, 1.01};
    const auto r = minimal_m_search(q, 2.0, opts);
    EXPECT_TRUE(r.censored);
    EXPECT_EQ(r.m_star, q->size());
}

TEST(MinimalM, DeterministicPerSeed) {
    auto q = share(step_hyperbolic_cross(2, 2));
    MinimalMOptions opts;
    opts.trials = 6;
    opts.theta = 0.8;
    opts.seed = 21;
    const auto a = minimal_m_search(q, 2.0, opts);
    const auto b = minimal_m_search(q, 2.0, opts);
    EXPECT_EQ(a.m_star, b.m_star);
    ASSERT_EQ(a.ladder.size(), b.ladder.size());
    for (std::size_t i = 0; i < a.ladder.size(); ++i) EXPECT_EQ(a.ladder[i].successes, b.ladder[i].successes);
}

TEST(ComplexFromReal, Factors) {
    DiscretizationReport r;
    r.c1 = 0.5;
    r.c2 = 1.5;
    const auto a = complex_from_real_report(r, 1.0);
    EXPECT_DOUBLE_EQ(a.c1, 1.0 / 8.0);
    EXPECT_DOUBLE_EQ(a.c2, 6.0);
    EXPECT_FALSE(a.exact);
    r.c1 = r.c2 = 1.0;
    const auto b = complex_from_real_report(r, 2.0);
    EXPECT_DOUBLE_EQ(b.c1, 1.0 / 8.0);
    EXPECT_DOUBLE_EQ(b.c2, 8.0);
}

TEST(Report, JsonCarriesWitnessesAndMetadata) {
    auto q = share(step_hyperbolic_cross(1, 1));
    const auto r = ratio_extremize(q, uniform_random_points(6, 1, 2), 3.0, quick(1, 2, 20));
    nlohmann::json j = r;
    EXPECT_EQ(j["trials"]["method"], "witness_search");
    EXPECT_EQ(j["trials"]["restarts"], 2);
    EXPECT_EQ(j["witness_min"]["coefficients"].size(), q->size());
    EXPECT_FALSE(j["exact"].get<bool>());
}
