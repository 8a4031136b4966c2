#include "hcross/errors.hpp"
#include "hcross/norms.hpp"
#include "hcross/trig_poly.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

using namespace hcross;

namespace {

std::vector<TorusPoint> random_points(std::size_t m, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    std::vector<TorusPoint> pts;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> x(d);
        for (auto& v : x) v = u(rng);
        pts.emplace_back(std::move(x));
    }
    return pts;
}

std::vector<double> coords(const TorusPoint& p) { return {p.coords().begin(), p.coords().end()}; }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Evaluate, ConstantAndHarmonic) {
    auto zero_set = share(step_hyperbolic_cross(0, 2));
    const auto one = TrigPolynomial::uniform(zero_set);
    EXPECT_EQ(evaluate(one, TorusPoint({1.3, 4.0})), Complex(1.0));

    auto q = share(step_hyperbolic_cross(1, 2));
    const auto h = TrigPolynomial::harmonic(q, FrequencyIndex({1, 0}));
    const auto v = evaluate(h, TorusPoint({std::numbers::pi / 2, 0.7}));
    EXPECT_NEAR(v.real(), 0.0, 1e-15);
    EXPECT_NEAR(v.imag(), 1.0, 1e-15);
}

TEST(Evaluate, MatchesCompensatedOracle) {
    auto q = share(step_hyperbolic_cross(4, 2));
    ASSERT_GE(q->size(), 50u);
    std::vector<FrequencyIndex> first(q->elements().begin(), q->elements().begin() + 50);
    auto q50 = share(IndexSet::custom(2, first));
    const auto f = random_polynomial(q50, false, 11);
    for (const auto& x : random_points(10, 2, 5)) EXPECT_LT(rel(evaluate(f, x), oracle::evaluate(f, coords(x))), 1e-12);
}

TEST(Evaluate, LargeSupportAgainstOracle) {
    auto q = share(step_hyperbolic_cross(9, 2));
    ASSERT_LE(q->size(), 10000u);
    const auto f = random_polynomial(q, false, 3);
    for (const auto& x : random_points(3, 2, 8)) {
        const auto ref = oracle::evaluate(f, coords(x));
        EXPECT_LT(std::abs(evaluate(f, x) - ref), 1e-12 * std::sqrt(static_cast<double>(q->size())) * l2_norm(f).value);
    }
}

TEST(Evaluate, DimensionMismatchRejected) {
    auto q = share(step_hyperbolic_cross(1, 2));
    const auto f = TrigPolynomial::uniform(q);
    EXPECT_THROW((void)evaluate(f, TorusPoint({0.0})), ValidationError);
}

TEST(Evaluate, Linearity) {
    auto q = share(step_hyperbolic_cross(3, 2));
    const auto f = random_polynomial(q, false, 1);
    const auto g = random_polynomial(q, false, 2);
    const Complex a(0.3, -1.2), b(2.0, 0.5);
    const auto h = f.scaled(a) + g.scaled(b);
    for (const auto& x : random_points(20, 2, 4))
        EXPECT_LT(rel(evaluate(h, x), a * evaluate(f, x) + b * evaluate(g, x)), 1e-12);
}

TEST(Evaluate, ShiftIsTranslation) {
    auto q = share(step_hyperbolic_cross(3, 2));
    const auto f = random_polynomial(q, false, 9);
    const TorusPoint h({0.4, 5.9});
    const auto g = f.shifted(h);
    for (const auto& x : random_points(20, 2, 6)) EXPECT_LT(rel(evaluate(g, x), evaluate(f, x + h)), 1e-12);
}

TEST(Grid, HarmonicGivesRootsOfUnity) {
    auto q = share(step_hyperbolic_cross(1, 1));
    const auto f = TrigPolynomial::harmonic(q, FrequencyIndex({1}));
    const std::vector<std::size_t> sizes{8};
    const auto grid = evaluate_on_grid(f, sizes);
    ASSERT_EQ(grid.total(), 8u);
    for (std::size_t t = 0; t < 8; ++t) {
        const Complex w = std::polar(1.0, kTwoPi * static_cast<double>(t) / 8.0);
        EXPECT_LT(std::abs(grid.values[t] - w), 1e-15);
    }
}

TEST(Grid, AgreesWithPointwiseEvaluation) {
    auto q = share(step_hyperbolic_cross(3, 2));
    const auto f = random_polynomial(q, false, 17);
    const std::vector<std::size_t> sizes{17, 20};
    const auto grid = evaluate_on_grid(f, sizes);
    for (std::size_t i = 0; i < grid.total(); ++i) {
        const auto direct = evaluate(f, grid.node(i));
        EXPECT_LT(std::abs(grid.values[i] - direct), 1e-10 * std::max(1.0, std::abs(direct)));
    }
}

TEST(Grid, ZeroPolynomialAndAliasing) {
    auto q = share(step_hyperbolic_cross(3, 2));
    const auto z = TrigPolynomial::zero(q);
    const std::vector<std::size_t> sizes{17, 17};
    for (auto v : evaluate_on_grid(z, sizes).values) EXPECT_EQ(v, Complex(0.0));
    const std::vector<std::size_t> small{16, 17};  // max |k_1| = 7 needs > 14 nodes; 16 is fine
    EXPECT_NO_THROW((void)evaluate_on_grid(z, small));
    const std::vector<std::size_t> aliased{14, 17};
    EXPECT_THROW((void)evaluate_on_grid(z, aliased), ValidationError);
}

TEST(Random, DeterministicPerSeed) {
    auto q = share(step_hyperbolic_cross(3, 2));
    const auto a = random_polynomial(q, false, 42);
    const auto b = random_polynomial(q, false, 42);
    const auto c = random_polynomial(q, false, 43);
    EXPECT_TRUE(std::equal(a.coefficients().begin(), a.coefficients().end(), b.coefficients().begin()));
    EXPECT_FALSE(std::equal(a.coefficients().begin(), a.coefficients().end(), c.coefficients().begin()));
}

TEST(Random, RealPolynomialsHaveRealValues) {
    auto q = share(step_hyperbolic_cross(4, 2));
    const auto f = random_polynomial(q, true, 7);
    EXPECT_TRUE(f.is_real());
    EXPECT_TRUE(has_conjugate_symmetry(*q, f.coefficients()));
    EXPECT_EQ(f.coefficient(FrequencyIndex({0, 0})).imag(), 0.0);
    for (const auto& x : random_points(100, 2, 1)) {
        const auto v = evaluate(f, x);
        EXPECT_LT(std::abs(v.imag()), 1e-10 * std::max(1.0, std::abs(v)));
    }
}

TEST(Random, ComplexValuesAreGenericallyNotReal) {
    auto q = share(step_hyperbolic_cross(3, 2));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto f = random_polynomial(q, false, seed);
        EXPECT_FALSE(has_conjugate_symmetry(*q, f.coefficients()));
        double worst = 0.0;
        for (const auto& x : random_points(10, 2, seed)) worst = std::max(worst, std::abs(evaluate(f, x).imag()));
        EXPECT_GT(worst, 1e-6);
    }
}

TEST(Random, RealFlagNeedsSymmetricSupport) {
    auto q = share(IndexSet::custom(1, {FrequencyIndex({0}), FrequencyIndex({2})}));
    EXPECT_THROW((void)random_polynomial(q, true, 1), ValidationError);
    std::vector<Complex> c{Complex(1.0), Complex(0.0, 1.0), Complex(1.0)};
    auto sym = share(step_hyperbolic_cross(1, 1));
    EXPECT_THROW(TrigPolynomial(sym, c, true), ValidationError);
}

TEST(Random, MeanSquaredNormNearCardinality) {
    auto q = share(step_hyperbolic_cross(3, 2));
    Rng rng(2024);
    double mean = 0.0;
    constexpr int kDraws = 1000;
    for (int i = 0; i < kDraws; ++i) {
        const double n = l2_norm(random_polynomial(q, false, rng)).value;
        mean += n * n;
    }
    mean /= kDraws;
    EXPECT_NEAR(mean, static_cast<double>(q->size()), 0.1 * static_cast<double>(q->size()));
}

TEST(RealImaginaryParts, Identities) {
    auto q = share(step_hyperbolic_cross(3, 2));
    const auto g = random_polynomial(q, true, 5);
    {
        const auto [re, im] = real_imaginary_parts(g);
        EXPECT_EQ(l2_norm(im).value, 0.0);
        EXPECT_LT(l2_norm(re + g.scaled(-1.0)).value, 1e-15);
    }
    {
        const auto [re, im] = real_imaginary_parts(g.scaled(Complex(0.0, 1.0)));
        EXPECT_LT(l2_norm(re).value, 1e-15);
        EXPECT_LT(l2_norm(im + g.scaled(-1.0)).value, 1e-15);
    }
    const auto f = random_polynomial(q, false, 6);
    const auto [re, im] = real_imaginary_parts(f);
    EXPECT_TRUE(re.is_real());
    EXPECT_TRUE(im.is_real());
    for (const auto& x : random_points(20, 2, 3)) {
        const auto v = evaluate(f, x);
        const double r = evaluate(re, x).real();
        const double i = evaluate(im, x).real();
        EXPECT_NEAR(std::norm(v), r * r + i * i, 1e-10 * std::max(1.0, std::norm(v)));
        EXPECT_LT(std::abs(v - Complex(r, i)), 1e-12 * std::max(1.0, std::abs(v)));
    }
}

TEST(RealImaginaryParts, NonsymmetricSupportExtended) {
    auto q = share(IndexSet::custom(1, {FrequencyIndex({1}), FrequencyIndex({3})}));
    const auto f = random_polynomial(q, false, 1);
    const auto [re, im] = real_imaginary_parts(f);
    EXPECT_EQ(re.support().size(), 4u);
    for (const auto& x : random_points(10, 1, 2)) {
        const auto v = evaluate(f, x);
        EXPECT_LT(std::abs(v - Complex(evaluate(re, x).real(), evaluate(im, x).real())), 1e-12);
    }
}

TEST(DyadicProjection, IdentityOnBlockAndParseval) {
    const std::vector<int> s{1, 2};
    auto block = share(dyadic_block(s));
    const auto f = random_polynomial(block, false, 3);
    const auto p = dyadic_projection(f, s);
    EXPECT_TRUE(std::equal(p.coefficients().begin(), p.coefficients().end(), f.coefficients().begin()));

    auto q = share(step_hyperbolic_cross(4, 2));
    const auto g = random_polynomial(q, false, 4);
    double sum = 0.0;
    auto total = TrigPolynomial::zero(q);
    for (const auto& bs : admissible_blocks(4, AnisotropyWeights::ones(2))) {
        const auto d = dyadic_projection(g, bs);
        const double n = l2_norm(d).value;
        sum += n * n;
        total = total + d;
    }
    const double full = l2_norm(g).value;
    EXPECT_NEAR(sum, full * full, 1e-10 * full * full);
    EXPECT_LT(l2_norm(total + g.scaled(-1.0)).value, 1e-14 * full);
}

TEST(Serialization, HexfloatRoundTripIsExact) {
    auto q = share(anisotropic_cross(3, AnisotropyWeights::parse("1,3/2")));
    for (bool real : {false, true}) {
        const auto f = random_polynomial(q, real, 77);
        std::stringstream ss;
        write_trig_polynomial(ss, f);
        const auto g = read_trig_polynomial(ss);
        EXPECT_EQ(g.support(), f.support());
        EXPECT_EQ(g.is_real(), real);
        EXPECT_TRUE(std::equal(g.coefficients().begin(), g.coefficients().end(), f.coefficients().begin()));
    }
}

TEST(TorusPoint, CoordinatesReduced) {
    const TorusPoint p({-0.5, 7.0, kTwoPi});
    EXPECT_NEAR(p[0], kTwoPi - 0.5, 1e-15);
    EXPECT_NEAR(p[1], 7.0 - kTwoPi, 1e-15);
    EXPECT_EQ(p[2], 0.0);
    for (double v : p.coords()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, kTwoPi);
    }
}
