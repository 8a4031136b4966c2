#pragma once

// Marcinkiewicz-type constants of T(Q) at a point set xi:
//     C1 ||f||_q^q <= (1/m) sum_j |f(xi^j)|^q <= C2 ||f||_q^q   for all f in T(Q).

#include "hcross/norms.hpp"
#include "hcross/point_set.hpp"
#include "hcross/trig_poly.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hcross {

inline constexpr std::size_t kDefaultEigenBudget = 4096;

struct RatioSearchOptions {
    int restarts = 32;
    int steps = 200;
    std::uint64_t seed = 0;
    // Search the real subspace RT(Q) instead of T(Q); needs a symmetric support.
    bool real = false;
    // Also start from the extreme eigenvectors of the sampled Gram matrix.
    bool spectral_starts = true;
    int oversampling = kDefaultOversampling;
};

struct SearchMetadata {
    std::string method;  // "spectral" or "witness_search"
    int restarts = 0;
    int steps = 0;
    std::uint64_t seed = 0;
    bool real = false;
    bool spectral_starts = false;
    std::size_t evaluations = 0;
};

struct DiscretizationReport {
    double q = 2.0;
    double c1 = 0.0;
    double c2 = 0.0;
    bool exact = false;
    std::size_t m = 0;
    std::size_t n = 0;  // |Q|
    std::optional<TrigPolynomial> minimizer;
    std::optional<TrigPolynomial> maximizer;
    SearchMetadata trials;
};

void to_json(nlohmann::json& j, const DiscretizationReport& r);

struct Target {
    double c1 = 0.5;
    double c2 = 1.5;
};

// (1/m) sum_j |f(xi^j)|^q / ||f||_q^q with the continuous norm from lq_norm.
[[nodiscard]] double discretization_ratio(const TrigPolynomial& f, const PointSet& xi, double q,
                                          int oversampling = kDefaultOversampling);

// Exact q = 2 constants: extreme eigenvalues of E^* E, E_{jk} = e^{i(k, xi^j)} / sqrt(m).
[[nodiscard]] DiscretizationReport frame_bounds_q2(const SupportPtr& q, const PointSet& xi,
                                                   std::size_t eigen_budget = kDefaultEigenBudget);

// One-sided witness bounds for q != 2: C1 is the smallest and C2 the largest
// ratio found by projected gradient descent / ascent over random restarts.
[[nodiscard]] DiscretizationReport ratio_extremize(const SupportPtr& q, const PointSet& xi, double exponent,
                                                   const RatioSearchOptions& options = {});

struct CertifyResult {
    bool accepted = false;
    // Acceptance for q != 2 only means no witness violated the target.
    bool provisional = false;
    DiscretizationReport report;
};

[[nodiscard]] bool within_target(const DiscretizationReport& report, const Target& target) noexcept;

[[nodiscard]] CertifyResult certify(const SupportPtr& q, const PointSet& xi, double exponent,
                                    const Target& target = {}, const RatioSearchOptions& options = {});

struct MinimalMOptions {
    PointGenerator generator;      // kind, and base grid sizes for subsampling
    Target target;
    int trials = 20;
    double theta = 0.9;
    std::uint64_t seed = 0;
    std::size_t cap_factor = 4096;  // censor beyond cap_factor * |Q|
    int grid_oversampling = 4;      // subsampling grid per axis: this times (2 D_j + 1)
    RatioSearchOptions search;      // for q != 2
};

struct LadderEntry {
    std::size_t m = 0;
    int successes = 0;
    int trials = 0;
};

struct MinimalMResult {
    std::size_t m_star = 0;
    bool censored = false;
    std::vector<LadderEntry> ladder;  // sorted by m
};

// Doubling from m = |Q| until a budget certifies in at least theta * trials
// random draws, then bisection down to the smallest such m.
[[nodiscard]] MinimalMResult minimal_m_search(const SupportPtr& q, double exponent, const MinimalMOptions& options);

// Success count of `trials` seeded point sets at budget m.
[[nodiscard]] LadderEntry certify_at(const SupportPtr& q, double exponent, std::size_t m,
                                     const MinimalMOptions& options);

void write_ladder_csv(std::ostream& os, const MinimalMResult& result);

// Constants for T(Q) implied by constants (C2, C3) of its real subspace:
// (C2 2^{-q-1}, C3 2^{q+1}).
[[nodiscard]] DiscretizationReport complex_from_real_report(const DiscretizationReport& real_report, double q);

}  // namespace hcross
