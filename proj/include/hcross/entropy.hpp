#pragma once

// Entropy numbers of the unit ball {f in T(Q): ||f||_q <= 1} in a uniform
// metric, estimated on a finite cloud of unit-norm samples.

#include "hcross/norms.hpp"
#include "hcross/point_set.hpp"
#include "hcross/trig_poly.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hcross {

inline constexpr std::size_t kDefaultCloudBudget = 4096;
inline constexpr std::size_t kDefaultCloudValueBudget = std::size_t{1} << 24;

// max |f - g| over a tensor grid (sup_grid) or over a point set Y (sup_points).
class CloudMetric {
public:
    static CloudMetric sup_grid(std::vector<std::size_t> sizes);
    static CloudMetric sup_points(PointSet points);
    // Grid with 2 (2 D_j + 1) nodes per axis for the support.
    static CloudMetric default_grid(const IndexSet& support);

    [[nodiscard]] bool is_grid() const noexcept { return !points_.has_value(); }
    [[nodiscard]] const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
    [[nodiscard]] const std::optional<PointSet>& points() const noexcept { return points_; }
    [[nodiscard]] std::string tag() const;
    [[nodiscard]] std::size_t node_count() const;

    // Values of f at the metric's nodes.
    [[nodiscard]] std::vector<Complex> values(const TrigPolynomial& f) const;

private:
    std::vector<std::size_t> sizes_;
    std::optional<PointSet> points_;
};

struct CloudOptions {
    std::size_t budget = kDefaultCloudBudget;
    std::uint64_t seed = 0;
    bool real = false;  // sample the real subspace (symmetric support only)
    int oversampling = kDefaultOversampling;
    std::size_t value_budget = kDefaultCloudValueBudget;
};

// Finite subset of the unit sphere ||f||_q = 1 with the values of every sample
// at the metric nodes.
class BallCloud {
public:
    [[nodiscard]] const SupportPtr& support() const noexcept { return support_; }
    [[nodiscard]] double q() const noexcept { return q_; }
    [[nodiscard]] const CloudMetric& metric() const noexcept { return metric_; }
    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] const std::vector<TrigPolynomial>& samples() const noexcept { return samples_; }
    [[nodiscard]] double distance(std::size_t a, std::size_t b) const;

    friend BallCloud build_cloud(const SupportPtr&, double, const CloudMetric&, const CloudOptions&);

private:
    BallCloud(SupportPtr support, double q, CloudMetric metric)
        : support_(std::move(support)), q_(q), metric_(std::move(metric)) {}
    [[nodiscard]] const Complex* row(std::size_t i) const { return values_.data() + i * stride_; }

    SupportPtr support_;
    double q_ = 2.0;
    CloudMetric metric_;
    std::vector<TrigPolynomial> samples_;
    std::vector<Complex> values_;  // size() rows of stride_ values
    std::size_t stride_ = 0;
};

// Structured samples first (all-equal coefficients, dyadic block indicators,
// single harmonics, each with both signs), then Gaussian polynomials, all
// normalized to ||f||_q = 1 and deduplicated, truncated to the budget.
[[nodiscard]] BallCloud build_cloud(const SupportPtr& q, double exponent, const CloudMetric& metric,
                                    const CloudOptions& options = {});

struct EntropyEstimate {
    int k = 0;
    double lower = 0.0;            // rigorous for any set containing the cloud
    double upper_heuristic = 0.0;  // covering radius of the cloud itself
    std::vector<std::size_t> centers;
};

// Farthest-point order of the cloud starting at sample 0. insertion[j] is the
// distance of order[j] to order[0..j-1] at the time it was chosen.
struct FarthestPointOrder {
    std::vector<std::size_t> order;
    std::vector<double> insertion;
};

[[nodiscard]] FarthestPointOrder farthest_point_order(const BallCloud& cloud, std::size_t length);

// Half the smallest pairwise distance of 2^k + 1 farthest-point selections.
// Rejects clouds with fewer than 2^k + 1 samples.
[[nodiscard]] double packing_lower_bound(const BallCloud& cloud, int k);

// Largest distance to the nearest of 2^k farthest-point centers; 0 when every
// sample is a center.
[[nodiscard]] EntropyEstimate covering_upper_estimate(const BallCloud& cloud, int k);

// Both bounds for each k from a single traversal. When 2^k + 1 exceeds the
// cloud, lower falls back to the trivial bound 0.
[[nodiscard]] std::vector<EntropyEstimate> entropy_ladder(const BallCloud& cloud, const std::vector<int>& ks);

// {1, 2, 4, ..., min(N, 256)}.
[[nodiscard]] std::vector<int> default_k_ladder(std::size_t cardinality);

struct ShapeRow {
    int k = 0;
    double lower = 0.0;
    double upper = 0.0;
    double normalized_lower = 0.0;  // lower (k/N)^{1/q}
    double baseline_bp1 = 0.0;      // n^{1/q} (N/k)^{1/q}
    double baseline_bl2 = 0.0;      // (log N)^{1/q} M N^{-1/q} (N/k)^{1/q}
    bool exceeds_bp1 = false;       // lower > factor * baseline
    bool exceeds_bl2 = false;
};

struct ShapeComparison {
    double factor = 4.0;
    std::vector<ShapeRow> rows;
    std::vector<std::string> violations;
};

// Compares ladder estimates against the two bound shapes with unit constants.
[[nodiscard]] ShapeComparison compare_bound_shape(const std::vector<EntropyEstimate>& estimates, double q, int n,
                                                  std::size_t cardinality, double nikolskii_m, double factor = 4.0);

void write_entropy_csv(std::ostream& os, const ShapeComparison& comparison);

struct TailRow {
    int k = 0;
    double lower = 0.0;
    double upper = 0.0;
    double bound = 0.0;  // 6 B 2^{-k/N}
    bool holds = false;  // lower <= bound
};

// Regime k > N: 6 B 2^{-k/N} with B = max_{k <= N} lower (k/N)^{1/q} taken
// from the same estimates.
[[nodiscard]] std::vector<TailRow> tail_regime_check(const std::vector<EntropyEstimate>& estimates, double q,
                                                     std::size_t cardinality);

}  // namespace hcross
