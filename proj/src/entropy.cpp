#include "hcross/entropy.hpp"

#include "hcross/errors.hpp"
#include "hcross/grid_transform.hpp"
#include "hcross/ratio_search.hpp"
#include "hcross/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <set>

namespace hcross {

// ------------------------------------------------------------------ metric

CloudMetric CloudMetric::sup_grid(std::vector<std::size_t> sizes) {
    if (sizes.empty()) throw ValidationError("grid metric needs at least one axis");
    for (auto s : sizes)
        if (s == 0) throw ValidationError("grid size must be positive");
    CloudMetric m;
    m.sizes_ = std::move(sizes);
    return m;
}

CloudMetric CloudMetric::sup_points(PointSet points) {
    CloudMetric m;
    m.points_ = std::move(points);
    return m;
}

CloudMetric CloudMetric::default_grid(const IndexSet& support) {
    std::vector<std::size_t> sizes;
    for (auto a : support.max_abs()) sizes.push_back(2 * (2 * static_cast<std::size_t>(a) + 1));
    return sup_grid(std::move(sizes));
}

std::string CloudMetric::tag() const {
    if (points_) return "sup_points(" + std::to_string(points_->size()) + ")";
    std::string s = "sup_grid(";
    for (std::size_t j = 0; j < sizes_.size(); ++j) s += (j ? "x" : "") + std::to_string(sizes_[j]);
    return s + ")";
}

std::size_t CloudMetric::node_count() const {
    if (points_) return points_->size();
    std::size_t total = 1;
    for (auto s : sizes_) total *= s;
    return total;
}

std::vector<Complex> CloudMetric::values(const TrigPolynomial& f) const {
    if (points_) return evaluate(f, points_->points());
    if (sizes_.size() != f.dim()) throw ValidationError("grid metric dimension does not match the polynomial");
    return evaluate_on_grid(f, sizes_).values;
}

double BallCloud::distance(std::size_t a, std::size_t b) const {
    const Complex* x = row(a);
    const Complex* y = row(b);
    double best = 0.0;
    for (std::size_t i = 0; i < stride_; ++i) best = std::max(best, std::norm(x[i] - y[i]));
    return std::sqrt(best);
}

// ------------------------------------------------------------------ cloud

namespace {

using Key = std::vector<std::pair<double, double>>;

Key key_of(std::span<const Complex> c) {
    Key k;
    k.reserve(c.size());
    for (auto v : c) k.emplace_back(v.real(), v.imag());
    return k;
}

std::vector<std::vector<Complex>> structured_seeds(const IndexSet& q, bool real) {
    const auto n = q.size();
    std::vector<std::vector<Complex>> seeds;
    seeds.emplace_back(n, Complex(1.0));

    std::map<std::vector<int>, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < n; ++i) blocks[block_of(q[i])].push_back(i);
    for (const auto& [s, members] : blocks) {
        std::vector<Complex> c(n);
        for (auto i : members) c[i] = 1.0;
        seeds.push_back(std::move(c));
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!real) {
            std::vector<Complex> c(n);
            c[i] = 1.0;
            seeds.push_back(std::move(c));
            continue;
        }
        const auto mirrored = q[i].negated();
        if (mirrored < q[i]) continue;  // handled at the representative
        const auto j = *q.find(mirrored);
        std::vector<Complex> cosine(n);
        cosine[i] = 1.0;
        cosine[j] = 1.0;
        seeds.push_back(std::move(cosine));
        if (i != j) {
            std::vector<Complex> sine(n);
            sine[i] = Complex(0.0, -1.0);
            sine[j] = Complex(0.0, 1.0);
            seeds.push_back(std::move(sine));
        }
    }
    return seeds;
}

}  // namespace

BallCloud build_cloud(const SupportPtr& q, double exponent, const CloudMetric& metric, const CloudOptions& options) {
    if (q->empty()) throw ValidationError("cloud over an empty frequency set");
    if (options.budget < 2) throw ValidationError("cloud budget must be at least 2");
    if (!(exponent >= 1.0) || !std::isfinite(exponent)) throw ValidationError("q must lie in [1, infinity)");
    if (options.real && !q->is_symmetric()) throw ValidationError("real cloud needs a symmetric support");
    if (metric.points() && metric.points()->dim() != q->dim())
        throw ValidationError("metric points do not match the support dimension");
    if (metric.is_grid() && metric.sizes().size() != q->dim())
        throw ValidationError("metric grid does not match the support dimension");
    const std::size_t nodes = metric.node_count();
    if (nodes > options.value_budget / options.budget)
        throw BudgetError("cloud of " + std::to_string(options.budget) + " samples on " + std::to_string(nodes) +
                          " nodes exceeds the value budget");

    BallCloud cloud(q, exponent, metric);
    cloud.stride_ = nodes;
    cloud.values_.reserve(options.budget * nodes);

    std::optional<GridTransform> transform;
    Eigen::MatrixXcd sampled;
    if (metric.is_grid())
        transform.emplace(*q, metric.sizes());
    else
        sampled = detail::sampling_matrix(*q, metric.points()->points());

    std::vector<Complex> scratch(nodes);
    auto push = [&](std::vector<Complex> c) {
        TrigPolynomial f(q, std::move(c), options.real);
        const double norm = lq_norm(f, exponent, options.oversampling).value;
        if (!(norm > 0.0) || !std::isfinite(norm)) return;
        f = f.scaled(1.0 / norm);
        const auto coef = f.coefficients();
        if (transform) {
            transform->synthesize(coef, scratch);
        } else {
            const Eigen::Map<const Eigen::VectorXcd> cv(coef.data(), static_cast<Eigen::Index>(coef.size()));
            const Eigen::VectorXcd z = sampled * cv;
            for (std::size_t i = 0; i < nodes; ++i) scratch[i] = z[static_cast<Eigen::Index>(i)];
        }
        cloud.values_.insert(cloud.values_.end(), scratch.begin(), scratch.end());
        cloud.samples_.push_back(std::move(f));
    };

    std::set<Key> seen;
    for (auto& seed : structured_seeds(*q, options.real)) {
        for (double sign : {1.0, -1.0}) {
            if (cloud.size() >= options.budget) break;
            std::vector<Complex> c(seed);
            for (auto& v : c) v *= sign;
            if (!seen.insert(key_of(c)).second) continue;
            push(std::move(c));
        }
    }
    Rng rng(derive_seed(options.seed, {0}));
    while (cloud.size() < options.budget) {
        auto f = random_polynomial(q, options.real, rng);
        push({f.coefficients().begin(), f.coefficients().end()});
    }
    return cloud;
}

// ------------------------------------------------------------------ greedy

FarthestPointOrder farthest_point_order(const BallCloud& cloud, std::size_t length) {
    const std::size_t n = cloud.size();
    length = std::min(length, n);
    FarthestPointOrder out;
    if (length == 0) return out;
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    std::vector<char> chosen(n, 0);
    std::size_t next = 0;
    double at = std::numeric_limits<double>::infinity();
    for (std::size_t step = 0; step < length; ++step) {
        out.order.push_back(next);
        out.insertion.push_back(at);
        chosen[next] = 1;
        const std::size_t center = next;
        at = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (chosen[i]) continue;
            nearest[i] = std::min(nearest[i], cloud.distance(center, i));
            if (nearest[i] > at) {
                at = nearest[i];
                next = i;
            }
        }
    }
    return out;
}

namespace {

// 2^k, saturated at `cap`.
std::size_t pow2_capped(int k, std::size_t cap) {
    if (k < 0) throw ValidationError("k must be nonnegative");
    if (k >= 62) return cap;
    return std::min(cap, std::size_t{1} << k);
}

// Farthest-point radius after `centers` centers, i.e. insertion distance of the next one.
double radius_after(const FarthestPointOrder& t, std::size_t centers) {
    if (centers >= t.order.size()) return 0.0;
    return t.insertion[centers];
}

double half_separation(const FarthestPointOrder& t, std::size_t count) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < count; ++j) sep = std::min(sep, t.insertion[j]);
    return 0.5 * sep;
}

}  // namespace

double packing_lower_bound(const BallCloud& cloud, int k) {
    const std::size_t n = cloud.size();
    const std::size_t centers = pow2_capped(k, n);
    if (centers >= n)
        throw ValidationError("packing at k = " + std::to_string(k) + " needs 2^k + 1 samples but the cloud has " +
                              std::to_string(n));
    return half_separation(farthest_point_order(cloud, centers + 1), centers + 1);
}

EntropyEstimate covering_upper_estimate(const BallCloud& cloud, int k) {
    const std::size_t n = cloud.size();
    if (n == 0) throw ValidationError("covering estimate of an empty cloud");
    const std::size_t centers = pow2_capped(k, n);
    const auto t = farthest_point_order(cloud, centers + 1);
    EntropyEstimate e;
    e.k = k;
    e.upper_heuristic = radius_after(t, centers);
    e.centers.assign(t.order.begin(), t.order.begin() + static_cast<std::ptrdiff_t>(std::min(centers, n)));
    return e;
}

std::vector<EntropyEstimate> entropy_ladder(const BallCloud& cloud, const std::vector<int>& ks) {
    const std::size_t n = cloud.size();
    if (n == 0) throw ValidationError("entropy ladder of an empty cloud");
    std::size_t length = 1;
    for (int k : ks) length = std::max(length, std::min(n, pow2_capped(k, n) + 1));
    const auto t = farthest_point_order(cloud, length);
    std::vector<EntropyEstimate> out;
    for (int k : ks) {
        const std::size_t centers = pow2_capped(k, n);
        EntropyEstimate e;
        e.k = k;
        e.upper_heuristic = radius_after(t, centers);
        e.lower = centers < n ? half_separation(t, centers + 1) : 0.0;
        e.centers.assign(t.order.begin(), t.order.begin() + static_cast<std::ptrdiff_t>(std::min(centers, n)));
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<int> default_k_ladder(std::size_t cardinality) {
    const std::size_t top = std::max<std::size_t>(1, std::min<std::size_t>(cardinality, 256));
    std::vector<int> ks;
    for (std::size_t k = 1; k <= top; k *= 2) ks.push_back(static_cast<int>(k));
    return ks;
}

// ------------------------------------------------------------------ shapes

ShapeComparison compare_bound_shape(const std::vector<EntropyEstimate>& estimates, double q, int n,
                                    std::size_t cardinality, double nikolskii_m, double factor) {
    if (cardinality == 0) throw ValidationError("bound shapes need N >= 1");
    if (!(q >= 1.0) || !std::isfinite(q)) throw ValidationError("q must lie in [1, infinity)");
    const double big_n = static_cast<double>(cardinality);
    ShapeComparison out;
    out.factor = factor;
    char buf[200];
    for (const auto& e : estimates) {
        if (e.k < 1) throw ValidationError("bound shapes are compared for k >= 1");
        const double shape = std::pow(big_n / e.k, 1.0 / q);
        ShapeRow row;
        row.k = e.k;
        row.lower = e.lower;
        row.upper = e.upper_heuristic;
        row.normalized_lower = e.lower / shape;
        row.baseline_bp1 = std::pow(static_cast<double>(n), 1.0 / q) * shape;
        row.baseline_bl2 = std::pow(std::log(big_n), 1.0 / q) * nikolskii_m * std::pow(big_n, -1.0 / q) * shape;
        row.exceeds_bp1 = row.lower > factor * row.baseline_bp1;
        row.exceeds_bl2 = row.lower > factor * row.baseline_bl2;
        if (row.exceeds_bp1) {
            std::snprintf(buf, sizeof buf, "k=%d: lower %.6g exceeds %.3g x baseline_BP1 %.6g", row.k, row.lower,
                          factor, row.baseline_bp1);
            out.violations.emplace_back(buf);
        }
        if (row.exceeds_bl2) {
            std::snprintf(buf, sizeof buf, "k=%d: lower %.6g exceeds %.3g x baseline_BL2 %.6g", row.k, row.lower,
                          factor, row.baseline_bl2);
            out.violations.emplace_back(buf);
        }
        out.rows.push_back(row);
    }
    return out;
}

void write_entropy_csv(std::ostream& os, const ShapeComparison& comparison) {
    os << "k,lower,upper,normalized_lower,baseline_BP1,baseline_BL2\n";
    char buf[200];
    for (const auto& r : comparison.rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.k, r.lower, r.upper,
                      r.normalized_lower, r.baseline_bp1, r.baseline_bl2);
        os << buf;
    }
}

std::vector<TailRow> tail_regime_check(const std::vector<EntropyEstimate>& estimates, double q,
                                       std::size_t cardinality) {
    const double big_n = static_cast<double>(cardinality);
    std::optional<double> b;
    for (const auto& e : estimates) {
        if (e.k >= 1 && static_cast<std::size_t>(e.k) <= cardinality) {
            const double v = e.lower * std::pow(e.k / big_n, 1.0 / q);
            b = b ? std::max(*b, v) : v;
        }
    }
    if (!b) throw ValidationError("tail check needs at least one estimate with 1 <= k <= N");
    std::vector<TailRow> rows;
    for (const auto& e : estimates) {
        if (static_cast<std::size_t>(std::max(e.k, 0)) <= cardinality) continue;
        TailRow r;
        r.k = e.k;
        r.lower = e.lower;
        r.upper = e.upper_heuristic;
        r.bound = 6.0 * *b * std::exp2(-e.k / big_n);
        r.holds = r.lower <= r.bound;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace hcross
