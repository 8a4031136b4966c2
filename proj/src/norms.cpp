#include "hcross/norms.hpp"

#include "hcross/errors.hpp"
#include "hcross/grid_transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hcross {

std::string to_string(NormMethod method) {
    switch (method) {
    case NormMethod::parseval: return "parseval";
    case NormMethod::exact_grid_even_q: return "exact_grid_even_q";
    case NormMethod::riemann_grid: return "riemann_grid";
    case NormMethod::discrete: return "discrete";
    case NormMethod::grid_max: return "grid_max";
    }
    return "unknown";
}

void to_json(nlohmann::json& j, const NormResult& r) {
    j = nlohmann::json{{"value", r.value}, {"method", to_string(r.method)}};
    j["error_bound"] = r.error_bound ? nlohmann::json(*r.error_bound) : nlohmann::json(nullptr);
    if (r.grid) j["grid"] = *r.grid;
}

bool is_even_integer(double q) noexcept {
    return std::isfinite(q) && q == std::floor(q) && std::fmod(q, 2.0) == 0.0;
}

namespace {

void check_q(double q) {
    if (!(q >= 1.0) || !std::isfinite(q)) throw ValidationError("q must lie in [1, infinity), got " + std::to_string(q));
}

std::vector<std::size_t> base_grid(const IndexSet& support, int oversampling) {
    if (oversampling < 2) throw ValidationError("oversampling must be at least 2");
    auto maxabs = support.max_abs();
    std::vector<std::size_t> sizes(maxabs.size());
    for (std::size_t j = 0; j < sizes.size(); ++j)
        sizes[j] = static_cast<std::size_t>(oversampling) * static_cast<std::size_t>(2 * maxabs[j] + 1);
    return sizes;
}

std::size_t checked_total(const std::vector<std::size_t>& sizes, std::size_t budget) {
    std::size_t total = 1;
    for (auto s : sizes) {
        if (total > budget / s)
            throw BudgetError("quadrature grid exceeds the budget of " + std::to_string(budget) + " nodes");
        total *= s;
    }
    return total;
}

double grid_mean_power(const TrigPolynomial& f, const std::vector<std::size_t>& sizes, double q,
                       std::size_t budget) {
    checked_total(sizes, budget);
    const auto values = evaluate_on_grid(f, sizes, budget);
    double sum = 0.0;
    if (q == 2.0) {
        for (const auto& v : values.values) sum += std::norm(v);
    } else {
        for (const auto& v : values.values) sum += std::pow(std::abs(v), q);
    }
    return sum / static_cast<double>(values.total());
}

}  // namespace

std::vector<std::size_t> lq_value_grid(const IndexSet& support, double q, int oversampling) {
    check_q(q);
    auto sizes = base_grid(support, oversampling);
    const auto maxabs = support.max_abs();
    if (is_even_integer(q)) {
        // |f|^q has per-axis degree q D_j; more than q D_j nodes integrate it exactly.
        for (std::size_t j = 0; j < sizes.size(); ++j)
            sizes[j] = std::max(sizes[j], static_cast<std::size_t>(q) * static_cast<std::size_t>(maxabs[j]) + 1);
    } else {
        for (auto& s : sizes) s *= 2;
    }
    return sizes;
}

NormResult l2_norm(const TrigPolynomial& f) {
    double sum = 0.0;
    for (const auto& c : f.coefficients()) sum += std::norm(c);
    return {std::sqrt(sum), NormMethod::parseval, std::nullopt, std::nullopt};
}

NormResult lq_norm(const TrigPolynomial& f, double q, int oversampling, std::size_t grid_budget) {
    check_q(q);
    const auto sizes = lq_value_grid(f.support(), q, oversampling);
    const double fine = grid_mean_power(f, sizes, q, grid_budget);
    NormResult out;
    out.value = std::pow(fine, 1.0 / q);
    out.grid = sizes;
    if (is_even_integer(q)) {
        out.method = NormMethod::exact_grid_even_q;
        out.error_bound = 0.0;
        return out;
    }
    const double coarse = std::pow(grid_mean_power(f, base_grid(f.support(), oversampling), q, grid_budget), 1.0 / q);
    out.method = NormMethod::riemann_grid;
    out.error_bound = std::abs(out.value - coarse);
    return out;
}

NormResult sup_norm(const TrigPolynomial& f, int levels, std::size_t grid_budget) {
    const auto sizes = base_grid(f.support(), 4);
    checked_total(sizes, grid_budget);
    const auto grid = evaluate_on_grid(f, sizes, grid_budget);

    // A few of the largest nodes seed the local refinement.
    std::vector<std::size_t> order(grid.total());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t seeds = std::min<std::size_t>(4, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(seeds), order.end(),
                      [&](std::size_t a, std::size_t b) { return std::abs(grid.values[a]) > std::abs(grid.values[b]); });

    double best = std::abs(grid.values[order[0]]);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t s = 0; s < seeds; ++s) {
        auto x = grid.node(order[s]);
        std::vector<double> coords(x.coords().begin(), x.coords().end());
        double value = std::abs(grid.values[order[s]]);
        for (int level = 0; level < levels; ++level) {
            for (std::size_t j = 0; j < coords.size(); ++j) {
                const double half = kTwoPi / static_cast<double>(sizes[j]) / std::ldexp(1.0, level);
                auto at = [&](double t) {
                    auto y = coords;
                    y[j] = t;
                    return std::abs(evaluate(f, TorusPoint(std::move(y))));
                };
                double a = coords[j] - half, b = coords[j] + half;
                double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
                double fc = at(c), fd = at(d);
                for (int it = 0; it < 40; ++it) {
                    if (fc > fd) {
                        b = d;
                        d = c;
                        fd = fc;
                        c = b - inv_phi * (b - a);
                        fc = at(c);
                    } else {
                        a = c;
                        c = d;
                        fc = fd;
                        d = a + inv_phi * (b - a);
                        fd = at(d);
                    }
                }
                const double t = fc > fd ? c : d;
                const double ft = std::max(fc, fd);
                if (ft > value) {
                    value = ft;
                    coords[j] = t;
                }
            }
        }
        best = std::max(best, value);
    }
    return {best, NormMethod::grid_max, sizes, std::nullopt};
}

double discrete_lq(std::span<const Complex> values, double q) {
    if (values.empty()) throw ValidationError("discrete norm over an empty point set");
    if (q == kInfinity) {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }
    check_q(q);
    double sum = 0.0;
    for (const auto& v : values) sum += std::pow(std::abs(v), q);
    return std::pow(sum / static_cast<double>(values.size()), 1.0 / q);
}

NormResult discrete_lq(const TrigPolynomial& f, const PointSet& xi, double q) {
    const auto values = evaluate(f, xi.points());
    return {discrete_lq(values, q), NormMethod::discrete, std::nullopt, std::nullopt};
}

double vector_norm_ratio(std::span<const double> v, double a) {
    if (v.size() < 2) throw ValidationError("vector norm inequality needs s >= 2");
    if (!(a > 1.0)) throw ValidationError("vector norm inequality needs a > 1");
    double top = 0.0;
    for (double x : v) top = std::max(top, std::abs(x));
    if (top == 0.0) return 1.0;
    const double s = static_cast<double>(v.size());
    const double p = a * std::log(s);
    double sum = 0.0;
    for (double x : v) sum += std::pow(std::abs(x) / top, p);
    const double lp = top * std::pow(sum / s, 1.0 / p);
    return top / lp;
}

bool vector_norm_inequality_check(std::span<const double> v, double a) {
    return vector_norm_ratio(v, a) <= std::exp(1.0 / a) * (1.0 + 1e-12);
}

}  // namespace hcross
