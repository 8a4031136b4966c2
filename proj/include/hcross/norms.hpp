#pragma once

// Continuous L_q norms (probability measure on the torus), the uniform norm
// and the discrete averages compared against them.

#include "hcross/point_set.hpp"
#include "hcross/trig_poly.hpp"

#include <json.hpp>

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hcross {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr int kDefaultOversampling = 4;
inline constexpr std::size_t kDefaultGridBudget = std::size_t{1} << 24;

enum class NormMethod { parseval, exact_grid_even_q, riemann_grid, discrete, grid_max };

[[nodiscard]] std::string to_string(NormMethod method);

struct NormResult {
    double value = 0.0;
    NormMethod method = NormMethod::parseval;
    std::optional<std::vector<std::size_t>> grid;
    std::optional<double> error_bound;
};

void to_json(nlohmann::json& j, const NormResult& r);

[[nodiscard]] bool is_even_integer(double q) noexcept;

// Grid on which lq_norm takes its value: rho (2 D_j + 1) nodes per axis,
// widened to q D_j + 1 for even q so the rule is exact; 2 rho (2 D_j + 1)
// for other q.
[[nodiscard]] std::vector<std::size_t> lq_value_grid(const IndexSet& support, double q,
                                                     int oversampling = kDefaultOversampling);

[[nodiscard]] NormResult l2_norm(const TrigPolynomial& f);

// Rectangle rule on equispaced grids. For even integer q the rule is exact;
// otherwise the value comes from the 2 rho grid and error_bound is its
// difference from the rho grid.
[[nodiscard]] NormResult lq_norm(const TrigPolynomial& f, double q, int oversampling = kDefaultOversampling,
                                 std::size_t grid_budget = kDefaultGridBudget);

// Largest |f| found on a 4x oversampled grid followed by `levels` rounds of
// local coordinate-wise golden-section ascent. An attained value, hence a
// lower bound for the uniform norm; nondecreasing in `levels`.
[[nodiscard]] NormResult sup_norm(const TrigPolynomial& f, int levels = 3,
                                  std::size_t grid_budget = kDefaultGridBudget);

// ((1/m) sum_j |f(xi^j)|^q)^{1/q}, or max_j |f(xi^j)| for q = infinity.
[[nodiscard]] NormResult discrete_lq(const TrigPolynomial& f, const PointSet& xi, double q);
[[nodiscard]] double discrete_lq(std::span<const Complex> values, double q);

// ||v||_inf / ||v||_{l_{p,s}} with p = a ln s, s = |v|.
[[nodiscard]] double vector_norm_ratio(std::span<const double> v, double a);
// ||v||_inf <= e^{1/a} ||v||_{l_{a ln s, s}}, checked up to rounding.
[[nodiscard]] bool vector_norm_inequality_check(std::span<const double> v, double a);

}  // namespace hcross
