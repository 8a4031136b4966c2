#pragma once

// Scale-invariant ratio
//     R(c) = (1/m) sum_j |f_c(xi^j)|^q  /  ||f_c||_q^q
// over coefficient vectors c of T(Q), or of its real subspace, with the
// continuous norm taken on the lq_norm value grid. Shared by the
// discretization and Nikol'skii searches.

#include "hcross/grid_transform.hpp"
#include "hcross/point_set.hpp"
#include "hcross/trig_poly.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace hcross::detail {

// Sampled exponentials e^{i(k, xi^j)}, one row per point.
[[nodiscard]] Eigen::MatrixXcd sampling_matrix(const IndexSet& q, std::span<const TorusPoint> points);

class RatioProblem {
public:
    RatioProblem(SupportPtr support, const PointSet& points, double q, int oversampling, bool real,
                 std::size_t matrix_budget = 50'000'000);

    [[nodiscard]] std::size_t dim() const noexcept { return support_->size(); }
    [[nodiscard]] bool real() const noexcept { return real_; }
    [[nodiscard]] const SupportPtr& support() const noexcept { return support_; }

    // (1/m) sum_j |f(xi^j)|^q and the grid mean of |f|^q.
    struct Parts {
        double numerator = 0.0;
        double denominator = 0.0;
    };
    [[nodiscard]] Parts parts(std::span<const Complex> c);

    // R(c), and its gradient w.r.t. the real inner product Re <u, v> on C^N.
    double ratio_and_gradient(std::span<const Complex> c, std::vector<Complex>& gradient);

    // Scales c to unit continuous norm; false when the norm vanishes.
    bool normalize(std::vector<Complex>& c);

    // Orthogonal projection onto conjugate-symmetric vectors (real mode only).
    void project(std::vector<Complex>& v) const;

    // Gradient ascent (direction = +1) or descent (-1) on the unit sphere from
    // c with Barzilai-Borwein steps and Armijo backtracking. Returns the final
    // ratio; c is left normalized.
    double optimize(std::vector<Complex>& c, int direction, int steps);

    [[nodiscard]] std::size_t evaluations() const noexcept { return evaluations_; }

private:
    SupportPtr support_;
    double q_;
    bool real_;
    Eigen::MatrixXcd sampled_;
    GridTransform grid_;
    std::vector<std::size_t> mirror_;  // index of -k, real mode only
    std::vector<Complex> values_;      // grid scratch
    std::vector<Complex> scratch_;
    std::size_t evaluations_ = 0;
};

}  // namespace hcross::detail
