#include "hcross/ratio_search.hpp"

#include "hcross/errors.hpp"
#include "hcross/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hcross::detail {

Eigen::MatrixXcd sampling_matrix(const IndexSet& q, std::span<const TorusPoint> points) {
    Eigen::MatrixXcd e(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(q.size()));
    for (std::size_t r = 0; r < points.size(); ++r) {
        const auto& x = points[r];
        for (std::size_t i = 0; i < q.size(); ++i) {
            const auto& k = q[i];
            double phase = 0.0;
            for (std::size_t j = 0; j < k.dim(); ++j) phase += static_cast<double>(k[j]) * x[j];
            e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = Complex(std::cos(phase), std::sin(phase));
        }
    }
    return e;
}

namespace {

// q |z|^{q-2} z, with the subgradient convention 0 at z = 0.
Complex power_weight(Complex z, double q) {
    const double r = std::abs(z);
    if (r == 0.0) return {};
    if (q == 2.0) return 2.0 * z;
    return q * std::pow(r, q - 2.0) * z;
}

double power(Complex z, double q) {
    if (q == 2.0) return std::norm(z);
    return std::pow(std::abs(z), q);
}

double real_dot(std::span<const Complex> a, std::span<const Complex> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return s;
}

std::size_t checked_points(const PointSet& points, const IndexSet& q, std::size_t budget) {
    if (points.dim() != q.dim()) throw ValidationError("point set dimension does not match the support");
    if (q.size() > 0 && points.size() > budget / q.size())
        throw BudgetError("sampling matrix of " + std::to_string(points.size()) + " x " + std::to_string(q.size()) +
                          " exceeds the budget");
    return points.size();
}

}  // namespace

RatioProblem::RatioProblem(SupportPtr support, const PointSet& points, double q, int oversampling, bool real,
                           std::size_t matrix_budget)
    : support_(std::move(support)),
      q_(q),
      real_(real),
      sampled_((checked_points(points, *support_, matrix_budget), sampling_matrix(*support_, points.points()))),
      grid_(*support_, lq_value_grid(*support_, q, oversampling)) {
    if (real_) {
        if (!support_->is_symmetric()) throw ValidationError("real search needs a symmetric support");
        mirror_.resize(support_->size());
        for (std::size_t i = 0; i < support_->size(); ++i) mirror_[i] = *support_->find((*support_)[i].negated());
    }
    values_.resize(grid_.total());
    scratch_.resize(support_->size());
}

RatioProblem::Parts RatioProblem::parts(std::span<const Complex> c) {
    ++evaluations_;
    const Eigen::Map<const Eigen::VectorXcd> cv(c.data(), static_cast<Eigen::Index>(c.size()));
    const Eigen::VectorXcd z = sampled_ * cv;
    Parts p;
    for (Eigen::Index j = 0; j < z.size(); ++j) p.numerator += power(z[j], q_);
    p.numerator /= static_cast<double>(z.size());
    grid_.synthesize(c, values_);
    for (const auto& v : values_) p.denominator += power(v, q_);
    p.denominator /= static_cast<double>(values_.size());
    return p;
}

double RatioProblem::ratio_and_gradient(std::span<const Complex> c, std::vector<Complex>& gradient) {
    ++evaluations_;
    const auto n = static_cast<Eigen::Index>(c.size());
    const Eigen::Map<const Eigen::VectorXcd> cv(c.data(), n);
    Eigen::VectorXcd z = sampled_ * cv;
    double num = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        num += power(z[j], q_);
        z[j] = power_weight(z[j], q_);
    }
    const double m = static_cast<double>(z.size());
    num /= m;
    const Eigen::VectorXcd grad_num = sampled_.adjoint() * z / m;

    grid_.synthesize(c, values_);
    double den = 0.0;
    for (auto& v : values_) {
        den += power(v, q_);
        v = power_weight(v, q_);
    }
    const double g = static_cast<double>(values_.size());
    den /= g;
    grid_.analyze(values_, scratch_);

    gradient.resize(c.size());
    const double ratio = num / den;
    for (std::size_t i = 0; i < c.size(); ++i)
        gradient[i] = (grad_num[static_cast<Eigen::Index>(i)] - ratio * (scratch_[i] / g)) / den;
    if (real_) project(gradient);
    return ratio;
}

bool RatioProblem::normalize(std::vector<Complex>& c) {
    grid_.synthesize(c, values_);
    double den = 0.0;
    for (const auto& v : values_) den += power(v, q_);
    den /= static_cast<double>(values_.size());
    if (!(den > 0.0) || !std::isfinite(den)) return false;
    const double scale = std::pow(den, -1.0 / q_);
    for (auto& v : c) v *= scale;
    return true;
}

void RatioProblem::project(std::vector<Complex>& v) const {
    if (!real_) return;
    std::vector<Complex> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = 0.5 * (v[i] + std::conj(v[mirror_[i]]));
    v = std::move(out);
}

double RatioProblem::optimize(std::vector<Complex>& c, int direction, int steps) {
    if (real_) project(c);
    if (!normalize(c)) return std::numeric_limits<double>::quiet_NaN();
    const double sign = direction >= 0 ? 1.0 : -1.0;

    std::vector<Complex> grad, next(c.size()), next_grad;
    double value = ratio_and_gradient(c, grad);
    double gnorm2 = real_dot(grad, grad);
    const double cnorm = std::sqrt(real_dot(c, c));
    double step = gnorm2 > 0.0 ? 0.1 * cnorm / std::sqrt(gnorm2) : 0.0;

    for (int it = 0; it < steps; ++it) {
        if (!(gnorm2 > 1e-28 * std::max(value * value, 1e-300))) break;
        bool accepted = false;
        double trial = step;
        double next_value = value;
        for (int back = 0; back < 40; ++back) {
            for (std::size_t i = 0; i < c.size(); ++i) next[i] = c[i] + sign * trial * grad[i];
            if (normalize(next)) {
                const auto p = parts(next);
                next_value = p.numerator / p.denominator;
                if (std::isfinite(next_value) && sign * (next_value - value) >= 1e-4 * trial * gnorm2) {
                    accepted = true;
                    break;
                }
            }
            trial *= 0.5;
        }
        if (!accepted) break;
        next_value = ratio_and_gradient(next, next_grad);

        // Barzilai-Borwein step from the accepted move.
        double ss = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const Complex s = next[i] - c[i];
            const Complex y = next_grad[i] - grad[i];
            ss += std::norm(s);
            sy += s.real() * y.real() + s.imag() * y.imag();
        }
        c.swap(next);
        grad.swap(next_grad);
        value = next_value;
        gnorm2 = real_dot(grad, grad);
        const double bb = (sy != 0.0) ? ss / std::abs(sy) : 2.0 * trial;
        step = std::clamp(bb, 1e-3 * trial, 1e3 * trial);
        if (!std::isfinite(step) || step <= 0.0) step = trial;
    }
    return value;
}

}  // namespace hcross::detail
