#pragma once

// Trigonometric polynomials f(x) = sum_{k in Q} c_k e^{i(k,x)} on the torus
// [0, 2pi)^d with the normalized Lebesgue measure.

#include "hcross/index_sets.hpp"
#include "hcross/seeding.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace hcross {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class TorusPoint {
public:
    TorusPoint() = default;
    // Coordinates are reduced into [0, 2pi).
    explicit TorusPoint(std::vector<double> x);

    [[nodiscard]] std::size_t dim() const noexcept { return x_.size(); }
    [[nodiscard]] double operator[](std::size_t j) const { return x_[j]; }
    [[nodiscard]] std::span<const double> coords() const noexcept { return x_; }

    bool operator==(const TorusPoint&) const = default;

private:
    std::vector<double> x_;
};

[[nodiscard]] double reduce_angle(double x) noexcept;
[[nodiscard]] TorusPoint operator+(const TorusPoint& a, const TorusPoint& b);

class TrigPolynomial {
public:
    // `coefficients` is aligned with the element order of `support`. With
    // `real` set the coefficients must satisfy c_{-k} = conj(c_k).
    TrigPolynomial(SupportPtr support, std::vector<Complex> coefficients, bool real = false);

    static TrigPolynomial zero(SupportPtr support);
    // c e^{i(k,x)}; the support must contain k.
    static TrigPolynomial harmonic(SupportPtr support, const FrequencyIndex& k, Complex c = 1.0);
    // All coefficients equal to c.
    static TrigPolynomial uniform(SupportPtr support, Complex c = 1.0);

    [[nodiscard]] const IndexSet& support() const noexcept { return *support_; }
    [[nodiscard]] const SupportPtr& support_ptr() const noexcept { return support_; }
    [[nodiscard]] std::span<const Complex> coefficients() const noexcept { return coefficients_; }
    [[nodiscard]] Complex coefficient(const FrequencyIndex& k) const;
    [[nodiscard]] bool is_real() const noexcept { return real_; }
    [[nodiscard]] std::size_t dim() const noexcept { return support_->dim(); }
    [[nodiscard]] std::size_t size() const noexcept { return coefficients_.size(); }

    [[nodiscard]] TrigPolynomial scaled(Complex lambda) const;
    // g(x) = f(x + h): multiplies c_k by e^{i(k,h)}.
    [[nodiscard]] TrigPolynomial shifted(const TorusPoint& h) const;
    // Same function over a superset of the support.
    [[nodiscard]] TrigPolynomial embedded(SupportPtr larger) const;

    friend TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b);

private:
    SupportPtr support_;
    std::vector<Complex> coefficients_;
    bool real_ = false;
};

// True when c_{-k} = conj(c_k) for every k, to a relative tolerance.
[[nodiscard]] bool has_conjugate_symmetry(const IndexSet& q, std::span<const Complex> c, double tol = 1e-12);

[[nodiscard]] Complex evaluate(const TrigPolynomial& f, const TorusPoint& x);
[[nodiscard]] std::vector<Complex> evaluate(const TrigPolynomial& f, std::span<const TorusPoint> points);

// Values on the tensor grid x_t = 2 pi t / size, row-major with the last
// axis fastest.
struct GridValues {
    std::vector<std::size_t> sizes;
    std::vector<Complex> values;

    [[nodiscard]] std::size_t total() const noexcept { return values.size(); }
    // Grid node of linear index i.
    [[nodiscard]] TorusPoint node(std::size_t i) const;
};

// Requires sizes[j] > 2 max|k_j| so that no two frequencies alias.
[[nodiscard]] GridValues evaluate_on_grid(const TrigPolynomial& f, std::span<const std::size_t> sizes,
                                          std::size_t budget = kDefaultElementBudget * 4);

// Complex case: iid standard complex Gaussian coefficients. Real case: one
// draw per {k, -k} pair mirrored by conjugation, real Gaussian c_0.
[[nodiscard]] TrigPolynomial random_polynomial(SupportPtr q, bool real, std::uint64_t seed);
[[nodiscard]] TrigPolynomial random_polynomial(SupportPtr q, bool real, Rng& rng);

// f = f_R + i f_I with f_R, f_I real, on the symmetric closure of the support.
[[nodiscard]] std::pair<TrigPolynomial, TrigPolynomial> real_imaginary_parts(const TrigPolynomial& f);

// Coefficients of f restricted to rho(s); same support as f.
[[nodiscard]] TrigPolynomial dyadic_projection(const TrigPolynomial& f, std::span<const int> s);

// Header "d n tag real|complex", then one "k_1 .. k_d re im" line per
// coefficient with re/im as hexadecimal floats.
void write_trig_polynomial(std::ostream& os, const TrigPolynomial& f);
[[nodiscard]] TrigPolynomial read_trig_polynomial(std::istream& is);

}  // namespace hcross
