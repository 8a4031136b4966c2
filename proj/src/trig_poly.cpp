#include "hcross/trig_poly.hpp"

#include "hcross/errors.hpp"
#include "hcross/grid_transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace hcross {

double reduce_angle(double x) noexcept {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

TorusPoint::TorusPoint(std::vector<double> x) : x_(std::move(x)) {
    for (auto& v : x_) v = reduce_angle(v);
}

TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
    if (a.dim() != b.dim()) throw ValidationError("torus point dimension mismatch");
    std::vector<double> x(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) x[j] = a[j] + b[j];
    return TorusPoint(std::move(x));
}

// ---------------------------------------------------------- TrigPolynomial

bool has_conjugate_symmetry(const IndexSet& q, std::span<const Complex> c, double tol) {
    double scale = 1.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < q.size(); ++i) {
        auto j = q.find(q[i].negated());
        const Complex mirror = j ? c[*j] : Complex{};
        if (std::abs(mirror - std::conj(c[i])) > tol * scale) return false;
    }
    return true;
}

TrigPolynomial::TrigPolynomial(SupportPtr support, std::vector<Complex> coefficients, bool real)
    : support_(std::move(support)), coefficients_(std::move(coefficients)), real_(real) {
    if (!support_) throw ValidationError("polynomial without support");
    if (coefficients_.size() != support_->size())
        throw ValidationError("coefficient count " + std::to_string(coefficients_.size()) +
                              " does not match support size " + std::to_string(support_->size()));
    if (real_ && !has_conjugate_symmetry(*support_, coefficients_))
        throw ValidationError("real polynomial requires c_{-k} = conj(c_k)");
}

TrigPolynomial TrigPolynomial::zero(SupportPtr support) {
    const auto n = support->size();
    return TrigPolynomial(std::move(support), std::vector<Complex>(n), true);
}

TrigPolynomial TrigPolynomial::harmonic(SupportPtr support, const FrequencyIndex& k, Complex c) {
    auto i = support->find(k);
    if (!i) throw ValidationError("harmonic frequency not in support");
    std::vector<Complex> coef(support->size());
    coef[*i] = c;
    const bool real = k.is_zero() && c.imag() == 0.0;
    return TrigPolynomial(std::move(support), std::move(coef), real);
}

TrigPolynomial TrigPolynomial::uniform(SupportPtr support, Complex c) {
    const bool real = support->is_symmetric() && c.imag() == 0.0;
    std::vector<Complex> coef(support->size(), c);
    return TrigPolynomial(std::move(support), std::move(coef), real);
}

Complex TrigPolynomial::coefficient(const FrequencyIndex& k) const {
    auto i = support_->find(k);
    return i ? coefficients_[*i] : Complex{};
}

TrigPolynomial TrigPolynomial::scaled(Complex lambda) const {
    std::vector<Complex> c(coefficients_);
    for (auto& v : c) v *= lambda;
    return TrigPolynomial(support_, std::move(c), real_ && lambda.imag() == 0.0);
}

TrigPolynomial TrigPolynomial::shifted(const TorusPoint& h) const {
    if (h.dim() != dim()) throw ValidationError("shift dimension mismatch");
    std::vector<Complex> c(coefficients_);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& k = (*support_)[i];
        double phase = 0.0;
        for (std::size_t j = 0; j < k.dim(); ++j) phase += static_cast<double>(k[j]) * h[j];
        c[i] *= Complex(std::cos(phase), std::sin(phase));
    }
    return TrigPolynomial(support_, std::move(c), false);
}

TrigPolynomial TrigPolynomial::embedded(SupportPtr larger) const {
    if (!support_->is_subset_of(*larger)) throw ValidationError("embedding target does not contain the support");
    std::vector<Complex> c(larger->size());
    for (std::size_t i = 0; i < support_->size(); ++i) c[*larger->find((*support_)[i])] = coefficients_[i];
    const bool real = real_ && has_conjugate_symmetry(*larger, c);
    return TrigPolynomial(std::move(larger), std::move(c), real);
}

TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b) {
    if (a.support_ != b.support_ && !(a.support() == b.support()))
        throw ValidationError("adding polynomials with different supports");
    std::vector<Complex> c(a.coefficients_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coefficients_[i];
    return TrigPolynomial(a.support_, std::move(c), a.real_ && b.real_);
}

// -------------------------------------------------------------- evaluation

Complex evaluate(const TrigPolynomial& f, const TorusPoint& x) {
    if (x.dim() != f.dim())
        throw ValidationError("point of dimension " + std::to_string(x.dim()) + " for a polynomial of dimension " +
                              std::to_string(f.dim()));
    const auto& q = f.support();
    const auto c = f.coefficients();
    Complex sum{};
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto& k = q[i];
        double phase = 0.0;
        for (std::size_t j = 0; j < k.dim(); ++j) phase += static_cast<double>(k[j]) * x[j];
        sum += c[i] * Complex(std::cos(phase), std::sin(phase));
    }
    return sum;
}

std::vector<Complex> evaluate(const TrigPolynomial& f, std::span<const TorusPoint> points) {
    std::vector<Complex> out(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) out[p] = evaluate(f, points[p]);
    return out;
}

TorusPoint GridValues::node(std::size_t i) const {
    std::vector<double> x(sizes.size());
    for (std::size_t j = sizes.size(); j-- > 0;) {
        x[j] = kTwoPi * static_cast<double>(i % sizes[j]) / static_cast<double>(sizes[j]);
        i /= sizes[j];
    }
    return TorusPoint(std::move(x));
}

GridValues evaluate_on_grid(const TrigPolynomial& f, std::span<const std::size_t> sizes, std::size_t budget) {
    std::size_t total = 1;
    for (auto s : sizes) {
        if (s == 0) throw ValidationError("grid size must be positive");
        if (total > budget / s) throw BudgetError("grid exceeds the point budget");
        total *= s;
    }
    GridTransform transform(f.support(), {sizes.begin(), sizes.end()});
    GridValues out{{sizes.begin(), sizes.end()}, std::vector<Complex>(total)};
    transform.synthesize(f.coefficients(), out.values);
    return out;
}

// ------------------------------------------------------------------ random

TrigPolynomial random_polynomial(SupportPtr q, bool real, Rng& rng) {
    if (q->empty()) throw ValidationError("random polynomial on an empty support");
    if (real && !q->is_symmetric()) throw ValidationError("real polynomials need a support symmetric under k -> -k");
    std::normal_distribution<double> normal(0.0, 1.0);
    const double s = std::sqrt(0.5);
    std::vector<Complex> c(q->size());
    if (!real) {
        for (auto& v : c) {
            const double re = normal(rng);
            const double im = normal(rng);
            v = Complex(s * re, s * im);
        }
        return TrigPolynomial(std::move(q), std::move(c), false);
    }
    for (std::size_t i = 0; i < q->size(); ++i) {
        const auto& k = (*q)[i];
        if (k.is_zero()) {
            c[i] = normal(rng);
            continue;
        }
        const auto mirror = k.negated();
        if (mirror < k) continue;  // drawn with its partner
        const double re = normal(rng);
        const double im = normal(rng);
        c[i] = Complex(s * re, s * im);
        c[*q->find(mirror)] = std::conj(c[i]);
    }
    return TrigPolynomial(std::move(q), std::move(c), true);
}

TrigPolynomial random_polynomial(SupportPtr q, bool real, std::uint64_t seed) {
    Rng rng(seed);
    return random_polynomial(std::move(q), real, rng);
}

std::pair<TrigPolynomial, TrigPolynomial> real_imaginary_parts(const TrigPolynomial& f) {
    SupportPtr support = f.support().is_symmetric() ? f.support_ptr() : share(symmetric_closure(f.support()));
    const auto& q = *support;
    std::vector<Complex> c(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) c[i] = f.coefficient(q[i]);
    std::vector<Complex> re(q.size()), im(q.size());
    const Complex two_i(0.0, 2.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        const Complex mirror = std::conj(c[*q.find(q[i].negated())]);
        re[i] = (c[i] + mirror) / 2.0;
        im[i] = (c[i] - mirror) / two_i;
    }
    return {TrigPolynomial(support, std::move(re), true), TrigPolynomial(support, std::move(im), true)};
}

TrigPolynomial dyadic_projection(const TrigPolynomial& f, std::span<const int> s) {
    if (s.size() != f.dim()) throw ValidationError("block dimension does not match the polynomial");
    std::vector<Complex> c(f.size());
    const auto& q = f.support();
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto b = block_of(q[i]);
        if (std::equal(b.begin(), b.end(), s.begin())) c[i] = f.coefficients()[i];
    }
    // rho(s) is symmetric, so the projection of a real polynomial stays real.
    return TrigPolynomial(f.support_ptr(), std::move(c), f.is_real());
}

// ----------------------------------------------------------- serialization

namespace {

std::string hexfloat(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_double(const std::string& token) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) throw ValidationError("malformed number '" + token + "'");
    return v;
}

}  // namespace

void write_trig_polynomial(std::ostream& os, const TrigPolynomial& f) {
    const auto& q = f.support();
    os << q.dim() << ' ' << q.origin().level << ' ' << q.tag() << ' ' << (f.is_real() ? "real" : "complex") << '\n';
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = 0; j < q.dim(); ++j) os << q[i][j] << ' ';
        os << hexfloat(f.coefficients()[i].real()) << ' ' << hexfloat(f.coefficients()[i].imag()) << '\n';
    }
}

TrigPolynomial read_trig_polynomial(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ValidationError("polynomial: missing header");
    std::istringstream hs(header);
    std::size_t d = 0;
    int level = 0;
    std::string tag, kind;
    if (!(hs >> d >> level >> tag >> kind) || (kind != "real" && kind != "complex") || d == 0)
        throw ValidationError("polynomial: malformed header '" + header + "'");
    std::vector<FrequencyIndex> ks;
    std::vector<Complex> cs;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) break;
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string t;
        while (ls >> t) tokens.push_back(t);
        if (tokens.size() != d + 2) throw ValidationError("polynomial: malformed line '" + line + "'");
        std::vector<std::int64_t> k(d);
        for (std::size_t j = 0; j < d; ++j) k[j] = std::stoll(tokens[j]);
        ks.emplace_back(std::move(k));
        cs.emplace_back(parse_double(tokens[d]), parse_double(tokens[d + 1]));
    }
    // Lines are written in support order, which custom() reproduces.
    std::ostringstream set_text;
    set_text << d << ' ' << level << ' ' << tag << '\n';
    for (const auto& k : ks) {
        for (std::size_t j = 0; j < d; ++j) set_text << (j ? " " : "") << k[j];
        set_text << '\n';
    }
    std::istringstream set_in(set_text.str());
    auto support = share(read_index_set(set_in));
    std::vector<Complex> ordered(cs.size());
    for (std::size_t i = 0; i < ks.size(); ++i) ordered[*support->find(ks[i])] = cs[i];
    return TrigPolynomial(std::move(support), std::move(ordered), kind == "real");
}

}  // namespace hcross
