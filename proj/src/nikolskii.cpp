#include "hcross/nikolskii.hpp"

#include "hcross/errors.hpp"
#include "hcross/ratio_search.hpp"
#include "hcross/seeding.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

namespace hcross {

namespace {

TorusPoint origin(std::size_t d) { return TorusPoint(std::vector<double>(d, 0.0)); }

}  // namespace

double nikolskii_ratio(const TrigPolynomial& f, double q, int oversampling) {
    return std::abs(evaluate(f, origin(f.dim()))) / lq_norm(f, q, oversampling).value;
}

NikolskiiEstimate nikolskii_constant(const SupportPtr& q, double exponent, const NikolskiiOptions& options,
                                     const TrigPolynomial* warm_start) {
    if (q->empty()) throw ValidationError("Nikol'skii constant of an empty frequency set");
    if (!(exponent >= 1.0) || !std::isfinite(exponent)) throw ValidationError("q must lie in [1, infinity)");
    const auto n = q->size();
    const PointSet at_origin({origin(q->dim())}, {});
    detail::RatioProblem problem(q, at_origin, exponent, options.oversampling, false);

    double best = -1.0;
    std::optional<TrigPolynomial> witness;
    auto consider = [&](std::vector<Complex> c) {
        TrigPolynomial f(q, std::move(c));
        const double r = nikolskii_ratio(f, exponent, options.oversampling);
        if (std::isfinite(r) && r > best) {
            best = r;
            witness = std::move(f);
        }
    };
    auto run = [&](std::vector<Complex> c) {
        if (std::isfinite(problem.optimize(c, +1, options.steps))) consider(std::move(c));
    };

    {
        const auto h = TrigPolynomial::harmonic(q, (*q)[0]);
        consider({h.coefficients().begin(), h.coefficients().end()});
    }
    if (warm_start) {
        auto embedded = warm_start->embedded(q);
        const auto c = embedded.coefficients();
        consider({c.begin(), c.end()});
        run({c.begin(), c.end()});
    }

    const int aligned = (options.restarts + 1) / 2;
    for (int r = 0; r < options.restarts; ++r) {
        Rng rng(derive_seed(options.seed, {static_cast<std::uint64_t>(r)}));
        std::vector<Complex> c(n, Complex(1.0));
        if (r < aligned) {
            // Exact all-equal start first, perturbed copies after it.
            if (r > 0) {
                std::normal_distribution<double> normal(0.0, 0.25);
                for (auto& v : c) v += Complex(normal(rng), normal(rng));
            }
        } else {
            auto f = random_polynomial(q, false, rng);
            c.assign(f.coefficients().begin(), f.coefficients().end());
        }
        run(std::move(c));
    }
    if (!witness) throw ValidationError("Nikol'skii search produced no finite candidate");

    NikolskiiEstimate out{exponent, best, std::nullopt, *witness};
    if (exponent == 2.0) out.m_reference = std::sqrt(static_cast<double>(n));
    return out;
}

std::vector<AsymptoticRow> asymptotic_comparison(std::size_t nu, const AnisotropyWeights& gamma, double exponent,
                                                 int n_min, int n_max, const NikolskiiOptions& options,
                                                 std::size_t element_budget) {
    if (!(exponent > 2.0) || !std::isfinite(exponent))
        throw ValidationError("asymptotic comparison needs a finite q > 2");
    if (gamma.nu() != nu)
        throw ValidationError("gamma has " + std::to_string(gamma.nu()) + " leading unit weights but nu = " +
                              std::to_string(nu));
    if (n_min < 1 || n_max < n_min) throw ValidationError("asymptotic comparison needs 1 <= n_min <= n_max");
    std::vector<AsymptoticRow> rows;
    std::optional<TrigPolynomial> previous;
    const double power = (static_cast<double>(nu) - 1.0) * (1.0 - 1.0 / exponent);
    for (int n = n_min; n <= n_max; ++n) {
        auto q = share(anisotropic_cross(n, gamma, element_budget));
        auto level_options = options;
        level_options.seed = derive_seed(options.seed, {static_cast<std::uint64_t>(n)});
        auto est = nikolskii_constant(q, exponent, level_options, previous ? &*previous : nullptr);
        AsymptoticRow row;
        row.n = n;
        row.cardinality = q->size();
        row.m_lower = est.m_lower;
        row.predicted = std::pow(2.0, n / exponent) * std::pow(static_cast<double>(n), power);
        row.ratio = row.m_lower / row.predicted;
        rows.push_back(row);
        previous = est.witness;
    }
    return rows;
}

void write_asymptotic_csv(std::ostream& os, const std::vector<AsymptoticRow>& rows) {
    os << "n,N,M_lower,predicted,ratio\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%zu,%.17g,%.17g,%.17g\n", r.n, r.cardinality, r.m_lower, r.predicted,
                      r.ratio);
        os << buf;
    }
}

}  // namespace hcross
