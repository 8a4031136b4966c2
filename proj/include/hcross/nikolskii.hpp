#pragma once

// Witness lower bounds for M(Q, q) = sup { ||f||_inf / ||f||_q : f in T(Q) }.

#include "hcross/index_sets.hpp"
#include "hcross/norms.hpp"
#include "hcross/trig_poly.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace hcross {

struct NikolskiiOptions {
    int restarts = 16;
    int steps = 200;
    std::uint64_t seed = 0;
    int oversampling = kDefaultOversampling;
};

struct NikolskiiEstimate {
    double q = 2.0;
    double m_lower = 0.0;
    std::optional<double> m_reference;  // sqrt(N) for q = 2
    TrigPolynomial witness;
};

// |f(0)| / ||f||_q. Translation invariance of T(Q) makes the supremum over
// x of |f(x)| / ||f||_q equal to the supremum of this quantity.
[[nodiscard]] double nikolskii_ratio(const TrigPolynomial& f, double q, int oversampling = kDefaultOversampling);

// Maximizes nikolskii_ratio by gradient ascent. Half of the restarts start
// at (perturbed) all-equal coefficients, the other half at random ones. A
// warm start, when given, is embedded into Q and kept as a candidate.
[[nodiscard]] NikolskiiEstimate nikolskii_constant(const SupportPtr& q, double exponent,
                                                   const NikolskiiOptions& options = {},
                                                   const TrigPolynomial* warm_start = nullptr);

struct AsymptoticRow {
    int n = 0;
    std::size_t cardinality = 0;
    double m_lower = 0.0;
    double predicted = 0.0;  // 2^{n/q} n^{(nu-1)(1-1/q)}
    double ratio = 0.0;
};

// M_lower(Q_n^gamma, q) against the predicted growth, q > 2. Each level is
// warm-started from the previous witness, so M_lower is nondecreasing in n.
[[nodiscard]] std::vector<AsymptoticRow> asymptotic_comparison(std::size_t nu, const AnisotropyWeights& gamma,
                                                               double exponent, int n_min, int n_max,
                                                               const NikolskiiOptions& options = {},
                                                               std::size_t element_budget = 1u << 14);

void write_asymptotic_csv(std::ostream& os, const std::vector<AsymptoticRow>& rows);

}  // namespace hcross
