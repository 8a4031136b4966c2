#pragma once

// Scaling studies of the minimal sampling budget over hyperbolic crosses and
// user supplied frequency sets, and the exponent fits read off them.

#include "hcross/discretization.hpp"
#include "hcross/index_sets.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hcross {

inline constexpr std::size_t kDefaultStudyCardinality = std::size_t{1} << 14;

struct ScalingOptions {
    MinimalMOptions search;
    // Run over the real subspace RT(Q) and report the implied constants for T(Q).
    bool real = true;
    std::size_t max_cardinality = kDefaultStudyCardinality;
};

struct ScalingRecord {
    double q = 2.0;
    std::string gamma;  // AnisotropyWeights::to_string, or "custom"
    int n = 0;
    std::size_t cardinality = 0;
    std::size_t m_star = 0;
    bool censored = false;
    std::string generator;
    std::uint64_t seed = 0;
    int trials = 0;
    double theta = 0.0;
    bool real = false;
    double target_c1 = 0.0;
    double target_c2 = 0.0;
    // Constants for T(Q) implied by the real ones: (c1 2^{-q-1}, c2 2^{q+1}).
    double complex_c1 = 0.0;
    double complex_c2 = 0.0;
    std::size_t cap = 0;
    int restarts = 0;
    int steps = 0;
    // m_star / (|Q| (log 2|Q|)^{w(q)}), arbitrary-set studies only.
    std::optional<double> normalized;
};

// One minimal_m_search per level n of Q_n^gamma. The point and search seeds of
// level n are derived from (seed, n), so levels can be rerun in isolation.
[[nodiscard]] std::vector<ScalingRecord> scaling_study(double q, const AnisotropyWeights& gamma, int n_min, int n_max,
                                                       const ScalingOptions& options);

// Reference exponent of the sufficient budget |Q_n^gamma| n^w:
// w = 3 for q = 1, 2 for q in (1, 2], (nu - 1)(q - 2) + min(q, 3) for q > 2.
[[nodiscard]] double reference_exponent(std::size_t nu, double q);

// Exponent w of the logarithmic factor (log 2|Q|)^w for general Q, q in [1, 2):
// 3 for q = 1 and 2 otherwise.
[[nodiscard]] double arbitrary_set_exponent(double q);

struct ExponentFit {
    double w_hat = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // root mean square of the log residuals
    int n_min = 0;
    int n_max = 0;
    std::size_t points = 0;
    std::optional<double> reference;
};

// Least squares fit of log(m_star / N) = intercept + w log n over the
// uncensored records; at least three with two distinct n are required.
[[nodiscard]] ExponentFit fit_exponent(const std::vector<ScalingRecord>& records);

// Minimal budgets for user supplied sets over T(Q), q in [1, 2), each record
// carrying m_star / (|Q| (log 2|Q|)^{w(q)}).
[[nodiscard]] std::vector<ScalingRecord> arbitrary_q_study(const std::vector<SupportPtr>& sets, double q,
                                                           const MinimalMOptions& options);

void write_scaling_csv(std::ostream& os, const std::vector<ScalingRecord>& records);
[[nodiscard]] std::vector<ScalingRecord> read_scaling_csv(std::istream& is);
[[nodiscard]] const std::vector<std::string>& scaling_csv_columns();

struct NikolskiiEntropyCheck {
    double m_lower = 0.0;
    double eps1 = 0.0;
    double bound = 0.0;  // 4 eps1 N^{1/q} (1 + slack)
    bool holds = false;
};

// M_lower <= 4 eps_1 N^{1/q} (1 + slack) with eps_1 the k = 1 covering estimate.
// A diagnostic only: eps_1 comes from a finite cloud.
[[nodiscard]] NikolskiiEntropyCheck nikolskii_entropy_check(double m_lower, double eps1, std::size_t cardinality,
                                                            double q, double slack = 0.5);

// Command line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcross
