#include "hcross/discretization.hpp"

#include "hcross/errors.hpp"
#include "hcross/ratio_search.hpp"
#include "hcross/seeding.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace hcross {

namespace {

nlohmann::json witness_json(const TrigPolynomial& f) {
    auto rows = nlohmann::json::array();
    const auto& q = f.support();
    for (std::size_t i = 0; i < q.size(); ++i) {
        auto row = nlohmann::json::array();
        for (auto v : q[i].values()) row.push_back(v);
        row.push_back(f.coefficients()[i].real());
        row.push_back(f.coefficients()[i].imag());
        rows.push_back(std::move(row));
    }
    return {{"real", f.is_real()}, {"coefficients", std::move(rows)}};
}

std::vector<Complex> to_vector(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

// E^* E / m accumulated in row blocks.
Eigen::MatrixXcd sampled_gram(const IndexSet& q, const PointSet& xi) {
    const auto n = static_cast<Eigen::Index>(q.size());
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
    constexpr std::size_t kBlock = 4096;
    const auto& pts = xi.points();
    for (std::size_t start = 0; start < pts.size(); start += kBlock) {
        const auto count = std::min(kBlock, pts.size() - start);
        const auto e = detail::sampling_matrix(q, std::span(pts).subspan(start, count));
        gram.noalias() += e.adjoint() * e;
    }
    return gram / static_cast<double>(pts.size());
}

// Real and imaginary parts of a coefficient vector as real polynomials; the
// one of larger norm (a real polynomial sharing the source's extremal role
// when the source is an eigenvector, as f(xi) = 0 carries over to both parts).
std::vector<Complex> dominant_real_part(const SupportPtr& q, std::vector<Complex> c) {
    const auto [re, im] = real_imaginary_parts(TrigPolynomial(q, std::move(c)));
    const auto& pick = l2_norm(re).value >= l2_norm(im).value ? re : im;
    return {pick.coefficients().begin(), pick.coefficients().end()};
}

}  // namespace

void to_json(nlohmann::json& j, const DiscretizationReport& r) {
    j = nlohmann::json{{"q", r.q},
                       {"C1", r.c1},
                       {"C2", r.c2},
                       {"exact", r.exact},
                       {"m", r.m},
                       {"N", r.n},
                       {"trials",
                        {{"method", r.trials.method},
                         {"restarts", r.trials.restarts},
                         {"steps", r.trials.steps},
                         {"seed", r.trials.seed},
                         {"real", r.trials.real},
                         {"spectral_starts", r.trials.spectral_starts},
                         {"evaluations", r.trials.evaluations}}}};
    if (r.minimizer) j["witness_min"] = witness_json(*r.minimizer);
    if (r.maximizer) j["witness_max"] = witness_json(*r.maximizer);
}

double discretization_ratio(const TrigPolynomial& f, const PointSet& xi, double q, int oversampling) {
    const double num = discrete_lq(f, xi, q).value;
    const double den = lq_norm(f, q, oversampling).value;
    return std::pow(num / den, q);
}

DiscretizationReport frame_bounds_q2(const SupportPtr& q, const PointSet& xi, std::size_t eigen_budget) {
    if (xi.dim() != q->dim()) throw ValidationError("point set dimension does not match the support");
    if (q->size() > eigen_budget)
        throw BudgetError("eigenproblem of size " + std::to_string(q->size()) + " exceeds the budget of " +
                          std::to_string(eigen_budget));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sampled_gram(*q, xi));
    if (solver.info() != Eigen::Success) throw BudgetError("eigensolver failed to converge");
    const auto& ev = solver.eigenvalues();
    const auto last = ev.size() - 1;

    DiscretizationReport r;
    r.q = 2.0;
    r.c1 = std::max(0.0, ev[0]);
    r.c2 = std::max(r.c1, ev[last]);
    r.exact = true;
    r.m = xi.size();
    r.n = q->size();
    r.minimizer = TrigPolynomial(q, to_vector(solver.eigenvectors().col(0)));
    r.maximizer = TrigPolynomial(q, to_vector(solver.eigenvectors().col(last)));
    r.trials.method = "spectral";
    return r;
}

DiscretizationReport ratio_extremize(const SupportPtr& q, const PointSet& xi, double exponent,
                                     const RatioSearchOptions& options) {
    if (!(exponent >= 1.0) || !std::isfinite(exponent)) throw ValidationError("q must lie in [1, infinity)");
    if (options.restarts < 0 || options.steps < 0) throw ValidationError("restarts and steps must be nonnegative");
    detail::RatioProblem problem(q, xi, exponent, options.oversampling, options.real);
    const auto n = q->size();

    struct Best {
        double ratio = 0.0;
        std::optional<TrigPolynomial> witness;
    };
    Best lo{std::numeric_limits<double>::infinity(), std::nullopt};
    Best hi{-std::numeric_limits<double>::infinity(), std::nullopt};

    auto consider = [&](std::vector<Complex> c) {
        TrigPolynomial f(q, std::move(c), options.real);
        const double r = discretization_ratio(f, xi, exponent, options.oversampling);
        if (!std::isfinite(r)) return;
        if (r < lo.ratio) lo = {r, f};
        if (r > hi.ratio) hi = {r, f};
    };
    auto run = [&](std::vector<Complex> c, int direction) {
        if (!std::isfinite(problem.optimize(c, direction, options.steps))) return false;
        consider(std::move(c));
        return true;
    };

    // A single harmonic has ratio 1 for every xi and q; for real searches the
    // constant (or the cosine of the first frequency) plays that role.
    {
        const auto& k = (*q)[0];
        std::vector<Complex> c(n);
        c[0] = 1.0;
        if (options.real && !k.is_zero()) c[*q->find(k.negated())] = 1.0;
        if (options.real) {
            if (auto zero = q->find(FrequencyIndex(std::vector<std::int64_t>(q->dim(), 0)))) {
                std::fill(c.begin(), c.end(), Complex{});
                c[*zero] = 1.0;
            }
        }
        if (problem.normalize(c)) consider(c);
    }

    if (options.spectral_starts) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sampled_gram(*q, xi));
        if (solver.info() == Eigen::Success) {
            const auto last = static_cast<Eigen::Index>(n) - 1;
            for (auto [col, direction] : {std::pair{Eigen::Index{0}, -1}, std::pair{last, +1}}) {
                auto c = to_vector(solver.eigenvectors().col(col));
                if (options.real) c = dominant_real_part(q, std::move(c));
                auto start = c;
                if (problem.normalize(start)) consider(start);
                run(std::move(c), direction);
            }
        }
    }

    for (int direction : {-1, +1}) {
        for (int r = 0; r < options.restarts; ++r) {
            for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
                const auto seed = derive_seed(options.seed, {static_cast<std::uint64_t>(direction + 1),
                                                             static_cast<std::uint64_t>(r), attempt});
                auto start = random_polynomial(q, options.real, seed);
                if (run({start.coefficients().begin(), start.coefficients().end()}, direction)) break;
            }
        }
    }

    DiscretizationReport report;
    report.q = exponent;
    report.c1 = lo.ratio;
    report.c2 = hi.ratio;
    report.exact = false;
    report.m = xi.size();
    report.n = n;
    report.minimizer = lo.witness;
    report.maximizer = hi.witness;
    report.trials = {"witness_search", options.restarts, options.steps,  options.seed,
                     options.real,     options.spectral_starts, problem.evaluations()};
    return report;
}

bool within_target(const DiscretizationReport& report, const Target& target) noexcept {
    return report.c1 >= target.c1 && report.c2 <= target.c2;
}

CertifyResult certify(const SupportPtr& q, const PointSet& xi, double exponent, const Target& target,
                      const RatioSearchOptions& options) {
    if (!(target.c1 <= target.c2)) throw ValidationError("certify target needs c1 <= c2");
    CertifyResult out;
    // For q = 2 and symmetric Q the real subspace has the same spectral range,
    // since |f|^2 = f_R^2 + f_I^2 makes every complex ratio a mediant of real ones.
    if (exponent == 2.0) {
        out.report = frame_bounds_q2(q, xi);
        out.accepted = within_target(out.report, target);
        out.provisional = false;
        return out;
    }
    out.report = ratio_extremize(q, xi, exponent, options);
    out.accepted = within_target(out.report, target);
    out.provisional = out.accepted;
    return out;
}

// ------------------------------------------------------------ minimal m

namespace {

PointGenerator trial_generator(const SupportPtr& q, const MinimalMOptions& options, std::size_t m, int trial) {
    PointGenerator g = options.generator;
    g.seed = derive_seed(options.seed, {m, static_cast<std::uint64_t>(trial), 0});
    switch (g.kind) {
    case GeneratorKind::uniform_random: break;
    case GeneratorKind::equispaced_grid:
        if (q->dim() != 1) throw ValidationError("equispaced budgets are only defined in dimension 1");
        g.sizes = {m};
        break;
    case GeneratorKind::subsampled_grid:
        if (g.sizes.empty()) {
            const auto maxabs = q->max_abs();
            for (auto d : maxabs)
                g.sizes.push_back(static_cast<std::size_t>(options.grid_oversampling) * static_cast<std::size_t>(2 * d + 1));
        }
        break;
    }
    return g;
}

std::size_t grid_capacity(const PointGenerator& g) {
    std::size_t total = 1;
    for (auto s : g.sizes) total *= s;
    return total;
}

}  // namespace

LadderEntry certify_at(const SupportPtr& q, double exponent, std::size_t m, const MinimalMOptions& options) {
    LadderEntry entry{m, 0, options.trials};
    const bool deterministic = options.generator.kind == GeneratorKind::equispaced_grid;
    for (int t = 0; t < options.trials; ++t) {
        if (deterministic && t > 0) {
            entry.successes += entry.successes > 0 ? 1 : 0;
            continue;
        }
        const auto g = trial_generator(q, options, m, t);
        const auto xi = generate_points(g, m, q->dim());
        auto search = options.search;
        search.seed = derive_seed(options.seed, {m, static_cast<std::uint64_t>(t), 1});
        if (certify(q, xi, exponent, options.target, search).accepted) ++entry.successes;
    }
    return entry;
}

MinimalMResult minimal_m_search(const SupportPtr& q, double exponent, const MinimalMOptions& options) {
    if (!(options.theta > 0.0 && options.theta <= 1.0)) throw ValidationError("theta must lie in (0, 1]");
    if (options.trials < 1) throw ValidationError("at least one trial per budget is required");
    if (!(options.target.c1 <= options.target.c2)) throw ValidationError("target needs c1 <= c2");
    const std::size_t n = q->size();
    const std::size_t cap = options.cap_factor * n;
    const int needed = static_cast<int>(std::ceil(options.theta * options.trials - 1e-12));

    std::map<std::size_t, LadderEntry> ladder;
    auto passes = [&](std::size_t m) {
        if (auto it = ladder.find(m); it != ladder.end()) return it->second.successes >= needed;
        auto entry = certify_at(q, exponent, m, options);
        ladder[m] = entry;
        return entry.successes >= needed;
    };
    auto finish = [&](std::size_t m_star, bool censored) {
        MinimalMResult r{m_star, censored, {}};
        for (const auto& [m, e] : ladder) r.ladder.push_back(e);
        return r;
    };

    // Below |Q| points the evaluation map has a kernel, so c1 > 0 cannot hold.
    std::size_t lo = options.target.c1 > 0.0 ? n - 1 : 0;
    std::size_t hi = n;
    const bool subsampled = options.generator.kind == GeneratorKind::subsampled_grid;
    const auto capacity = subsampled ? grid_capacity(trial_generator(q, options, n, 0)) : cap;
    while (true) {
        if (hi > cap || hi > capacity) return finish(std::min(cap, capacity), true);
        if (passes(hi)) break;
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (mid == 0) break;
        if (passes(mid))
            hi = mid;
        else
            lo = mid;
    }
    return finish(hi, false);
}

void write_ladder_csv(std::ostream& os, const MinimalMResult& result) {
    os << "m,successes,trials\n";
    for (const auto& e : result.ladder) os << e.m << ',' << e.successes << ',' << e.trials << '\n';
}

DiscretizationReport complex_from_real_report(const DiscretizationReport& real_report, double q) {
    DiscretizationReport out = real_report;
    const double factor = std::pow(2.0, q + 1.0);
    out.c1 = real_report.c1 / factor;
    out.c2 = real_report.c2 * factor;
    out.exact = false;
    out.minimizer.reset();
    out.maximizer.reset();
    out.trials.method = "real_to_complex";
    out.trials.real = false;
    return out;
}

}  // namespace hcross
