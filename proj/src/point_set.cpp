#include "hcross/point_set.hpp"

#include "hcross/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace hcross {

std::string to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::uniform_random: return "uniform_random";
    case GeneratorKind::equispaced_grid: return "equispaced_grid";
    case GeneratorKind::subsampled_grid: return "subsampled_grid";
    }
    return "unknown";
}

GeneratorKind parse_generator(const std::string& name) {
    if (name == "uniform_random" || name == "uniform") return GeneratorKind::uniform_random;
    if (name == "equispaced_grid" || name == "equispaced") return GeneratorKind::equispaced_grid;
    if (name == "subsampled_grid" || name == "subsampled") return GeneratorKind::subsampled_grid;
    throw ValidationError("unknown point generator '" + name + "'");
}

PointSet::PointSet(std::vector<TorusPoint> points, PointGenerator generator)
    : points_(std::move(points)), generator_(std::move(generator)) {
    if (points_.empty()) throw ValidationError("point set must contain at least one point");
    const auto d = points_.front().dim();
    if (d == 0) throw ValidationError("point dimension must be at least 1");
    for (const auto& p : points_)
        if (p.dim() != d) throw ValidationError("point set mixes dimensions");
}

PointSet merge(const PointSet& a, const PointSet& b) {
    if (a.dim() != b.dim()) throw ValidationError("merging point sets of different dimensions");
    std::vector<TorusPoint> pts(a.points_);
    pts.insert(pts.end(), b.points_.begin(), b.points_.end());
    return PointSet(std::move(pts), a.generator_);
}

PointSet uniform_random_points(std::size_t m, std::size_t d, std::uint64_t seed) {
    if (m == 0) throw ValidationError("point count must be at least 1");
    if (d == 0) throw ValidationError("point dimension must be at least 1");
    Rng rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::vector<TorusPoint> pts;
    pts.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> x(d);
        for (auto& v : x) v = angle(rng);
        pts.emplace_back(std::move(x));
    }
    return PointSet(std::move(pts), {GeneratorKind::uniform_random, seed, {}});
}

namespace {

std::size_t grid_total(const std::vector<std::size_t>& sizes) {
    if (sizes.empty()) throw ValidationError("grid needs at least one axis");
    std::size_t total = 1;
    for (auto s : sizes) {
        if (s == 0) throw ValidationError("grid size must be positive");
        if (total > kDefaultElementBudget * 4 / s) throw BudgetError("grid exceeds the point budget");
        total *= s;
    }
    return total;
}

TorusPoint grid_node(const std::vector<std::size_t>& sizes, std::size_t i) {
    std::vector<double> x(sizes.size());
    for (std::size_t j = sizes.size(); j-- > 0;) {
        x[j] = kTwoPi * static_cast<double>(i % sizes[j]) / static_cast<double>(sizes[j]);
        i /= sizes[j];
    }
    return TorusPoint(std::move(x));
}

}  // namespace

PointSet equispaced_grid(std::vector<std::size_t> sizes) {
    const auto total = grid_total(sizes);
    std::vector<TorusPoint> pts;
    pts.reserve(total);
    for (std::size_t i = 0; i < total; ++i) pts.push_back(grid_node(sizes, i));
    return PointSet(std::move(pts), {GeneratorKind::equispaced_grid, 0, std::move(sizes)});
}

PointSet subsampled_grid(std::vector<std::size_t> sizes, std::size_t m, std::uint64_t seed) {
    const auto total = grid_total(sizes);
    if (m == 0) throw ValidationError("point count must be at least 1");
    if (m > total)
        throw ValidationError("cannot subsample " + std::to_string(m) + " nodes from a grid of " +
                              std::to_string(total));
    Rng rng(seed);
    // Partial Fisher-Yates over node indices.
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, total - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    std::vector<TorusPoint> pts;
    pts.reserve(m);
    for (std::size_t i = 0; i < m; ++i) pts.push_back(grid_node(sizes, idx[i]));
    return PointSet(std::move(pts), {GeneratorKind::subsampled_grid, seed, std::move(sizes)});
}

PointSet generate_points(const PointGenerator& generator, std::size_t m, std::size_t d) {
    switch (generator.kind) {
    case GeneratorKind::uniform_random: return uniform_random_points(m, d, generator.seed);
    case GeneratorKind::equispaced_grid: {
        auto sizes = generator.sizes.empty() ? std::vector<std::size_t>{m} : generator.sizes;
        if (sizes.size() != d) throw ValidationError("equispaced grid rank does not match the dimension");
        if (grid_total(sizes) != m) throw ValidationError("equispaced grid size does not match m");
        return equispaced_grid(std::move(sizes));
    }
    case GeneratorKind::subsampled_grid:
        if (generator.sizes.size() != d) throw ValidationError("subsampling grid rank does not match the dimension");
        return subsampled_grid(generator.sizes, m, generator.seed);
    }
    throw ValidationError("unknown point generator");
}

}  // namespace hcross
