#pragma once

#include "hcross/trig_poly.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hcross {

enum class GeneratorKind { uniform_random, equispaced_grid, subsampled_grid };

[[nodiscard]] std::string to_string(GeneratorKind kind);
[[nodiscard]] GeneratorKind parse_generator(const std::string& name);

struct PointGenerator {
    GeneratorKind kind = GeneratorKind::uniform_random;
    std::uint64_t seed = 0;
    std::vector<std::size_t> sizes;  // base tensor grid for the grid kinds
};

// Sample locations xi^1..xi^m on the torus, with the generator that made them.
class PointSet {
public:
    PointSet(std::vector<TorusPoint> points, PointGenerator generator);

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return points_.front().dim(); }
    [[nodiscard]] const std::vector<TorusPoint>& points() const noexcept { return points_; }
    [[nodiscard]] const TorusPoint& operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] const PointGenerator& generator() const noexcept { return generator_; }

    // Union of two point sets of the same dimension (generator of `a`).
    friend PointSet merge(const PointSet& a, const PointSet& b);

private:
    std::vector<TorusPoint> points_;
    PointGenerator generator_;
};

[[nodiscard]] PointSet uniform_random_points(std::size_t m, std::size_t d, std::uint64_t seed);
[[nodiscard]] PointSet equispaced_grid(std::vector<std::size_t> sizes);
// m distinct nodes of the tensor grid, drawn without replacement.
[[nodiscard]] PointSet subsampled_grid(std::vector<std::size_t> sizes, std::size_t m, std::uint64_t seed);

// Dispatches on `generator.kind`. For equispaced_grid, m must equal the grid size.
[[nodiscard]] PointSet generate_points(const PointGenerator& generator, std::size_t m, std::size_t d);

}  // namespace hcross
