#pragma once

#include "hcross/index_sets.hpp"

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace hcross {

// Synthesis and analysis of polynomials on a fixed tensor grid via FFT:
//   synthesize: values_t = sum_k c_k e^{ 2 pi i (k, t / M)}
//   analyze:    out_k    = sum_t v_t e^{-2 pi i (k, t / M)}
// Sizes must exceed 2 max|k_j| per axis. Not safe to share between threads;
// create one instance per thread.
class GridTransform {
public:
    GridTransform(const IndexSet& support, std::vector<std::size_t> sizes);
    ~GridTransform();
    GridTransform(GridTransform&&) noexcept;
    GridTransform& operator=(GridTransform&&) noexcept;
    GridTransform(const GridTransform&) = delete;
    GridTransform& operator=(const GridTransform&) = delete;

    [[nodiscard]] const std::vector<std::size_t>& sizes() const noexcept;
    [[nodiscard]] std::size_t total() const noexcept;

    void synthesize(std::span<const std::complex<double>> coefficients, std::span<std::complex<double>> values);
    void analyze(std::span<const std::complex<double>> values, std::span<std::complex<double>> coefficients);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace hcross
