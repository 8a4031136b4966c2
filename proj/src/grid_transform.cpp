#include "hcross/grid_transform.hpp"

#include "hcross/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <string>

namespace hcross {

namespace {

// FFTW planning is not thread safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct GridTransform::Impl {
    std::vector<std::size_t> sizes;
    std::size_t total = 1;
    std::vector<std::size_t> slots;  // grid slot of each support element
    fftw_complex* buffer = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
        if (buffer) fftw_free(buffer);
    }
};

GridTransform::GridTransform(const IndexSet& support, std::vector<std::size_t> sizes)
    : impl_(std::make_unique<Impl>()) {
    if (sizes.size() != support.dim()) throw ValidationError("grid rank does not match the support dimension");
    const auto maxabs = support.max_abs();
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        if (sizes[j] <= static_cast<std::size_t>(2 * maxabs[j]))
            throw ValidationError("grid size " + std::to_string(sizes[j]) + " on axis " + std::to_string(j) +
                                  " aliases frequencies up to " + std::to_string(maxabs[j]));
        impl_->total *= sizes[j];
    }
    impl_->sizes = std::move(sizes);

    impl_->slots.reserve(support.size());
    for (const auto& k : support) {
        std::size_t slot = 0;
        for (std::size_t j = 0; j < k.dim(); ++j) {
            const auto m = static_cast<std::int64_t>(impl_->sizes[j]);
            slot = slot * impl_->sizes[j] + static_cast<std::size_t>(((k[j] % m) + m) % m);
        }
        impl_->slots.push_back(slot);
    }

    std::vector<int> dims(impl_->sizes.begin(), impl_->sizes.end());
    std::lock_guard lock(planner_mutex());
    impl_->buffer = fftw_alloc_complex(impl_->total);
    impl_->forward = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), impl_->buffer, impl_->buffer,
                                   FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->backward = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), impl_->buffer, impl_->buffer,
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!impl_->forward || !impl_->backward) throw BudgetError("FFT planning failed");
}

GridTransform::~GridTransform() = default;
GridTransform::GridTransform(GridTransform&&) noexcept = default;
GridTransform& GridTransform::operator=(GridTransform&&) noexcept = default;

const std::vector<std::size_t>& GridTransform::sizes() const noexcept { return impl_->sizes; }
std::size_t GridTransform::total() const noexcept { return impl_->total; }

void GridTransform::synthesize(std::span<const std::complex<double>> coefficients,
                               std::span<std::complex<double>> values) {
    auto* buf = reinterpret_cast<std::complex<double>*>(impl_->buffer);
    std::fill(buf, buf + impl_->total, std::complex<double>{});
    for (std::size_t i = 0; i < impl_->slots.size(); ++i) buf[impl_->slots[i]] = coefficients[i];
    fftw_execute(impl_->backward);
    std::copy(buf, buf + impl_->total, values.begin());
}

void GridTransform::analyze(std::span<const std::complex<double>> values,
                            std::span<std::complex<double>> coefficients) {
    auto* buf = reinterpret_cast<std::complex<double>*>(impl_->buffer);
    std::copy(values.begin(), values.end(), buf);
    fftw_execute(impl_->forward);
    for (std::size_t i = 0; i < impl_->slots.size(); ++i) coefficients[i] = buf[impl_->slots[i]];
}

}  // namespace hcross
