#pragma once

// Frequency sets on the integer lattice Z^d: dyadic blocks, step hyperbolic
// crosses (isotropic and anisotropic) and full cubes.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hcross {

inline constexpr std::size_t kDefaultElementBudget = 10'000'000;

class FrequencyIndex {
public:
    FrequencyIndex() = default;
    explicit FrequencyIndex(std::vector<std::int64_t> k) : k_(std::move(k)) {}
    FrequencyIndex(std::initializer_list<std::int64_t> k) : k_(k) {}

    [[nodiscard]] std::size_t dim() const noexcept { return k_.size(); }
    [[nodiscard]] std::int64_t operator[](std::size_t j) const { return k_[j]; }
    [[nodiscard]] std::span<const std::int64_t> values() const noexcept { return k_; }
    [[nodiscard]] FrequencyIndex negated() const;
    [[nodiscard]] bool is_zero() const noexcept;

    auto operator<=>(const FrequencyIndex&) const = default;
    bool operator==(const FrequencyIndex&) const = default;

private:
    std::vector<std::int64_t> k_;
};

// Exact positive rational p/q in lowest terms.
struct Rational {
    std::int64_t num = 1;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    // Accepts "3", "3/2" and finite decimals such as "1.25" (read exactly).
    static Rational parse(std::string_view text);

    [[nodiscard]] double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    [[nodiscard]] std::string to_string() const;

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

// Weights gamma with 1 = gamma_1 = ... = gamma_nu < gamma_{nu+1} <= ... <= gamma_d.
class AnisotropyWeights {
public:
    explicit AnisotropyWeights(std::vector<Rational> gamma);
    // Also checks that gamma has exactly `nu` leading unit weights.
    AnisotropyWeights(std::vector<Rational> gamma, std::size_t nu);

    static AnisotropyWeights ones(std::size_t d);
    // Comma separated list, e.g. "1,1,3/2".
    static AnisotropyWeights parse(std::string_view text);

    [[nodiscard]] std::size_t dim() const noexcept { return gamma_.size(); }
    [[nodiscard]] std::size_t nu() const noexcept { return nu_; }
    [[nodiscard]] const std::vector<Rational>& weights() const noexcept { return gamma_; }
    [[nodiscard]] bool is_isotropic() const noexcept { return nu_ == gamma_.size(); }

    // Exact test of (gamma, s) <= n.
    [[nodiscard]] bool admits(std::span<const int> s, int n) const;

    [[nodiscard]] std::string to_string() const;

    bool operator==(const AnisotropyWeights&) const = default;

private:
    std::vector<Rational> gamma_;
    std::size_t nu_ = 0;
};

enum class SetKind { dyadic_block, step_cross, anisotropic_cross, cube, custom };

struct SetOrigin {
    SetKind kind = SetKind::custom;
    int level = 0;                          // n for crosses and cubes, |s|_1 for blocks
    std::vector<int> block;                 // s, for dyadic blocks
    std::optional<AnisotropyWeights> gamma; // for anisotropic crosses

    // Whitespace-free token: step_cross, cube, custom, dyadic_block(1,2),
    // anisotropic_cross(1,3/2).
    [[nodiscard]] std::string tag() const;
    static SetOrigin from_tag(std::string_view tag, int level);
};

// Finite set of lattice frequencies of a common dimension, stored in
// lexicographic order without duplicates.
class IndexSet {
public:
    // Rejects duplicates and elements of the wrong dimension.
    static IndexSet custom(std::size_t d, std::vector<FrequencyIndex> elements);

    [[nodiscard]] std::size_t dim() const noexcept { return d_; }
    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
    [[nodiscard]] bool empty() const noexcept { return elements_.empty(); }
    [[nodiscard]] const std::vector<FrequencyIndex>& elements() const noexcept { return elements_; }
    [[nodiscard]] const FrequencyIndex& operator[](std::size_t i) const { return elements_[i]; }
    [[nodiscard]] auto begin() const noexcept { return elements_.begin(); }
    [[nodiscard]] auto end() const noexcept { return elements_.end(); }

    [[nodiscard]] std::optional<std::size_t> find(const FrequencyIndex& k) const;
    [[nodiscard]] bool contains(const FrequencyIndex& k) const { return find(k).has_value(); }
    // Largest |k_j| over the set, per axis.
    [[nodiscard]] std::vector<std::int64_t> max_abs() const;
    [[nodiscard]] bool is_symmetric() const;
    [[nodiscard]] bool is_subset_of(const IndexSet& other) const;

    [[nodiscard]] const SetOrigin& origin() const noexcept { return origin_; }
    [[nodiscard]] std::string tag() const { return origin_.tag(); }

    bool operator==(const IndexSet& other) const { return d_ == other.d_ && elements_ == other.elements_; }

private:
    IndexSet(std::size_t d, std::vector<FrequencyIndex> sorted, SetOrigin origin)
        : d_(d), elements_(std::move(sorted)), origin_(std::move(origin)) {}

    friend IndexSet make_index_set(std::size_t, std::vector<FrequencyIndex>, SetOrigin);

    std::size_t d_ = 0;
    std::vector<FrequencyIndex> elements_;
    SetOrigin origin_;
};

using SupportPtr = std::shared_ptr<const IndexSet>;

[[nodiscard]] inline SupportPtr share(IndexSet q) { return std::make_shared<const IndexSet>(std::move(q)); }

// rho(s): [2^{s_j - 1}] <= |k_j| < 2^{s_j} for every j.
[[nodiscard]] IndexSet dyadic_block(std::span<const int> s);
// Union of rho(s) over |s|_1 <= n.
[[nodiscard]] IndexSet step_hyperbolic_cross(int n, std::size_t d,
                                             std::size_t budget = kDefaultElementBudget);
// Union of rho(s) over (gamma, s) <= n.
[[nodiscard]] IndexSet anisotropic_cross(int n, const AnisotropyWeights& gamma,
                                         std::size_t budget = kDefaultElementBudget);
// All k with |k_j| <= 2^n.
[[nodiscard]] IndexSet cube(int n, std::size_t d, std::size_t budget = kDefaultElementBudget);

// Q united with -Q.
[[nodiscard]] IndexSet symmetric_closure(const IndexSet& q);

// The block s with k in rho(s).
[[nodiscard]] std::vector<int> block_of(const FrequencyIndex& k);

// 2^{|s|_1} summed over all s >= 0 with (gamma, s) <= n, without enumerating.
[[nodiscard]] std::size_t cross_cardinality(int n, const AnisotropyWeights& gamma);

// Blocks s >= 0 with (gamma, s) <= n in lexicographic order.
[[nodiscard]] std::vector<std::vector<int>> admissible_blocks(int n, const AnisotropyWeights& gamma);

// Line format: "d n tag" followed by one frequency vector per line.
void write_index_set(std::ostream& os, const IndexSet& q);
[[nodiscard]] IndexSet read_index_set(std::istream& is);

}  // namespace hcross
