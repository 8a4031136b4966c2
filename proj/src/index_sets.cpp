#include "hcross/index_sets.hpp"

#include "hcross/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace hcross {

namespace {

using i128 = __int128;

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::int64_t parse_int(std::string_view text) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ValidationError("not an integer: '" + std::string(text) + "'");
    return v;
}

}  // namespace

FrequencyIndex FrequencyIndex::negated() const {
    std::vector<std::int64_t> out(k_.size());
    std::transform(k_.begin(), k_.end(), out.begin(), [](std::int64_t v) { return -v; });
    return FrequencyIndex(std::move(out));
}

bool FrequencyIndex::is_zero() const noexcept {
    return std::all_of(k_.begin(), k_.end(), [](std::int64_t v) { return v == 0; });
}

// ---------------------------------------------------------------- Rational

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw ValidationError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const auto g = std::gcd(n, d);
    num = n / (g == 0 ? 1 : g);
    den = d / (g == 0 ? 1 : g);
}

Rational Rational::parse(std::string_view text) {
    if (text.empty()) throw ValidationError("empty rational");
    if (auto slash = text.find('/'); slash != std::string_view::npos)
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (frac.size() > 15) throw ValidationError("too many decimals in '" + std::string(text) + "'");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        const bool negative = !whole.empty() && whole.front() == '-';
        const std::int64_t w = (whole.empty() || whole == "-") ? 0 : parse_int(whole);
        const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        const std::int64_t magnitude = (negative ? -w : w) * scale + f;
        return Rational(negative ? -magnitude : magnitude, scale);
    }
    return Rational(parse_int(text), 1);
}

std::string Rational::to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 lhs = static_cast<i128>(a.num) * b.den;
    const i128 rhs = static_cast<i128>(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// ------------------------------------------------------- AnisotropyWeights

AnisotropyWeights::AnisotropyWeights(std::vector<Rational> gamma) : gamma_(std::move(gamma)) {
    if (gamma_.empty()) throw ValidationError("anisotropy weights: dimension must be at least 1");
    const Rational one(1);
    if (!(gamma_[0] == one))
        throw ValidationError("anisotropy weights: gamma_1 must equal 1, got " + gamma_[0].to_string());
    for (std::size_t j = 1; j < gamma_.size(); ++j) {
        if (gamma_[j] < gamma_[j - 1])
            throw ValidationError("anisotropy weights: gamma must be nondecreasing, but gamma_" +
                                  std::to_string(j + 1) + " = " + gamma_[j].to_string() + " < gamma_" +
                                  std::to_string(j) + " = " + gamma_[j - 1].to_string());
    }
    nu_ = static_cast<std::size_t>(
        std::find_if(gamma_.begin(), gamma_.end(), [&](const Rational& g) { return !(g == one); }) -
        gamma_.begin());
}

AnisotropyWeights::AnisotropyWeights(std::vector<Rational> gamma, std::size_t nu)
    : AnisotropyWeights(std::move(gamma)) {
    if (nu < 1 || nu > gamma_.size())
        throw ValidationError("anisotropy weights: nu must satisfy 1 <= nu <= d");
    if (nu != nu_)
        throw ValidationError("anisotropy weights: gamma has " + std::to_string(nu_) +
                              " leading unit weights but nu = " + std::to_string(nu));
}

AnisotropyWeights AnisotropyWeights::ones(std::size_t d) {
    return AnisotropyWeights(std::vector<Rational>(d, Rational(1)));
}

AnisotropyWeights AnisotropyWeights::parse(std::string_view text) {
    std::vector<Rational> gamma;
    for (auto part : split(text, ',')) gamma.push_back(Rational::parse(part));
    return AnisotropyWeights(std::move(gamma));
}

bool AnisotropyWeights::admits(std::span<const int> s, int n) const {
    if (s.size() != gamma_.size()) throw ValidationError("block dimension does not match weights");
    // sum_j (num_j / den_j) s_j <= n, cleared of denominators.
    i128 lcm = 1;
    for (const auto& g : gamma_) lcm = std::lcm(static_cast<std::int64_t>(lcm), g.den);
    i128 lhs = 0;
    for (std::size_t j = 0; j < s.size(); ++j) lhs += static_cast<i128>(gamma_[j].num) * (lcm / gamma_[j].den) * s[j];
    return lhs <= static_cast<i128>(n) * lcm;
}

std::string AnisotropyWeights::to_string() const {
    std::string out;
    for (std::size_t j = 0; j < gamma_.size(); ++j) {
        if (j) out += ',';
        out += gamma_[j].to_string();
    }
    return out;
}

// --------------------------------------------------------------- SetOrigin

std::string SetOrigin::tag() const {
    switch (kind) {
    case SetKind::step_cross: return "step_cross";
    case SetKind::cube: return "cube";
    case SetKind::custom: return "custom";
    case SetKind::anisotropic_cross: return "anisotropic_cross(" + gamma->to_string() + ")";
    case SetKind::dyadic_block: {
        std::string out = "dyadic_block(";
        for (std::size_t j = 0; j < block.size(); ++j) {
            if (j) out += ',';
            out += std::to_string(block[j]);
        }
        return out + ")";
    }
    }
    return "custom";
}

SetOrigin SetOrigin::from_tag(std::string_view tag, int level) {
    SetOrigin o;
    o.level = level;
    auto paren = tag.find('(');
    auto name = tag.substr(0, paren);
    std::string_view arg;
    if (paren != std::string_view::npos) {
        if (tag.back() != ')') throw ValidationError("malformed set tag: " + std::string(tag));
        arg = tag.substr(paren + 1, tag.size() - paren - 2);
    }
    if (name == "step_cross") {
        o.kind = SetKind::step_cross;
    } else if (name == "cube") {
        o.kind = SetKind::cube;
    } else if (name == "custom") {
        o.kind = SetKind::custom;
    } else if (name == "anisotropic_cross") {
        o.kind = SetKind::anisotropic_cross;
        o.gamma = AnisotropyWeights::parse(arg);
    } else if (name == "dyadic_block") {
        o.kind = SetKind::dyadic_block;
        for (auto part : split(arg, ',')) o.block.push_back(static_cast<int>(parse_int(part)));
    } else {
        throw ValidationError("unknown set tag: " + std::string(tag));
    }
    return o;
}

// ---------------------------------------------------------------- IndexSet

IndexSet make_index_set(std::size_t d, std::vector<FrequencyIndex> elements, SetOrigin origin) {
    std::sort(elements.begin(), elements.end());
    return IndexSet(d, std::move(elements), std::move(origin));
}

IndexSet IndexSet::custom(std::size_t d, std::vector<FrequencyIndex> elements) {
    if (d == 0) throw ValidationError("index set dimension must be at least 1");
    for (const auto& k : elements)
        if (k.dim() != d)
            throw ValidationError("index set element of dimension " + std::to_string(k.dim()) +
                                  " in a set of dimension " + std::to_string(d));
    std::sort(elements.begin(), elements.end());
    if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
        throw ValidationError("index set contains duplicate elements");
    return IndexSet(d, std::move(elements), SetOrigin{});
}

std::optional<std::size_t> IndexSet::find(const FrequencyIndex& k) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), k);
    if (it == elements_.end() || !(*it == k)) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
}

std::vector<std::int64_t> IndexSet::max_abs() const {
    std::vector<std::int64_t> out(d_, 0);
    for (const auto& k : elements_)
        for (std::size_t j = 0; j < d_; ++j) out[j] = std::max(out[j], std::abs(k[j]));
    return out;
}

bool IndexSet::is_symmetric() const {
    return std::all_of(elements_.begin(), elements_.end(),
                       [&](const FrequencyIndex& k) { return contains(k.negated()); });
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
    if (d_ != other.d_) return false;
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

// ------------------------------------------------------------ constructors

namespace {

std::size_t block_cardinality(std::span<const int> s) {
    int total = 0;
    for (int sj : s) total += sj;
    if (total >= 63) return SIZE_MAX;
    return std::size_t{1} << total;
}

// Appends rho(s) to out.
void append_block(std::span<const int> s, std::vector<FrequencyIndex>& out) {
    const std::size_t d = s.size();
    std::vector<std::vector<std::int64_t>> axis(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (s[j] == 0) {
            axis[j] = {0};
            continue;
        }
        const std::int64_t lo = std::int64_t{1} << (s[j] - 1);
        const std::int64_t hi = std::int64_t{1} << s[j];
        for (std::int64_t v = -(hi - 1); v <= -lo; ++v) axis[j].push_back(v);
        for (std::int64_t v = lo; v < hi; ++v) axis[j].push_back(v);
    }
    std::vector<std::size_t> pos(d, 0);
    std::vector<std::int64_t> k(d);
    while (true) {
        for (std::size_t j = 0; j < d; ++j) k[j] = axis[j][pos[j]];
        out.emplace_back(k);
        std::size_t j = d;
        while (j > 0) {
            --j;
            if (++pos[j] < axis[j].size()) break;
            pos[j] = 0;
            if (j == 0) return;
        }
    }
}

void for_each_block(std::size_t d, int n, const AnisotropyWeights& gamma,
                    const std::function<void(const std::vector<int>&)>& visit) {
    // |s|_1 <= n is implied by (gamma, s) <= n since gamma_j >= 1.
    std::vector<int> s(d, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int remaining) {
        if (j == d) {
            if (gamma.admits(s, n)) visit(s);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            s[j] = v;
            rec(j + 1, remaining - v);
        }
        s[j] = 0;
    };
    rec(0, n);
}

}  // namespace

IndexSet dyadic_block(std::span<const int> s) {
    if (s.empty()) throw ValidationError("dyadic block: dimension must be at least 1");
    for (int sj : s)
        if (sj < 0) throw ValidationError("dyadic block: s must be nonnegative");
    for (int sj : s)
        if (sj > 40) throw BudgetError("dyadic block: s_j too large");
    if (block_cardinality(s) > kDefaultElementBudget)
        throw BudgetError("dyadic block exceeds the element budget");
    std::vector<FrequencyIndex> elements;
    append_block(s, elements);
    SetOrigin origin;
    origin.kind = SetKind::dyadic_block;
    origin.block.assign(s.begin(), s.end());
    origin.level = std::accumulate(s.begin(), s.end(), 0);
    return make_index_set(s.size(), std::move(elements), std::move(origin));
}

std::vector<std::vector<int>> admissible_blocks(int n, const AnisotropyWeights& gamma) {
    if (n < 0) throw ValidationError("hyperbolic cross: n must be nonnegative");
    std::vector<std::vector<int>> blocks;
    for_each_block(gamma.dim(), n, gamma, [&](const std::vector<int>& s) { blocks.push_back(s); });
    return blocks;
}

std::size_t cross_cardinality(int n, const AnisotropyWeights& gamma) {
    std::size_t total = 0;
    for (const auto& s : admissible_blocks(n, gamma)) {
        const auto c = block_cardinality(s);
        if (c == SIZE_MAX || total > SIZE_MAX - c) return SIZE_MAX;
        total += c;
    }
    return total;
}

IndexSet anisotropic_cross(int n, const AnisotropyWeights& gamma, std::size_t budget) {
    if (n < 0) throw ValidationError("hyperbolic cross: n must be nonnegative");
    if (n > 60) throw BudgetError("hyperbolic cross: n too large");
    const auto count = cross_cardinality(n, gamma);
    if (count > budget)
        throw BudgetError("hyperbolic cross of " + std::to_string(count) + " elements exceeds the budget of " +
                          std::to_string(budget));
    std::vector<FrequencyIndex> elements;
    elements.reserve(count);
    for (const auto& s : admissible_blocks(n, gamma)) append_block(s, elements);
    SetOrigin origin;
    origin.level = n;
    if (gamma.is_isotropic()) {
        origin.kind = SetKind::step_cross;
    } else {
        origin.kind = SetKind::anisotropic_cross;
        origin.gamma = gamma;
    }
    return make_index_set(gamma.dim(), std::move(elements), std::move(origin));
}

IndexSet step_hyperbolic_cross(int n, std::size_t d, std::size_t budget) {
    if (d == 0) throw ValidationError("hyperbolic cross: dimension must be at least 1");
    return anisotropic_cross(n, AnisotropyWeights::ones(d), budget);
}

IndexSet cube(int n, std::size_t d, std::size_t budget) {
    if (d == 0) throw ValidationError("cube: dimension must be at least 1");
    if (n < 0) throw ValidationError("cube: n must be nonnegative");
    if (n > 40) throw BudgetError("cube: n too large");
    const std::int64_t half = std::int64_t{1} << n;
    const auto side = static_cast<std::size_t>(2 * half + 1);
    std::size_t count = 1;
    for (std::size_t j = 0; j < d; ++j) {
        if (count > budget / side + 1) throw BudgetError("cube exceeds the element budget");
        count *= side;
    }
    if (count > budget)
        throw BudgetError("cube of " + std::to_string(count) + " elements exceeds the budget of " +
                          std::to_string(budget));
    std::vector<FrequencyIndex> elements;
    elements.reserve(count);
    std::vector<std::int64_t> k(d, -half);
    while (true) {
        elements.emplace_back(k);
        std::size_t j = d;
        bool done = true;
        while (j > 0) {
            --j;
            if (++k[j] <= half) {
                done = false;
                break;
            }
            k[j] = -half;
        }
        if (done) break;
    }
    SetOrigin origin;
    origin.kind = SetKind::cube;
    origin.level = n;
    return make_index_set(d, std::move(elements), std::move(origin));
}

IndexSet symmetric_closure(const IndexSet& q) {
    if (q.is_symmetric()) return q;
    std::vector<FrequencyIndex> elements = q.elements();
    for (const auto& k : q.elements())
        if (!q.contains(k.negated())) elements.push_back(k.negated());
    return IndexSet::custom(q.dim(), std::move(elements));
}

std::vector<int> block_of(const FrequencyIndex& k) {
    std::vector<int> s(k.dim(), 0);
    for (std::size_t j = 0; j < k.dim(); ++j) {
        auto v = static_cast<std::uint64_t>(std::abs(k[j]));
        int bits = 0;
        while (v) {
            ++bits;
            v >>= 1;
        }
        s[j] = bits;
    }
    return s;
}

// ----------------------------------------------------------- serialization

void write_index_set(std::ostream& os, const IndexSet& q) {
    os << q.dim() << ' ' << q.origin().level << ' ' << q.tag() << '\n';
    for (const auto& k : q) {
        for (std::size_t j = 0; j < k.dim(); ++j) {
            if (j) os << ' ';
            os << k[j];
        }
        os << '\n';
    }
}

IndexSet read_index_set(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ValidationError("index set: missing header");
    std::istringstream hs(header);
    std::size_t d = 0;
    int level = 0;
    std::string tag;
    if (!(hs >> d >> level >> tag)) throw ValidationError("index set: malformed header '" + header + "'");
    if (d == 0) throw ValidationError("index set: dimension must be at least 1");
    std::vector<FrequencyIndex> elements;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) break;
        std::istringstream ls(line);
        std::vector<std::int64_t> k;
        std::int64_t v = 0;
        while (ls >> v) k.push_back(v);
        if (!ls.eof()) throw ValidationError("index set: malformed line '" + line + "'");
        elements.emplace_back(std::move(k));
    }
    auto set = IndexSet::custom(d, std::move(elements));
    return make_index_set(d, set.elements(), SetOrigin::from_tag(tag, level));
}

}  // namespace hcross
