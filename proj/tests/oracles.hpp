#pragma once

// Slow, independently written reference computations for the unit tests.

#include "hcross/index_sets.hpp"
#include "hcross/trig_poly.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;

// All integer vectors in the box prod_j [-r_j, r_j].
inline std::vector<Vec> box(const std::vector<std::int64_t>& radius) {
    std::vector<Vec> out;
    Vec k(radius.size());
    for (std::size_t j = 0; j < k.size(); ++j) k[j] = -radius[j];
    while (true) {
        out.push_back(k);
        std::size_t j = k.size();
        while (j > 0) {
            --j;
            if (k[j] < radius[j]) {
                ++k[j];
                for (std::size_t i = j + 1; i < k.size(); ++i) k[i] = -radius[i];
                break;
            }
            if (j == 0) return out;
        }
        if (k.empty()) return out;
    }
}

inline std::int64_t pow2(int e) { return std::int64_t{1} << e; }

// floor(2^{s-1}) <= |k| < 2^s, written out per case.
inline bool in_block_1d(std::int64_t k, int s) {
    const std::int64_t a = k < 0 ? -k : k;
    if (s == 0) return a == 0;
    return a >= pow2(s - 1) && a < pow2(s);
}

inline std::set<Vec> block(const std::vector<int>& s) {
    std::vector<std::int64_t> r;
    for (int v : s) r.push_back(pow2(v));
    std::set<Vec> out;
    for (const auto& k : box(r)) {
        bool ok = true;
        for (std::size_t j = 0; j < s.size(); ++j) ok = ok && in_block_1d(k[j], s[j]);
        if (ok) out.insert(k);
    }
    return out;
}

// Block index of one coordinate by search.
inline int block_index(std::int64_t k) {
    for (int s = 0;; ++s)
        if (in_block_1d(k, s)) return s;
}

// Weights as (numerator, denominator) pairs; sum_j (p_j / q_j) s_j <= n decided
// over the common denominator prod q_j.
inline std::set<Vec> cross(int n, const std::vector<std::pair<std::int64_t, std::int64_t>>& gamma) {
    std::vector<std::int64_t> r(gamma.size(), pow2(n));
    std::int64_t common = 1;
    for (const auto& g : gamma) common *= g.second;
    std::set<Vec> out;
    for (const auto& k : box(r)) {
        std::int64_t lhs = 0;
        for (std::size_t j = 0; j < k.size(); ++j)
            lhs += gamma[j].first * (common / gamma[j].second) * block_index(k[j]);
        if (lhs <= n * common) out.insert(k);
    }
    return out;
}

inline std::set<Vec> as_set(const hcross::IndexSet& q) {
    std::set<Vec> out;
    for (const auto& k : q) out.insert(Vec(k.values().begin(), k.values().end()));
    return out;
}

// Neumaier-compensated sum of c_k e^{i(k,x)} with phases in long double.
inline std::complex<double> evaluate(const hcross::TrigPolynomial& f, const std::vector<double>& x) {
    long double re = 0, im = 0, cre = 0, cim = 0;
    auto add = [](long double& s, long double& c, long double v) {
        const long double t = s + v;
        if (std::fabs(s) >= std::fabs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    };
    const auto& q = f.support();
    for (std::size_t i = 0; i < q.size(); ++i) {
        long double phase = 0;
        for (std::size_t j = 0; j < x.size(); ++j) phase += static_cast<long double>(q[i][j]) * x[j];
        const long double cr = f.coefficients()[i].real();
        const long double ci = f.coefficients()[i].imag();
        const long double er = std::cos(phase), ei = std::sin(phase);
        add(re, cre, cr * er - ci * ei);
        add(im, cim, cr * ei + ci * er);
    }
    return {static_cast<double>(re + cre), static_cast<double>(im + cim)};
}

}  // namespace oracle
