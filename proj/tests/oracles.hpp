#pragma once

// Brute-force oracles for the test suites. Everything here works on dense
// coefficient arrays indexed by whole q-powers and never touches the engine's
// sparse kernels, so agreement between the two is meaningful.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Int = mpz_class;
using Dense = std::vector<Int>;  // coefficient of q^i at index i, 0..N

inline Dense dense_zero(std::size_t order) { return Dense(order + 1, Int(0)); }

inline Dense dense_one(std::size_t order) {
    Dense d = dense_zero(order);
    d[0] = 1;
    return d;
}

inline Dense mul_trunc(const Dense& a, const Dense& b) {
    std::size_t n = a.size();
    Dense out(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j + i < n; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

inline void add_into(Dense& a, const Dense& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) a[i] += b[i];
}

// prod_{k=0..count-1} (1 - sign*q^(first + k*step)), truncated; count < 0
// means as many factors as fit below the order.
inline Dense poch_dense(std::size_t order, std::int64_t first, std::int64_t step,
                        std::int64_t count = -1, int sign = 1) {
    Dense out = dense_one(order);
    for (std::int64_t k = 0; count < 0 || k < count; ++k) {
        std::int64_t e = first + k * step;
        if (e > static_cast<std::int64_t>(order)) break;
        Dense next(out.size(), Int(0));
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (out[i] == 0) continue;
            next[i] += out[i];
            if (i + e < out.size()) next[i + e] -= sign * out[i];
        }
        out = std::move(next);
    }
    return out;
}

// 1/(q^step;q^step)_parts by coin-change counting: partitions into parts
// from {step, 2*step, ..., parts*step}. parts < 0 means unbounded.
inline Dense inv_poch_dense(std::size_t order, std::int64_t step, std::int64_t parts = -1) {
    Dense dp = dense_one(order);
    for (std::int64_t k = 1; parts < 0 || k <= parts; ++k) {
        std::int64_t part = k * step;
        if (part > static_cast<std::int64_t>(order)) break;
        for (std::size_t n = part; n < dp.size(); ++n) dp[n] += dp[n - part];
    }
    return dp;
}

// Number of partitions of each n <= order into parts congruent to one of the
// residues mod `modulus`.
inline Dense partitions_into_residues(std::size_t order, int modulus,
                                      std::initializer_list<int> residues) {
    Dense dp = dense_one(order);
    for (std::size_t part = 1; part <= order; ++part) {
        bool allowed = false;
        for (int r : residues) allowed = allowed || (static_cast<int>(part % modulus) == r);
        if (!allowed) continue;
        for (std::size_t n = part; n < dp.size(); ++n) dp[n] += dp[n - part];
    }
    return dp;
}

// Number of partitions of each n <= order into distinct parts.
inline Dense distinct_partitions(std::size_t order) {
    Dense dp = dense_one(order);
    for (std::size_t part = 1; part <= order; ++part) {
        for (std::size_t n = dp.size(); n-- > part;) dp[n] += dp[n - part];
    }
    return dp;
}

// Plain partition numbers.
inline Dense partitions(std::size_t order) {
    Dense dp = dense_one(order);
    for (std::size_t part = 1; part <= order; ++part)
        for (std::size_t n = part; n < dp.size(); ++n) dp[n] += dp[n - part];
    return dp;
}

// sum over j,k >= 0 of q^E(j,k) / ((q;q)_j (q^2;q^2)_k) for an exponent that
// is nondecreasing in each index — the double-sum shape of the catalog's
// unparameterized entries.
inline Dense double_sum_dense(std::size_t order,
                              const std::function<std::int64_t(std::int64_t, std::int64_t)>& E) {
    Dense out = dense_zero(order);
    for (std::int64_t j = 0; E(j, 0) <= static_cast<std::int64_t>(order); ++j) {
        for (std::int64_t k = 0; E(j, k) <= static_cast<std::int64_t>(order); ++k) {
            std::int64_t e = E(j, k);
            Dense term = mul_trunc(inv_poch_dense(order, 1, j), inv_poch_dense(order, 2, k));
            for (std::size_t n = 0; n + e < out.size(); ++n) out[n + e] += term[n];
        }
    }
    return out;
}

} // namespace oracle
