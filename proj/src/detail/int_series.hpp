#pragma once

// Integer-coefficient series kernels for the expansion hot loops. A series is
// a plain vector of length N+1; no truncation bookkeeping beyond the size.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace qzeta::detail {

using IntSeries = std::vector<mpz_class>;

inline std::size_t leading_order(const IntSeries& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) != 0) {
            return i;
        }
    }
    return x.size();
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

/// acc += q^{n(kappa-1)} (1-q^n)^{-kappa} * x, for kappa >= 1.
/// The multiplier's coefficient at q^{n(kappa-1) + n t} is C(t+kappa-1, kappa-1).
inline void add_g_times(IntSeries& acc, std::size_t n, int kappa, const IntSeries& x) {
    const std::size_t trunc = acc.size() - 1;
    const std::size_t lead = leading_order(x);
    if (lead > trunc) {
        return;
    }
    const auto k = static_cast<unsigned long>(kappa);
    for (std::size_t t = 0;; ++t) {
        const std::size_t e = n * (k - 1) + n * t;
        if (e + lead > trunc) {
            break;
        }
        if (k == 1) {
            for (std::size_t i = lead; i + e <= trunc; ++i) {
                acc[i + e] += x[i];
            }
        } else {
            const mpz_class c = binomial(t + k - 1, k - 1);
            for (std::size_t i = lead; i + e <= trunc; ++i) {
                if (sgn(x[i]) != 0) {
                    mpz_addmul(acc[i + e].get_mpz_t(), c.get_mpz_t(), x[i].get_mpz_t());
                }
            }
        }
    }
}

/// acc += q^d / (1 - q^d) * x, for d >= 1.
inline void add_h_times(IntSeries& acc, std::size_t d, const IntSeries& x) {
    const std::size_t trunc = acc.size() - 1;
    const std::size_t lead = leading_order(x);
    for (std::size_t e = d; e + lead <= trunc; e += d) {
        for (std::size_t i = lead; i + e <= trunc; ++i) {
            acc[i + e] += x[i];
        }
    }
}

inline void add_into(IntSeries& acc, const IntSeries& x) {
    for (std::size_t i = 0; i < acc.size(); ++i) {
        acc[i] += x[i];
    }
}

}  // namespace qzeta::detail
