#pragma once

#include <stdexcept>
#include <vector>

#include "sternct/integers.hpp"

namespace sternct {

/*
 * Two-component state (nu(n), nu1(n)) where nu1 is the constant term of
 * F_n(x) F_n(1/x) x^(2^n), the one-step-shifted autocorrelation.
 */
struct NuState {
    Int nu;
    Int nu1;
};

/* one application of the matrix (3 4; 1 2) */
inline NuState nu_step(const NuState& s) {
    return NuState{3 * s.nu + 4 * s.nu1, s.nu + 2 * s.nu1};
}

/* nu(n) by the order-2 recurrence nu(n) = 5 nu(n-1) - 2 nu(n-2), seeds 1, 3 */
inline Int nu_fast(long n) {
    if (n < 0) throw std::domain_error("nu_fast: n must be nonnegative");
    if (n == 0) return 1;
    Int prev = 1, cur = 3;
    for (long i = 2; i <= n; ++i) {
        Int next = 5 * cur - 2 * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/* first N Taylor coefficients of (1 - 2x) / (1 - 5x + 2x^2) */
inline std::vector<Int> nu_gf_coeffs(long N) {
    if (N < 1) throw std::domain_error("nu_gf_coeffs: N must be positive");
    std::vector<Int> out;
    out.reserve(static_cast<std::size_t>(N));
    out.emplace_back(1);
    if (N >= 2) out.emplace_back(3);
    for (long i = 2; i < N; ++i)
        out.push_back(5 * out[static_cast<std::size_t>(i - 1)] -
                      2 * out[static_cast<std::size_t>(i - 2)]);
    return out;
}

}  // namespace sternct
