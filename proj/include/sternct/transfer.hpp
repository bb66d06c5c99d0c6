#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>

#include "sternct/integers.hpp"
#include "sternct/laurent.hpp"
#include "sternct/stern.hpp"

namespace sternct {

/* five shifted autocorrelation states, conceptual indices -2..2 stored at 0..4 */
using StateVec = std::array<LaurentPoly, 5>;

/*
 * The fixed 5x5 transfer matrix; applying it m times to the seed state and
 * reading the middle constant term gives omega(n+m), valid while
 * m < 2^n + 2 - n.
 */
inline const std::array<std::array<LaurentPoly, 5>, 5>& transfer_matrix_b() {
    static const std::array<std::array<LaurentPoly, 5>, 5> b = [] {
        const LaurentPoly zero;
        const LaurentPoly three = LaurentPoly::constant(Int(3));
        const LaurentPoly x = LaurentPoly::monomial(Int(1), 1);
        const LaurentPoly xi = LaurentPoly::monomial(Int(1), -1);
        const LaurentPoly xp1 = x + LaurentPoly::constant(Int(1));
        const LaurentPoly xip1 = xi + LaurentPoly::constant(Int(1));
        return std::array<std::array<LaurentPoly, 5>, 5>{{
            {x, zero, zero, zero, zero},
            {three, xp1, x, zero, zero},
            {xi, xip1, three, xp1, x},
            {zero, zero, xi, xip1, three},
            {zero, zero, zero, zero, xi},
        }};
    }();
    return b;
}

struct SplitChoice {
    std::int64_t m;  /* matrix steps */
    int n;           /* seed row */
};

/*
 * Minimal seed n with 2^n > N-2, so the step count m = N-n satisfies the
 * validity constraint m < 2^n + 2 - n with the cheapest materializable seed.
 */
inline SplitChoice choose_split(std::int64_t N) {
    if (N < 2) throw std::domain_error("choose_split: N must be at least 2");
    int n = 1;
    while ((std::int64_t{1} << n) <= N - 2) ++n;
    return SplitChoice{N - n, n};
}

/* entry i (stored at i+2) is x^(i*2^n) * G_n(x) * G_n(1/x) */
inline StateVec psi_init(int n) {
    if (n < 1) throw std::domain_error("psi_init: n must be positive");
    const LaurentPoly gg = gg_autocorrelation(n);
    StateVec s;
    for (int i = -2; i <= 2; ++i)
        s[static_cast<std::size_t>(i + 2)] = gg.shifted(i * (std::int64_t{1} << n));
    return s;
}

/*
 * One matrix-vector product B*s.  When prune_window = w is given, result
 * coefficients at |exponent| > w are dropped: the matrix moves exponents by
 * at most 1 per step, so such terms can never reach x^0 within w more steps.
 */
inline StateVec transfer_step(const StateVec& s, std::optional<std::int64_t> prune_window = {}) {
    const auto& b = transfer_matrix_b();
    const std::int64_t w =
        prune_window ? *prune_window : std::numeric_limits<std::int64_t>::max() / 4;
    if (w < 0) throw std::domain_error("transfer_step: negative prune window");
    StateVec out;
    for (std::size_t r = 0; r < 5; ++r) {
        LaurentPoly acc;
        for (std::size_t c = 0; c < 5; ++c) {
            if (b[r][c].is_zero() || s[c].is_zero()) continue;
            acc += LaurentPoly::mul_banded(b[r][c], s[c], -w, w);
        }
        out[r] = std::move(acc);
    }
    return out;
}

/*
 * omega(N) by iterating the transfer matrix from the minimal-seed split.
 * Seeds above n = 20 would need billion-term rows; refuse rather than thrash.
 */
inline Int omega_transfer(std::int64_t N, bool prune = true) {
    if (N < 2) throw std::domain_error("omega_transfer: N must be at least 2");
    const SplitChoice split = choose_split(N);
    if (split.n > 20)
        throw std::domain_error("omega_transfer: seed row too large to materialize");
    StateVec s = psi_init(split.n);
    for (std::int64_t step = 1; step <= split.m; ++step) {
        std::optional<std::int64_t> window;
        if (prune) window = split.m - step;
        s = transfer_step(s, window);
    }
    return s[2].ct();
}

}  // namespace sternct
