#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sternct/integers.hpp"
#include "sternct/laurent.hpp"

namespace sternct {

/* deg F_n = 2^(n+1) - 2 */
inline std::int64_t f_degree(int n) { return (std::int64_t{1} << (n + 1)) - 2; }
/* deg G_n = 2^(n+1) - 2 + n */
inline std::int64_t g_degree(int n) { return (std::int64_t{1} << (n + 1)) - 2 + n; }

/* F_n(x) = prod_{i<n} (1 + x^(2^i) + x^(2^(i+1))) */
inline LaurentPoly f_poly(int n) {
    if (n < 0) throw std::domain_error("f_poly: n must be nonnegative");
    LaurentPoly acc = LaurentPoly::constant(Int(1));
    for (int i = 0; i < n; ++i) {
        LaurentPoly factor = LaurentPoly::constant(Int(1)) +
                             LaurentPoly::monomial(Int(1), std::int64_t{1} << i) +
                             LaurentPoly::monomial(Int(1), std::int64_t{1} << (i + 1));
        acc = acc * factor;
    }
    return acc;
}

/* G_n(x) = prod_{i<n} (1 + x^(2^i+1) + x^(2^(i+1)+1)) */
inline LaurentPoly g_poly(int n) {
    if (n < 0) throw std::domain_error("g_poly: n must be nonnegative");
    LaurentPoly acc = LaurentPoly::constant(Int(1));
    for (int i = 0; i < n; ++i) {
        LaurentPoly factor = LaurentPoly::constant(Int(1)) +
                             LaurentPoly::monomial(Int(1), (std::int64_t{1} << i) + 1) +
                             LaurentPoly::monomial(Int(1), (std::int64_t{1} << (i + 1)) + 1);
        acc = acc * factor;
    }
    return acc;
}

/*
 * G_n(x) * G_n(1/x) computed factor by factor: each three-term factor f(x)
 * contributes f(x)f(1/x) = 3 + x^(+-2^i) + x^(+-(2^i+1)) + x^(+-(2^(i+1)+1)),
 * so the product costs O(7 * 2^n) coefficient updates instead of squaring the
 * fully expanded row.
 */
inline LaurentPoly gg_autocorrelation(int n) {
    if (n < 0) throw std::domain_error("gg_autocorrelation: n must be nonnegative");
    LaurentPoly acc = LaurentPoly::constant(Int(1));
    for (int i = 0; i < n; ++i) {
        const std::int64_t a = (std::int64_t{1} << i) + 1;
        const std::int64_t b = (std::int64_t{1} << (i + 1)) + 1;
        const std::int64_t d = std::int64_t{1} << i;  /* = b - a */
        LaurentPoly factor = LaurentPoly::constant(Int(3));
        for (std::int64_t e : {a, -a, b, -b, d, -d})
            factor += LaurentPoly::monomial(Int(1), e);
        acc = acc * factor;
    }
    return acc;
}

/* nu(n) = sum of squared coefficients of F_n */
inline Int nu_def(int n) { return f_poly(n).sum_of_squares(); }

/* omega(n) = sum of squared coefficients of G_n */
inline Int omega_def(int n) { return g_poly(n).sum_of_squares(); }

/*
 * u_alpha(n) = sum_k prod_i a(n, k+i)^alpha_i over the F_n coefficient row,
 * with out-of-range entries contributing 0^alpha_i and 0^0 = 1.  At least one
 * exponent must be positive or the sum would have infinitely many unit terms.
 */
inline Int u_alpha_def(const std::vector<unsigned>& alpha, int n) {
    if (alpha.empty()) throw std::domain_error("u_alpha_def: alpha must be nonempty");
    bool has_positive = false;
    for (unsigned a : alpha) has_positive = has_positive || a > 0;
    if (!has_positive) throw std::domain_error("u_alpha_def: alpha must have a positive entry");

    LaurentPoly row = f_poly(n);
    const std::int64_t deg = row.deg();
    const std::int64_t len = static_cast<std::int64_t>(alpha.size());
    Int total = 0;
    Int term, pw;
    for (std::int64_t k = -(len - 1); k <= deg; ++k) {
        term = 1;
        bool zero = false;
        for (std::int64_t i = 0; i < len && !zero; ++i) {
            if (alpha[static_cast<std::size_t>(i)] == 0) continue;  /* factor is 1 */
            const Int& base = row.coeff(k + i);
            if (sgn(base) == 0) {
                zero = true;
                break;
            }
            mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), alpha[static_cast<std::size_t>(i)]);
            term *= pw;
        }
        if (!zero) total += term;
    }
    return total;
}

}  // namespace sternct
