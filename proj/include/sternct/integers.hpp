#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sternct {

using Int = mpz_class;
using Rat = mpq_class;

/* Number of decimal digits of |v|; 0 has one digit. */
inline std::size_t decimal_digits(const Int& v) {
    if (sgn(v) == 0) return 1;
    /* mpz_sizeinbase may overshoot by one for base 10 */
    const std::string s = v.get_str();
    return s.size() - (s[0] == '-' ? 1 : 0);
}

inline std::string to_decimal(const Int& v) { return v.get_str(); }

/* 2-adic valuation of a nonzero integer. */
inline unsigned long two_valuation(const Int& v) {
    if (sgn(v) == 0) throw std::domain_error("two_valuation of zero");
    return mpz_scan1(v.get_mpz_t(), 0);
}

}  // namespace sternct
