#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "sternct/integers.hpp"

namespace sternct {

/*
 * num * 2^exp with arbitrary-precision num.  The recurrence coefficients of
 * this pipeline only ever divide by powers of two beyond their odd parts, so
 * every u_{j,k}, v_k and every assembled partial sum lives in this ring;
 * tracking the exponent separately avoids mpq's gcd on every operation.
 */
struct Dyadic {
    Int num;
    std::int64_t exp = 0;

    Dyadic() : num(0) {}
    Dyadic(Int n, std::int64_t e) : num(std::move(n)), exp(e) { normalize(); }

    bool is_zero() const { return sgn(num) == 0; }

    /* strip factors of two from num into exp; zero resets exp */
    void normalize() {
        if (sgn(num) == 0) {
            exp = 0;
            return;
        }
        const unsigned long v = two_valuation(num);
        if (v > 0) {
            mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), v);
            exp += static_cast<std::int64_t>(v);
        }
    }

    static Dyadic from_rat(const Rat& r) {
        if (sgn(r) == 0) return Dyadic();
        const Int den(r.get_den());
        const unsigned long v = two_valuation(den);
        Int odd;
        mpz_fdiv_q_2exp(odd.get_mpz_t(), den.get_mpz_t(), v);
        if (odd != 1) throw std::domain_error("Dyadic::from_rat: denominator not a power of two");
        return Dyadic(Int(r.get_num()), -static_cast<std::int64_t>(v));
    }

    Rat to_rat() const {
        Rat r(num);
        if (exp > 0)
            mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(exp));
        else if (exp < 0)
            mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-exp));
        return r;
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const std::int64_t e = std::min(a.exp, b.exp);
        Int n = a.num;
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(a.exp - e));
        Int m = b.num;
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(b.exp - e));
        return Dyadic(n + m, e);
    }
    friend Dyadic operator-(const Dyadic& a) { return Dyadic(-a.num, a.exp); }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        return Dyadic(a.num * b.num, a.exp + b.exp);
    }
    Dyadic scaled(const Int& s) const { return Dyadic(num * s, exp); }

    /* true when the value is an integer; writes it to out */
    bool to_int(Int& out) const {
        if (is_zero()) {
            out = 0;
            return true;
        }
        if (exp < 0) return false;  /* normalized num is odd */
        out = num;
        mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<unsigned long>(exp));
        return true;
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.num == b.num && a.exp == b.exp;
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
};

}  // namespace sternct
