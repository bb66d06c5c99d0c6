#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sternct/integers.hpp"

namespace sternct {

/*
 * Laurent polynomial over Z: a dense contiguous coefficient block plus the
 * exponent of its first entry.  Canonical form: either empty (the zero
 * polynomial) or both end coefficients nonzero.  Interior zeros are stored;
 * the representation is chosen for cache-friendly convolution, and sparse
 * operands are handled by skipping zero entries during multiplication.
 */
class LaurentPoly {
  public:
    LaurentPoly() = default;

    /* coeffs[i] is the coefficient of x^(ldeg + i). */
    LaurentPoly(std::vector<Int> coeffs, std::int64_t ldeg)
        : c_(std::move(coeffs)), lo_(ldeg) {
        trim();
    }

    static LaurentPoly zero() { return LaurentPoly(); }

    static LaurentPoly constant(Int v) {
        LaurentPoly p;
        if (sgn(v) != 0) {
            p.c_.push_back(std::move(v));
            p.lo_ = 0;
        }
        return p;
    }

    static LaurentPoly monomial(Int v, std::int64_t e) {
        LaurentPoly p;
        if (sgn(v) != 0) {
            p.c_.push_back(std::move(v));
            p.lo_ = e;
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }

    /* deg/ldeg of the zero polynomial are undefined and throw. */
    std::int64_t deg() const {
        if (is_zero()) throw std::domain_error("deg of zero Laurent polynomial");
        return lo_ + static_cast<std::int64_t>(c_.size()) - 1;
    }
    std::int64_t ldeg() const {
        if (is_zero()) throw std::domain_error("ldeg of zero Laurent polynomial");
        return lo_;
    }

    std::size_t stored_terms() const { return c_.size(); }

    std::size_t nonzero_terms() const {
        std::size_t n = 0;
        for (const Int& v : c_)
            if (sgn(v) != 0) ++n;
        return n;
    }

    const Int& coeff(std::int64_t e) const {
        static const Int kZero = 0;
        if (is_zero() || e < lo_ || e >= lo_ + static_cast<std::int64_t>(c_.size()))
            return kZero;
        return c_[static_cast<std::size_t>(e - lo_)];
    }

    /* Constant-term operator CT_x. */
    const Int& ct() const { return coeff(0); }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        *this = add_scaled(*this, o, 1);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        *this = add_scaled(*this, o, -1);
        return *this;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        return add_scaled(a, b, 1);
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        return add_scaled(a, b, -1);
    }

    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r = a;
        for (Int& v : r.c_) v = -v;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        return mul_banded(a, b, INT64_MIN, INT64_MAX);
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.lo_ == b.lo_ && a.c_ == b.c_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
        return !(a == b);
    }

    /* x -> 1/x. */
    LaurentPoly reversed() const {
        if (is_zero()) return LaurentPoly();
        LaurentPoly r;
        r.c_.assign(c_.rbegin(), c_.rend());
        r.lo_ = -deg();
        return r;
    }

    bool is_reverse_symmetric() const { return *this == reversed(); }

    /* Multiply by x^e. */
    LaurentPoly shifted(std::int64_t e) const {
        LaurentPoly r = *this;
        if (!r.is_zero()) r.lo_ += e;
        return r;
    }

    LaurentPoly scaled(const Int& s) const {
        if (sgn(s) == 0) return LaurentPoly();
        LaurentPoly r = *this;
        for (Int& v : r.c_) v *= s;
        return r;
    }

    /* Drop every coefficient with |exponent| > window. */
    LaurentPoly pruned(std::int64_t window) const {
        if (is_zero()) return LaurentPoly();
        std::int64_t lo = std::max(lo_, -window);
        std::int64_t hi = std::min(deg(), window);
        if (lo > hi) return LaurentPoly();
        std::vector<Int> c(c_.begin() + (lo - lo_), c_.begin() + (hi - lo_ + 1));
        return LaurentPoly(std::move(c), lo);
    }

    /*
     * Convolution restricted to result exponents in [rlo, rhi].  This is the
     * general product when the band covers the full support.  Zero entries of
     * the sparser operand are skipped, so wide-but-sparse factors stay cheap.
     */
    static LaurentPoly mul_banded(const LaurentPoly& a, const LaurentPoly& b,
                                  std::int64_t rlo, std::int64_t rhi) {
        if (a.is_zero() || b.is_zero()) return LaurentPoly();
        const LaurentPoly& s = (a.nonzero_terms() <= b.nonzero_terms()) ? a : b;
        const LaurentPoly& d = (&s == &a) ? b : a;
        rlo = std::max(rlo, a.lo_ + b.lo_);
        rhi = std::min(rhi, a.deg() + b.deg());
        if (rlo > rhi) return LaurentPoly();
        std::vector<Int> out(static_cast<std::size_t>(rhi - rlo + 1));
        const std::int64_t dlo = d.lo_, dhi = d.deg();
        for (std::size_t i = 0; i < s.c_.size(); ++i) {
            const Int& sv = s.c_[i];
            if (sgn(sv) == 0) continue;
            const std::int64_t se = s.lo_ + static_cast<std::int64_t>(i);
            const std::int64_t elo = std::max(rlo, se + dlo);
            const std::int64_t ehi = std::min(rhi, se + dhi);
            for (std::int64_t e = elo; e <= ehi; ++e) {
                mpz_addmul(out[static_cast<std::size_t>(e - rlo)].get_mpz_t(),
                           sv.get_mpz_t(),
                           d.c_[static_cast<std::size_t>(e - se - dlo)].get_mpz_t());
            }
        }
        return LaurentPoly(std::move(out), rlo);
    }

    /* Sum of squared coefficients. */
    Int sum_of_squares() const {
        Int s = 0;
        for (const Int& v : c_) mpz_addmul(s.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
        return s;
    }

    Int eval_at_one() const {
        Int s = 0;
        for (const Int& v : c_) s += v;
        return s;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (sgn(c_[i]) == 0) continue;
            std::int64_t e = lo_ + static_cast<std::int64_t>(i);
            if (!first) os << (sgn(c_[i]) > 0 ? " + " : " - ");
            else if (sgn(c_[i]) < 0) os << "-";
            Int a = abs(c_[i]);
            if (a != 1 || e == 0) os << a.get_str();
            if (e != 0) {
                if (a != 1) os << "*";
                os << "x";
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

  private:
    static LaurentPoly add_scaled(const LaurentPoly& a, const LaurentPoly& b, int bsign) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return bsign > 0 ? b : -b;
        std::int64_t lo = std::min(a.lo_, b.lo_);
        std::int64_t hi = std::max(a.deg(), b.deg());
        std::vector<Int> out(static_cast<std::size_t>(hi - lo + 1));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            out[static_cast<std::size_t>(a.lo_ - lo) + i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) {
            Int& t = out[static_cast<std::size_t>(b.lo_ - lo) + i];
            if (bsign > 0) t += b.c_[i];
            else t -= b.c_[i];
        }
        return LaurentPoly(std::move(out), lo);
    }

    void trim() {
        std::size_t b = 0, e = c_.size();
        while (b < e && sgn(c_[b]) == 0) ++b;
        while (e > b && sgn(c_[e - 1]) == 0) --e;
        if (b == e) {
            c_.clear();
            lo_ = 0;
            return;
        }
        if (b > 0 || e < c_.size()) {
            std::vector<Int> t(c_.begin() + b, c_.begin() + e);
            c_ = std::move(t);
            lo_ += static_cast<std::int64_t>(b);
        }
    }

    std::vector<Int> c_;   /* c_[i] holds the coefficient of x^(lo_ + i) */
    std::int64_t lo_ = 0;
};

}  // namespace sternct
