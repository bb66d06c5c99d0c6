#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sternct/integers.hpp"

namespace sternct {

/*
 * Dense univariate polynomial over Q.  Used both for polynomials in t and for
 * polynomials in the formal shift parameter j; the variable is whatever the
 * caller says it is.  Canonical form: empty means zero, otherwise the last
 * coefficient is nonzero.
 */
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }

    static QPoly constant(Rat v) {
        QPoly p;
        if (sgn(v) != 0) p.c_.push_back(std::move(v));
        return p;
    }
    static QPoly monomial(Rat v, std::size_t e) {
        QPoly p;
        if (sgn(v) != 0) {
            p.c_.assign(e + 1, Rat(0));
            p.c_[e] = std::move(v);
        }
        return p;
    }
    /* p = c0 + c1 x + c2 x^2 + ... from small integer literals. */
    static QPoly from_ints(std::initializer_list<long> cs) {
        std::vector<Rat> v;
        v.reserve(cs.size());
        for (long x : cs) v.emplace_back(x);
        return QPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    /* degree of zero is -1 by convention here (callers check is_zero first) */
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }

    const Rat& coeff(std::size_t e) const {
        static const Rat kZero = 0;
        return e < c_.size() ? c_[e] : kZero;
    }
    const Rat& lead() const {
        if (is_zero()) throw std::domain_error("lead of zero polynomial");
        return c_.back();
    }
    const std::vector<Rat>& coeffs() const { return c_; }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return QPoly(std::move(r));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return QPoly(std::move(r));
    }
    friend QPoly operator-(const QPoly& a) {
        QPoly r = a;
        for (Rat& v : r.c_) v = -v;
        return r;
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (std::size_t k = 0; k < b.c_.size(); ++k) r[i + k] += a.c_[i] * b.c_[k];
        }
        return QPoly(std::move(r));
    }
    QPoly scaled(const Rat& s) const {
        if (sgn(s) == 0) return QPoly();
        QPoly r = *this;
        for (Rat& v : r.c_) v *= s;
        return r;
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    QPoly derivative() const {
        if (c_.size() <= 1) return QPoly();
        std::vector<Rat> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return QPoly(std::move(r));
    }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /* quotient, remainder with deg(rem) < deg(b) */
    static std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
        if (b.is_zero()) throw std::domain_error("division by zero polynomial");
        QPoly rem = a;
        if (rem.degree() < b.degree()) return {QPoly(), rem};
        std::vector<Rat> q(static_cast<std::size_t>(rem.degree() - b.degree()) + 1, Rat(0));
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            std::size_t sh = static_cast<std::size_t>(rem.degree() - b.degree());
            Rat f = rem.lead() / b.lead();
            q[sh] = f;
            std::vector<Rat> rc = rem.c_;
            for (std::size_t i = 0; i < b.c_.size(); ++i) rc[sh + i] -= f * b.c_[i];
            rc.back() = 0;  /* cancel exactly despite rounding-free arithmetic */
            rem = QPoly(std::move(rc));
        }
        return {QPoly(std::move(q)), rem};
    }

    /* exact division; throws if b does not divide a */
    static QPoly divexact(const QPoly& a, const QPoly& b) {
        auto [q, r] = divrem(a, b);
        if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
        return q;
    }

    /* positive rational c such that (1/c)*this has coprime integer
     * coefficients; 0 for the zero polynomial */
    Rat content_rat() const {
        if (is_zero()) return Rat(0);
        Int l = 1, g = 0, tmp;
        for (const Rat& v : c_)
            if (sgn(v) != 0)
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), mpq_denref(v.get_mpq_t()));
        for (const Rat& v : c_) {
            if (sgn(v) == 0) continue;
            mpz_divexact(tmp.get_mpz_t(), l.get_mpz_t(), mpq_denref(v.get_mpq_t()));
            mpz_mul(tmp.get_mpz_t(), tmp.get_mpz_t(), mpq_numref(v.get_mpq_t()));
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), tmp.get_mpz_t());
        }
        Rat c(g, l);
        c.canonicalize();
        return c;
    }

    /* integer-primitive associate with positive leading coefficient */
    QPoly primitive_part() const {
        if (is_zero()) return QPoly();
        QPoly p = scaled(Rat(1) / content_rat());
        if (sgn(p.lead()) < 0) p = p.scaled(Rat(-1));
        return p;
    }

    /* monic gcd over Q; primitive PRS internally so coefficients stay small */
    static QPoly gcd(QPoly a, QPoly b) {
        a = a.primitive_part();
        b = b.primitive_part();
        if (a.degree() < b.degree()) std::swap(a, b);
        while (!b.is_zero()) {
            QPoly r = std::move(a);
            const std::int64_t db = b.degree();
            while (!r.is_zero() && r.degree() >= db) {
                const std::int64_t sh = r.degree() - db;
                r = r.scaled(b.lead()) - b * monomial(r.lead(), static_cast<std::size_t>(sh));
            }
            a = std::move(b);
            b = r.primitive_part();
        }
        if (a.is_zero()) return a;
        return a.scaled(Rat(1) / a.lead());
    }

    std::string str(const char* var = "t") const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (sgn(c_[i]) == 0) continue;
            if (!s.empty()) s += sgn(c_[i]) > 0 ? " + " : " - ";
            else if (sgn(c_[i]) < 0) s += "-";
            Rat a = abs(c_[i]);
            if (a != 1 || i == 0) s += a.get_str();
            if (i > 0) {
                if (a != 1) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

  private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

/*
 * Polynomial in an outer variable whose coefficients are QPoly in an inner
 * variable.  The elimination code uses outer = t, inner = j; the recurrence
 * conversion reuses it with outer = k.
 */
class BiPoly {
  public:
    BiPoly() = default;
    explicit BiPoly(std::vector<QPoly> c) : c_(std::move(c)) { trim(); }

    static BiPoly from_outer(const QPoly& p) {
        std::vector<QPoly> c;
        c.reserve(p.coeffs().size());
        for (const Rat& v : p.coeffs()) c.push_back(QPoly::constant(v));
        return BiPoly(std::move(c));
    }
    static BiPoly from_inner(const QPoly& p) { return BiPoly({p}); }
    static BiPoly constant(const Rat& v) { return BiPoly({QPoly::constant(v)}); }

    bool is_zero() const { return c_.empty(); }
    std::int64_t outer_degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    std::int64_t inner_degree() const {
        std::int64_t d = -1;
        for (const QPoly& p : c_) d = std::max(d, p.degree());
        return d;
    }
    const QPoly& coeff(std::size_t e) const {
        static const QPoly kZero;
        return e < c_.size() ? c_[e] : kZero;
    }
    const QPoly& lead() const {
        if (is_zero()) throw std::domain_error("lead of zero polynomial");
        return c_.back();
    }
    const std::vector<QPoly>& coeffs() const { return c_; }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        std::vector<QPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return BiPoly(std::move(r));
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
        std::vector<QPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return BiPoly(std::move(r));
    }
    friend BiPoly operator-(const BiPoly& a) {
        std::vector<QPoly> r(a.c_.size());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = -a.c_[i];
        return BiPoly(std::move(r));
    }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        if (a.is_zero() || b.is_zero()) return BiPoly();
        std::vector<QPoly> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t k = 0; k < b.c_.size(); ++k) r[i + k] = r[i + k] + a.c_[i] * b.c_[k];
        }
        return BiPoly(std::move(r));
    }
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    BiPoly scaled_inner(const QPoly& s) const {
        if (s.is_zero()) return BiPoly();
        std::vector<QPoly> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
        return BiPoly(std::move(r));
    }

    /* d/d(outer variable) */
    BiPoly outer_derivative() const {
        if (c_.size() <= 1) return BiPoly();
        std::vector<QPoly> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = c_[i].scaled(Rat(static_cast<long>(i)));
        return BiPoly(std::move(r));
    }

    /* specialize the inner variable */
    QPoly eval_inner(const Rat& v) const {
        std::vector<Rat> r(c_.size(), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].eval(v);
        return QPoly(std::move(r));
    }

    /* gcd over Q of the inner polynomials across all outer coefficients */
    QPoly inner_content() const {
        QPoly g;
        for (const QPoly& p : c_) g = QPoly::gcd(g, p);
        return g;
    }

    BiPoly divexact_inner(const QPoly& d) const {
        std::vector<QPoly> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = QPoly::divexact(c_[i], d);
        return BiPoly(std::move(r));
    }

    /*
     * Pseudo-remainder in the outer variable: lead(b)^(da-db+1) * a mod b,
     * computed with ring operations only.
     */
    static BiPoly pseudo_rem(BiPoly a, const BiPoly& b) {
        if (b.is_zero()) throw std::domain_error("pseudo_rem by zero");
        const std::int64_t db = b.outer_degree();
        const QPoly& lb = b.lead();
        while (!a.is_zero() && a.outer_degree() >= db) {
            const std::int64_t sh = a.outer_degree() - db;
            const QPoly la = a.lead();
            std::vector<QPoly> r(a.c_.size());
            for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i] * lb;
            for (std::size_t i = 0; i < b.c_.size(); ++i)
                r[static_cast<std::size_t>(sh) + i] =
                    r[static_cast<std::size_t>(sh) + i] - la * b.c_[i];
            a = BiPoly(std::move(r));
        }
        return a;
    }

    /* positive rational content over every coefficient of every slice */
    Rat content_rat() const {
        Int l = 1, g = 0, tmp;
        for (const QPoly& s : c_)
            for (const Rat& v : s.coeffs())
                if (sgn(v) != 0)
                    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), mpq_denref(v.get_mpq_t()));
        for (const QPoly& s : c_)
            for (const Rat& v : s.coeffs()) {
                if (sgn(v) == 0) continue;
                mpz_divexact(tmp.get_mpz_t(), l.get_mpz_t(), mpq_denref(v.get_mpq_t()));
                mpz_mul(tmp.get_mpz_t(), tmp.get_mpz_t(), mpq_numref(v.get_mpq_t()));
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), tmp.get_mpz_t());
            }
        Rat c(g, l);
        c.canonicalize();
        return c;
    }

    /* primitive gcd in the outer variable via the primitive PRS */
    static BiPoly gcd_outer(BiPoly a, BiPoly b) {
        auto primitive = [](BiPoly p) {
            if (p.is_zero()) return p;
            QPoly ct = p.inner_content();
            if (ct.degree() > 0) p = p.divexact_inner(ct);
            /* strip the rational content too, else pseudo-remainders blow up */
            p = p.scaled_inner(QPoly::constant(Rat(1) / p.content_rat()));
            if (sgn(p.lead().lead()) < 0) p = -p;
            return p;
        };
        if (a.is_zero()) return primitive(std::move(b));
        if (b.is_zero()) return primitive(std::move(a));
        a = primitive(std::move(a));
        b = primitive(std::move(b));
        if (a.outer_degree() < b.outer_degree()) std::swap(a, b);
        while (!b.is_zero()) {
            BiPoly r = primitive(pseudo_rem(a, b));
            a = std::move(b);
            b = std::move(r);
        }
        return primitive(std::move(a));
    }

    /* exact division in the outer variable (inner divisions must be exact) */
    static BiPoly divexact_outer(const BiPoly& a, const BiPoly& b) {
        if (b.is_zero()) throw std::domain_error("division by zero polynomial");
        BiPoly rem = a;
        if (rem.is_zero()) return rem;
        if (rem.outer_degree() < b.outer_degree())
            throw std::domain_error("inexact bivariate division");
        std::vector<QPoly> q(
            static_cast<std::size_t>(rem.outer_degree() - b.outer_degree()) + 1);
        while (!rem.is_zero() && rem.outer_degree() >= b.outer_degree()) {
            std::size_t sh = static_cast<std::size_t>(rem.outer_degree() - b.outer_degree());
            QPoly f = QPoly::divexact(rem.lead(), b.lead());
            q[sh] = f;
            std::vector<QPoly> rc = rem.c_;
            for (std::size_t i = 0; i < b.c_.size(); ++i) rc[sh + i] = rc[sh + i] - f * b.c_[i];
            rem = BiPoly(std::move(rc));
        }
        if (!rem.is_zero()) throw std::domain_error("inexact bivariate division");
        return BiPoly(std::move(q));
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<QPoly> c_;
};

}  // namespace sternct
