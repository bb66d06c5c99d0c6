#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sternct/laurent.hpp"

namespace sternct {

/*
 * Polynomial in t whose coefficients are Laurent polynomials in x.
 * Canonical form trims trailing zero coefficients.
 */
class TPoly {
  public:
    TPoly() = default;
    explicit TPoly(std::vector<LaurentPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

    static TPoly constant(LaurentPoly p) {
        TPoly r;
        if (!p.is_zero()) r.c_.push_back(std::move(p));
        return r;
    }
    static TPoly t_monomial(LaurentPoly p, std::size_t e) {
        TPoly r;
        if (!p.is_zero()) {
            r.c_.resize(e + 1);
            r.c_[e] = std::move(p);
        }
        return r;
    }
    static TPoly one() { return constant(LaurentPoly::constant(Int(1))); }

    bool is_zero() const { return c_.empty(); }
    std::int64_t t_degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    const LaurentPoly& coeff(std::size_t e) const {
        static const LaurentPoly kZero;
        return e < c_.size() ? c_[e] : kZero;
    }
    const std::vector<LaurentPoly>& coeffs() const { return c_; }

    friend TPoly operator+(const TPoly& a, const TPoly& b) {
        std::vector<LaurentPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return TPoly(std::move(r));
    }
    friend TPoly operator-(const TPoly& a, const TPoly& b) {
        std::vector<LaurentPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return TPoly(std::move(r));
    }
    friend TPoly operator-(const TPoly& a) {
        std::vector<LaurentPoly> r(a.c_.size());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = -a.c_[i];
        return TPoly(std::move(r));
    }
    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        if (a.is_zero() || b.is_zero()) return TPoly();
        std::vector<LaurentPoly> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t k = 0; k < b.c_.size(); ++k) {
                if (b.c_[k].is_zero()) continue;
                r[i + k] += a.c_[i] * b.c_[k];
            }
        }
        return TPoly(std::move(r));
    }
    friend bool operator==(const TPoly& a, const TPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

    /* substitute x -> x^-1 in every coefficient */
    TPoly reversed() const {
        std::vector<LaurentPoly> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].reversed();
        return TPoly(std::move(r));
    }

    /* multiply every coefficient by x^k */
    TPoly x_shifted(std::int64_t k) const {
        std::vector<LaurentPoly> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].shifted(k);
        return TPoly(std::move(r));
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[i].str() + ")";
            if (i == 1) s += "*t";
            if (i > 1) s += "*t^" + std::to_string(i);
        }
        return s;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<LaurentPoly> c_;
};

/* determinant by cofactor expansion; fine for the fixed 4x4/5x5 sizes here */
inline TPoly tpoly_det(const std::vector<std::vector<TPoly>>& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::domain_error("tpoly_det: non-square matrix");
    if (n == 0) return TPoly::one();
    if (n == 1) return m[0][0];
    TPoly acc;
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero()) continue;
        std::vector<std::vector<TPoly>> sub(n - 1, std::vector<TPoly>(n - 1));
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == col) continue;
                sub[r - 1][cc++] = m[r][c];
            }
        }
        TPoly term = m[0][col] * tpoly_det(sub);
        acc = (col % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/* minor: determinant of m with row i and column j removed */
inline TPoly tpoly_minor(const std::vector<std::vector<TPoly>>& m, std::size_t i,
                         std::size_t j) {
    const std::size_t n = m.size();
    std::vector<std::vector<TPoly>> sub(n - 1, std::vector<TPoly>(n - 1));
    std::size_t rr = 0;
    for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::size_t cc = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (c == j) continue;
            sub[rr][cc++] = m[r][c];
        }
        ++rr;
    }
    return tpoly_det(sub);
}

/*
 * Numerator/denominator pair over the TPoly ring.  No implicit reduction;
 * when produced by the resolvent solve, den is exactly det(I - B t).
 */
struct BivariateRational {
    TPoly num;
    TPoly den;
};

}  // namespace sternct
