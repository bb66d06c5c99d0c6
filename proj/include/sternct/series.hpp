#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sternct/integers.hpp"
#include "sternct/qpoly.hpp"

namespace sternct {

/*
 * Truncated Laurent series in one variable over Q.
 *
 * Every object carries the largest exponent whose coefficient is known
 * (order, inclusive).  Reading beyond that exponent is a hard error rather
 * than a silent zero, so truncation mistakes surface immediately instead of
 * corrupting downstream values.  Exact objects (polynomials, or series proved
 * exact) use the kExactOrder sentinel.
 */
class TruncSeries {
  public:
    static constexpr std::int64_t kExactOrder = std::numeric_limits<std::int64_t>::max();

    TruncSeries() = default;
    TruncSeries(std::int64_t val, std::vector<Rat> coeffs, std::int64_t order)
        : val_(val), c_(std::move(coeffs)), ord_(order) {
        if (ord_ != kExactOrder && val_ + static_cast<std::int64_t>(c_.size()) - 1 > ord_)
            throw std::domain_error("series coefficients extend past stated order");
        normalize();
    }

    static TruncSeries exact_zero() { return TruncSeries(); }
    static TruncSeries zero_to_order(std::int64_t order) {
        TruncSeries s;
        s.ord_ = order;
        return s;
    }
    static TruncSeries from_poly(const QPoly& p) {
        std::vector<Rat> c = p.coeffs();
        return TruncSeries(0, std::move(c), kExactOrder);
    }
    static TruncSeries monomial(const Rat& v, std::int64_t e) {
        return TruncSeries(e, {v}, kExactOrder);
    }

    bool is_zero() const { return c_.empty(); }
    bool is_exact() const { return ord_ == kExactOrder; }
    std::int64_t order() const { return ord_; }
    std::int64_t valuation() const {
        if (is_zero()) throw std::domain_error("valuation of zero series");
        return val_;
    }

    const Rat& coeff(std::int64_t e) const {
        static const Rat kZero = 0;
        if (ord_ != kExactOrder && e > ord_)
            throw std::domain_error("series coefficient beyond reliable order");
        if (is_zero() || e < val_ || e >= val_ + static_cast<std::int64_t>(c_.size()))
            return kZero;
        return c_[static_cast<std::size_t>(e - val_)];
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        return combined(a, b, +1);
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        return combined(a, b, -1);
    }
    friend TruncSeries operator-(const TruncSeries& a) {
        TruncSeries r = a;
        for (Rat& v : r.c_) v = -v;
        return r;
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        if (a.is_zero() || b.is_zero()) return zero_like_product(a, b);
        std::int64_t ord = std::min(shifted_order(a.ord_, b.val_), shifted_order(b.ord_, a.val_));
        std::int64_t vlo = a.val_ + b.val_;
        std::int64_t keep = ord == kExactOrder
                                ? static_cast<std::int64_t>(a.c_.size() + b.c_.size()) - 1
                                : ord - vlo + 1;
        if (keep <= 0) return zero_to_order(ord);
        keep = std::min<std::int64_t>(keep,
                                      static_cast<std::int64_t>(a.c_.size() + b.c_.size()) - 1);
        std::vector<Rat> r(static_cast<std::size_t>(keep), Rat(0));
        for (std::size_t i = 0; i < a.c_.size() && i < r.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (std::size_t k = 0; k < b.c_.size() && i + k < r.size(); ++k)
                r[i + k] += a.c_[i] * b.c_[k];
        }
        return TruncSeries(vlo, std::move(r), ord);
    }

    TruncSeries scaled(const Rat& s) const {
        if (sgn(s) == 0) return is_exact() ? exact_zero() : zero_to_order(ord_);
        TruncSeries r = *this;
        for (Rat& v : r.c_) v *= s;
        return r;
    }

    /* multiply by t^k */
    TruncSeries shifted(std::int64_t k) const {
        TruncSeries r = *this;
        r.val_ += k;
        if (r.ord_ != kExactOrder) r.ord_ += k;
        return r;
    }

    /* forget coefficients above new_order (keeps exactness information honest) */
    TruncSeries truncated(std::int64_t new_order) const {
        if (new_order >= ord_) return *this;
        TruncSeries r;
        r.ord_ = new_order;
        if (!is_zero() && val_ <= new_order) {
            r.val_ = val_;
            std::size_t n = static_cast<std::size_t>(new_order - val_ + 1);
            r.c_.assign(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(n, c_.size())));
        }
        r.normalize();
        return r;
    }

    TruncSeries derivative() const {
        if (is_zero()) return is_exact() ? exact_zero() : zero_to_order(ord_ - 1);
        std::vector<Rat> r(c_.size(), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            std::int64_t e = val_ + static_cast<std::int64_t>(i);
            r[i] = c_[i] * Rat(static_cast<long>(e));
        }
        return TruncSeries(val_ - 1, std::move(r),
                           ord_ == kExactOrder ? kExactOrder : ord_ - 1);
    }

    /*
     * Multiplicative inverse.  Inverting a non-monomial exact series gives an
     * infinite series, so the caller must say how far to carry it via
     * want_order; for truncated inputs the reliable bound
     * order - 2*valuation applies on top of any request.
     */
    TruncSeries inverse(std::int64_t want_order = kExactOrder) const {
        if (is_zero()) throw std::domain_error("inverse of zero series");
        const std::int64_t v = val_;
        std::int64_t ord;
        if (is_exact()) {
            if (c_.size() == 1) {
                std::vector<Rat> r{Rat(1) / c_[0]};
                return TruncSeries(-v, std::move(r), kExactOrder);
            }
            if (want_order == kExactOrder)
                throw std::domain_error("inverse of exact non-monomial needs explicit order");
            ord = want_order;
        } else {
            ord = std::min(want_order, ord_ - 2 * v);
        }
        if (ord < -v) return zero_to_order(ord);
        std::size_t n = static_cast<std::size_t>(ord + v) + 1;
        std::vector<Rat> b(n, Rat(0));
        Rat inv0 = Rat(1) / c_[0];
        b[0] = inv0;
        for (std::size_t k = 1; k < n; ++k) {
            Rat acc = 0;
            std::size_t imax = std::min(k, c_.size() - 1);
            for (std::size_t i = 1; i <= imax; ++i) acc += c_[i] * b[k - i];
            b[k] = -acc * inv0;
        }
        return TruncSeries(-v, std::move(b), ord);
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.val_ == b.val_ && a.ord_ == b.ord_ && a.c_ == b.c_;
    }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

  private:
    static std::int64_t shifted_order(std::int64_t ord, std::int64_t sh) {
        return ord == kExactOrder ? kExactOrder : ord + sh;
    }
    static TruncSeries zero_like_product(const TruncSeries& a, const TruncSeries& b) {
        /* at least one factor is zero; an exact zero annihilates outright */
        if (a.is_zero() && a.is_exact()) return exact_zero();
        if (b.is_zero() && b.is_exact()) return exact_zero();
        if (a.is_zero() && b.is_zero()) return zero_to_order(a.ord_ + b.ord_ + 1);
        /* one truncated zero, one nonzero; a zero-to-N factor has valuation > N */
        const TruncSeries& z = a.is_zero() ? a : b;
        const TruncSeries& w = a.is_zero() ? b : a;
        std::int64_t ord =
            std::min(shifted_order(z.ord_, w.val_), shifted_order(w.ord_, z.ord_ + 1));
        return ord == kExactOrder ? exact_zero() : zero_to_order(ord);
    }
    static TruncSeries combined(const TruncSeries& a, const TruncSeries& b, int s) {
        std::int64_t ord = std::min(a.ord_, b.ord_);
        if (a.is_zero() && b.is_zero())
            return ord == kExactOrder ? exact_zero() : zero_to_order(ord);
        std::int64_t vlo = std::min(a.is_zero() ? b.val_ : a.val_, b.is_zero() ? a.val_ : b.val_);
        std::int64_t vhi = vlo;  /* one past the last stored exponent */
        if (!a.is_zero()) vhi = std::max(vhi, a.val_ + static_cast<std::int64_t>(a.c_.size()));
        if (!b.is_zero()) vhi = std::max(vhi, b.val_ + static_cast<std::int64_t>(b.c_.size()));
        if (ord != kExactOrder) vhi = std::min(vhi, ord + 1);
        if (vhi <= vlo) return zero_to_order(ord);
        std::vector<Rat> r(static_cast<std::size_t>(vhi - vlo), Rat(0));
        auto acc = [&](const TruncSeries& x, int sign) {
            for (std::size_t i = 0; i < x.c_.size(); ++i) {
                std::int64_t e = x.val_ + static_cast<std::int64_t>(i);
                if (e >= vhi) break;
                if (sign > 0)
                    r[static_cast<std::size_t>(e - vlo)] += x.c_[i];
                else
                    r[static_cast<std::size_t>(e - vlo)] -= x.c_[i];
            }
        };
        acc(a, +1);
        acc(b, s);
        return TruncSeries(vlo, std::move(r), ord);
    }

    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && sgn(c_[lead]) == 0) ++lead;
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<std::int64_t>(lead);
        }
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
        if (c_.empty()) val_ = 0;
    }

    std::int64_t val_ = 0;
    std::vector<Rat> c_;
    std::int64_t ord_ = kExactOrder;
};

/*
 * Power-series root of A(t) y^2 + B(t) y + C(t) = 0 with y(0) = 0, by Newton
 * iteration with doubling precision; coefficients are produced for exponents
 * 0..order inclusive.  Requires B(0) != 0 (the Newton step stays invertible)
 * and C(0) == 0 (y = 0 is correct to first order); together these make the
 * vanishing branch unique.
 */
inline TruncSeries quadratic_series_root(const QPoly& A, const QPoly& B, const QPoly& C,
                                         std::int64_t order) {
    if (order < 0) throw std::domain_error("quadratic_series_root needs order >= 0");
    if (sgn(B.coeff(0)) == 0)
        throw std::domain_error("quadratic_series_root: B(0) == 0, Newton step not invertible");
    if (sgn(C.coeff(0)) != 0)
        throw std::domain_error("quadratic_series_root: C(0) != 0, no root vanishing at 0");

    auto mulmod = [](const std::vector<Rat>& a, const std::vector<Rat>& b, std::size_t n) {
        if (a.empty() || b.empty()) return std::vector<Rat>{};
        std::vector<Rat> r(std::min(n, a.size() + b.size() - 1), Rat(0));
        for (std::size_t i = 0; i < a.size() && i < n; ++i) {
            if (sgn(a[i]) == 0) continue;
            for (std::size_t k = 0; k < b.size() && i + k < n; ++k) r[i + k] += a[i] * b[k];
        }
        return r;
    };
    auto addv = [](std::vector<Rat> a, const std::vector<Rat>& b, int s) {
        if (a.size() < b.size()) a.resize(b.size(), Rat(0));
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (s > 0)
                a[i] += b[i];
            else
                a[i] -= b[i];
        }
        return a;
    };
    auto invmod = [](const std::vector<Rat>& a, std::size_t n) {
        std::vector<Rat> b(n, Rat(0));
        Rat inv0 = Rat(1) / a[0];
        b[0] = inv0;
        for (std::size_t k = 1; k < n; ++k) {
            Rat acc = 0;
            for (std::size_t i = 1; i <= k && i < a.size(); ++i) acc += a[i] * b[k - i];
            b[k] = -acc * inv0;
        }
        return b;
    };

    const std::vector<Rat>&Ac = A.coeffs(), &Bc = B.coeffs(), &Cc = C.coeffs();
    std::vector<Rat> y;  /* correct mod t^prec */
    std::size_t prec = 1;
    const std::size_t target = static_cast<std::size_t>(order) + 1;
    while (prec < target) {
        std::size_t np = std::min(2 * prec, target);
        /* F = (A*y + B)*y + C, G = 2*A*y + B, all mod t^np */
        std::vector<Rat> Ay = mulmod(Ac, y, np);
        std::vector<Rat> F = addv(mulmod(addv(Ay, Bc, +1), y, np), Cc, +1);
        if (F.size() > np) F.resize(np);
        std::vector<Rat> G = addv(addv(Ay, Ay, +1), Bc, +1);
        std::vector<Rat> step = mulmod(F, invmod(G, np), np);
        y = addv(std::move(y), step, -1);
        if (y.size() > np) y.resize(np);
        prec = np;
    }
    y.resize(target, Rat(0));

    /* residual must vanish on every coefficient we can trust */
    {
        std::vector<Rat> Ay = mulmod(Ac, y, target);
        std::vector<Rat> F = addv(mulmod(addv(Ay, Bc, +1), y, target), Cc, +1);
        for (std::size_t i = 0; i < F.size() && i < target; ++i)
            if (sgn(F[i]) != 0) throw std::domain_error("quadratic_series_root: residual nonzero");
    }
    return TruncSeries(0, std::move(y), order);
}

}  // namespace sternct
