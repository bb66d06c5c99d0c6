#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sternct/dyadic.hpp"
#include "sternct/integers.hpp"
#include "sternct/qpoly.hpp"
#include "sternct/series.hpp"

namespace sternct {

/*
 * Minimal polynomial A X^2 + B X + C of the algebraic series X(t):
 * A = C = t(t^2 - 3t + 1), B = 2t^3 - 6t^2 + 5t - 1.  X is the branch with
 * X(0) = 0; its palindromic companion is 1/X.
 */
struct QuadraticModel {
    QPoly A, B, C;
    QPoly disc;  /* B^2 - 4AC */

    static const QuadraticModel& instance() {
        static const QuadraticModel m = [] {
            QuadraticModel q;
            q.A = QPoly::from_ints({0, 1, -3, 1});
            q.B = QPoly::from_ints({-1, 5, -6, 2});
            q.C = q.A;
            q.disc = q.B * q.B - QPoly::constant(Rat(4)) * q.A * q.C;
            return q;
        }();
        return m;
    }
};

/* X(t) with coefficients reliable through t^order */
inline TruncSeries x_series(std::int64_t order) {
    const auto& q = QuadraticModel::instance();
    return quadratic_series_root(q.A, q.B, q.C, order);
}

/*
 * Element (a + b X) / den of Q(t, j)[X] / (A X^2 + B X + C), with a, b
 * bivariate in (t outer, j inner) and den a j-free polynomial in t.  Every
 * operation cancels the common univariate t-factor; without that reduction
 * the elimination below balloons past degree 1000.
 */
class AlgElem {
  public:
    AlgElem() : den_(QPoly::constant(Rat(1))) {}
    AlgElem(BiPoly a, BiPoly b, QPoly den)
        : a_(std::move(a)), b_(std::move(b)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("AlgElem: zero denominator");
        reduce();
    }

    static AlgElem from_tpoly(const QPoly& p) {
        return AlgElem(BiPoly::from_outer(p), BiPoly(), QPoly::constant(Rat(1)));
    }
    static AlgElem constant(const Rat& v) { return from_tpoly(QPoly::constant(v)); }
    static AlgElem x() {
        return AlgElem(BiPoly(), BiPoly::constant(Rat(1)), QPoly::constant(Rat(1)));
    }

    const BiPoly& a() const { return a_; }
    const BiPoly& b() const { return b_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_j_free() const { return a_.inner_degree() <= 0 && b_.inner_degree() <= 0; }

    friend AlgElem operator+(const AlgElem& e1, const AlgElem& e2) {
        const BiPoly d1 = BiPoly::from_outer(e1.den_), d2 = BiPoly::from_outer(e2.den_);
        return AlgElem(e1.a_ * d2 + e2.a_ * d1, e1.b_ * d2 + e2.b_ * d1, e1.den_ * e2.den_);
    }
    friend AlgElem operator-(const AlgElem& e1, const AlgElem& e2) {
        const BiPoly d1 = BiPoly::from_outer(e1.den_), d2 = BiPoly::from_outer(e2.den_);
        return AlgElem(e1.a_ * d2 - e2.a_ * d1, e1.b_ * d2 - e2.b_ * d1, e1.den_ * e2.den_);
    }
    friend AlgElem operator-(const AlgElem& e) { return AlgElem(-e.a_, -e.b_, e.den_); }

    /* reduce b1 b2 X^2 via X^2 = -(B X + C)/A, then clear the 1/A */
    friend AlgElem operator*(const AlgElem& e1, const AlgElem& e2) {
        const auto& q = QuadraticModel::instance();
        const BiPoly A = BiPoly::from_outer(q.A), B = BiPoly::from_outer(q.B),
                     C = BiPoly::from_outer(q.C);
        BiPoly bb = e1.b_ * e2.b_;
        BiPoly na = e1.a_ * e2.a_ * A - bb * C;
        BiPoly nb = (e1.a_ * e2.b_ + e2.a_ * e1.b_) * A - bb * B;
        return AlgElem(std::move(na), std::move(nb), e1.den_ * e2.den_ * q.A);
    }

    /*
     * 1/((a + bX)/d) = d (aA - bB - bA X) / (a^2 A - a b B + b^2 C).
     * Only j-free elements are inverted here; a j-dependent norm would leave
     * the j-free-denominator representation.
     */
    AlgElem inverted() const {
        if (is_zero()) throw std::domain_error("AlgElem: inverse of zero");
        if (!is_j_free()) throw std::domain_error("AlgElem: inverse needs j-free element");
        const auto& q = QuadraticModel::instance();
        auto outer = [](const BiPoly& p) {
            std::vector<Rat> c(static_cast<std::size_t>(p.outer_degree()) + 1, Rat(0));
            for (std::int64_t i = 0; i <= p.outer_degree(); ++i)
                c[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(i)).coeff(0);
            return QPoly(std::move(c));
        };
        const QPoly av = a_.is_zero() ? QPoly() : outer(a_);
        const QPoly bv = b_.is_zero() ? QPoly() : outer(b_);
        QPoly norm = av * av * q.A - av * bv * q.B + bv * bv * q.C;
        if (norm.is_zero()) throw std::domain_error("AlgElem: zero norm");
        QPoly na = (av * q.A - bv * q.B) * den_;
        QPoly nb = -(bv * q.A) * den_;
        return AlgElem(BiPoly::from_outer(na), BiPoly::from_outer(nb), std::move(norm));
    }

    /*
     * d/dt, using X' = ((A'B - AB')X + A'C - AC') / A * (B + 2AX) / disc
     * from implicit differentiation of the minimal polynomial.
     */
    AlgElem derivative() const {
        const AlgElem& xp = x_derivative();
        const QPoly dp = den_.derivative();
        BiPoly na = a_.outer_derivative() * BiPoly::from_outer(den_) - a_ * BiPoly::from_outer(dp);
        BiPoly nb = b_.outer_derivative() * BiPoly::from_outer(den_) - b_ * BiPoly::from_outer(dp);
        AlgElem rational_part(std::move(na), std::move(nb), den_ * den_);
        AlgElem chain_part = AlgElem(b_, BiPoly(), den_) * xp;
        return rational_part + chain_part;
    }

    /* multiply a and b by a polynomial in the inner parameter j */
    AlgElem scaled_inner(const QPoly& s) const {
        return AlgElem(a_.scaled_inner(s), b_.scaled_inner(s), den_);
    }

    /* X' as a shared element */
    static const AlgElem& x_derivative() {
        static const AlgElem xp = [] {
            const auto& q = QuadraticModel::instance();
            const QPoly Ap = q.A.derivative(), Bp = q.B.derivative(), Cp = q.C.derivative();
            AlgElem lhs(BiPoly::from_outer(Ap * q.C - q.A * Cp),
                        BiPoly::from_outer(Ap * q.B - q.A * Bp), q.A);
            AlgElem rhs(BiPoly::from_outer(q.B), BiPoly::from_outer(q.A + q.A), q.disc);
            return lhs * rhs;
        }();
        return xp;
    }

    /* Lambda = X'/X; the twisted derivative of X^(-j) E is E' - j Lambda E */
    static const AlgElem& log_derivative_x() {
        static const AlgElem lam = x_derivative() * x().inverted();
        return lam;
    }

  private:
    /* cancel the largest univariate t-polynomial dividing a, b and den */
    void reduce() {
        if (is_zero()) {
            den_ = QPoly::constant(Rat(1));
            return;
        }
        QPoly g = den_;
        auto fold_slices = [&g](const BiPoly& p) {
            if (p.is_zero()) return;
            const std::int64_t jd = p.inner_degree();
            for (std::int64_t s = 0; s <= jd && g.degree() > 0; ++s) {
                std::vector<Rat> c(static_cast<std::size_t>(p.outer_degree()) + 1, Rat(0));
                for (std::int64_t r = 0; r <= p.outer_degree(); ++r)
                    c[static_cast<std::size_t>(r)] =
                        p.coeff(static_cast<std::size_t>(r)).coeff(static_cast<std::size_t>(s));
                g = QPoly::gcd(g, QPoly(std::move(c)));
            }
        };
        fold_slices(a_);
        fold_slices(b_);
        if (g.degree() > 0) {
            const BiPoly gb = BiPoly::from_outer(g);
            if (!a_.is_zero()) a_ = BiPoly::divexact_outer(a_, gb);
            if (!b_.is_zero()) b_ = BiPoly::divexact_outer(b_, gb);
            den_ = QPoly::divexact(den_, g);
        }
        /* normalize den to leading coefficient 1 for stable output */
        const Rat lead = den_.lead();
        if (lead != 1) {
            const Rat inv = Rat(1) / lead;
            den_ = den_.scaled(inv);
            a_ = a_.scaled_inner(QPoly::constant(inv));
            b_ = b_.scaled_inner(QPoly::constant(inv));
        }
    }

    BiPoly a_, b_;
    QPoly den_;
};

/*
 * Linear ODE sum_s f[s](t,j) (d/dt)^s W = 0 with polynomial coefficients;
 * the trailing entry is nonzero.
 */
struct OdeOperator {
    std::vector<BiPoly> f;
    int order() const { return static_cast<int>(f.size()) - 1; }
};

namespace detail {

/* divide a vector of bivariate polynomials by its common content */
inline void remove_common_content(std::vector<BiPoly>& v) {
    QPoly ic;
    for (const BiPoly& p : v) ic = QPoly::gcd(ic, p.inner_content());
    if (ic.degree() > 0)
        for (BiPoly& p : v)
            if (!p.is_zero()) p = p.divexact_inner(ic);
    BiPoly g;
    for (const BiPoly& p : v) g = BiPoly::gcd_outer(g, p);
    if (g.outer_degree() > 0 || g.inner_degree() > 0)
        for (BiPoly& p : v)
            if (!p.is_zero()) p = BiPoly::divexact_outer(p, g);
    /* sign-normalize on the trailing nonzero entry */
    for (std::size_t i = v.size(); i-- > 0;) {
        if (v[i].is_zero()) continue;
        if (sgn(v[i].lead().lead()) < 0)
            for (BiPoly& p : v) p = -p;
        break;
    }
}

}  // namespace detail

/*
 * Eliminate X from (E0, E1, E2) where Es is the s-th (possibly twisted)
 * derivative of the target element: clear to a common denominator, write
 * Es = (Ps + Qs X) / D, and return f with sum_s f[s] Ps = sum_s f[s] Qs = 0.
 * The cross product solves the generic rank-2 case; when it degenerates
 * (the target is rational, so every Qs = 0) an order-1 operator is returned.
 */
inline OdeOperator eliminate_to_ode(const std::array<AlgElem, 3>& e) {
    std::array<BiPoly, 3> P, Q;
    for (int s = 0; s < 3; ++s) {
        QPoly other = QPoly::constant(Rat(1));
        for (int t = 0; t < 3; ++t)
            if (t != s) other = other * e[static_cast<std::size_t>(t)].den();
        const BiPoly ob = BiPoly::from_outer(other);
        P[static_cast<std::size_t>(s)] = e[static_cast<std::size_t>(s)].a() * ob;
        Q[static_cast<std::size_t>(s)] = e[static_cast<std::size_t>(s)].b() * ob;
    }
    std::vector<BiPoly> f{P[1] * Q[2] - P[2] * Q[1], P[2] * Q[0] - P[0] * Q[2],
                          P[0] * Q[1] - P[1] * Q[0]};
    const bool degenerate = f[0].is_zero() && f[1].is_zero() && f[2].is_zero();
    if (degenerate) {
        /* rank <= 1: a first-order operator from any nonzero component pair */
        if (!P[0].is_zero() || !P[1].is_zero())
            f = {P[1], -P[0]};
        else if (!Q[0].is_zero() || !Q[1].is_zero())
            f = {Q[1], -Q[0]};
        else
            throw std::domain_error("eliminate_to_ode: zero element");
        if (f[0].is_zero() && f[1].is_zero())
            throw std::domain_error("eliminate_to_ode: degenerate system with no order-1 operator");
    }
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    if (f.empty()) throw std::domain_error("eliminate_to_ode: only the trivial solution");
    detail::remove_common_content(f);
    return OdeOperator{std::move(f)};
}

/* the element X^2 / (t q (X-t)(X^2-1)(Xt-1)), i.e. U_0 */
inline AlgElem u0_element() {
    const AlgElem X = AlgElem::x();
    const AlgElem X2 = X * X;
    const QPoly t = QPoly::from_ints({0, 1});
    const AlgElem den = AlgElem::from_tpoly(QuadraticModel::instance().A) *  /* t q */
                        (X - AlgElem::from_tpoly(t)) *
                        (X2 - AlgElem::constant(Rat(1))) *
                        (X * AlgElem::from_tpoly(t) - AlgElem::constant(Rat(1)));
    return X2 * den.inverted();
}

/* the element -X / (q (X-t)(Xt-1)(t^2-1)), i.e. V_0 */
inline AlgElem v0_element() {
    const AlgElem X = AlgElem::x();
    const QPoly t = QPoly::from_ints({0, 1});
    const QPoly q = QPoly::from_ints({1, -3, 1});
    const QPoly t2m1 = QPoly::from_ints({-1, 0, 1});
    const AlgElem den = AlgElem::from_tpoly(q) * (X - AlgElem::from_tpoly(t)) *
                        (X * AlgElem::from_tpoly(t) - AlgElem::constant(Rat(1))) *
                        AlgElem::from_tpoly(t2m1);
    return -(X * den.inverted());
}

/*
 * ODE for U_j with j formal: W = X^(-j) E0 gives W^(s) = X^(-j) D^s(E0)
 * with the twisted derivative D(E) = E' - j (X'/X) E, so eliminating X from
 * (E0, D E0, D^2 E0) annihilates U_j for every j at once.
 */
inline OdeOperator derive_ode_u() {
    const QPoly jvar = QPoly::monomial(Rat(1), 1);
    const AlgElem& lam = AlgElem::log_derivative_x();
    auto twisted = [&](const AlgElem& e) { return e.derivative() - (lam * e).scaled_inner(jvar); };
    std::array<AlgElem, 3> e;
    e[0] = u0_element();
    e[1] = twisted(e[0]);
    e[2] = twisted(e[1]);
    OdeOperator op = eliminate_to_ode(e);
    if (op.order() != 2)
        throw std::domain_error("derive_ode_u: expected a second-order operator");
    return op;
}

/* ODE for V_0; the element is rational in t, so the rank-1 path fires */
inline OdeOperator derive_ode_v() {
    std::array<AlgElem, 3> e;
    e[0] = v0_element();
    e[1] = e[0].derivative();
    e[2] = e[1].derivative();
    return eliminate_to_ode(e);
}

/*
 * Linear recurrence sum_{r=0..order} c[r](k, j) w_{k-r} = 0, valid for every
 * integer k; coefficients are integer polynomials with outer variable k and
 * inner variable j, primitive as a family.
 */
struct RecurrenceOp {
    std::vector<BiPoly> c;
    int order() const { return static_cast<int>(c.size()) - 1; }

    Rat eval(int r, std::int64_t k, std::int64_t j) const {
        return c[static_cast<std::size_t>(r)]
            .eval_inner(Rat(static_cast<long>(j)))
            .eval(Rat(static_cast<long>(k)));
    }

    RecurrenceOp specialized(std::int64_t j) const {
        RecurrenceOp out;
        out.c.reserve(c.size());
        for (const BiPoly& p : c)
            out.c.push_back(BiPoly::from_outer(p.eval_inner(Rat(static_cast<long>(j)))));
        return out;
    }
};

namespace detail {

/* scale a family of bivariate polynomials to primitive integer form */
inline void make_integer_primitive(std::vector<BiPoly>& v) {
    Int l = 1;
    for (const BiPoly& p : v)
        for (const QPoly& q : p.coeffs())
            for (const Rat& r : q.coeffs())
                if (sgn(r) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den().get_mpz_t());
    Int g = 0;
    for (BiPoly& p : v) {
        p = p.scaled_inner(QPoly::constant(Rat(l)));
        for (const QPoly& q : p.coeffs())
            for (const Rat& r : q.coeffs())
                if (sgn(r) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_num().get_mpz_t());
    }
    if (g > 1) {
        const Rat inv = Rat(1) / Rat(g);
        for (BiPoly& p : v) p = p.scaled_inner(QPoly::constant(inv));
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (sgn(v[i].lead().lead()) < 0)
            for (BiPoly& p : v) p = -p;
        break;
    }
}

}  // namespace detail

/*
 * Coefficient extraction: applying sum_{s,a} f_{s,a} t^a (d/dt)^s to
 * W = sum w_k t^k and reading the t-coefficient at n = k + dmin gives, for
 * the group of terms with a - s = dmin + r, the factor
 * prod_{i<s} (k - r - i) on w_{k-r}.
 */
inline RecurrenceOp ode_to_rec(const OdeOperator& op) {
    std::int64_t dmin = 0, dmax = 0;
    bool first = true;
    for (std::size_t s = 0; s < op.f.size(); ++s) {
        const BiPoly& fs = op.f[s];
        for (std::int64_t a = 0; a <= fs.outer_degree(); ++a) {
            if (fs.coeff(static_cast<std::size_t>(a)).is_zero()) continue;
            const std::int64_t d = a - static_cast<std::int64_t>(s);
            if (first || d < dmin) dmin = d;
            if (first || d > dmax) dmax = d;
            first = false;
        }
    }
    if (first) throw std::domain_error("ode_to_rec: zero operator");
    std::vector<BiPoly> c(static_cast<std::size_t>(dmax - dmin) + 1);
    for (std::size_t s = 0; s < op.f.size(); ++s) {
        const BiPoly& fs = op.f[s];
        for (std::int64_t a = 0; a <= fs.outer_degree(); ++a) {
            const QPoly& fsa = fs.coeff(static_cast<std::size_t>(a));
            if (fsa.is_zero()) continue;
            const std::int64_t r = a - static_cast<std::int64_t>(s) - dmin;
            BiPoly ff = BiPoly::constant(Rat(1));
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(s); ++i)
                ff = ff * BiPoly::from_outer(
                              QPoly::from_ints({static_cast<long>(-r - i), 1}));
            c[static_cast<std::size_t>(r)] = c[static_cast<std::size_t>(r)] + ff.scaled_inner(fsa);
        }
    }
    detail::make_integer_primitive(c);
    return RecurrenceOp{std::move(c)};
}

inline const RecurrenceOp& rec_u();
inline const RecurrenceOp& rec_v();

namespace detail {

inline std::optional<RecurrenceOp>& rec_u_override() {
    static std::optional<RecurrenceOp> o;
    return o;
}
inline std::optional<RecurrenceOp>& rec_v_override() {
    static std::optional<RecurrenceOp> o;
    return o;
}

}  // namespace detail

/* install precomputed recurrences (cache load); call before first use */
inline void set_rec_u(RecurrenceOp r) { detail::rec_u_override() = std::move(r); }
inline void set_rec_v(RecurrenceOp r) { detail::rec_v_override() = std::move(r); }

inline const RecurrenceOp& rec_u() {
    static const RecurrenceOp r = detail::rec_u_override()
                                      ? *detail::rec_u_override()
                                      : ode_to_rec(derive_ode_u());
    return r;
}
inline const RecurrenceOp& rec_v() {
    static const RecurrenceOp r = detail::rec_v_override()
                                      ? *detail::rec_v_override()
                                      : ode_to_rec(derive_ode_v());
    return r;
}

namespace detail {

inline void int128_to_mpz(__int128 v, Int& out) {
    const bool neg = v < 0;
    unsigned __int128 uv = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    const unsigned long hi = static_cast<unsigned long>(uv >> 64);
    const unsigned long lo = static_cast<unsigned long>(uv);
    out = hi;
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 64);
    mpz_add_ui(out.get_mpz_t(), out.get_mpz_t(), lo);
    if (neg) mpz_neg(out.get_mpz_t(), out.get_mpz_t());
}

}  // namespace detail

/*
 * Integer coefficient table of a RecurrenceOp laid out for the forward
 * runner: z[r][alpha][beta] multiplies k^alpha j^beta.  Evaluation uses
 * 128-bit arithmetic whenever |k|, |j| stay below the certified bound, with
 * an exact big-integer fallback above it.
 */
struct PreparedRec {
    int order = 0;
    std::vector<std::vector<std::vector<Int>>> z;
    std::vector<std::vector<std::vector<long>>> z64;
    bool has64 = false;
    std::int64_t cert = 0;  /* 128-bit path certified for |k|,|j| <= cert */

    explicit PreparedRec(const RecurrenceOp& rec) : order(rec.order()) {
        z.resize(rec.c.size());
        for (std::size_t r = 0; r < rec.c.size(); ++r) {
            const BiPoly& p = rec.c[r];
            const std::int64_t kd = std::max<std::int64_t>(p.outer_degree(), 0);
            const std::int64_t jd = std::max<std::int64_t>(p.inner_degree(), 0);
            z[r].assign(static_cast<std::size_t>(kd) + 1,
                        std::vector<Int>(static_cast<std::size_t>(jd) + 1, Int(0)));
            for (std::int64_t a = 0; a <= p.outer_degree(); ++a)
                for (std::int64_t b = 0; b <= p.coeff(static_cast<std::size_t>(a)).degree(); ++b) {
                    const Rat& v = p.coeff(static_cast<std::size_t>(a)).coeff(
                        static_cast<std::size_t>(b));
                    if (Int(v.get_den()) != 1)
                        throw std::domain_error("PreparedRec: non-integer coefficient");
                    z[r][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                        Int(v.get_num());
                }
        }
        has64 = true;
        for (const auto& rr : z)
            for (const auto& aa : rr)
                for (const Int& v : aa) has64 = has64 && v.fits_slong_p();
        if (has64) {
            z64.resize(z.size());
            for (std::size_t r = 0; r < z.size(); ++r) {
                z64[r].resize(z[r].size());
                for (std::size_t a = 0; a < z[r].size(); ++a)
                    for (const Int& v : z[r][a]) z64[r][a].push_back(v.get_si());
            }
            /* certify the largest symmetric box on which every partial sum
             * of eval128 stays below 2^126 */
            for (std::int64_t trial : {std::int64_t{1} << 40, std::int64_t{1} << 32,
                                       std::int64_t{1} << 24, std::int64_t{1} << 20,
                                       std::int64_t{1} << 16, std::int64_t{1} << 12}) {
                Int bound = 0;
                for (const auto& rr : z)
                    for (std::size_t a = 0; a < rr.size(); ++a) {
                        Int rowmax = 0;
                        for (std::size_t b = 0; b < rr[a].size(); ++b) {
                            Int term = abs(rr[a][b]);
                            for (std::size_t e = 0; e < b; ++e) term *= trial;
                            rowmax += term;
                        }
                        for (std::size_t e = 0; e < a; ++e) rowmax *= trial;
                        if (rowmax > bound) bound = rowmax;
                    }
                Int lim = 1;
                mpz_mul_2exp(lim.get_mpz_t(), lim.get_mpz_t(), 126);
                if (bound < lim) {
                    cert = trial;
                    break;
                }
            }
        }
    }

    void eval_into(Int& out, int r, std::int64_t k, std::int64_t j) const {
        const auto& zr = z[static_cast<std::size_t>(r)];
        if (has64 && cert > 0 && std::llabs(k) <= cert && std::llabs(j) <= cert) {
            const auto& zr64 = z64[static_cast<std::size_t>(r)];
            __int128 acc = 0;
            __int128 kp = 1;
            for (std::size_t a = 0; a < zr64.size(); ++a) {
                __int128 inner = 0;
                __int128 jp = 1;
                for (std::size_t b = 0; b < zr64[a].size(); ++b) {
                    inner += static_cast<__int128>(zr64[a][b]) * jp;
                    jp *= j;
                }
                acc += inner * kp;
                kp *= k;
            }
            detail::int128_to_mpz(acc, out);
            return;
        }
        out = 0;
        Int kp = 1, inner, jp;
        for (std::size_t a = 0; a < zr.size(); ++a) {
            inner = 0;
            jp = 1;
            for (std::size_t b = 0; b < zr[a].size(); ++b) {
                inner += zr[a][b] * jp;
                jp *= j;
            }
            out += inner * kp;
            kp *= k;
        }
    }
};

/* thrown when a division in the dyadic fast path is not exact; callers fall
 * back to full rational arithmetic */
struct NonDyadicDivision : std::runtime_error {
    NonDyadicDivision() : std::runtime_error("non-dyadic division in recurrence runner") {}
};

/*
 * Forward-run a recurrence from the single seed w_{k0} = seed (zeros below)
 * up to k_hi >= k0.  Returns the final window, entry i holding w at index
 * k_hi - order + 1 + i; if full is given, also appends w_{k0}..w_{k_hi}.
 *
 * The window keeps raw (num, exp) pairs; alignment happens by shifting the
 * small recurrence coefficient, never the large numerators.
 */
inline std::vector<Dyadic> run_rec_dyadic(const PreparedRec& rec, std::int64_t j,
                                          std::int64_t k0, const Dyadic& seed,
                                          std::int64_t k_hi,
                                          std::vector<Dyadic>* full = nullptr) {
    if (k_hi < k0) throw std::domain_error("run_rec_dyadic: k_hi below seed index");
    const int R = rec.order;
    if (R < 1) throw std::domain_error("run_rec_dyadic: empty recurrence");
    std::vector<Int> nums(static_cast<std::size_t>(R), Int(0));
    std::vector<std::int64_t> exps(static_cast<std::size_t>(R), 0);
    auto pos = [R](std::int64_t k) {
        return static_cast<std::size_t>(((k % R) + R) % R);
    };
    nums[pos(k0)] = seed.num;
    exps[pos(k0)] = seed.exp;
    if (full) full->push_back(seed);

    std::vector<Int> cr(static_cast<std::size_t>(R) + 1);
    Int acc, tmp, odd, quo, rem;
    for (std::int64_t k = k0 + 1; k <= k_hi; ++k) {
        std::int64_t emin = 0;
        bool any = false;
        for (int r = 1; r <= R; ++r) {
            const std::size_t p = pos(k - r);
            if (k - r < k0) continue;  /* below the seed: zero */
            if (sgn(nums[p]) == 0) continue;
            rec.eval_into(cr[static_cast<std::size_t>(r)], r, k, j);
            if (sgn(cr[static_cast<std::size_t>(r)]) == 0) continue;
            if (!any || exps[p] < emin) emin = exps[p];
            any = true;
        }
        acc = 0;
        if (any) {
            for (int r = 1; r <= R; ++r) {
                const std::size_t p = pos(k - r);
                if (k - r < k0) continue;
                if (sgn(nums[p]) == 0) continue;
                const Int& c = cr[static_cast<std::size_t>(r)];
                if (sgn(c) == 0) continue;
                tmp = c;
                mpz_mul_2exp(tmp.get_mpz_t(), tmp.get_mpz_t(),
                             static_cast<unsigned long>(exps[p] - emin));
                mpz_addmul(acc.get_mpz_t(), nums[p].get_mpz_t(), tmp.get_mpz_t());
            }
        }
        const std::size_t slot = pos(k);
        if (sgn(acc) == 0) {
            nums[slot] = 0;
            exps[slot] = 0;
        } else {
            rec.eval_into(tmp, 0, k, j);
            if (sgn(tmp) == 0)
                throw std::domain_error("run_rec_dyadic: leading coefficient vanished");
            const unsigned long s = two_valuation(tmp);
            mpz_fdiv_q_2exp(odd.get_mpz_t(), tmp.get_mpz_t(), s);
            mpz_tdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), odd.get_mpz_t());
            if (sgn(rem) != 0) throw NonDyadicDivision();
            nums[slot] = -quo;
            exps[slot] = emin - static_cast<std::int64_t>(s);
        }
        if (full) full->emplace_back(nums[slot], exps[slot]);
    }

    std::vector<Dyadic> out;
    out.reserve(static_cast<std::size_t>(R));
    for (std::int64_t k = k_hi - R + 1; k <= k_hi; ++k) {
        if (k < k0)
            out.emplace_back();
        else
            out.emplace_back(nums[pos(k)], exps[pos(k)]);
    }
    return out;
}

/* reference runner over exact rationals; returns w_{k0}..w_{k_hi} */
inline std::vector<Rat> run_rec_rat(const RecurrenceOp& rec, std::int64_t j, std::int64_t k0,
                                    const Rat& seed, std::int64_t k_hi) {
    if (k_hi < k0) throw std::domain_error("run_rec_rat: k_hi below seed index");
    const int R = rec.order();
    std::vector<Rat> w;
    w.reserve(static_cast<std::size_t>(k_hi - k0) + 1);
    w.push_back(seed);
    for (std::int64_t k = k0 + 1; k <= k_hi; ++k) {
        Rat acc = 0;
        for (int r = 1; r <= R; ++r) {
            const std::int64_t idx = k - r - k0;
            if (idx < 0) continue;
            const Rat& prev = w[static_cast<std::size_t>(idx)];
            if (sgn(prev) == 0) continue;
            acc += rec.eval(r, k, j) * prev;
        }
        Rat c0 = rec.eval(0, k, j);
        if (sgn(c0) == 0) throw std::domain_error("run_rec_rat: leading coefficient vanished");
        w.push_back(-acc / c0);
    }
    return w;
}

namespace detail {

inline const PreparedRec& prec_u() {
    static const PreparedRec p{rec_u()};
    return p;
}
inline const PreparedRec& prec_v() {
    static const PreparedRec p{rec_v()};
    return p;
}

}  // namespace detail

/* u_{j,k}: seed 1/2 at the valuation index -j-1, zero below */
inline Rat run_rec_u(std::int64_t j, std::int64_t k) {
    if (j > 0) throw std::domain_error("run_rec_u: j must be nonpositive");
    const std::int64_t k0 = -j - 1;
    if (k < k0) return Rat(0);
    try {
        auto w = run_rec_dyadic(detail::prec_u(), j, k0, Dyadic(Int(1), -1), k);
        return w.back().to_rat();
    } catch (const NonDyadicDivision&) {
        return run_rec_rat(rec_u(), j, k0, Rat(1, 2), k).back();
    }
}

/* v_k: seed -1/2 at index -1, zero below */
inline Rat run_rec_v(std::int64_t k) {
    const std::int64_t k0 = -1;
    if (k < k0) return Rat(0);
    try {
        auto w = run_rec_dyadic(detail::prec_v(), 0, k0, Dyadic(Int(-1), -1), k);
        return w.back().to_rat();
    } catch (const NonDyadicDivision&) {
        return run_rec_rat(rec_v(), 0, k0, Rat(-1, 2), k).back();
    }
}

/*
 * U_j = X^(-j) X^2 / (t q (X-t)(X^2-1)(Xt-1)) as a truncated series,
 * coefficients reliable through t^order; valuation -j-1.
 */
inline TruncSeries u_direct(std::int64_t j, std::int64_t order) {
    if (j > 0) throw std::domain_error("u_direct: j must be nonpositive");
    const std::int64_t ox = std::max<std::int64_t>(order + 4 + j, 2) + 6;
    const auto& qm = QuadraticModel::instance();
    const TruncSeries X = x_series(ox);
    const TruncSeries one = TruncSeries::monomial(Rat(1), 0);
    const TruncSeries t = TruncSeries::monomial(Rat(1), 1);
    const TruncSeries tq = TruncSeries::from_poly(qm.A);
    const TruncSeries den = tq * (X - t) * (X * X - one) * (X * t - one);
    TruncSeries u = X * X * den.inverse();
    for (std::int64_t i = 0; i < -j; ++i) u = u * X;
    if (u.order() < order) throw std::logic_error("u_direct: truncation slack exhausted");
    return u.truncated(order);
}

/* V_0 = -X / (q (X-t)(Xt-1)(t^2-1)), reliable through t^order; valuation -1 */
inline TruncSeries v_direct(std::int64_t order) {
    const std::int64_t ox = std::max<std::int64_t>(order + 3, 2) + 6;
    const TruncSeries X = x_series(ox);
    const TruncSeries one = TruncSeries::monomial(Rat(1), 0);
    const TruncSeries t = TruncSeries::monomial(Rat(1), 1);
    const TruncSeries q = TruncSeries::from_poly(QPoly::from_ints({1, -3, 1}));
    const TruncSeries t2m1 = TruncSeries::from_poly(QPoly::from_ints({-1, 0, 1}));
    const TruncSeries den = q * (X - t) * (X * t - one) * t2m1;
    TruncSeries v = -(X * den.inverse());
    if (v.order() < order) throw std::logic_error("v_direct: truncation slack exhausted");
    return v.truncated(order);
}

/* one coefficient sequence of samples for fit_recurrence */
struct SampledSeq {
    std::int64_t j = 0;
    std::int64_t k_first = 0;
    std::vector<Rat> values;  /* w_{k_first}, w_{k_first+1}, ... */
};

/*
 * Guess-and-verify: solve for a recurrence of the given shape fitting the
 * sampled sequences, holding out the last kHoldout terms of every fitted
 * sequence plus all of `holdout` for validation.  Fails loudly when the
 * system is under-determined, has no nontrivial solution, or the candidate
 * misses any held-out term.
 */
inline RecurrenceOp fit_recurrence(const std::vector<SampledSeq>& fit,
                                   const std::vector<SampledSeq>& holdout, int order,
                                   int kdeg, int jdeg) {
    constexpr std::int64_t kHoldout = 50;
    constexpr std::int64_t kSurplus = 50;
    const std::size_t nunk = static_cast<std::size_t>(order + 1) *
                             static_cast<std::size_t>(kdeg + 1) *
                             static_cast<std::size_t>(jdeg + 1);
    auto unk = [&](int r, int a, int b) {
        return (static_cast<std::size_t>(r) * static_cast<std::size_t>(kdeg + 1) +
                static_cast<std::size_t>(a)) *
                   static_cast<std::size_t>(jdeg + 1) +
               static_cast<std::size_t>(b);
    };
    auto powr = [](std::int64_t base, int e) {
        Rat p = 1;
        for (int i = 0; i < e; ++i) p *= Rat(static_cast<long>(base));
        return p;
    };

    std::vector<std::vector<Rat>> rows;
    auto emit_equations = [&](const SampledSeq& s, std::int64_t k_lo, std::int64_t k_hi,
                              std::vector<std::vector<Rat>>& into) {
        for (std::int64_t k = k_lo; k <= k_hi; ++k) {
            std::vector<Rat> row(nunk, Rat(0));
            for (int r = 0; r <= order; ++r) {
                const std::int64_t idx = k - r - s.k_first;
                const Rat& w = s.values[static_cast<std::size_t>(idx)];
                if (sgn(w) == 0) continue;
                for (int a = 0; a <= kdeg; ++a)
                    for (int b = 0; b <= jdeg; ++b)
                        row[unk(r, a, b)] = powr(k, a) * powr(s.j, b) * w;
            }
            into.push_back(std::move(row));
        }
    };

    struct Range {
        const SampledSeq* s;
        std::int64_t lo, hi;  /* validation range */
    };
    std::vector<Range> validation;
    for (const SampledSeq& s : fit) {
        const std::int64_t k_last = s.k_first + static_cast<std::int64_t>(s.values.size()) - 1;
        const std::int64_t fit_hi = k_last - kHoldout;
        const std::int64_t k_lo = s.k_first + order;
        if (fit_hi < k_lo)
            throw std::domain_error("fit_recurrence: sequence too short to reserve holdout");
        emit_equations(s, k_lo, fit_hi, rows);
        validation.push_back(Range{&s, fit_hi + 1, k_last});
    }
    if (rows.size() < nunk + kSurplus)
        throw std::domain_error("fit_recurrence: under-determined system");
    if (jdeg >= 1) {
        std::size_t unseen = 0;
        for (const SampledSeq& h : holdout) {
            bool seen = false;
            for (const SampledSeq& s : fit) seen = seen || s.j == h.j;
            if (!seen) ++unseen;
        }
        if (unseen < 2)
            throw std::domain_error("fit_recurrence: need at least 2 held-out j values");
    }

    /* Gaussian elimination; track pivot column per eliminated row */
    std::vector<std::size_t> pivot_of_row;
    std::vector<bool> is_pivot(nunk, false);
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < nunk && lead_row < rows.size(); ++col) {
        std::size_t sel = lead_row;
        while (sel < rows.size() && sgn(rows[sel][col]) == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[lead_row], rows[sel]);
        const Rat inv = Rat(1) / rows[lead_row][col];
        for (std::size_t c = col; c < nunk; ++c) rows[lead_row][c] *= inv;
        for (std::size_t rr = 0; rr < rows.size(); ++rr) {
            if (rr == lead_row || sgn(rows[rr][col]) == 0) continue;
            const Rat f = rows[rr][col];
            for (std::size_t c = col; c < nunk; ++c) rows[rr][c] -= f * rows[lead_row][c];
        }
        pivot_of_row.push_back(col);
        is_pivot[col] = true;
        ++lead_row;
    }
    std::size_t free_col = nunk;
    for (std::size_t c = 0; c < nunk; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    if (free_col == nunk)
        throw std::domain_error("fit_recurrence: no nontrivial solution at this ansatz");
    std::vector<Rat> sol(nunk, Rat(0));
    sol[free_col] = 1;
    for (std::size_t rr = 0; rr < pivot_of_row.size(); ++rr) {
        const std::size_t pc = pivot_of_row[rr];
        Rat acc = 0;
        for (std::size_t c = pc + 1; c < nunk; ++c)
            if (sgn(rows[rr][c]) != 0 && sgn(sol[c]) != 0) acc += rows[rr][c] * sol[c];
        sol[pc] = -acc;
    }

    std::vector<BiPoly> c(static_cast<std::size_t>(order) + 1);
    for (int r = 0; r <= order; ++r) {
        std::vector<QPoly> outer(static_cast<std::size_t>(kdeg) + 1);
        for (int a = 0; a <= kdeg; ++a) {
            std::vector<Rat> inner(static_cast<std::size_t>(jdeg) + 1, Rat(0));
            for (int b = 0; b <= jdeg; ++b) inner[static_cast<std::size_t>(b)] = sol[unk(r, a, b)];
            outer[static_cast<std::size_t>(a)] = QPoly(std::move(inner));
        }
        c[static_cast<std::size_t>(r)] = BiPoly(std::move(outer));
    }
    detail::make_integer_primitive(c);
    RecurrenceOp rec{std::move(c)};

    auto check_seq = [&](const SampledSeq& s, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t k = lo; k <= hi; ++k) {
            Rat acc = 0;
            for (int r = 0; r <= order; ++r) {
                const std::int64_t idx = k - r - s.k_first;
                if (idx < 0 || idx >= static_cast<std::int64_t>(s.values.size()))
                    throw std::domain_error("fit_recurrence: validation window out of data");
                acc += rec.eval(r, k, s.j) * s.values[static_cast<std::size_t>(idx)];
            }
            if (sgn(acc) != 0) throw std::domain_error("fit_recurrence: validation failed");
        }
    };
    for (const Range& r : validation) check_seq(*r.s, r.lo, r.hi);
    for (const SampledSeq& s : holdout) {
        const std::int64_t k_last = s.k_first + static_cast<std::int64_t>(s.values.size()) - 1;
        check_seq(s, s.k_first + order, k_last);
    }
    return rec;
}

}  // namespace sternct
