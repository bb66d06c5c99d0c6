#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dyadic.hpp"
#include "holonomic.hpp"
#include "parallel.hpp"
#include "stern.hpp"
#include "tpoly.hpp"
#include "transfer.hpp"

namespace sternct {

/* I - B(x) t as a 5x5 matrix over bivariate polynomials */
inline std::vector<std::vector<TPoly>> resolvent_matrix() {
    const auto b = transfer_matrix_b();
    std::vector<std::vector<TPoly>> m(5, std::vector<TPoly>(5));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            TPoly e = TPoly::t_monomial(-b[i][j], 1);
            if (i == j) e = e + TPoly::one();
            m[i][j] = std::move(e);
        }
    return m;
}

/* det(I - B t): constant term 1, t-degree 5, x-support [-2, 2] */
inline const TPoly& kernel_denominator() {
    static const TPoly d = tpoly_det(resolvent_matrix());
    return d;
}

/*
 * Numerator of the center component of (I - Bt)^{-1} psi_0 with the seed
 * shifts x^{(row-2)*2^n} folded in: adjugate row 2 against the seed vector.
 * t-degree 4, constant term 1, and symmetric under x -> 1/x.
 */
inline TPoly solved_numerator(int n_seed) {
    if (n_seed < 1 || n_seed > 62)
        throw std::domain_error("solved_numerator: seed level out of range");
    const auto m = resolvent_matrix();
    const std::int64_t block = std::int64_t{1} << n_seed;
    TPoly l;
    for (std::size_t row = 0; row < 5; ++row) {
        TPoly mi = tpoly_minor(m, row, 2);
        if (row % 2 != 0) mi = -mi;
        l = l + mi.x_shifted((static_cast<std::int64_t>(row) - 2) * block);
    }
    return l;
}

inline BivariateRational solve_component(int n_seed) {
    return BivariateRational{solved_numerator(n_seed), kernel_denominator()};
}

/* validity bound for running m steps from seed level n */
inline bool split_within_bound(int n_seed, std::int64_t m) {
    if (n_seed < 1 || m < 0) return false;
    if (n_seed > 62) return true;
    return m < (std::int64_t{1} << n_seed) + 2 - n_seed;
}

/*
 * Folded coefficient table of L * G_n(x) * G_n(1/x): row i holds, at slot
 * d = -j, the coefficient a_{i,j} multiplying u_{j,m-i} + v_{m-i+j} in the
 * assembly sum.  Positive x-powers are folded onto negative ones (the
 * product is x -> 1/x symmetric), doubling every d != 0 slot; slots beyond
 * d = m - i are dropped since the kernel series at t^{m-i} has x-support
 * within [-(m-i), m-i].
 */
struct CoeffTable {
    int n_seed = 0;
    std::int64_t m = 0;
    std::vector<std::vector<Int>> a; /* a[i][d], row i sized max(m-i+1, 0) */
};

inline CoeffTable build_coeff_table(int n_seed, std::int64_t m,
                                    const TPoly* numerator = nullptr) {
    if (!split_within_bound(n_seed, m))
        throw std::domain_error("build_coeff_table: step count violates the validity bound");
    TPoly local;
    if (numerator == nullptr) {
        local = solved_numerator(n_seed);
        numerator = &local;
    }
    const LaurentPoly gg = gg_autocorrelation(n_seed);
    CoeffTable tab;
    tab.n_seed = n_seed;
    tab.m = m;
    tab.a.resize(static_cast<std::size_t>(numerator->t_degree()) + 1);
    for (std::size_t i = 0; i < tab.a.size(); ++i) {
        const std::int64_t dmax = m - static_cast<std::int64_t>(i);
        if (dmax < 0) continue;
        const LaurentPoly c =
            LaurentPoly::mul_banded(numerator->coeff(i), gg, -dmax, 0);
        auto& row = tab.a[i];
        row.resize(static_cast<std::size_t>(dmax) + 1);
        for (std::int64_t d = 0; d <= dmax; ++d) {
            row[static_cast<std::size_t>(d)] = c.coeff(-d);
            if (d != 0) row[static_cast<std::size_t>(d)] *= 2;
        }
    }
    return tab;
}

/*
 * t-series of the kernel 1/det(I - Bt) as Laurent polynomials h_0..h_upto,
 * via the linear recurrence read off the denominator's t-coefficients.
 */
inline std::vector<LaurentPoly> kernel_series(std::int64_t upto) {
    if (upto < 0) throw std::domain_error("kernel_series: negative order");
    const TPoly& den = kernel_denominator();
    if (!(den.coeff(0) == LaurentPoly::constant(Int(1))))
        throw std::logic_error("kernel_series: denominator not normalized");
    std::vector<LaurentPoly> h(static_cast<std::size_t>(upto) + 1);
    h[0] = LaurentPoly::constant(Int(1));
    for (std::int64_t k = 1; k <= upto; ++k) {
        LaurentPoly acc;
        for (std::int64_t r = 1; r <= std::min<std::int64_t>(k, den.t_degree()); ++r)
            acc += den.coeff(static_cast<std::size_t>(r)) *
                   h[static_cast<std::size_t>(k - r)];
        h[static_cast<std::size_t>(k)] = -acc;
    }
    return h;
}

/*
 * Third, fully independent route to omega: expand the solved component as a
 * t-series of Laurent polynomials and take the constant term against the
 * seed autocorrelation.  Exponential in the series order; fine for n <~ 60.
 */
inline Int omega_series(std::int64_t n) {
    if (n < 0) throw std::domain_error("omega_series: n must be nonnegative");
    if (n < 2) return omega_def(static_cast<int>(n));
    const SplitChoice sp = choose_split(n);
    const TPoly num = solved_numerator(sp.n);
    const TPoly& den = kernel_denominator();
    if (!(den.coeff(0) == LaurentPoly::constant(Int(1))))
        throw std::logic_error("omega_series: denominator not normalized");
    std::vector<LaurentPoly> s(static_cast<std::size_t>(sp.m) + 1);
    for (std::int64_t k = 0; k <= sp.m; ++k) {
        LaurentPoly acc = num.coeff(static_cast<std::size_t>(k));
        for (std::int64_t r = 1; r <= std::min<std::int64_t>(k, den.t_degree()); ++r)
            acc -= den.coeff(static_cast<std::size_t>(r)) *
                   s[static_cast<std::size_t>(k - r)];
        s[static_cast<std::size_t>(k)] = std::move(acc);
    }
    const LaurentPoly gg = gg_autocorrelation(sp.n);
    return LaurentPoly::mul_banded(s[static_cast<std::size_t>(sp.m)], gg, 0, 0).ct();
}

enum class CtMethod { direct, recurrence };

/* coefficient of t^k in U_j + V_j = CT_x x^j / det(I - Bt) */
inline Rat ct_h(std::int64_t j, std::int64_t k, CtMethod how) {
    if (j > 0) throw std::domain_error("ct_h: j must be nonpositive");
    if (how == CtMethod::recurrence) return run_rec_u(j, k) + run_rec_v(k + j);
    const TruncSeries us = u_direct(j, std::max(k, -j - 1));
    const TruncSeries vs = v_direct(std::max<std::int64_t>(k + j, -1));
    return us.coeff(k) + vs.coeff(k + j);
}

struct GfOptions {
    int threads = 1;
    /* prebuilt table to reuse; must match the split chosen for n */
    const CoeffTable* table = nullptr;
};

/*
 * omega(n) by coefficient assembly: split n = n_seed + m, build the folded
 * table, then sum a_{i,j} (u_{j,m-i} + v_{m-i+j}) over the surviving (i,j).
 * The u runs for distinct j are independent; chunks are interleaved so the
 * per-chunk work is balanced, and exactness makes any summation order give
 * the identical result.
 */
inline Int omega_gf(std::int64_t n, const GfOptions& opts = GfOptions{}) {
    if (n < 2) throw std::domain_error("omega_gf: n must be at least 2");
    const SplitChoice sp = choose_split(n);
    const std::int64_t m = sp.m;
    CoeffTable local;
    const CoeffTable* tab = opts.table;
    if (tab != nullptr) {
        if (tab->n_seed != sp.n || tab->m != m)
            throw std::domain_error("omega_gf: supplied table does not match the split");
    } else {
        local = build_coeff_table(sp.n, m);
        tab = &local;
    }

    const PreparedRec& pru = detail::prec_u();
    if (pru.order < static_cast<int>(tab->a.size()))
        throw std::logic_error("omega_gf: u window shorter than the table depth");

    bool v_dyadic = true;
    std::vector<Dyadic> vfull;
    std::vector<Rat> vrat;
    vfull.reserve(static_cast<std::size_t>(m) + 2);
    try {
        run_rec_dyadic(detail::prec_v(), 0, -1, Dyadic(Int(-1), -1), m, &vfull);
    } catch (const NonDyadicDivision&) {
        v_dyadic = false;
        vrat = run_rec_rat(rec_v(), 0, -1, Rat(-1, 2), m);
    }

    const std::int64_t chunks = std::min<std::int64_t>(m + 1, 256);
    std::vector<Dyadic> dpart(static_cast<std::size_t>(chunks));
    std::vector<Rat> rpart(static_cast<std::size_t>(chunks), Rat(0));
    parallel_chunks(chunks, opts.threads, [&](std::int64_t c) {
        Dyadic dacc;
        Rat racc = 0;
        for (std::int64_t d = c; d <= m; d += chunks) {
            const std::int64_t j = -d;
            bool u_dyadic = true;
            std::vector<Dyadic> uw;
            std::vector<Rat> ur;
            try {
                uw = run_rec_dyadic(pru, j, d - 1, Dyadic(Int(1), -1), m);
            } catch (const NonDyadicDivision&) {
                u_dyadic = false;
                ur = run_rec_rat(rec_u(), j, d - 1, Rat(1, 2), m);
            }
            for (std::size_t i = 0; i < tab->a.size(); ++i) {
                if (d > m - static_cast<std::int64_t>(i)) continue;
                const Int& aij = tab->a[i][static_cast<std::size_t>(d)];
                if (sgn(aij) == 0) continue;
                const std::int64_t k = m - static_cast<std::int64_t>(i);
                const std::size_t vidx = static_cast<std::size_t>(k - d + 1);
                if (u_dyadic && v_dyadic) {
                    dacc = dacc +
                           uw[static_cast<std::size_t>(pru.order - 1) - i].scaled(aij) +
                           vfull[vidx].scaled(aij);
                } else {
                    const Rat uval = u_dyadic
                                         ? uw[static_cast<std::size_t>(pru.order - 1) - i].to_rat()
                                         : ur[static_cast<std::size_t>(k - (d - 1))];
                    const Rat vval = v_dyadic ? vfull[vidx].to_rat() : vrat[vidx];
                    racc += Rat(aij) * (uval + vval);
                }
            }
        }
        dpart[static_cast<std::size_t>(c)] = std::move(dacc);
        rpart[static_cast<std::size_t>(c)] = std::move(racc);
    });

    Dyadic dtotal;
    Rat rtotal = 0;
    for (std::int64_t c = 0; c < chunks; ++c) {
        dtotal = dtotal + dpart[static_cast<std::size_t>(c)];
        rtotal += rpart[static_cast<std::size_t>(c)];
    }
    const Rat total = dtotal.to_rat() + rtotal;
    if (Int(total.get_den()) != 1)
        throw std::domain_error("omega_gf: assembled value is not an integer");
    Int result(total.get_num());
    if (sgn(result) < 0)
        throw std::domain_error("omega_gf: assembled value is negative");
    return result;
}

}  // namespace sternct
