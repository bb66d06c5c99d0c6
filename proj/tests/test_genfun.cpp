#include "oracle_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sternct;

TEST_CASE("kernel denominator structure") {
    const TPoly& den = kernel_denominator();
    REQUIRE(den.t_degree() == 5);
    REQUIRE(den.coeff(0) == LaurentPoly::constant(Int(1)));
    // the t coefficient is minus the step-matrix trace
    REQUIRE(den.coeff(1) == LaurentPoly({-2, -5, -2}, -1));
    for (std::size_t i = 0; i <= 5; ++i) {
        if (den.coeff(i).is_zero()) continue;
        REQUIRE(den.coeff(i).deg() <= 2);
        REQUIRE(den.coeff(i).ldeg() >= -2);
        // x -> 1/x symmetry, coefficient by coefficient
        REQUIRE(den.coeff(i).reversed() == den.coeff(i));
    }
}

TEST_CASE("kernel denominator factors through the quadratic model") {
    // x^2 det(I - Bt) = (t x^2 - (1 + t^2) x + t) * (tq x^2 + p x + tq)
    const auto& q = QuadraticModel::instance();
    std::vector<LaurentPoly> inner(3);
    inner[0] = LaurentPoly::monomial(Int(-1), 1);                  /* -x      */
    inner[1] = LaurentPoly({1, 0, 1}, 0);                          /* 1 + x^2 */
    inner[2] = LaurentPoly::monomial(Int(-1), 1);                  /* -x      */
    TPoly p2{std::vector<LaurentPoly>(inner)};

    std::vector<LaurentPoly> outer;
    for (std::size_t r = 0; r <= 3; ++r) {
        const Rat a = q.A.coeff(r);
        const Rat b = q.B.coeff(r);
        LaurentPoly c = LaurentPoly::monomial(Int(a.get_num()), 2) +
                        LaurentPoly::monomial(Int(b.get_num()), 1) +
                        LaurentPoly::constant(Int(a.get_num()));
        outer.push_back(std::move(c));
    }
    TPoly q2{std::move(outer)};

    REQUIRE(kernel_denominator().x_shifted(2) == p2 * q2);
}

TEST_CASE("solved numerator structure at the full-scale seed") {
    const TPoly l = solved_numerator(14);
    REQUIRE(l.t_degree() == 4);
    REQUIRE(l.coeff(0) == LaurentPoly::constant(Int(1)));
    std::int64_t widest = 0;
    for (std::size_t i = 1; i <= 4; ++i) {
        const LaurentPoly& c = l.coeff(i);
        REQUIRE_FALSE(c.is_zero());
        REQUIRE(c.reversed() == c);
        REQUIRE(c.deg() >= 32769);
        REQUIRE(c.deg() <= 32771);
        widest = std::max(widest, c.deg());
    }
    // leading terms never cancel, so the pre-fold support is exactly this wide
    REQUIRE(widest + g_degree(14) == 65551);
}

TEST_CASE("solved component is symmetric under exponent reversal") {
    for (int seed : {2, 5, 14}) {
        const BivariateRational h = solve_component(seed);
        REQUIRE(h.num * h.den.reversed() == h.num.reversed() * h.den);
    }
}

TEST_CASE("validity bound for the step count") {
    REQUIRE(split_within_bound(5, 28));
    REQUIRE_FALSE(split_within_bound(5, 29));  /* 2^5 + 2 - 5 = 29 */
    REQUIRE_FALSE(split_within_bound(0, 1));
    REQUIRE(split_within_bound(63, std::int64_t{1} << 40));
}

TEST_CASE("folded coefficient table matches a direct expansion") {
    const int seed = 2;
    const std::int64_t m = 3;
    const CoeffTable tab = build_coeff_table(seed, m);
    REQUIRE(tab.n_seed == seed);
    REQUIRE(tab.m == m);
    const TPoly num = solved_numerator(seed);
    const LaurentPoly gg = gg_autocorrelation(seed);
    REQUIRE(tab.a.size() == 5);
    for (std::size_t i = 0; i < tab.a.size(); ++i) {
        const std::int64_t dmax = m - static_cast<std::int64_t>(i);
        if (dmax < 0) {
            REQUIRE(tab.a[i].empty());
            continue;
        }
        REQUIRE(tab.a[i].size() == static_cast<std::size_t>(dmax) + 1);
        const LaurentPoly full = num.coeff(i) * gg;
        for (std::int64_t d = 0; d <= dmax; ++d) {
            Int want = full.coeff(-d);
            if (d != 0) want *= 2;
            REQUIRE(tab.a[i][static_cast<std::size_t>(d)] == want);
        }
    }
    REQUIRE_THROWS_AS(build_coeff_table(3, 100), std::domain_error);
}

TEST_CASE("kernel series expansion") {
    const auto h = kernel_series(50);
    REQUIRE(h[0] == LaurentPoly::constant(Int(1)));
    for (std::size_t k = 1; k <= 50; ++k) {
        REQUIRE_FALSE(h[k].is_zero());
        REQUIRE(h[k].deg() <= static_cast<std::int64_t>(k));
        REQUIRE(h[k].ldeg() >= -static_cast<std::int64_t>(k));
        REQUIRE(h[k].reversed() == h[k]);
    }
    // multiplying back by the denominator recovers 1
    const TPoly& den = kernel_denominator();
    for (std::size_t k = 1; k <= 20; ++k) {
        LaurentPoly acc = h[k];
        for (std::size_t r = 1; r <= std::min<std::size_t>(k, 5); ++r)
            acc += den.coeff(r) * h[k - r];
        REQUIRE(acc.is_zero());
    }
}

TEST_CASE("constant-term extraction: direct and recurrence routes agree") {
    REQUIRE(ct_h(0, 0, CtMethod::direct) == 1);
    REQUIRE(ct_h(0, 0, CtMethod::recurrence) == 1);
    for (std::int64_t j = -4; j <= 0; ++j)
        for (std::int64_t k = -1; k <= 25; ++k)
            REQUIRE(ct_h(j, k, CtMethod::direct) == ct_h(j, k, CtMethod::recurrence));
    REQUIRE_THROWS_AS(ct_h(1, 0, CtMethod::direct), std::domain_error);
}

TEST_CASE("constant-term sequence matches the kernel series") {
    const auto h = kernel_series(8);
    for (std::int64_t k = 0; k <= 8; ++k)
        REQUIRE(ct_h(0, k, CtMethod::recurrence) == Rat(h[static_cast<std::size_t>(k)].ct()));
}

TEST_CASE("series route reproduces the reference and iterated values") {
    for (std::int64_t n = 0; n <= 14; ++n)
        REQUIRE(omega_series(n) == Int(oracle::omega_golden()[static_cast<std::size_t>(n)]));
    for (std::int64_t n = 21; n <= 24; ++n) REQUIRE(omega_series(n) == omega_transfer(n));
}

TEST_CASE("assembled values agree with the iteration") {
    for (std::int64_t n : {30, 50}) REQUIRE(omega_gf(n) == omega_transfer(n));
    GfOptions opts;
    opts.threads = 3;
    REQUIRE(omega_gf(41, opts) == omega_transfer(41));
    REQUIRE_THROWS_AS(omega_gf(1), std::domain_error);
}

TEST_CASE("supplied tables are validated against the split") {
    const SplitChoice sp = choose_split(40);
    CoeffTable tab = build_coeff_table(sp.n, sp.m);
    GfOptions opts;
    opts.table = &tab;
    REQUIRE(omega_gf(40, opts) == omega_transfer(40));
    REQUIRE_THROWS_AS(omega_gf(41, opts), std::domain_error);
}

TEST_CASE("partial fraction reconstruction of the kernel") {
    for (long c : {2, 3, 5}) REQUIRE(oracle::partial_fraction_residual(Rat(c), 50).is_zero());
}

TEST_CASE("pole terms contribute nothing to the constant term") {
    // 1/(x - t): coefficient of t^r is x^(-r-1); strictly negative exponents
    {
        std::vector<LaurentPoly> claimed(31);
        for (std::size_t r = 0; r <= 30; ++r)
            claimed[r] = LaurentPoly::monomial(Int(1), -static_cast<std::int64_t>(r) - 1);
        // (x - t) * sum = 1 through t^30
        TPoly x_minus_t{{LaurentPoly::monomial(Int(1), 1), LaurentPoly::constant(Int(-1))}};
        TPoly s{std::move(claimed)};
        const TPoly prod = x_minus_t * s;
        REQUIRE(prod.coeff(0) == LaurentPoly::constant(Int(1)));
        for (std::size_t r = 1; r <= 30; ++r) REQUIRE(prod.coeff(r).is_zero());
    }
    // 1/(x - X(t)): the t^r coefficient involves x^(-k-1) for k <= r only,
    // because X^k has t-valuation exactly k
    const std::int64_t ord = 30;
    TruncSeries pw = TruncSeries::monomial(Rat(1), 0);
    const TruncSeries x = x_series(ord + 2);
    for (std::int64_t k = 1; k <= ord; ++k) {
        pw = (pw * x).truncated(ord + 2);
        REQUIRE(pw.valuation() == k);
    }
    // and the geometric resummation really inverts c - X at numeric c
    for (long cval : {2, 5}) {
        const Rat c(cval);
        TruncSeries acc = TruncSeries::exact_zero();
        TruncSeries p = TruncSeries::monomial(Rat(1), 0);
        Rat cpow = 1 / c;
        for (std::int64_t k = 0; k <= ord; ++k) {
            acc = acc + p * TruncSeries::monomial(cpow, 0);
            p = (p * x).truncated(ord + 2);
            cpow /= c;
        }
        const TruncSeries direct =
            (TruncSeries::monomial(c, 0) - x).inverse(ord);
        REQUIRE((acc - direct).truncated(ord).is_zero());
    }
}
