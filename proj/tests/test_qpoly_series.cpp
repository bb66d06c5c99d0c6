#include <sternct/dyadic.hpp>
#include <sternct/qpoly.hpp>
#include <sternct/series.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace sternct;

namespace {

QPoly random_qpoly(std::mt19937_64& rng, int max_deg = 6) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> den(1, 5);
    std::vector<Rat> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) {
        v = Rat(num(rng), den(rng));
        v.canonicalize();
    }
    return QPoly(std::move(c));
}

}  // namespace

TEST_CASE("qpoly division invariants") {
    std::mt19937_64 rng(0xd171de);
    for (int trial = 0; trial < 100; ++trial) {
        QPoly a = random_qpoly(rng);
        QPoly b = random_qpoly(rng);
        if (b.is_zero()) continue;
        auto [q, r] = QPoly::divrem(a, b);
        REQUIRE(q * b + r == a);
        REQUIRE((r.is_zero() || r.degree() < b.degree()));
        REQUIRE(QPoly::divexact(a * b, b) == a);
    }
}

TEST_CASE("qpoly gcd finds planted common factors") {
    std::mt19937_64 rng(0x9cd);
    for (int trial = 0; trial < 60; ++trial) {
        QPoly g = random_qpoly(rng, 3);
        if (g.is_zero() || g.degree() == 0) continue;
        QPoly a = random_qpoly(rng, 4);
        QPoly b = random_qpoly(rng, 4);
        if (a.is_zero() || b.is_zero()) continue;
        QPoly d = QPoly::gcd(a * g, b * g);
        // the planted factor divides the gcd, and the gcd divides both inputs
        auto [q1, r1] = QPoly::divrem(d, g);
        REQUIRE(r1.is_zero());
        auto [q2, r2] = QPoly::divrem(a * g, d);
        REQUIRE(r2.is_zero());
        auto [q3, r3] = QPoly::divrem(b * g, d);
        REQUIRE(r3.is_zero());
        REQUIRE(d.lead() == 1);
    }
}

TEST_CASE("qpoly content and primitive part") {
    QPoly p({Rat(3, 2), Rat(-9, 2), Rat(3)});
    // content of (3/2, -9/2, 3) is 3/2
    REQUIRE(p.content_rat() == Rat(3, 2));
    QPoly prim = p.primitive_part();
    REQUIRE(prim.content_rat() == 1);
    REQUIRE(prim.scaled(p.content_rat()) * QPoly::constant(Rat(1)) == p);
}

TEST_CASE("bipoly outer gcd strips a planted bivariate factor") {
    // build (t + j)^2 * (t^2 - j) and (t + j) * (3 t - 1); gcd must be t + j
    const BiPoly t = BiPoly::from_outer(QPoly::monomial(Rat(1), 1));
    const BiPoly j = BiPoly::from_inner(QPoly::monomial(Rat(1), 1));
    const BiPoly tj = t + j;
    const BiPoly a = tj * tj * (t * t - j);
    const BiPoly b = tj * BiPoly::from_outer(QPoly::from_ints({-1, 3}));
    const BiPoly g = BiPoly::gcd_outer(a, b);
    REQUIRE(g.outer_degree() == 1);
    REQUIRE(g.inner_degree() == 1);
    // up to a constant: coeff of t is a rational c, coeff of t^0 is c * j
    const QPoly& top = g.coeff(1);
    REQUIRE(top.degree() == 0);
    REQUIRE(g.coeff(0) == QPoly::monomial(top.coeff(0), 1));
}

TEST_CASE("bipoly pseudo remainder lowers the outer degree") {
    const BiPoly t = BiPoly::from_outer(QPoly::monomial(Rat(1), 1));
    const BiPoly j = BiPoly::from_inner(QPoly::monomial(Rat(1), 1));
    const BiPoly a = (t * t * t - j * t + BiPoly::constant(Rat(2))) * (t + j);
    const BiPoly b = t * t + j * j;
    const BiPoly r = BiPoly::pseudo_rem(a, b);
    REQUIRE((r.is_zero() || r.outer_degree() < b.outer_degree()));
}

TEST_CASE("series inverse and multiplication") {
    std::mt19937_64 rng(0x5e71e5);
    for (int trial = 0; trial < 50; ++trial) {
        QPoly p = random_qpoly(rng, 5);
        if (p.is_zero() || p.coeff(0) == 0) continue;
        TruncSeries s = TruncSeries::from_poly(p);
        TruncSeries inv = s.inverse(40);
        TruncSeries prod = (s * inv).truncated(40);
        REQUIRE(prod.coeff(0) == 1);
        for (std::int64_t k = 1; k <= 40; ++k) REQUIRE(prod.coeff(k) == 0);
    }
}

TEST_CASE("series coefficient access respects the reliable order") {
    TruncSeries s(2, {Rat(1), Rat(4)}, 5);
    REQUIRE(s.valuation() == 2);
    REQUIRE(s.coeff(0) == 0);
    REQUIRE(s.coeff(-7) == 0);
    REQUIRE(s.coeff(3) == 4);
    REQUIRE(s.coeff(4) == 0);
    REQUIRE(s.coeff(5) == 0);
    REQUIRE_THROWS_AS(s.coeff(6), std::domain_error);
}

TEST_CASE("series derivative") {
    // d/dt (t^-1 + 3 t^2) = -t^-2 + 6 t
    TruncSeries s(-1, {Rat(1), Rat(0), Rat(0), Rat(3)}, 10);
    TruncSeries d = s.derivative();
    REQUIRE(d.coeff(-2) == -1);
    REQUIRE(d.coeff(1) == 6);
    REQUIRE(d.coeff(0) == 0);
}

TEST_CASE("quadratic series root solves its equation") {
    // A = t, B = -(1 + t), C = t: root with X(0) = 0
    QPoly a = QPoly::monomial(Rat(1), 1);
    QPoly b = QPoly({Rat(-1), Rat(-1)});
    QPoly c = a;
    TruncSeries x = quadratic_series_root(a, b, c, 60);
    TruncSeries res = (TruncSeries::from_poly(a) * x * x + TruncSeries::from_poly(b) * x +
                       TruncSeries::from_poly(c))
                          .truncated(60);
    REQUIRE(res.is_zero());
    REQUIRE(x.valuation() >= 1);
}

TEST_CASE("dyadic arithmetic mirrors rationals") {
    std::mt19937_64 rng(0xd9ad);
    std::uniform_int_distribution<long> num(-200, 200);
    std::uniform_int_distribution<int> ex(-12, 12);
    for (int trial = 0; trial < 300; ++trial) {
        Dyadic a(Int(num(rng)), ex(rng));
        Dyadic b(Int(num(rng)), ex(rng));
        REQUIRE((a + b).to_rat() == a.to_rat() + b.to_rat());
        REQUIRE((a - b).to_rat() == a.to_rat() - b.to_rat());
        REQUIRE((a * b).to_rat() == a.to_rat() * b.to_rat());
        REQUIRE(a.scaled(Int(7)).to_rat() == a.to_rat() * 7);
        REQUIRE(Dyadic::from_rat(a.to_rat()).to_rat() == a.to_rat());
        // normalized: numerator odd unless zero
        if (sgn(a.num) != 0) REQUIRE(mpz_odd_p(a.num.get_mpz_t()));
    }
    REQUIRE(Dyadic::from_rat(Rat(-3, 8)).to_rat() == Rat(-3, 8));
    REQUIRE(Dyadic(Int(0), 5).to_rat() == 0);
}
