#include <sternct/integers.hpp>
#include <sternct/laurent.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

using namespace sternct;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng, int max_len = 12, int max_shift = 8) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> coef(-9, 9);
    std::uniform_int_distribution<int> shift(-max_shift, max_shift);
    std::vector<Int> c(static_cast<std::size_t>(len(rng)));
    for (auto& v : c) v = coef(rng);
    return LaurentPoly(std::move(c), shift(rng));
}

}  // namespace

TEST_CASE("construction trims zero fringes") {
    LaurentPoly p({0, 0, 3, -1, 0}, -2);
    REQUIRE(p.ldeg() == 0);
    REQUIRE(p.deg() == 1);
    REQUIRE(p.coeff(0) == 3);
    REQUIRE(p.coeff(1) == -1);
    REQUIRE(p.coeff(2) == 0);
    REQUIRE(p.coeff(-5) == 0);

    LaurentPoly z({0, 0}, 4);
    REQUIRE(z.is_zero());
    REQUIRE(z == LaurentPoly());
}

TEST_CASE("ring operations match hand expansion") {
    // (x^-1 + 2 + x) * (1 - x) = x^-1 + 1 - x - x^2
    LaurentPoly a({1, 2, 1}, -1);
    LaurentPoly b({1, -1}, 0);
    LaurentPoly want({1, 1, -1, -1}, -1);
    REQUIRE(a * b == want);
    REQUIRE(a + b == LaurentPoly({1, 3}, -1));
    REQUIRE(a - a == LaurentPoly());
    REQUIRE(-(a * b) == want.scaled(Int(-1)));
}

TEST_CASE("shift, reverse, scale") {
    LaurentPoly p({2, 0, -5}, -1);
    REQUIRE(p.shifted(3).ldeg() == 2);
    REQUIRE(p.shifted(3).coeff(4) == -5);
    REQUIRE(p.reversed().coeff(1) == 2);
    REQUIRE(p.reversed().coeff(-1) == -5);
    REQUIRE(p.reversed().reversed() == p);
    REQUIRE(p.scaled(Int(-3)).coeff(-1) == -6);
}

TEST_CASE("banded multiplication agrees with full product on the band") {
    std::mt19937_64 rng(0x5eed01);
    for (int trial = 0; trial < 200; ++trial) {
        LaurentPoly a = random_poly(rng);
        LaurentPoly b = random_poly(rng);
        LaurentPoly full = a * b;
        std::uniform_int_distribution<std::int64_t> bound(-20, 20);
        std::int64_t lo = bound(rng), hi = bound(rng);
        if (lo > hi) std::swap(lo, hi);
        LaurentPoly banded = LaurentPoly::mul_banded(a, b, lo, hi);
        for (std::int64_t e = lo - 2; e <= hi + 2; ++e) {
            if (e >= lo && e <= hi)
                REQUIRE(banded.coeff(e) == full.coeff(e));
            else
                REQUIRE(banded.coeff(e) == 0);
        }
    }
}

TEST_CASE("constant term is invariant under reversal") {
    std::mt19937_64 rng(0x5eed02);
    for (int trial = 0; trial < 300; ++trial) {
        LaurentPoly p = random_poly(rng);
        REQUIRE(p.ct() == p.reversed().ct());
    }
}

TEST_CASE("constant term vanishes off the support") {
    std::mt19937_64 rng(0x5eed03);
    for (int trial = 0; trial < 300; ++trial) {
        LaurentPoly p = random_poly(rng);
        if (p.is_zero()) continue;
        // slide the support strictly positive, then strictly negative
        REQUIRE(p.shifted(1 - p.ldeg()).ct() == 0);
        REQUIRE(p.shifted(-1 - p.deg()).ct() == 0);
    }
}

TEST_CASE("sum of squares equals the autocorrelation constant term") {
    std::mt19937_64 rng(0x5eed04);
    for (int trial = 0; trial < 200; ++trial) {
        LaurentPoly p = random_poly(rng);
        REQUIRE(p.sum_of_squares() == (p * p.reversed()).ct());
    }
}

TEST_CASE("pruning clips outside the window only") {
    LaurentPoly p({1, 2, 3, 4, 5, 6, 7}, -3);
    LaurentPoly w = p.pruned(2);
    REQUIRE(w.ldeg() == -2);
    REQUIRE(w.deg() == 2);
    for (std::int64_t e = -2; e <= 2; ++e) REQUIRE(w.coeff(e) == p.coeff(e));
    REQUIRE(p.pruned(0) == LaurentPoly::constant(Int(4)));
    REQUIRE(p.pruned(100) == p);
}

TEST_CASE("decimal helpers round-trip") {
    Int v("123456789012345678901234567890");
    REQUIRE(to_decimal(v) == "123456789012345678901234567890");
    REQUIRE(decimal_digits(v) == 30);
    REQUIRE(decimal_digits(Int(0)) == 1);
    REQUIRE(two_valuation(Int(48)) == 4);
}
