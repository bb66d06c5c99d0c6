#include "oracle_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sternct;

namespace {

LaurentPoly lp(std::vector<Int> c, std::int64_t lo) { return LaurentPoly(std::move(c), lo); }

}  // namespace

TEST_CASE("step matrix entries") {
    const auto& b = transfer_matrix_b();
    const LaurentPoly x = LaurentPoly::monomial(Int(1), 1);
    const LaurentPoly xi = LaurentPoly::monomial(Int(1), -1);
    const LaurentPoly three = LaurentPoly::constant(Int(3));

    REQUIRE(b[0][0] == x);
    for (int c = 1; c < 5; ++c) REQUIRE(b[0][c].is_zero());

    REQUIRE(b[1][0] == three);
    REQUIRE(b[1][1] == lp({1, 1}, 0));
    REQUIRE(b[1][2] == x);
    REQUIRE(b[1][3].is_zero());
    REQUIRE(b[1][4].is_zero());

    REQUIRE(b[2][0] == xi);
    REQUIRE(b[2][1] == lp({1, 1}, -1));
    REQUIRE(b[2][2] == three);
    REQUIRE(b[2][3] == lp({1, 1}, 0));
    REQUIRE(b[2][4] == x);

    REQUIRE(b[3][0].is_zero());
    REQUIRE(b[3][1].is_zero());
    REQUIRE(b[3][2] == xi);
    REQUIRE(b[3][3] == lp({1, 1}, -1));
    REQUIRE(b[3][4] == three);

    for (int c = 0; c < 4; ++c) REQUIRE(b[4][c].is_zero());
    REQUIRE(b[4][4] == xi);

    // conjugating by the exponent flip x -> 1/x reverses the state order
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) REQUIRE(b[r][c].reversed() == b[4 - r][4 - c]);
}

TEST_CASE("split selection") {
    const SplitChoice s = choose_split(10000);
    REQUIRE(s.m == 9986);
    REQUIRE(s.n == 14);
    REQUIRE(choose_split(2).n == 1);
    REQUIRE(choose_split(2).m == 1);
    REQUIRE(choose_split(30).n == 5);
    REQUIRE(choose_split(30).m == 25);
    REQUIRE_THROWS_AS(choose_split(1), std::domain_error);
    // the chosen split always satisfies the validity bound
    for (std::int64_t n = 2; n <= 4000; n += 37) {
        const SplitChoice c = choose_split(n);
        REQUIRE(c.m + c.n == n);
        REQUIRE((std::int64_t{1} << c.n) > n - 2);
        REQUIRE(c.m < (std::int64_t{1} << c.n) + 2 - c.n);
    }
}

TEST_CASE("seed vector is the shifted autocorrelation") {
    const int n = 4;
    const auto s = psi_init(n);
    const LaurentPoly gg = gg_autocorrelation(n);
    for (int i = -2; i <= 2; ++i) {
        REQUIRE(s[static_cast<std::size_t>(i + 2)] ==
                gg.shifted(i * (std::int64_t{1} << n)));
    }
    REQUIRE(s[2].ct() == omega_def(n));
}

TEST_CASE("iteration reproduces the reference values") {
    for (std::size_t n = 2; n < oracle::omega_golden().size(); ++n)
        REQUIRE(omega_transfer(static_cast<std::int64_t>(n)) == Int(oracle::omega_golden()[n]));
    REQUIRE_THROWS_AS(omega_transfer(1), std::domain_error);
}

TEST_CASE("pruned and unpruned iterations agree") {
    for (std::int64_t n = 2; n <= 40; ++n)
        REQUIRE(omega_transfer(n, true) == omega_transfer(n, false));
}

TEST_CASE("one unpruned step preserves the full update") {
    // against a direct matrix-vector product with plain multiplication
    const auto s = psi_init(3);
    const auto stepped = transfer_step(s);
    const auto& b = transfer_matrix_b();
    for (std::size_t r = 0; r < 5; ++r) {
        LaurentPoly acc;
        for (std::size_t c = 0; c < 5; ++c) acc += b[r][c] * s[c];
        REQUIRE(stepped[r] == acc);
    }
}
