#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "opk/consequence.hpp"
#include "opk/series.hpp"

using namespace opk;

namespace {

TruncatedSeries sparse(int order, std::initializer_list<std::pair<int, long>> terms) {
    TruncatedSeries s(order);
    for (auto [e, c] : terms) s.set(static_cast<std::size_t>(e), Rational(c));
    return s;
}

TruncatedSeries random_invertible(std::mt19937_64& rng, int order) {
    TruncatedSeries f(order);
    f.set(1, rat(1 + static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 3)));
    for (int i = 2; i <= order; ++i)
        f.set(static_cast<std::size_t>(i),
              rat(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4)));
    return f;
}

}  // namespace

TEST_CASE("composition") {
    TruncatedSeries g = sparse(4, {{2, 1}});            // t^2
    TruncatedSeries f = sparse(4, {{1, 1}, {2, 1}});    // t + t^2
    TruncatedSeries expect = sparse(4, {{2, 1}, {3, 2}, {4, 1}});
    REQUIRE(compose(g, f) == expect);

    REQUIRE_THROWS_AS(compose(g, sparse(4, {{0, 1}})), std::invalid_argument);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        TruncatedSeries a = random_invertible(rng, 20);
        TruncatedSeries b = random_invertible(rng, 20);
        TruncatedSeries c = random_invertible(rng, 20);
        REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("lagrange inversion") {
    TruncatedSeries f = sparse(6, {{1, 1}, {2, -1}});  // t - t^2: Catalan
    TruncatedSeries inv = lagrange_invert(f);
    REQUIRE(inv[1] == 1);
    REQUIRE(inv[2] == 1);
    REQUIRE(inv[3] == 2);
    REQUIRE(inv[4] == 5);
    REQUIRE(inv[5] == 14);

    REQUIRE(lagrange_invert(TruncatedSeries::identity(8)) == TruncatedSeries::identity(8));

    TruncatedSeries g = sparse(22, {{1, 1}, {8, -1}, {15, 1}});
    TruncatedSeries ginv = lagrange_invert(g);
    REQUIRE(ginv[15] == 7);
    REQUIRE(ginv[22] == 69);

    REQUIRE_THROWS_AS(lagrange_invert(sparse(4, {{2, 1}})), std::invalid_argument);
}

TEST_CASE("newton inversion agrees and inverts") {
    TruncatedSeries f = sparse(6, {{1, 1}, {2, -1}});
    REQUIRE(newton_invert(f) == lagrange_invert(f));

    TruncatedSeries g = sparse(9, {{1, 1}, {3, 1}});  // t + t^3
    TruncatedSeries ginv = newton_invert(g);
    REQUIRE(ginv[1] == 1);
    REQUIRE(ginv[3] == -1);
    REQUIRE(ginv[5] == 3);
    REQUIRE(compose(g, ginv) == TruncatedSeries::identity(9));
    REQUIRE(compose(ginv, g) == TruncatedSeries::identity(9));

    std::mt19937_64 rng(314159);
    for (int trial = 0; trial < 25; ++trial) {
        TruncatedSeries h = random_invertible(rng, 60);
        TruncatedSeries hl = lagrange_invert(h), hn = newton_invert(h);
        REQUIRE(hl == hn);
        REQUIRE(compose(h, hl) == TruncatedSeries::identity(60));
        REQUIRE(compose(hl, h) == TruncatedSeries::identity(60));
    }
}

TEST_CASE("gk residual") {
    // the associative operad and its dual: t/(1-t) against t/(1+t)
    const int N = 30;
    TruncatedSeries gp(N), gd(N);
    for (int k = 1; k <= N; ++k) {
        gp.set(static_cast<std::size_t>(k), Rational(1));
        gd.set(static_cast<std::size_t>(k), Rational(k % 2 == 1 ? 1 : -1));
    }
    REQUIRE(gk_residual(gp, gd).is_zero());
    REQUIRE(first_nonzero_index(gk_residual(gp, gp)).has_value());

    REQUIRE(gk_residual(TruncatedSeries::identity(5), TruncatedSeries::identity(5)).is_zero());

    // the n=8 dimension data against t - t^8 + t^15, zero through t^36
    TruncatedSeries dims = sparse(36, {{1, 1}, {8, 1}, {15, 7}, {22, 69}, {29, 790}, {36, 9842}});
    TruncatedSeries dual = sparse(36, {{1, 1}, {8, -1}, {15, 1}});
    REQUIRE(gk_residual(dims, dual).is_zero());
}

TEST_CASE("minimal model generator series") {
    // free operad on one binary generator: dimensions are the Catalan numbers
    const int N = 14;
    TruncatedSeries gp(N);
    for (int w = 0; w + 1 <= N; ++w)
        gp.set(static_cast<std::size_t>(w + 1), Rational(free_dim(2, w)));
    TruncatedSeries ge = minimal_model_generators(gp);
    TruncatedSeries expect = sparse(N, {{2, 1}});
    REQUIRE(ge == expect);

    TruncatedSeries dims = sparse(36, {{1, 1}, {8, 1}, {15, 7}, {22, 69}, {29, 790}, {36, 9842}});
    TruncatedSeries g8 = minimal_model_generators(dims);
    REQUIRE(abs(g8[8]) == 1);
    REQUIRE(abs(g8[15]) == 1);
    REQUIRE(g8[22] == 0);
    REQUIRE(g8[29] == 0);
    REQUIRE(g8[36] == 0);

    REQUIRE(minimal_model_generators(TruncatedSeries::identity(6)).is_zero());
}

TEST_CASE("gap detection") {
    TruncatedSeries dims = sparse(36, {{1, 1}, {8, 1}, {15, 7}, {22, 69}, {29, 790}, {36, 9842}});
    auto gap = detect_gap(minimal_model_generators(dims), 8);
    REQUIRE(gap.q.has_value());
    REQUIRE(*gap.q == 3);
    REQUIRE(gap.d == 3);
    REQUIRE(!gap.nonzero_after);

    // all-nonzero series: no gap
    TruncatedSeries full = sparse(5, {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}});
    REQUIRE(!detect_gap(full, 2).q.has_value());

    // weights 1..4 with coefficients 1,1,0,1 (n = 2: exponent = weight + 1)
    TruncatedSeries s = sparse(5, {{2, 1}, {3, 1}, {5, 1}});
    auto g = detect_gap(s, 2);
    REQUIRE(g.q.has_value());
    REQUIRE(*g.q == 3);
    REQUIRE(g.d == 1);
    REQUIRE(g.nonzero_after);

    // support off the arithmetic progression is rejected
    REQUIRE_THROWS_AS(detect_gap(sparse(6, {{1, 1}, {4, 1}}), 8), std::invalid_argument);
}

TEST_CASE("scan_negative") {
    TruncatedSeries f = sparse(50, {{1, 1}, {2, -1}, {3, 1}});
    auto neg = scan_negative(newton_invert(f));
    REQUIRE(neg.has_value());
    REQUIRE(*neg <= 50);
    REQUIRE(*neg == 5);

    REQUIRE(scan_negative(sparse(3, {{1, 1}, {2, -1}})) == 2);

    TruncatedSeries g = sparse(350, {{1, 1}, {8, -1}, {15, 1}});
    REQUIRE(!scan_negative(lagrange_invert(g)).has_value());
}

TEST_CASE("inverse support lies on the progression k(n-1)+1") {
    for (int n : {3, 8}) {
        TruncatedSeries f = sparse(8 * (n - 1) + 1, {{1, 1}, {n, -1}, {2 * n - 1, 1}});
        TruncatedSeries inv = lagrange_invert(f);
        for (int i = 0; i <= inv.order(); ++i)
            if (inv[static_cast<std::size_t>(i)] != 0) REQUIRE((i - 1) % (n - 1) == 0);
    }
}

TEST_CASE("series file round trip") {
    TruncatedSeries s = sparse(20, {{1, 1}, {8, -1}});
    s.set(3, rat(22, 7));
    std::stringstream ss;
    write_series(ss, s);
    TruncatedSeries r = read_series(ss, 20);
    REQUIRE(r == s);

    std::stringstream bad("1 not-a-number oops");
    REQUIRE_THROWS(read_series(bad, 5));
}
