#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <stdexcept>

#include "doctest.h"
#include "polyia/series.hpp"

using namespace polyia;

TEST_CASE("geometric series is the reciprocal of 1 - p") {
    auto one = PowerSeries::constant(16, Rat(1));
    auto den = PowerSeries::poly(16, {{0, 1}, {1, -1}});
    auto geo = ps_div(one, den);
    for (int n = 0; n < 16; ++n) CHECK(geo.at(n) == 1);
    CHECK(ps_mul(den, geo) == one);
}

TEST_CASE("sqrt of 1 - 4p^2 has Catalan-scaled coefficients") {
    auto s = ps_sqrt(PowerSeries::poly(12, {{0, 1}, {2, -4}}));
    const long even[] = {1, -2, -2, -4, -10, -28};
    for (int i = 0; i < 6; ++i) CHECK(s.at(2 * i) == even[i]);
    for (int i = 1; i < 12; i += 2) CHECK(s.at(i) == 0);
    CHECK(ps_mul(s, s) == PowerSeries::poly(12, {{0, 1}, {2, -4}}));
}

TEST_CASE("sqrt squares back exactly") {
    auto a = PowerSeries::poly(20, {{0, 1}, {1, -2}, {2, -3}});
    auto s = ps_sqrt(a);
    CHECK(s.at(0) == 1);
    CHECK(ps_mul(s, s) == a);

    // Non-unit square constant terms work too (s(0) = +sqrt(a(0))).
    auto b = PowerSeries::poly(10, {{0, 4}, {1, 4}, {2, 1}});
    auto sb = ps_sqrt(b);
    CHECK(sb.at(0) == 2);
    CHECK(ps_mul(sb, sb) == b);
}

TEST_CASE("truncation commutes with ring operations") {
    PowerSeries a(24), b(24);
    for (int i = 0; i < 24; ++i) {
        a.set(i, make_rat(i * i % 7 - 3, 1 + i % 5));
        b.set(i, make_rat(2 * i % 9 - 4, 1 + i % 3));
    }
    b.set(0, Rat(1));  // unit for division and square sqrt constant
    for (int cut : {6, 12, 17}) {
        CHECK(ps_truncate(ps_add(a, b), cut) == ps_add(ps_truncate(a, cut), ps_truncate(b, cut)));
        CHECK(ps_truncate(ps_mul(a, b), cut) == ps_mul(ps_truncate(a, cut), ps_truncate(b, cut)));
        CHECK(ps_truncate(ps_div(a, b), cut) == ps_div(ps_truncate(a, cut), ps_truncate(b, cut)));
        CHECK(ps_truncate(ps_sqrt(b), cut) == ps_sqrt(ps_truncate(b, cut)));
    }
}

TEST_CASE("order mismatch is an error, never a silent truncation") {
    PowerSeries a(3), b(4);
    CHECK_THROWS_WITH_AS(ps_add(a, b), "order mismatch", std::invalid_argument);
    CHECK_THROWS_WITH_AS(ps_mul(a, b), "order mismatch", std::invalid_argument);
    CHECK_THROWS_WITH_AS(ps_sub(a, b), "order mismatch", std::invalid_argument);
}

TEST_CASE("division by a non-unit is an error") {
    auto a = PowerSeries::constant(5, Rat(1));
    auto b = PowerSeries::monomial(5, 1);
    CHECK_THROWS_WITH_AS(ps_div(a, b), "non-unit divisor", std::domain_error);
}

TEST_CASE("sqrt of a non-square constant term is an error") {
    CHECK_THROWS_WITH_AS(ps_sqrt(PowerSeries::poly(5, {{0, 2}})), "non-square constant term",
                         std::domain_error);
    CHECK_THROWS_WITH_AS(ps_sqrt(PowerSeries::poly(5, {{1, 1}})), "non-square constant term",
                         std::domain_error);
}

TEST_CASE("shift_down demands divisibility by p^m") {
    auto a = PowerSeries::poly(8, {{2, 3}, {5, -1}});
    auto s = ps_shift_down(a, 2);
    CHECK(s.order() == 6);
    CHECK(s.at(0) == 3);
    CHECK(s.at(3) == -1);
    CHECK_THROWS_WITH_AS(ps_shift_down(a, 3), "shift below valuation", std::domain_error);
}

TEST_CASE("valuation and is_zero") {
    auto a = PowerSeries::poly(6, {{3, 5}});
    CHECK(a.valuation() == 3);
    CHECK(a.is_zero(3));
    CHECK(!a.is_zero(4));
    CHECK(PowerSeries(4).valuation() == 4);
    CHECK(PowerSeries(4).is_zero());
}

TEST_CASE("bivariate products live in the quotient ring modulo u^{M+1}") {
    BiSeries f(6, 1);
    f.row(0) = PowerSeries::constant(6, Rat(1));
    f.row(1) = PowerSeries::constant(6, Rat(1));
    auto sq = bi_mul(f, f);  // (1 + u)^2 with u^2 dropped
    CHECK(sq.row(0) == PowerSeries::constant(6, Rat(1)));
    CHECK(sq.row(1) == PowerSeries::constant(6, Rat(2)));
    CHECK(sq.udeg() == 1);
}

TEST_CASE("bivariate division undoes multiplication") {
    BiSeries a(10, 3), b(10, 3);
    for (int j = 0; j <= 3; ++j) {
        a.row(j) = PowerSeries::poly(10, {{j, 1}, {j + 2, -2}});
        b.row(j) = PowerSeries::poly(10, {{0, j == 0 ? 1 : 0}, {1, j + 1}});
    }
    auto q = bi_div(bi_mul(a, b), b);
    CHECK(q == a);
    BiSeries nonunit(10, 3);
    nonunit.row(1) = PowerSeries::constant(10, Rat(1));  // row 0 lacks a unit
    CHECK_THROWS_WITH_AS(bi_div(a, nonunit), "non-unit divisor", std::domain_error);
    BiSeries wrong_shape(10, 1);
    wrong_shape.row(0) = PowerSeries::constant(10, Rat(1));
    CHECK_THROWS_WITH_AS(bi_div(a, wrong_shape), "order mismatch", std::invalid_argument);
}

TEST_CASE("type-1 bu-monotone rational form specializes to p^4+p^5+2p^6+4p^7 at u=1") {
    const int N = 8, M = 2;
    BiSeries num(N, M), den(N, M);
    num.row(1) = PowerSeries::poly(N, {{4, 1}, {5, 1}});
    num.row(2) = PowerSeries::poly(N, {{6, -1}});
    den.row(0) = PowerSeries::poly(N, {{0, 1}, {2, -1}});
    den.row(1) = PowerSeries::poly(N, {{2, -2}, {3, -1}});
    den.row(2) = PowerSeries::poly(N, {{4, 1}});
    auto at1 = bi_at_u1(bi_div(num, den));
    CHECK(at1.at(4) == 1);
    CHECK(at1.at(5) == 1);
    CHECK(at1.at(6) == 2);
    CHECK(at1.at(7) == 4);
    CHECK(at1.is_zero(4));
}

TEST_CASE("formal u-derivative shifts rows and drops the degree bound") {
    BiSeries f(5, 2);  // 1 + p u + p^2 u^2
    f.row(0) = PowerSeries::poly(5, {{0, 1}});
    f.row(1) = PowerSeries::poly(5, {{1, 1}});
    f.row(2) = PowerSeries::poly(5, {{2, 1}});
    auto d = ps_diff_u(f);  // p + 2 p^2 u
    CHECK(d.udeg() == 1);
    CHECK(d.row(0) == PowerSeries::poly(5, {{1, 1}}));
    CHECK(d.row(1) == PowerSeries::poly(5, {{2, 2}}));
}

TEST_CASE("u-substitution sums rows against powers of the binding") {
    BiSeries f(6, 2);  // 1 + u + u^2 at u = p gives 1 + p + p^2
    for (int j = 0; j <= 2; ++j) f.row(j) = PowerSeries::constant(6, Rat(1));
    auto g = PowerSeries::monomial(6, 1);
    CHECK(ps_subst_u(f, g) == PowerSeries::poly(6, {{0, 1}, {1, 1}, {2, 1}}));
    auto wrong_order = PowerSeries::monomial(5, 1);
    CHECK_THROWS_WITH_AS(ps_subst_u(f, wrong_order), "order mismatch", std::invalid_argument);
}
