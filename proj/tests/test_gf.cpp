#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "polyia/gf.hpp"

using namespace polyia;

namespace {
const GfCatalog& catalog() {
    static GfCatalog cat = build_catalog();
    return cat;
}

void check_coeffs(const PowerSeries& s, int from, const std::vector<long>& expect) {
    for (size_t i = 0; i < expect.size(); ++i) {
        CAPTURE(from + static_cast<int>(i));
        CHECK(s.at(from + static_cast<int>(i)) == expect[i]);
    }
    CHECK(s.is_zero(from));  // nothing below the first tabulated coefficient
}
}  // namespace

TEST_CASE("baryiamond closed form") {
    check_coeffs(gf_baryiamond(catalog(), 17), 3,
                 {2, 3, 5, 9, 17, 32, 62, 121, 239, 477, 959, 1943, 3961, 8120});
}

TEST_CASE("baryiamond recursion fixed point equals the closed form at order 40") {
    auto rec = gf_baryiamond_recursive(40);
    auto closed = gf_baryiamond(catalog(), 40);
    CHECK(rec == closed);
    CHECK_THROWS_AS(gf_baryiamond_recursive(4), std::invalid_argument);
}

TEST_CASE("type-1 baryiamond series via closed form and kernel root") {
    check_coeffs(gf_kernel_B1(catalog(), 17), 4,
                 {1, 1, 2, 4, 7, 14, 27, 53, 106, 212, 429, 873, 1786});
}

TEST_CASE("column-convex closed form") {
    check_coeffs(gf_ccp(catalog(), 15), 3,
                 {2, 3, 6, 15, 40, 113, 330, 988, 3012, 9321, 29194, 92375});
    CHECK_THROWS_WITH_AS(gf_ccp(catalog(), 9), "order too small", std::invalid_argument);
}

TEST_CASE("column-convex conjugate-pair form matches the main form to order 31") {
    auto a = gf_ccp(catalog(), 31);
    auto b = gf_ccp_altform(catalog(), 31);
    CHECK(a == b);
    const long deep[] = {294834, 948102, 3068788, 9990188, 32688258, 107444431};
    for (int i = 0; i < 6; ++i) CHECK(a.at(15 + i) == deep[i]);
}

TEST_CASE("kernel root squares expand to 1, 1, 1/2, 9/8, 2, 239/128") {
    auto [up, um] = gf_u_pm_sq(catalog(), 60);
    CHECK(up.at(0) == 1);
    CHECK(up.at(1) == 1);
    CHECK(up.at(2) == make_rat(1, 2));
    CHECK(up.at(3) == make_rat(9, 8));
    CHECK(up.at(4) == 2);
    CHECK(up.at(5) == make_rat(239, 128));
    // The minus root square is the plus root square with the variable negated.
    for (int i = 0; i < 60; ++i) CHECK(um.at(i) == (i % 2 ? -up.at(i) : up.at(i)));
}

TEST_CASE("bu-monotone bivariate form: rows count by first-column up cells") {
    auto res = gf_Fbu1(catalog(), 26, 10);
    CHECK(res.report.all_pass());
    for (int j = 1; j <= 10; ++j) CHECK(res.series.row(j).valuation() == 2 * j + 2);
    CHECK(res.series.row(0).is_zero());
    check_coeffs(bi_at_u1(res.series), 4,
                 {1, 1, 2, 4, 6, 13, 20, 41, 67, 130, 222, 416, 729, 1340});
}

TEST_CASE("u-monotone scalar series") {
    auto res = gf_Fu1(catalog(), 15, 7);
    CHECK(res.report.all_pass());
    check_coeffs(res.at1, 4, {1, 1, 3, 7, 17, 45, 115, 309, 823, 2237, 6095});
    check_coeffs(catalog().series("Fu_sum", 15), 3,
                 {2, 3, 6, 14, 34, 86, 222, 584, 1556, 4192, 11392, 31190});
}

TEST_CASE("b-monotone scalar series") {
    auto res = gf_Fb1(catalog(), 15, 7);
    CHECK(res.report.all_pass());
    check_coeffs(res.at1, 4, {1, 1, 2, 5, 8, 21, 37, 89, 170, 384, 766});
    check_coeffs(catalog().series("Fb_sum", 15), 3,
                 {2, 3, 5, 10, 19, 39, 77, 159, 320, 662, 1347, 2789});
}

TEST_CASE("convex closed form and four-type assembly") {
    auto [f1, total] = gf_F1_convex(catalog(), 15);
    check_coeffs(f1, 4, {1, 1, 3, 8, 20, 58, 152, 427, 1155, 3211, 8843});
    check_coeffs(total, 3, {2, 3, 6, 15, 38, 102, 272, 739, 2006, 5498, 15114, 41813});
}

TEST_CASE("residual suite passes at the default orders") {
    auto report = residual_suite(catalog());
    for (const auto& c : report.checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.pass);
    }
    CHECK(report.all_pass());
    CHECK(report.checks.size() >= 20);
}

TEST_CASE("residual suite catches seeded defects (mutation self-test)") {
    // Perturbing the total convex form must trip the assembly check.
    GfCatalog bad = build_catalog(Mutation{"convex_F", 9, Rat(1)});
    auto rep = residual_suite(bad, 20, 12, 6);
    bool convex_failed = false;
    for (const auto& c : rep.checks)
        if (c.name == "convex_assembly") convex_failed = !c.pass;
    CHECK(convex_failed);

    // Perturbing the shared baryiamond radical must trip a baryiamond check.
    GfCatalog bad2 = build_catalog(Mutation{"_radB", 5, Rat(1)});
    auto rep2 = residual_suite(bad2, 20, 12, 6);
    bool bary_failed = false;
    for (const auto& c : rep2.checks)
        if (c.name.rfind("bary_", 0) == 0 && !c.pass) bary_failed = true;
    CHECK(bary_failed);

    CHECK_THROWS_AS(build_catalog(Mutation{"no_such_def", 3, Rat(1)}), std::invalid_argument);
}

TEST_CASE("doubled entries reject odd-power contamination") {
    GfCatalog bad = build_catalog(Mutation{"_Ch", 7, Rat(1)});
    CHECK_THROWS_AS(bad.series("ccp_C", 10), std::logic_error);
}

TEST_CASE("catalog entry lookup and evaluation policies") {
    CHECK_THROWS_WITH_AS(catalog().entry("nope"), "unknown gf entry: nope",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(catalog().series("Fbu1", 10), "bivariate entry: Fbu1",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(catalog().bi_series("ccp_C", 10, 4), "univariate entry: ccp_C",
                         std::invalid_argument);
    CHECK(catalog().has_entry("convex_F"));
    CHECK(catalog().entries().size() == 16);
    // Every entry evaluates cleanly at the default order.
    for (const auto& e : catalog().entries()) {
        if (e.bivariate)
            CHECK(catalog().bi_series(e.name, 40, 20).order() == 40);
        else
            CHECK(catalog().series(e.name, 40).order() == 40);
    }
}

TEST_CASE("counting entries have nonnegative integer coefficients to order 60") {
    for (const auto& e : catalog().entries()) {
        if (!e.counting) continue;
        if (e.bivariate) {
            auto s = catalog().bi_series(e.name, 60, 20);
            for (int j = 0; j <= s.udeg(); ++j)
                for (int n = 0; n < s.order(); ++n) {
                    const Rat& v = s.at(n, j);
                    CHECK(v.get_den() == 1);
                    CHECK(sgn(v) >= 0);
                }
        } else {
            auto s = catalog().series(e.name, 60);
            for (int n = 0; n < s.order(); ++n) {
                CAPTURE(e.name);
                CAPTURE(n);
                CHECK(s.at(n).get_den() == 1);
                CHECK(sgn(s.at(n)) >= 0);
            }
        }
    }
}

TEST_CASE("named environment reports unknown and cyclic bindings") {
    EvalEnv env;
    env.define("a", named("b") + lit(1));
    env.define("b", named("a"));
    CHECK_THROWS_WITH_AS(env.eval_p("a", 5), "cyclic binding: a", std::logic_error);
    CHECK_THROWS_WITH_AS(env.eval_p("zzz", 5), "unknown binding: zzz", std::invalid_argument);
    CHECK_THROWS_AS(env.define("a", pvar()), std::invalid_argument);
}

TEST_CASE("substituting a unit-killing series into a division is a blow-up") {
    EvalEnv env;
    Expr e = lit(1) / (lit(1) - uvar());
    CHECK_THROWS_WITH_AS(env.eval_subst_u(e, lit(1), 5), "division blow-up",
                         std::domain_error);
    // Outside a substitution the same shape is fine...
    BiSeries ok = env.eval_pu(e, 5, 3);
    CHECK(ok.row(0) == PowerSeries::constant(5, Rat(1)));
    // ...and u without a binding in a univariate evaluation is an error.
    CHECK_THROWS_WITH_AS(env.eval_p(uvar(), 5), "u outside bivariate context",
                         std::domain_error);
}

TEST_CASE("pull-based shift keeps full precision through nested shifts") {
    EvalEnv env;
    // (p^6 shifted down twice) must still carry order-8 information.
    Expr e = shift_down(shift_down(poly_p({{6, 1}, {9, 5}}), 3), 2);
    auto s = env.eval_p(e, 8);
    CHECK(s.at(1) == 1);
    CHECK(s.at(4) == 5);
}
