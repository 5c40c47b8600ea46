#include "polyia/gf.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace polyia {

namespace {

Expr P(int k) { return k == 1 ? pvar() : pow(pvar(), k); }

// First differing coefficient, or -1 when equal to `upto`.
int first_diff(const PowerSeries& a, const PowerSeries& b, int upto) {
    for (int i = 0; i < upto; ++i)
        if (a.at(i) != b.at(i)) return i;
    return -1;
}

}  // namespace

const CatalogEntry& GfCatalog::entry(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name) return e;
    throw std::invalid_argument("unknown gf entry: " + name);
}

bool GfCatalog::has_entry(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name) return true;
    return false;
}

PowerSeries GfCatalog::series(const std::string& name, int order) const {
    const CatalogEntry& e = entry(name);
    if (e.bivariate) throw std::invalid_argument("bivariate entry: " + name);
    if (!e.doubled) return env_.eval_p(e.def, order);
    // Doubled entries carry the perimeter-n count at twice the exponent; any
    // odd-power coefficient would mean the encoding broke parity.
    PowerSeries half = env_.eval_p(e.def, 2 * order);
    PowerSeries out(order);
    for (int i = 1; i < 2 * order; i += 2)
        if (half.at(i) != 0)
            throw std::logic_error("internal error: odd-power contamination in " + name);
    for (int n = 0; n < order; ++n) out.set(n, half.at(2 * n));
    return out;
}

BiSeries GfCatalog::bi_series(const std::string& name, int order, int udeg) const {
    const CatalogEntry& e = entry(name);
    if (!e.bivariate) throw std::invalid_argument("univariate entry: " + name);
    return env_.eval_pu(e.def, order, udeg);
}

GfCatalog build_catalog(const std::optional<Mutation>& mutation) {
    std::vector<std::pair<std::string, Expr>> defs;
    auto def = [&defs](const std::string& name, const Expr& e) { defs.emplace_back(name, e); };

    const Expr p = pvar();
    const Expr u = uvar();
    const Expr half = lit(Rat(1, 2));
    const Expr quarter = lit(Rat(1, 4));

    // --- baryiamonds (perimeter variable) ---------------------------------
    def("_quin", poly_p({{0, 1}, {1, -1}, {2, -2}, {3, -2}, {4, 1}, {5, -1}}));
    def("_radB", sqrt(poly_p({{0, 1}, {1, -1}}) * named("_quin")));
    def("baryiamond_B",
        shift_down(poly_p({{0, 1}, {1, 1}, {2, -2}, {3, -4}, {4, -3}, {5, 1}}) -
                       poly_p({{0, 1}, {1, 2}, {2, 1}}) * named("_radB"),
                   2) *
            half);
    def("baryiamond_B1",
        shift_down(poly_p({{0, 1}, {1, -1}, {2, -1}, {3, -1}}) - named("_radB"), 1) * half);
    def("_u0B", shift_down(poly_p({{0, 1}, {4, 1}}) - poly_p({{0, 1}, {1, 1}}) * named("_radB"), 2) /
                    (lit(2) * poly_p({{0, 1}, {1, 1}, {3, -1}})));

    // --- column-convex (half variable: perimeter n sits at degree 2n) -----
    def("_s1", sqrt(poly_p({{0, 1}, {2, 1}}) * poly_p({{0, 4}, {2, -3}, {4, 1}})));
    def("_big", poly_p({{1, 2}, {3, 1}, {5, 2}, {7, -2}, {11, 1}}));
    const Expr big_pref = named("_big") / (lit(2) * poly_p({{0, 1}, {2, -1}}));
    const Expr inner_head = lit(1) + P(2) * pow(poly_p({{0, 1}, {2, 1}}), 2);
    def("_s2", sqrt(inner_head + big_pref * (poly_p({{1, 1}, {3, -1}}) - named("_s1"))));
    def("_s2m", sqrt(inner_head + big_pref * (poly_p({{1, 1}, {3, -1}}) + named("_s1"))));
    const Expr q4_head = poly_p({{0, 2}, {2, 1}, {4, 2}, {6, -2}, {10, 1}});
    const Expr q4_s1 = poly_p({{1, 1}, {3, 1}, {5, -1}, {7, -1}});
    def("u_plus_sq",
        shift_down(q4_head - q4_s1 * named("_s1") - poly_p({{0, 2}, {4, -2}}) * named("_s2"), 4) *
            quarter);
    def("u_minus_sq",
        shift_down(q4_head + q4_s1 * named("_s1") - poly_p({{0, 2}, {4, -2}}) * named("_s2m"), 4) *
            quarter);
    def("_e1", named("u_plus_sq") + named("u_minus_sq"));
    def("_e2", named("u_plus_sq") * named("u_minus_sq"));
    def("_A3", poly_p({{0, -1}, {2, -1}, {4, 1}, {6, 2}}) -
                   P(4) * poly_p({{0, -1}, {4, 1}, {6, 1}}) * named("_e1") +
                   P(8) * poly_p({{0, -1}, {2, 2}, {4, 2}, {6, -2}, {8, -2}, {10, 1}, {12, 1}}) *
                       named("_e2"));
    def("_B3", poly_p({{0, 1}, {4, -2}}) - P(8) * (pow(named("_e1"), 2) - lit(2) * named("_e2")) -
                   lit(2) * P(4) * poly_p({{0, 1}, {6, 1}, {8, 1}, {10, -2}, {14, 1}}) * named("_e2") +
                   lit(2) * P(8) * named("_e1") +
                   P(8) * poly_p({{0, 2}, {2, 1}, {6, -2}, {10, 1}}) * named("_e2") * named("_e1") +
                   P(12) * poly_p({{0, -2}, {4, 1}}) * pow(named("_e2"), 2));
    def("_C1h", P(6) * (lit(1) - named("u_plus_sq")) * (lit(1) - named("u_minus_sq")) * named("_A3") /
                    (pow(poly_p({{0, 1}, {2, 1}}), 2) * named("_B3")));
    def("_Ch", P(6) + shift_down(pow(poly_p({{0, 1}, {2, 1}}), 2) * named("_C1h"), 2));

    // Conjugate-pair rewrite of the same series: the paired square roots
    // (whose squares are rational series) replace the nested radicals.
    def("_galt", P(2) * pow(poly_p({{0, 1}, {2, -1}}), 2) + lit(4));
    def("_sg", sqrt(named("_galt")));
    def("_Ralt", poly_p({{0, 2}, {2, 4}, {4, 5}, {6, 4}, {8, -2}, {12, 1}}));
    def("_Spre", named("_big") / poly_p({{0, 1}, {2, -1}}));
    def("_ab", pow(named("_Ralt"), 2) - pow(named("_Spre"), 2) * named("_galt"));
    def("_sab", sqrt(named("_ab")));
    def("_Pser", sqrt(lit(4) * named("_Ralt") + lit(4) * named("_sab")));
    def("_Qser", p * sqrt(shift_down(lit(4) * named("_Ralt") - lit(4) * named("_sab"), 2)));
    def("_Xpoly",
        poly_p({{0, -1}, {4, 1}}) *
            poly_p({{0, 32},  {2, 80},  {4, -62}, {6, -234}, {8, -3},  {10, 250}, {12, 54},
                    {14, -138}, {16, -19}, {18, 54}, {20, 2},  {22, -12}, {24, 4}}));
    def("_Ypoly",
        poly_p({{1, 1}, {3, 1}}) * pow(poly_p({{0, 1}, {2, -1}}), 2) *
            poly_p({{0, 32}, {2, 56}, {4, -28}, {6, -99}, {8, -22}, {10, 63}, {12, 30},
                    {14, -10}, {16, -4}, {18, 4}}));
    def("_a00alt",
        poly_p({{0, 1}, {2, -1}}) *
            poly_p({{0, 32},  {2, 72},   {4, -112}, {6, -245}, {8, 181}, {10, 449}, {12, -57},
                    {14, -377}, {16, -21}, {18, 143}, {20, 3},  {22, -34}, {24, 14}}));
    def("_a11alt", poly_p({{2, 1}, {4, 1}}) * pow(poly_p({{0, 1}, {2, -1}}), 2) *
                       poly_p({{0, -4}, {2, -3}, {4, 5}, {6, 4}, {10, 1}, {12, 2}}));
    def("_denalt",
        lit(2) * poly_p({{0, 64},  {2, 48},  {4, -164}, {6, -155}, {8, 152}, {10, 182},
                         {12, -76}, {14, -75}, {16, 32},  {18, 20},  {20, -16}, {22, 4}}));
    def("_Calth", (named("_a00alt") +
                   (named("_Xpoly") * named("_Pser") + named("_Ypoly") * named("_sg") * named("_Qser")) *
                       quarter +
                   named("_a11alt") * named("_sab")) /
                      named("_denalt"));

    // --- convex subclasses (perimeter variable) ---------------------------
    def("_radM", sqrt(poly_p({{0, 1}, {1, -2}, {2, -3}})));
    def("_radC", sqrt(poly_p({{0, 1}, {2, -4}})));
    def("_u0m", shift_down(poly_p({{0, 1}, {1, -1}}) - named("_radM"), 2) * half);
    def("_u0c", shift_down(lit(1) - named("_radC"), 2) * half);

    def("Fbu1", P(4) * u * (lit(1) + p - P(2) * u) /
                    (poly_p({{0, 1}, {2, -1}}) + poly_p({{2, -2}, {3, -1}}) * u + P(4) * pow(u, 2)));
    def("_Fbu2", poly_p({{3, 1}}) + p * named("Fbu1"));
    def("_Fbu1_at1", poly_p({{4, 1}, {5, 1}, {6, -1}}) / poly_p({{0, 1}, {2, -3}, {3, -1}, {4, 1}}));
    def("_Fbu2_at1", poly_p({{3, 1}}) + p * named("_Fbu1_at1"));
    def("_Fbu_sum", poly_p({{3, 1}}) + lit(2) * named("_Fbu1_at1") + p * named("_Fbu1_at1") +
                        shift_down(named("_Fbu1_at1"), 1));

    def("Fu1_at1", poly_p({{3, 1}}) *
                       (poly_p({{0, -1}, {1, 1}, {2, 3}}) + poly_p({{0, 1}, {1, 1}}) * named("_radM")) /
                       (poly_p({{0, 1}, {1, -2}, {2, -4}}) * poly_p({{0, 1}, {1, 1}})));
    const Expr kden1 = lit(1) + poly_p({{0, -1}, {1, 1}}) * u + P(2) * pow(u, 2);
    const Expr kden2 =
        poly_p({{0, 1}, {2, -1}}) + poly_p({{2, -2}, {3, -1}}) * u + P(4) * pow(u, 2);
    def("Fu1", (lit(-2) * P(4) * poly_p({{0, 1}, {1, 1}}) +
                P(4) * poly_p({{0, 1}, {1, 1}}) * (named("_radM") + poly_p({{0, 1}, {1, -1}})) * u) /
                       (poly_p({{0, 1}, {1, -2}, {2, -4}}) * kden1) -
                   P(2) +
                   (P(2) * poly_p({{0, -1}, {1, 2}, {2, 3}, {3, -4}, {4, -2}, {5, 2}}) +
                    P(2) * poly_p({{2, 1}, {3, -2}, {4, -3}, {5, 1}}) * u) /
                       (kden2 * poly_p({{0, -1}, {1, 2}, {2, 4}})));
    def("Fu_sum", P(2) *
                      (poly_p({{0, -1}, {1, 1}, {2, 2}, {3, -1}}) +
                       pow(poly_p({{0, 1}, {1, 1}}), 2) * named("_radM")) /
                      poly_p({{0, 1}, {1, -2}, {2, -4}}));

    def("Fb1_at1",
        poly_p({{3, 1}}) *
            (poly_p({{0, -1}, {2, 2}}) * poly_p({{0, -1}, {1, -1}, {2, 5}, {3, 6}, {5, 1}}) -
             poly_p({{0, 1}, {1, 2}}) * poly_p({{0, 1}, {1, -1}, {2, -2}, {3, 1}}) *
                 poly_p({{0, 1}, {1, 2}, {2, 1}}) * named("_radC")) /
            (lit(2) * poly_p({{0, 1}, {1, 1}}) * poly_p({{0, -1}, {1, -1}, {2, 4}, {3, 5}}) *
             poly_p({{0, 1}, {1, -1}, {2, -2}, {3, 1}})));
    def("_den5p", poly_p({{0, -1}, {1, -1}, {2, 4}, {3, 5}}));
    const Expr kdenC = lit(1) - u + P(2) * pow(u, 2);
    const Expr p5pp = P(5) * poly_p({{0, 1}, {1, 1}}) * poly_p({{0, 1}, {1, 2}});
    def("Fb1", neg(p5pp * named("_radC") * u) / (kdenC * lit(2) * named("_den5p")) +
                   (lit(2) * p5pp - p5pp * u) / (kdenC * lit(2) * named("_den5p")) - P(2) +
                   (P(2) * poly_p({{0, -1}, {1, -1}, {2, 5}, {3, 5}, {4, -7}, {5, -6}, {6, 3}, {7, 2}}) +
                    P(2) * poly_p({{2, 1}, {3, 1}, {4, -4}, {5, -5}, {6, 1}, {7, 2}, {8, 1}}) * u) /
                       (kden2 * named("_den5p")));
    def("Fb_sum", P(2) *
                      (poly_p({{0, 1}, {2, -7}, {3, -6}, {4, 2}}) -
                       poly_p({{0, 1}, {1, 2}}) * poly_p({{0, 1}, {1, 2}, {2, 1}}) * named("_radC")) /
                      (lit(2) * named("_den5p")));

    def("_den_a", poly_p({{0, -1}, {1, 2}, {2, 4}}) * poly_p({{0, -1}, {1, 4}, {2, 1}, {3, -7}, {5, 4}}));
    def("_den_b", lit(2) * poly_p({{0, 1}, {1, 1}, {2, -2}, {3, -1}, {4, 2}}) *
                      poly_p({{0, -1}, {1, -1}, {2, 4}, {3, 5}}) * poly_p({{0, -1}, {1, 2}}));
    def("_den10", poly_p({{0, 1}, {1, -2}, {2, -5}, {3, 10}, {4, 9}, {5, -20}, {6, -8}, {7, 19},
                          {8, 1}, {9, -8}, {10, 4}}));
    def("_den5", poly_p({{0, -1}, {1, 4}, {2, 1}, {3, -7}, {5, 4}}));
    def("_den4", poly_p({{0, 1}, {1, 1}, {2, -2}, {3, -1}, {4, 2}}));
    def("F1_at1",
        P(4) * poly_p({{0, 2}, {1, -2}, {2, -3}, {3, 3}, {4, 1}, {5, -2}}) * (p - named("_radM")) /
                named("_den_a") +
            P(6) * poly_p({{0, -1}, {2, 1}}) * poly_p({{0, 1}, {1, 2}}) * named("_radC") /
                named("_den_b") +
            (lit(Rat(-1577, 1000)) + lit(Rat(-13, 50)) * p + lit(Rat(-9, 5)) * P(2)) +
            lit(1) / poly_p({{0, 1}, {1, 1}}) +
            poly_p({{0, 63}, {1, -20}, {2, -459}, {3, -4}, {4, 1251}, {5, 210}, {6, -1764},
                    {7, -671}, {8, 1009}, {9, 570}}) /
                (lit(88) * named("_den10")) +
            poly_p({{0, -3}, {1, 8}, {2, -1}, {3, 7}, {4, 24}}) / (lit(88) * named("_den5")) +
            poly_p({{0, 24}, {1, 19}, {2, -1}}) / (lit(500) * named("_den5p")) +
            poly_p({{0, -1}, {1, -1}, {2, 2}, {3, 1}}) / (lit(8) * named("_den4")));
    def("convex_F",
        neg(poly_p({{0, 1}, {1, 2}}) * poly_p({{0, 1}, {1, -2}, {2, 1}}) *
            poly_p({{0, 1}, {1, 3}, {2, 3}, {3, 1}}) * P(3) * named("_radM")) /
                named("_den_a") +
            poly_p({{0, 1}, {1, 2}}) * poly_p({{0, -1}, {1, 1}}) * poly_p({{0, 1}, {1, 2}, {2, 1}}) *
                P(5) * named("_radC") / named("_den_b") +
            (lit(Rat(-15071, 8000)) + lit(Rat(-103, 50)) * p + lit(Rat(-67, 40)) * P(2) +
             lit(Rat(1, 8)) * P(3)) +
            poly_p({{0, 30}, {1, 35}}) / (lit(352) * poly_p({{0, -1}, {1, 2}, {2, 4}})) +
            poly_p({{0, 169}, {1, -164}, {2, -1093}, {3, 680}, {4, 2721}, {5, -1050}, {6, -3632},
                    {7, 275}, {8, 2083}, {9, 318}}) /
                (lit(88) * named("_den10")) +
            poly_p({{0, -149}, {1, 214}, {2, 537}, {3, 3}, {4, -238}}) / (lit(704) * named("_den5")) +
            poly_p({{0, 19}, {1, 114}, {2, 119}}) / (lit(500) * named("_den5p")) +
            poly_p({{0, -1}, {1, -1}, {2, 2}, {3, 3}}) / (lit(8) * named("_den4")));

    GfCatalog cat;
    bool mutated = false;
    for (auto& [name, e] : defs) {
        Expr bound = e;
        if (mutation && mutation->def_name == name) {
            bound = bound + lit(mutation->delta) * pow(pvar(), mutation->degree);
            mutated = true;
        }
        cat.env_.define(name, bound);
    }
    if (mutation && !mutated)
        throw std::invalid_argument("unknown binding: " + mutation->def_name);

    cat.entries_ = {
        {"baryiamond_B", "baryiamond_B", false, false, true},
        {"baryiamond_B1", "baryiamond_B1", false, false, true},
        {"ccp_C", "_Ch", false, true, true},
        {"ccp_C1", "_C1h", false, true, true},
        {"ccp_altform", "_Calth", false, true, true},
        {"u_plus_sq", "u_plus_sq", false, false, false},
        {"u_minus_sq", "u_minus_sq", false, false, false},
        {"Fbu1", "Fbu1", true, false, true},
        {"Fu1", "Fu1", true, false, true},
        {"Fu1_at1", "Fu1_at1", false, false, true},
        {"Fu_sum", "Fu_sum", false, false, true},
        {"Fb1", "Fb1", true, false, true},
        {"Fb1_at1", "Fb1_at1", false, false, true},
        {"Fb_sum", "Fb_sum", false, false, true},
        {"F1_at1", "F1_at1", false, false, true},
        {"convex_F", "convex_F", false, false, true},
    };
    return cat;
}

bool ResidualReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string ResidualReport::to_string() const {
    std::string out;
    for (const auto& c : checks)
        out += (c.pass ? "PASS " : "FAIL ") + c.name + (c.detail.empty() ? "" : ": " + c.detail) + "\n";
    return out;
}

namespace {

// --- kernel polynomials and residual expressions (u-bearing) --------------

// Cleared kernel of the baryiamond column equation.
Expr bary_kernel() {
    const Expr p = pvar(), u = uvar();
    Expr one_m_p2u = lit(1) - pow(p, 2) * u;
    Expr one_m_u = lit(1) - u;
    Expr p2_1pu = pow(p, 2) * (lit(1) + p * u);
    return one_m_p2u * one_m_u - p2_1pu * one_m_u + p2_1pu * one_m_p2u;
}

// Cleared kernel of the u-monotone equation (Motzkin-root kernel).
Expr motzkin_kernel() {
    const Expr p = pvar(), u = uvar();
    return (lit(1) - u) * (lit(1) - pow(p, 2) * u) + p * pow(lit(1) + p * u, 2);
}

// Cleared kernel of the b-monotone equation (Catalan-root kernel).
Expr catalan_kernel() {
    const Expr p = pvar(), u = uvar();
    return (lit(1) - u) * (lit(1) - pow(p, 2) * u) + pow(p, 2) * u;
}

// Cleared quartic whose roots (in w = u^2) are the two root squares of the
// column-convex kernel; written in the half variable.
Expr ccp_quartic() {
    const Expr p = pvar(), w = uvar();
    Expr lhs = pow((lit(1) - pow(p, 4) * w) * (lit(1) - w), 2);
    Expr rhs = pow(p, 2) * w * pow(lit(1) + pow(p, 2) * w, 2) * pow(lit(1) - pow(p, 4), 2);
    return lhs - rhs;
}

// Functional-equation residual of the bu-monotone system.
Expr bu_residual() {
    const Expr p = pvar(), u = uvar();
    Expr one_m_p2u = lit(1) - pow(p, 2) * u;
    return named("Fbu1") * pow(one_m_p2u, 2) - pow(p, 4) * u * one_m_p2u -
           pow(p, 2) * (named("Fbu1") + u * named("_Fbu2"));
}

// Functional-equation residual of the u-monotone system, cleared by
// (1-u)(1-p^2 u)^2.
Expr u_residual() {
    const Expr p = pvar(), u = uvar();
    Expr one_m_u = lit(1) - u;
    Expr one_m_p2u = lit(1) - pow(p, 2) * u;
    Expr lhs = one_m_u * pow(one_m_p2u, 2) * named("Fu1");
    Expr r1 = pow(p, 4) * (lit(1) + p) * u * one_m_u * one_m_p2u;
    Expr r2 = pow(p, 4) * u * one_m_u * (named("Fbu1") + u * named("_Fbu2"));
    Expr r3 = p * one_m_p2u *
              (pow(lit(1) + p * u, 2) * named("Fu1") - u * pow(lit(1) + p, 2) * named("Fu1_at1"));
    return lhs - r1 - r2 + r3;
}

// Functional-equation residual of the b-monotone system.
Expr b_residual() {
    const Expr p = pvar(), u = uvar();
    Expr one_m_u = lit(1) - u;
    Expr one_m_p2u = lit(1) - pow(p, 2) * u;
    Expr lhs = one_m_u * pow(one_m_p2u, 2) * named("Fb1");
    Expr q1 = pow(p, 4) * u * one_m_u * one_m_p2u;
    Expr q2 = pow(p, 4) * u * one_m_u * (named("Fbu1") + u * named("_Fbu2"));
    Expr q3 = pow(p, 2) * u * one_m_p2u *
              ((named("Fb1_at1") + named("_Fbu2_at1")) - (named("Fb1") + u * named("_Fbu2")));
    return lhs - q1 - q2 - q3;
}

ResidualCheck run_check(const std::string& name, const std::function<std::string()>& body) {
    ResidualCheck c{name, false, ""};
    try {
        c.detail = body();  // empty string = pass, otherwise failure detail
        c.pass = c.detail.empty();
    } catch (const std::exception& ex) {
        c.pass = false;
        c.detail = ex.what();
    }
    return c;
}

std::string zero_or_detail(const PowerSeries& s, const std::string& what) {
    if (s.is_zero()) return "";
    return what + " nonzero from p^" + std::to_string(s.valuation());
}

std::string zero_or_detail(const BiSeries& s, const std::string& what) {
    for (int j = 0; j <= s.udeg(); ++j)
        if (!s.row(j).is_zero())
            return what + " nonzero at u^" + std::to_string(j) + " p^" +
                   std::to_string(s.row(j).valuation());
    return "";
}

std::string equal_or_detail(const PowerSeries& a, const PowerSeries& b, int upto,
                            const std::string& what) {
    int d = first_diff(a, b, upto);
    if (d < 0) return "";
    return what + " differ at p^" + std::to_string(d) + " (" + rat_str(a.at(d)) + " vs " +
           rat_str(b.at(d)) + ")";
}

std::vector<ResidualCheck> residual_checks(const GfCatalog& cat, int kernel_order,
                                           int bi_order, int bi_udeg) {
    const EvalEnv& env = cat.env();
    const int N = kernel_order, L = bi_order, M = bi_udeg;
    std::vector<ResidualCheck> out;

    out.push_back(run_check("bary_kernel_root", [&] {
        return zero_or_detail(env.eval_subst_u(bary_kernel(), named("_u0B"), N), "kernel at root");
    }));
    out.push_back(run_check("bary_kernel_solve", [&] {
        Expr solved = neg(pow(pvar(), 2) * (lit(1) - named("_u0B"))) /
                      (lit(1) - pow(pvar(), 2) * named("_u0B"));
        return equal_or_detail(env.eval_p(solved, N), cat.series("baryiamond_B1", N), N,
                               "kernel solve vs closed form");
    }));
    out.push_back(run_check("bary_assembly", [&] {
        // p (B - p^3) == (1 + p)^2 B1: the four column types assemble the
        // total from the type-1 series.
        Expr lhs = pvar() * (named("baryiamond_B") - poly_p({{3, 1}}));
        Expr rhs = pow(lit(1) + pvar(), 2) * named("baryiamond_B1");
        return zero_or_detail(env.eval_p(lhs - rhs, N), "assembly residual");
    }));
    out.push_back(run_check("bary_recursion_agreement", [&] {
        return equal_or_detail(gf_baryiamond_recursive(40), cat.series("baryiamond_B", 40), 40,
                               "recursion vs closed form");
    }));

    for (bool plus : {true, false}) {
        out.push_back(run_check(plus ? "ccp_quartic_root_plus" : "ccp_quartic_root_minus", [&] {
            Expr root = named(plus ? "u_plus_sq" : "u_minus_sq");
            return zero_or_detail(env.eval_subst_u(ccp_quartic(), root, N), "quartic at root");
        }));
    }
    out.push_back(run_check("ccp_root_parity", [&] {
        PowerSeries up = cat.series("u_plus_sq", N);
        PowerSeries um = cat.series("u_minus_sq", N);
        for (int i = 0; i < N; ++i) {
            Rat expect = i % 2 == 0 ? up.at(i) : Rat(-up.at(i));
            if (um.at(i) != expect)
                return std::string("sign-flip relation differs at degree ") + std::to_string(i);
        }
        return std::string();
    }));
    out.push_back(run_check("ccp_altform_agreement", [&] {
        return equal_or_detail(cat.series("ccp_altform", 40), cat.series("ccp_C", 40), 40,
                               "conjugate-pair form vs main form");
    }));

    out.push_back(run_check("bu_system_residual", [&] {
        return zero_or_detail(env.eval_pu(bu_residual(), L, M), "system residual");
    }));
    out.push_back(run_check("u_at1_scalar", [&] {
        PowerSeries at1 = bi_at_u1(cat.bi_series("Fu1", L, M));
        int safe = std::min(L, 2 * M + 4);  // rows above u^M start at p^{2M+4}
        return equal_or_detail(at1, cat.series("Fu1_at1", L), safe, "u=1 specialization");
    }));
    out.push_back(run_check("u_system_residual", [&] {
        return zero_or_detail(env.eval_pu(u_residual(), L, M), "system residual");
    }));
    out.push_back(run_check("motzkin_root_annihilates", [&] {
        return zero_or_detail(env.eval_subst_u(motzkin_kernel(), named("_u0m"), N),
                              "kernel at root");
    }));
    out.push_back(run_check("motzkin_root_series", [&] {
        PowerSeries u0 = env.eval_p("_u0m", std::min(N, 12));
        const long expect[] = {1, 1, 2, 4, 9, 21, 51, 127};
        for (int i = 0; i < 8 && i < u0.order(); ++i)
            if (u0.at(i) != expect[i]) return std::string("root series differs at p^") + std::to_string(i);
        return std::string();
    }));
    out.push_back(run_check("u_sum_assembly", [&] {
        Expr lhs = pvar() * (named("Fu_sum") - poly_p({{3, 1}}));
        Expr rhs = pow(lit(1) + pvar(), 2) * named("Fu1_at1");
        return zero_or_detail(env.eval_p(lhs - rhs, N), "assembly residual");
    }));

    out.push_back(run_check("b_at1_scalar", [&] {
        PowerSeries at1 = bi_at_u1(cat.bi_series("Fb1", L, M));
        int safe = std::min(L, 2 * M + 4);
        return equal_or_detail(at1, cat.series("Fb1_at1", L), safe, "u=1 specialization");
    }));
    out.push_back(run_check("b_system_residual", [&] {
        return zero_or_detail(env.eval_pu(b_residual(), L, M), "system residual");
    }));
    out.push_back(run_check("catalan_root_annihilates", [&] {
        return zero_or_detail(env.eval_subst_u(catalan_kernel(), named("_u0c"), N),
                              "kernel at root");
    }));
    out.push_back(run_check("catalan_root_series", [&] {
        PowerSeries u0 = env.eval_p("_u0c", std::min(N, 10));
        const long expect[] = {1, 0, 1, 0, 2, 0, 5, 0, 14};
        for (int i = 0; i < 9 && i < u0.order(); ++i)
            if (u0.at(i) != expect[i]) return std::string("root series differs at p^") + std::to_string(i);
        return std::string();
    }));
    out.push_back(run_check("b_sum_assembly", [&] {
        Expr lhs = pvar() * named("Fb_sum");
        Expr rhs = (lit(1) + pvar()) * named("Fb1_at1") +
                   pvar() * (poly_p({{3, 1}}) + (lit(1) + pvar()) * named("_Fbu1_at1"));
        return zero_or_detail(env.eval_p(lhs - rhs, N), "assembly residual");
    }));

    out.push_back(run_check("bu_at1_scalar", [&] {
        PowerSeries at1 = bi_at_u1(cat.bi_series("Fbu1", L, M));
        int safe = std::min(L, 2 * M + 4);
        return equal_or_detail(at1, env.eval_p("_Fbu1_at1", L), safe, "u=1 specialization");
    }));
    out.push_back(run_check("convex_assembly", [&] {
        Expr lhs = pvar() * named("convex_F");
        Expr rhs = (lit(1) + pvar()) * named("F1_at1") +
                   pvar() * (poly_p({{3, 1}}) + pvar() * named("Fu1_at1")) +
                   pvar() * named("Fu1_at1");
        return zero_or_detail(env.eval_p(lhs - rhs, N), "assembly residual");
    }));

    return out;
}

void throw_if_failed(const ResidualReport& report, const std::string& op) {
    for (const auto& c : report.checks)
        if (!c.pass)
            throw std::logic_error(op + " residual check failed: " + c.name +
                                   (c.detail.empty() ? "" : " (" + c.detail + ")"));
}

}  // namespace

PowerSeries gf_baryiamond(const GfCatalog& cat, int order) {
    if (order < 6) throw std::invalid_argument("order too small");
    return cat.series("baryiamond_B", order);
}

PowerSeries gf_baryiamond_recursive(int order) {
    if (order < 6) throw std::invalid_argument("order too small");
    // Work one order deeper so the final division by p keeps full precision.
    const int n = order + 1;
    const int kmax = n / 2;
    std::vector<PowerSeries> fam(static_cast<size_t>(kmax) + 1, PowerSeries(n));
    const PowerSeries single_d = PowerSeries::monomial(n, 3);
    const PowerSeries pmono = PowerSeries::monomial(n, 1);

    bool stable = false;
    for (int it = 0; it < n && !stable; ++it) {
        stable = true;
        std::vector<PowerSeries> next(static_cast<size_t>(kmax) + 1, PowerSeries(n));
        for (int k = 1; k <= kmax; ++k) {
            // A type-1 column of k up-cells alone contributes p^{2k+2}; a
            // right neighbour of j levels attaches in one bottom-aligned way,
            // adding 2k+2-2j boundary edges when it fits inside (j <= k) and
            // 2 when it extends above.
            PowerSeries acc = PowerSeries::monomial(n, 2 * k + 2);
            for (int j = 1; j <= kmax; ++j) {
                PowerSeries tail =
                    j == 1 ? ps_add(fam[1], single_d)
                           : ps_add(fam[static_cast<size_t>(j)], ps_mul(pmono, fam[static_cast<size_t>(j) - 1]));
                int w = j <= k ? 2 * k + 2 - 2 * j : 2;
                acc = ps_add(acc, ps_mul(PowerSeries::monomial(n, w), tail));
            }
            if (acc != fam[static_cast<size_t>(k)]) stable = false;
            next[static_cast<size_t>(k)] = std::move(acc);
        }
        fam = std::move(next);
    }
    if (!stable) throw std::logic_error("internal error: recursion did not converge");

    PowerSeries type1(n);
    for (int k = 1; k <= kmax; ++k) type1 = ps_add(type1, fam[static_cast<size_t>(k)]);
    // Total over the four first-column types: p^3 + (2 + p + 1/p) * type1.
    PowerSeries total = ps_add(ps_add(single_d, ps_scale(type1, Rat(2))), ps_mul(pmono, type1));
    return ps_add(ps_truncate(total, order), ps_shift_down(type1, 1));
}

PowerSeries gf_kernel_B1(const GfCatalog& cat, int order) {
    if (order < 6) throw std::invalid_argument("order too small");
    PowerSeries direct = cat.series("baryiamond_B1", order);
    Expr solved = neg(pow(pvar(), 2) * (lit(1) - named("_u0B"))) /
                  (lit(1) - pow(pvar(), 2) * named("_u0B"));
    PowerSeries via_root = cat.env().eval_p(solved, order);
    int d = first_diff(direct, via_root, order);
    if (d >= 0)
        throw std::logic_error("kernel mismatch at p^" + std::to_string(d) + " (" +
                               rat_str(direct.at(d)) + " vs " + rat_str(via_root.at(d)) + ")");
    return direct;
}

std::pair<PowerSeries, PowerSeries> gf_u_pm_sq(const GfCatalog& cat, int order) {
    if (order < 6) throw std::invalid_argument("order too small");
    PowerSeries up = cat.series("u_plus_sq", order);
    PowerSeries um = cat.series("u_minus_sq", order);
    for (int i = 0; i < order; ++i) {
        Rat expect = i % 2 == 0 ? up.at(i) : Rat(-up.at(i));
        if (um.at(i) != expect)
            throw std::logic_error("kernel root check failed: sign-flip relation at degree " +
                                   std::to_string(i));
    }
    for (bool plus : {true, false}) {
        PowerSeries res = cat.env().eval_subst_u(ccp_quartic(),
                                                 named(plus ? "u_plus_sq" : "u_minus_sq"), order);
        if (!res.is_zero())
            throw std::logic_error(std::string("kernel root check failed: quartic residual (") +
                                   (plus ? "plus" : "minus") + ") from p^" +
                                   std::to_string(res.valuation()));
    }
    return {up, um};
}

PowerSeries gf_ccp(const GfCatalog& cat, int order) {
    if (order < 10) throw std::invalid_argument("order too small");
    return cat.series("ccp_C", order);
}

PowerSeries gf_ccp_altform(const GfCatalog& cat, int order) {
    if (order < 10) throw std::invalid_argument("order too small");
    return cat.series("ccp_altform", order);
}

Fbu1Result gf_Fbu1(const GfCatalog& cat, int order, int udeg) {
    if (order < 8) throw std::invalid_argument("order too small");
    Fbu1Result out{cat.bi_series("Fbu1", order, udeg), {}};
    out.report.checks.push_back(run_check("bu_system_residual", [&] {
        return zero_or_detail(cat.env().eval_pu(bu_residual(), order, udeg), "system residual");
    }));
    out.report.checks.push_back(run_check("bu_at1_scalar", [&] {
        int safe = std::min(order, 2 * udeg + 4);
        return equal_or_detail(bi_at_u1(out.series), cat.env().eval_p("_Fbu1_at1", order), safe,
                               "u=1 specialization");
    }));
    throw_if_failed(out.report, "bu-monotone");
    return out;
}

ScalarPairResult gf_Fu1(const GfCatalog& cat, int order, int udeg) {
    if (order < 8) throw std::invalid_argument("order too small");
    ScalarPairResult out{cat.bi_series("Fu1", order, udeg), cat.series("Fu1_at1", order), {}};
    out.report.checks.push_back(run_check("u_at1_scalar", [&] {
        int safe = std::min(order, 2 * udeg + 4);
        return equal_or_detail(bi_at_u1(out.series), out.at1, safe, "u=1 specialization");
    }));
    out.report.checks.push_back(run_check("u_system_residual", [&] {
        return zero_or_detail(cat.env().eval_pu(u_residual(), order, udeg), "system residual");
    }));
    out.report.checks.push_back(run_check("motzkin_root_annihilates", [&] {
        return zero_or_detail(cat.env().eval_subst_u(motzkin_kernel(), named("_u0m"), order),
                              "kernel at root");
    }));
    out.report.checks.push_back(run_check("u_sum_assembly", [&] {
        Expr lhs = pvar() * (named("Fu_sum") - poly_p({{3, 1}}));
        Expr rhs = pow(lit(1) + pvar(), 2) * named("Fu1_at1");
        return zero_or_detail(cat.env().eval_p(lhs - rhs, order), "assembly residual");
    }));
    throw_if_failed(out.report, "u-monotone");
    return out;
}

ScalarPairResult gf_Fb1(const GfCatalog& cat, int order, int udeg) {
    if (order < 8) throw std::invalid_argument("order too small");
    ScalarPairResult out{cat.bi_series("Fb1", order, udeg), cat.series("Fb1_at1", order), {}};
    out.report.checks.push_back(run_check("b_at1_scalar", [&] {
        int safe = std::min(order, 2 * udeg + 4);
        return equal_or_detail(bi_at_u1(out.series), out.at1, safe, "u=1 specialization");
    }));
    out.report.checks.push_back(run_check("b_system_residual", [&] {
        return zero_or_detail(cat.env().eval_pu(b_residual(), order, udeg), "system residual");
    }));
    out.report.checks.push_back(run_check("catalan_root_annihilates", [&] {
        return zero_or_detail(cat.env().eval_subst_u(catalan_kernel(), named("_u0c"), order),
                              "kernel at root");
    }));
    out.report.checks.push_back(run_check("b_sum_assembly", [&] {
        Expr lhs = pvar() * named("Fb_sum");
        Expr rhs = (lit(1) + pvar()) * named("Fb1_at1") +
                   pvar() * (poly_p({{3, 1}}) + (lit(1) + pvar()) * named("_Fbu1_at1"));
        return zero_or_detail(cat.env().eval_p(lhs - rhs, order), "assembly residual");
    }));
    throw_if_failed(out.report, "b-monotone");
    return out;
}

std::pair<PowerSeries, PowerSeries> gf_F1_convex(const GfCatalog& cat, int order) {
    if (order < 12) throw std::invalid_argument("order too small");
    PowerSeries f1 = cat.series("F1_at1", order);
    PowerSeries closed = cat.series("convex_F", order);
    // Assemble the total from the four first-column types and compare with
    // the printed closed form: F = F1 + (p^3 + p Fu1_at1) + F1/p + Fu1_at1.
    Expr assembled = named("F1_at1") + poly_p({{3, 1}}) + pvar() * named("Fu1_at1") +
                     shift_down(named("F1_at1"), 1) + named("Fu1_at1");
    PowerSeries asm_series = cat.env().eval_p(assembled, order);
    int d = first_diff(asm_series, closed, order);
    if (d >= 0)
        throw std::logic_error("assembly mismatch at p^" + std::to_string(d) + " (" +
                               rat_str(asm_series.at(d)) + " vs " + rat_str(closed.at(d)) + ")");
    return {f1, closed};
}

ResidualReport residual_suite(const GfCatalog& cat, int kernel_order, int bi_order,
                              int bi_udeg) {
    ResidualReport report;
    report.checks = residual_checks(cat, kernel_order, bi_order, bi_udeg);
    return report;
}

}  // namespace polyia
