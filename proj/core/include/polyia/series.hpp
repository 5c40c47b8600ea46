#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "polyia/rational.hpp"

namespace polyia {

// Truncated formal power series over Rat. The truncation order N is explicit
// state: a PowerSeries of order N stores coefficients of p^0..p^{N-1}, and
// arithmetic never reads or invents anything beyond that. Mixing orders is a
// contract violation ("order mismatch"), never a silent truncation.
class PowerSeries {
public:
    explicit PowerSeries(int order);
    static PowerSeries constant(int order, const Rat& value);
    static PowerSeries monomial(int order, int degree, const Rat& value = Rat(1));
    // Sparse polynomial helper: {degree, coefficient} pairs.
    static PowerSeries poly(int order, std::initializer_list<std::pair<int, long>> terms);

    int order() const { return static_cast<int>(c_.size()); }
    const Rat& at(int n) const { return c_.at(static_cast<size_t>(n)); }
    void set(int n, const Rat& v) { c_.at(static_cast<size_t>(n)) = v; }

    // True iff all coefficients below `upto` (default: full order) vanish.
    bool is_zero(int upto = -1) const;
    // Index of the first nonzero coefficient; order() if identically zero.
    int valuation() const;

    bool operator==(const PowerSeries&) const = default;

private:
    std::vector<Rat> c_;
};

PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b);
PowerSeries ps_sub(const PowerSeries& a, const PowerSeries& b);
PowerSeries ps_neg(const PowerSeries& a);
PowerSeries ps_scale(const PowerSeries& a, const Rat& s);
PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b);
// Requires b(0) != 0; error "non-unit divisor".
PowerSeries ps_div(const PowerSeries& a, const PowerSeries& b);
// Requires a(0) a nonzero perfect rational square; error "non-square constant
// term". Sign convention: s(0) = +sqrt(a(0)).
PowerSeries ps_sqrt(const PowerSeries& a);
// Divide by p^m. The result has order N-m; coefficients of p^0..p^{m-1} must
// vanish (error "shift below valuation").
PowerSeries ps_shift_down(const PowerSeries& a, int m);
PowerSeries ps_truncate(const PowerSeries& a, int order);

// Truncated bivariate series: an (M+1)-row grid of PowerSeries, row j holding
// the p-series coefficient of u^j. Lives in the quotient ring of series
// modulo u^{M+1}: products silently drop u-degrees above M (that is the ring,
// not an approximation), while the p-order contract matches PowerSeries.
class BiSeries {
public:
    BiSeries(int order, int udeg);
    static BiSeries from_rows(std::vector<PowerSeries> rows);

    int order() const { return rows_.at(0).order(); }
    int udeg() const { return static_cast<int>(rows_.size()) - 1; }
    const PowerSeries& row(int j) const { return rows_.at(static_cast<size_t>(j)); }
    PowerSeries& row(int j) { return rows_.at(static_cast<size_t>(j)); }
    const Rat& at(int n, int j) const { return rows_.at(static_cast<size_t>(j)).at(n); }

    bool is_zero(int p_upto = -1, int u_upto = -1) const;
    bool operator==(const BiSeries&) const = default;

private:
    std::vector<PowerSeries> rows_;
};

BiSeries bi_embed(const PowerSeries& a, int udeg);
BiSeries bi_add(const BiSeries& a, const BiSeries& b);
BiSeries bi_sub(const BiSeries& a, const BiSeries& b);
BiSeries bi_neg(const BiSeries& a);
BiSeries bi_mul(const BiSeries& a, const BiSeries& b);
// Requires the u^0 row of b to be a unit in p; error "non-unit divisor".
BiSeries bi_div(const BiSeries& a, const BiSeries& b);

// Substitute u := g(p) and truncate at the p-order of f.
PowerSeries ps_subst_u(const BiSeries& f, const PowerSeries& g);
// Formal partial derivative in u; the u-degree bound drops by one.
BiSeries ps_diff_u(const BiSeries& f);
PowerSeries bi_at_u1(const BiSeries& f);

}  // namespace polyia
