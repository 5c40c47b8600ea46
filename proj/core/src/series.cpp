#include "polyia/series.hpp"

#include <stdexcept>

namespace polyia {

namespace {

void require_positive_order(int order) {
    if (order <= 0) throw std::invalid_argument("order must be positive");
}

void require_same_order(const PowerSeries& a, const PowerSeries& b) {
    if (a.order() != b.order()) throw std::invalid_argument("order mismatch");
}

}  // namespace

PowerSeries::PowerSeries(int order) {
    require_positive_order(order);
    c_.assign(static_cast<size_t>(order), Rat(0));
}

PowerSeries PowerSeries::constant(int order, const Rat& value) {
    PowerSeries s(order);
    s.c_[0] = value;
    return s;
}

PowerSeries PowerSeries::monomial(int order, int degree, const Rat& value) {
    PowerSeries s(order);
    if (degree < 0) throw std::invalid_argument("negative degree");
    if (degree < order) s.c_[static_cast<size_t>(degree)] = value;
    return s;
}

PowerSeries PowerSeries::poly(int order, std::initializer_list<std::pair<int, long>> terms) {
    PowerSeries s(order);
    for (const auto& [deg, coef] : terms) {
        if (deg < 0) throw std::invalid_argument("negative degree");
        if (deg < order) s.c_[static_cast<size_t>(deg)] += Rat(coef);
    }
    return s;
}

bool PowerSeries::is_zero(int upto) const {
    int n = (upto < 0 || upto > order()) ? order() : upto;
    for (int i = 0; i < n; ++i)
        if (c_[static_cast<size_t>(i)] != 0) return false;
    return true;
}

int PowerSeries::valuation() const {
    for (int i = 0; i < order(); ++i)
        if (c_[static_cast<size_t>(i)] != 0) return i;
    return order();
}

PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b) {
    require_same_order(a, b);
    PowerSeries out(a.order());
    for (int i = 0; i < a.order(); ++i) out.set(i, a.at(i) + b.at(i));
    return out;
}

PowerSeries ps_sub(const PowerSeries& a, const PowerSeries& b) {
    require_same_order(a, b);
    PowerSeries out(a.order());
    for (int i = 0; i < a.order(); ++i) out.set(i, a.at(i) - b.at(i));
    return out;
}

PowerSeries ps_neg(const PowerSeries& a) {
    PowerSeries out(a.order());
    for (int i = 0; i < a.order(); ++i) out.set(i, -a.at(i));
    return out;
}

PowerSeries ps_scale(const PowerSeries& a, const Rat& s) {
    PowerSeries out(a.order());
    for (int i = 0; i < a.order(); ++i) out.set(i, a.at(i) * s);
    return out;
}

PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b) {
    require_same_order(a, b);
    const int n = a.order();
    PowerSeries out(n);
    for (int i = 0; i < n; ++i) {
        if (a.at(i) == 0) continue;
        for (int j = 0; i + j < n; ++j) {
            if (b.at(j) == 0) continue;
            out.set(i + j, out.at(i + j) + a.at(i) * b.at(j));
        }
    }
    return out;
}

PowerSeries ps_div(const PowerSeries& a, const PowerSeries& b) {
    require_same_order(a, b);
    if (b.at(0) == 0) throw std::domain_error("non-unit divisor");
    const int n = a.order();
    PowerSeries q(n);
    for (int i = 0; i < n; ++i) {
        Rat acc = a.at(i);
        for (int j = 1; j <= i; ++j) {
            if (b.at(j) == 0 || q.at(i - j) == 0) continue;
            acc -= b.at(j) * q.at(i - j);
        }
        q.set(i, acc / b.at(0));
    }
    return q;
}

PowerSeries ps_sqrt(const PowerSeries& a) {
    auto s0 = rat_sqrt(a.at(0));
    if (!s0 || *s0 == 0) throw std::domain_error("non-square constant term");
    const int n = a.order();
    PowerSeries s(n);
    s.set(0, *s0);
    // Quadratic recurrence: 2 s0 s_n = a_n - sum_{0<j<n} s_j s_{n-j}.
    const Rat twice = 2 * (*s0);
    for (int i = 1; i < n; ++i) {
        Rat acc = a.at(i);
        for (int j = 1; j < i; ++j) {
            if (s.at(j) == 0 || s.at(i - j) == 0) continue;
            acc -= s.at(j) * s.at(i - j);
        }
        s.set(i, acc / twice);
    }
    return s;
}

PowerSeries ps_shift_down(const PowerSeries& a, int m) {
    if (m < 0) throw std::invalid_argument("negative shift");
    if (m == 0) return a;
    if (m >= a.order()) throw std::invalid_argument("shift exceeds order");
    for (int i = 0; i < m; ++i)
        if (a.at(i) != 0) throw std::domain_error("shift below valuation");
    PowerSeries out(a.order() - m);
    for (int i = 0; i < out.order(); ++i) out.set(i, a.at(i + m));
    return out;
}

PowerSeries ps_truncate(const PowerSeries& a, int order) {
    require_positive_order(order);
    if (order > a.order()) throw std::invalid_argument("order mismatch");
    PowerSeries out(order);
    for (int i = 0; i < order; ++i) out.set(i, a.at(i));
    return out;
}

BiSeries::BiSeries(int order, int udeg) {
    require_positive_order(order);
    if (udeg < 0) throw std::invalid_argument("negative u-degree bound");
    rows_.assign(static_cast<size_t>(udeg) + 1, PowerSeries(order));
}

BiSeries BiSeries::from_rows(std::vector<PowerSeries> rows) {
    if (rows.empty()) throw std::invalid_argument("empty row list");
    for (const auto& r : rows)
        if (r.order() != rows.front().order()) throw std::invalid_argument("order mismatch");
    BiSeries out(rows.front().order(), static_cast<int>(rows.size()) - 1);
    out.rows_ = std::move(rows);
    return out;
}

bool BiSeries::is_zero(int p_upto, int u_upto) const {
    int m = (u_upto < 0 || u_upto > udeg()) ? udeg() : u_upto;
    for (int j = 0; j <= m; ++j)
        if (!rows_[static_cast<size_t>(j)].is_zero(p_upto)) return false;
    return true;
}

namespace {

void require_same_shape(const BiSeries& a, const BiSeries& b) {
    if (a.order() != b.order() || a.udeg() != b.udeg())
        throw std::invalid_argument("order mismatch");
}

}  // namespace

BiSeries bi_embed(const PowerSeries& a, int udeg) {
    BiSeries out(a.order(), udeg);
    out.row(0) = a;
    return out;
}

BiSeries bi_add(const BiSeries& a, const BiSeries& b) {
    require_same_shape(a, b);
    BiSeries out(a.order(), a.udeg());
    for (int j = 0; j <= a.udeg(); ++j) out.row(j) = ps_add(a.row(j), b.row(j));
    return out;
}

BiSeries bi_sub(const BiSeries& a, const BiSeries& b) {
    require_same_shape(a, b);
    BiSeries out(a.order(), a.udeg());
    for (int j = 0; j <= a.udeg(); ++j) out.row(j) = ps_sub(a.row(j), b.row(j));
    return out;
}

BiSeries bi_neg(const BiSeries& a) {
    BiSeries out(a.order(), a.udeg());
    for (int j = 0; j <= a.udeg(); ++j) out.row(j) = ps_neg(a.row(j));
    return out;
}

BiSeries bi_mul(const BiSeries& a, const BiSeries& b) {
    require_same_shape(a, b);
    BiSeries out(a.order(), a.udeg());
    for (int i = 0; i <= a.udeg(); ++i) {
        if (a.row(i).is_zero()) continue;
        for (int j = 0; i + j <= a.udeg(); ++j) {
            if (b.row(j).is_zero()) continue;
            out.row(i + j) = ps_add(out.row(i + j), ps_mul(a.row(i), b.row(j)));
        }
    }
    return out;
}

BiSeries bi_div(const BiSeries& a, const BiSeries& b) {
    require_same_shape(a, b);
    if (b.row(0).at(0) == 0) throw std::domain_error("non-unit divisor");
    // Long division in u over the ring of truncated p-series: row 0 of b is a
    // unit there, so the quotient rows are determined top-down in u-degree.
    BiSeries q(a.order(), a.udeg());
    for (int j = 0; j <= a.udeg(); ++j) {
        PowerSeries acc = a.row(j);
        for (int i = 1; i <= j; ++i) {
            if (b.row(i).is_zero() || q.row(j - i).is_zero()) continue;
            acc = ps_sub(acc, ps_mul(b.row(i), q.row(j - i)));
        }
        q.row(j) = ps_div(acc, b.row(0));
    }
    return q;
}

PowerSeries ps_subst_u(const BiSeries& f, const PowerSeries& g) {
    if (g.order() != f.order()) throw std::invalid_argument("order mismatch");
    PowerSeries out = f.row(0);
    PowerSeries gpow = PowerSeries::constant(f.order(), Rat(1));
    for (int j = 1; j <= f.udeg(); ++j) {
        gpow = ps_mul(gpow, g);
        if (f.row(j).is_zero()) continue;
        out = ps_add(out, ps_mul(f.row(j), gpow));
    }
    return out;
}

BiSeries ps_diff_u(const BiSeries& f) {
    BiSeries out(f.order(), f.udeg() > 0 ? f.udeg() - 1 : 0);
    for (int j = 1; j <= f.udeg(); ++j)
        out.row(j - 1) = ps_scale(f.row(j), Rat(j));
    return out;
}

PowerSeries bi_at_u1(const BiSeries& f) {
    PowerSeries out = f.row(0);
    for (int j = 1; j <= f.udeg(); ++j) out = ps_add(out, f.row(j));
    return out;
}

}  // namespace polyia
