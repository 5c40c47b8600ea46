#include "polyia/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace polyia {

namespace {

Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& x) {
    Rat acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rat pow2_inv(long bits) { return Rat(Int(1), Int(1) << bits); }

// One evaluation of the leading-order form at the given precision.
Real asym_eval(PolyClass cls, long n, mpfr_prec_t prec) {
    const Real pi = Real::pi(prec);
    const Real n3 = pow_si(Real::of(n, prec), 3);
    switch (cls) {
        case PolyClass::Baryiamond: {
            Real xi = Real::of(xi_enclosure(pow2_inv(prec + 8)).mid(), prec);
            Real amp = pow_si(xi + Real::of(1L, prec), 2) *
                       sqrt(pow_si(xi, 4) + pow_si(xi, 3) - Real::of(2L, prec) * xi +
                            Real::of(1L, prec));
            return amp / (Real::of(2L, prec) * sqrt(pi * n3)) * pow_si(xi, -n - 2);
        }
        case PolyClass::ColumnConvex: {
            Real s17 = sqrt(Real::of(17L, prec));
            Real amp = (Real::of(17997809L, prec) * s17 + Real::of(61587513L, prec)) *
                       sqrt(Real::of(95L, prec) * s17 - Real::of(119L, prec));
            Real den = Real::of(128L, prec) * Real::of(43L * 43L, prec) *
                       Real::of(89L * 89L, prec) * sqrt(Real::of(6L, prec) * pi * n3);
            Real growth = (Real::of(3L, prec) + s17) / Real::of(2L, prec);
            return amp / den * pow_si(growth, n - 1);
        }
        case PolyClass::Convex:
            return Real::of(1280L, prec) /
                   (Real::of(441L, prec) * sqrt(Real::of(3L, prec) * pi * n3)) *
                   pow_si(Real::of(3L, prec), n);
        default:
            throw std::invalid_argument("unknown class: no asymptotic form for " +
                                        class_label(cls));
    }
}

}  // namespace

RootEnclosure isolate_root(const std::vector<Rat>& coeffs, Rat lo, Rat hi,
                           const Rat& max_width) {
    Rat flo = poly_eval(coeffs, lo);
    Rat fhi = poly_eval(coeffs, hi);
    if (flo == 0) return {lo, lo};
    if (fhi == 0) return {hi, hi};
    if (sgn(flo) == sgn(fhi)) throw std::invalid_argument("no sign change");
    while (hi - lo > max_width) {
        Rat mid = (lo + hi) / 2;
        Rat fm = poly_eval(coeffs, mid);
        if (fm == 0) return {mid, mid};
        if (sgn(fm) == sgn(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

RootEnclosure xi_enclosure(const Rat& max_width) {
    // 1 - p - 2p^2 - 2p^3 + p^4 - p^5 decreases on [0, 1]: one root inside.
    return isolate_root({Rat(1), Rat(-1), Rat(-2), Rat(-2), Rat(1), Rat(-1)}, Rat(0), Rat(1),
                        max_width);
}

Real growth_constant(PolyClass cls, mpfr_prec_t prec) {
    switch (cls) {
        case PolyClass::Baryiamond:
            return Real::of(1L, prec) / Real::of(xi_enclosure(pow2_inv(prec + 8)).mid(), prec);
        case PolyClass::ColumnConvex:
            return (Real::of(3L, prec) + sqrt(Real::of(17L, prec))) / Real::of(2L, prec);
        case PolyClass::Convex:
            return Real::of(3L, prec);
        default:
            throw std::invalid_argument("unknown class: no asymptotic form for " +
                                        class_label(cls));
    }
}

Real asym_value(PolyClass cls, long n, int digits) {
    if (digits < 10) throw std::invalid_argument("digits too small");
    if (n < 1) throw std::invalid_argument("n must be positive");
    mpfr_prec_t w = static_cast<mpfr_prec_t>(digits) * 4 + 64;
    for (int attempt = 0; attempt < 6; ++attempt) {
        Real v1 = asym_eval(cls, n, w);
        Real v2 = asym_eval(cls, n, 2 * w);
        // Accept once the two precisions agree to digits+2 relative decimals.
        Int den = 1;
        for (int i = 0; i < digits + 2; ++i) den *= 10;
        if (abs(v1 - v2) < abs(v2) * Real::of(Rat(Int(1), den), 64)) return v2;
        w *= 2;
    }
    throw std::logic_error("internal error: precision loop did not stabilize");
}

std::string ConvergenceReport::to_string() const {
    std::ostringstream os;
    os << "class " << cls << ", growth " << std::setprecision(12) << growth << ", n_max "
       << n_max << "\n";
    os << "  n      ratio        ratio_dev    prefactor_ratio\n";
    for (const auto& r : rows) {
        os << "  " << std::left << std::setw(6) << r.n << " " << std::setw(12)
           << std::setprecision(10) << r.ratio << " " << std::setw(12) << r.ratio_dev << " "
           << r.prefactor_ratio << "\n";
    }
    os << "  ratio_dev_small_at_half=" << (ratio_dev_small_at_half ? "true" : "false")
       << " ratio_dev_shrinks=" << (ratio_dev_shrinks ? "true" : "false")
       << " prefactor_within_5pct=" << (prefactor_within_5pct ? "true" : "false")
       << " prefactor_dev_shrinks=" << (prefactor_dev_shrinks ? "true" : "false") << "\n";
    return os.str();
}

std::string ConvergenceReport::to_json() const {
    std::ostringstream os;
    os << std::setprecision(15);
    os << "{\n  \"class\": \"" << cls << "\",\n  \"n_max\": " << n_max << ",\n  \"growth\": "
       << growth << ",\n  \"rows\": [";
    bool first = true;
    for (const auto& r : rows) {
        os << (first ? "" : ", ") << "{\"n\": " << r.n << ", \"exact_count\": \""
           << r.exact.get_str() << "\", \"ratio\": " << r.ratio << ", \"ratio_dev\": "
           << r.ratio_dev << ", \"prefactor_ratio\": " << r.prefactor_ratio << "}";
        first = false;
    }
    os << "],\n  \"summary\": {\"ratio_dev_small_at_half\": "
       << (ratio_dev_small_at_half ? "true" : "false")
       << ", \"ratio_dev_shrinks\": " << (ratio_dev_shrinks ? "true" : "false")
       << ", \"prefactor_within_5pct\": " << (prefactor_within_5pct ? "true" : "false")
       << ", \"prefactor_dev_shrinks\": " << (prefactor_dev_shrinks ? "true" : "false")
       << "}\n}\n";
    return os.str();
}

ConvergenceReport convergence_report(PolyClass cls, int n_max, const PowerSeries& series) {
    if (series.order() < n_max + 2) throw std::invalid_argument("order mismatch");
    ConvergenceReport rep;
    rep.cls = class_label(cls);
    rep.n_max = n_max;
    rep.growth = growth_constant(cls, 128).to_double();

    const std::pair<int, int> fracs[] = {{1, 6}, {1, 4}, {5, 12}, {1, 2}, {2, 3}, {5, 6}, {1, 1}};
    std::vector<int> ns;
    for (auto [num, den] : fracs) {
        int n = static_cast<int>((static_cast<long>(n_max) * num + den / 2) / den);
        if (n >= 4 && (ns.empty() || ns.back() != n)) ns.push_back(n);
    }

    auto dev_at = [&rep](int n) -> const ConvergenceRow* {
        for (const auto& r : rep.rows)
            if (r.n == n) return &r;
        return nullptr;
    };

    for (int n : ns) {
        Rat an = series.at(n), an1 = series.at(n + 1);
        if (an == 0) continue;
        ConvergenceRow row;
        row.n = n;
        row.exact = an.get_num();
        row.ratio = Rat(an1 / an).get_d();
        row.ratio_dev = std::abs(row.ratio - rep.growth) / rep.growth;
        Real pref = Real::of(an, 256) / asym_value(cls, n, 30);
        row.prefactor_ratio = pref.to_double();
        rep.rows.push_back(row);
    }

    const ConvergenceRow* half = dev_at(ns.size() >= 4 ? ns[3] : 0);
    const ConvergenceRow* full = dev_at(ns.empty() ? 0 : ns.back());
    const ConvergenceRow* p_lo = dev_at(ns.size() >= 3 ? ns[2] : 0);
    const ConvergenceRow* p_hi = dev_at(ns.size() >= 6 ? ns[5] : 0);
    if (half) rep.ratio_dev_small_at_half = half->ratio_dev <= 0.02;
    if (half && full) rep.ratio_dev_shrinks = full->ratio_dev < half->ratio_dev;
    if (p_hi) rep.prefactor_within_5pct = std::abs(p_hi->prefactor_ratio - 1.0) <= 0.05;
    if (p_lo && p_hi)
        rep.prefactor_dev_shrinks =
            std::abs(p_hi->prefactor_ratio - 1.0) < std::abs(p_lo->prefactor_ratio - 1.0);
    return rep;
}

}  // namespace polyia
