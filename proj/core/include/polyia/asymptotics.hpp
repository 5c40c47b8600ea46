#pragma once

#include <string>
#include <vector>

#include "polyia/enumerate.hpp"
#include "polyia/rational.hpp"
#include "polyia/real.hpp"
#include "polyia/series.hpp"

namespace polyia {

// Exact rational bracket around a real root.
struct RootEnclosure {
    Rat lo, hi;
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
};

// Bisect [lo, hi] (exact arithmetic, coeffs[i] multiplies x^i) until the
// bracket is at most max_width wide. Errors: "no sign change".
RootEnclosure isolate_root(const std::vector<Rat>& coeffs, Rat lo, Rat hi, const Rat& max_width);

// Bracket around the smallest positive root of 1 - p - 2p^2 - 2p^3 + p^4 - p^5
// (the baryiamond singularity).
RootEnclosure xi_enclosure(const Rat& max_width);

// Per-term growth limit a_{n+1}/a_n: baryiamond 1/xi, column-convex
// (3 + sqrt 17)/2, convex 3. Errors: "unknown class" for other classes.
Real growth_constant(PolyClass cls, mpfr_prec_t prec);

// Leading-order asymptotic estimate of the perimeter-n count. Computed twice,
// at working precision and doubled precision; the returned value carries at
// least `digits` agreed significant digits. Errors: "unknown class",
// "digits too small" (< 10).
Real asym_value(PolyClass cls, long n, int digits = 30);

struct ConvergenceRow {
    int n = 0;
    Int exact = 0;              // series coefficient at n
    double ratio = 0.0;         // a_{n+1} / a_n
    double ratio_dev = 0.0;     // |ratio - growth| / growth
    double prefactor_ratio = 0.0;  // a_n / asym_value(n)
};

// Convergence of the exact series toward the asymptotic form, sampled at
// n_max * {1/6, 1/4, 5/12, 1/2, 2/3, 5/6, 1}. The summary booleans compare
// the half and full checkpoints (ratio) and the 5/12 and 5/6 checkpoints
// (prefactor). `series` must resolve coefficients up to n_max + 1.
struct ConvergenceReport {
    std::string cls;
    int n_max = 0;
    double growth = 0.0;
    std::vector<ConvergenceRow> rows;
    bool ratio_dev_small_at_half = false;  // ratio_dev(n_max/2) <= 0.02
    bool ratio_dev_shrinks = false;        // ratio_dev(n_max) < ratio_dev(n_max/2)
    bool prefactor_within_5pct = false;    // |prefactor_ratio(5/6 n_max) - 1| <= 0.05
    bool prefactor_dev_shrinks = false;    // closer to 1 at 5/6 n_max than at 5/12 n_max

    std::string to_string() const;
    std::string to_json() const;
};

ConvergenceReport convergence_report(PolyClass cls, int n_max, const PowerSeries& series);

}  // namespace polyia
