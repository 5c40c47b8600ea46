#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyia/expr.hpp"
#include "polyia/series.hpp"

namespace polyia {

// Catalog of the closed-form generating functions, each encoded verbatim as
// an Expr program over named sub-expressions (auxiliary names start with '_').
// Policies: `bivariate` entries live in (p, u); `doubled` entries are written
// in the half variable q with the perimeter-n count at q^{2n} and are
// re-indexed on evaluation (odd powers must vanish).
struct CatalogEntry {
    std::string name;
    std::string def;  // named binding the entry evaluates
    bool bivariate = false;
    bool doubled = false;
    bool counting = false;  // nonnegative-integer-coefficient invariant applies
};

// Optional perturbation for the residual suite's mutation self-test: adds
// delta * p^degree to one named definition.
struct Mutation {
    std::string def_name;
    int degree = 0;
    Rat delta = Rat(1);
};

class GfCatalog {
public:
    const EvalEnv& env() const { return env_; }
    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry& entry(const std::string& name) const;  // "unknown gf entry"
    bool has_entry(const std::string& name) const;

    // Univariate series of an entry in its public variable (doubled entries
    // re-indexed to the perimeter variable). Errors: "bivariate entry" for
    // Fbu1/Fu1/Fb1 (use bi_series), otherwise propagated.
    PowerSeries series(const std::string& name, int order) const;
    BiSeries bi_series(const std::string& name, int order, int udeg) const;

private:
    friend GfCatalog build_catalog(const std::optional<Mutation>&);
    EvalEnv env_;
    std::vector<CatalogEntry> entries_;
};

GfCatalog build_catalog(const std::optional<Mutation>& mutation = std::nullopt);

struct ResidualCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ResidualReport {
    std::vector<ResidualCheck> checks;
    bool all_pass() const;
    std::string to_string() const;
};

// Baryiamond closed form; coefficient of p^n counts baryiamonds of
// perimeter n.
PowerSeries gf_baryiamond(const GfCatalog& cat, int order);
// Fixed-point iteration of the column recursion over the per-k family,
// iterated from zero until exact stability; returns the summed series.
PowerSeries gf_baryiamond_recursive(int order);
// First-column-type-1 baryiamond series, computed from the closed form and
// re-derived through the kernel root; errors: "kernel mismatch".
PowerSeries gf_kernel_B1(const GfCatalog& cat, int order);
// (u_plus^2, u_minus^2) in the half variable, with the parity relation and
// the quartic kernel residual enforced; errors: "kernel root check failed".
std::pair<PowerSeries, PowerSeries> gf_u_pm_sq(const GfCatalog& cat, int order);
// Column-convex counts by perimeter (internally doubled variable).
PowerSeries gf_ccp(const GfCatalog& cat, int order);
// Same series through the conjugate-pair rewrite.
PowerSeries gf_ccp_altform(const GfCatalog& cat, int order);

struct Fbu1Result {
    BiSeries series;
    ResidualReport report;
};
// Bottom- and top-aligned (bu-monotone) type-1 bivariate form; verifies its
// functional-equation residual. Errors: residual nonzero.
Fbu1Result gf_Fbu1(const GfCatalog& cat, int order, int udeg);

struct ScalarPairResult {
    BiSeries series;
    PowerSeries at1;
    ResidualReport report;
};
// u-monotone type-1 bivariate form + scalar u=1 form; checks the u=1
// specialization, the functional-equation residual, Motzkin-root kernel
// annihilation, and the class-sum assembly. Errors: labeled residual error.
ScalarPairResult gf_Fu1(const GfCatalog& cat, int order, int udeg);
// b-monotone mirror (Catalan-root kernel).
ScalarPairResult gf_Fb1(const GfCatalog& cat, int order, int udeg);

// (type-1 convex series, total convex series); checks the four-term assembly
// against the printed closed form. Errors: "assembly mismatch".
std::pair<PowerSeries, PowerSeries> gf_F1_convex(const GfCatalog& cat, int order);

// Every kernel/residual check at the given orders; failures are report
// entries, never exceptions.
ResidualReport residual_suite(const GfCatalog& cat, int kernel_order = 60,
                              int bi_order = 40, int bi_udeg = 20);

}  // namespace polyia
