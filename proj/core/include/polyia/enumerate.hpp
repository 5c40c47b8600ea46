#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "polyia/lattice.hpp"
#include "polyia/rational.hpp"

namespace polyia {

class GfCatalog;

enum class PolyClass { All, Baryiamond, ColumnConvex, Convex, CpBu, CpU, CpB };

// Accepts hyphen and underscore spellings ("column-convex"/"column_convex");
// errors: "unknown class".
PolyClass parse_class(const std::string& name);
std::string class_label(PolyClass cls);  // canonical hyphenated label

struct CountTable {
    std::string cls;
    std::map<int, Int> counts;  // perimeter -> exact count
    struct Meta {
        int p_max = 0;
        int cell_budget = 0;  // only meaningful for class "all"
        bool partial = false;  // class "all" hit the cell budget before p_max was safe
        int threads = 1;
        double wall_seconds = 0.0;
    } meta;

    std::string to_csv(bool include_meta = true) const;
    std::string to_json(bool include_meta = true) const;
};

// Cell budget for the general enumerator: POLYIA_MAX_CELLS or 12.
int default_cell_budget();

// All fixed polyiamonds with exactly c cells, canonical, each translation
// class exactly once, in deterministic (sorted) order. Errors: "cell budget
// exceeded" when c exceeds max_cells.
void enumerate_fixed(int c, const std::function<void(const Polyiamond&)>& visit,
                     int max_cells);
void enumerate_fixed(int c, const std::function<void(const Polyiamond&)>& visit);
std::vector<Polyiamond> enumerate_fixed(int c);

struct CountOptions {
    int first_column_type = 0;  // 0 = unfiltered, else 1..4
    int first_column_k = -1;    // -1 = unfiltered
    int threads = 1;
    int p_limit = 64;           // configured ceiling for p_max
    int cell_budget = 0;        // class "all": 0 = default_cell_budget()
};

// Exact counts for perimeters 3..p_max. Column-structured classes run a
// column-profile DFS with an admissible perimeter lower bound; class "all"
// delegates to enumerate_fixed with cell budget ceil(p_max^2/6) capped by the
// configured budget (meta.partial set when capped). Errors: "unknown class"
// (invalid filters), "p_max over limit".
CountTable count_by_perimeter(PolyClass cls, int p_max, const CountOptions& opts = {});

struct CrossCheckRow {
    std::string series_name;
    int first_mismatch = -1;  // perimeter of first disagreement, -1 if none
    Int enum_count = 0;       // at the first mismatch
    Int series_count = 0;
};

struct CrossCheckReport {
    std::string cls;
    int p_max = 0;
    std::vector<CrossCheckRow> comparisons;
    bool all_equal() const;
    std::string to_string() const;
    std::string to_json() const;
};

// Compares count_by_perimeter against every generating-function route for the
// class (baryiamond: closed form and recursion fixed point). A mismatch is a
// report outcome, not an error.
CrossCheckReport cross_check(PolyClass cls, int p_max, const GfCatalog& catalog,
                             const CountOptions& opts = {});

}  // namespace polyia
