#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace polyia {

// Triangular-lattice cells. A cell is (x, y, s) with s the orientation:
// D has its horizontal edge at the base (vertices (x,y),(x+1,y),(x,y+1)),
// U has it on top (vertices (x+1,y),(x,y+1),(x+1,y+1)). Column j is the strip
// between the lattice lines x=j and x=j+1; row j between y=j and y=j+1.
enum class Orient : std::uint8_t { D = 0, U = 1 };

struct Cell {
    int x = 0;
    int y = 0;
    Orient s = Orient::D;

    auto operator<=>(const Cell&) const = default;
};

// The three edge-neighbours; symmetric and 3-regular. A D cell touches the U
// cells sharing its left, base and hypotenuse edges, and vice versa.
std::array<Cell, 3> neighbors(const Cell& c);

// Canonical translation representative of a nonempty edge-connected cell set:
// sorted cells with min x = min y = 0.
class Polyiamond {
public:
    const std::vector<Cell>& cells() const { return cells_; }
    int cell_count() const { return static_cast<int>(cells_.size()); }
    int internal_edges() const { return internal_edges_; }
    int perimeter() const { return 3 * cell_count() - 2 * internal_edges_; }
    bool contains(const Cell& c) const;

    auto operator<=>(const Polyiamond&) const = default;

private:
    friend Polyiamond canonicalize(std::vector<Cell> cells);
    std::vector<Cell> cells_;  // sorted, unique, min x = min y = 0
    int internal_edges_ = 0;
};

// Boundary-edge count of a raw cell set: 3c - 2i. Errors: "empty polyiamond".
int perimeter(const std::vector<Cell>& cells);

// Errors: "empty polyiamond" on empty input, "not edge-connected" otherwise
// when the cells do not form one edge-connected component. Idempotent.
Polyiamond canonicalize(std::vector<Cell> cells);

struct Decomposition {
    // Columns keyed by ascending x, cells ordered by (y, s) with D before U;
    // rows keyed by ascending y, cells ordered by (x, s) with D before U.
    // In both orders, consecutive cells share an edge iff contiguous.
    std::vector<std::vector<Cell>> columns;
    std::vector<std::vector<Cell>> rows;
};

Decomposition columns_and_rows(const Polyiamond& poly);

// Profile of one contiguous column. Type by (bottom, top) orientation:
// (D,U)=1, (D,D)=2, (U,U)=3, (U,D)=4. k counts U cells for types 1, 3, 4 and
// D cells minus one for type 2 (a single D cell is type 2, k=0). b is the
// lowest level touched, u one past the highest.
struct ColumnRun {
    int x = 0;
    int type = 0;
    int k = 0;
    int b = 0;
    int u = 0;
    int cell_count = 0;
};

// Errors: "column not convex" when the cells are not contiguous in column
// order; input must be nonempty cells of a single column.
ColumnRun column_profile(const std::vector<Cell>& column);

struct ClassFlags {
    bool column_convex = false;
    bool row_convex = false;
    bool convex = false;      // column_convex && row_convex
    bool baryiamond = false;  // column_convex, one shared column bottom b,
                              // every column after the first bottoms with D
    bool u_monotone = false;  // convex with non-increasing column tops
    bool b_monotone = false;  // convex with non-decreasing column bottoms
    int first_column_type = 0;  // 0 when the first column is not contiguous
    int first_column_k = -1;
};

ClassFlags classify(const Polyiamond& poly);

// JSON serialization: a cell as [x, y, "D"|"U"], a polyiamond as the sorted
// cell array.
std::string cell_json(const Cell& c);
std::string polyiamond_json(const Polyiamond& poly);

}  // namespace polyia
