#include "polyia/lattice.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace polyia {

std::array<Cell, 3> neighbors(const Cell& c) {
    if (c.s == Orient::D)
        return {Cell{c.x, c.y, Orient::U}, Cell{c.x - 1, c.y, Orient::U},
                Cell{c.x, c.y - 1, Orient::U}};
    return {Cell{c.x, c.y, Orient::D}, Cell{c.x + 1, c.y, Orient::D},
            Cell{c.x, c.y + 1, Orient::D}};
}

namespace {

int internal_edge_count(const std::vector<Cell>& sorted_cells) {
    int twice = 0;
    for (const Cell& c : sorted_cells)
        for (const Cell& n : neighbors(c))
            if (std::binary_search(sorted_cells.begin(), sorted_cells.end(), n)) ++twice;
    return twice / 2;
}

// Contiguity along one axis via half-indices 2*coord + (s == U): a column or
// row is contiguous iff its half-index set is an integer interval.
bool contiguous_halfindices(const std::vector<Cell>& cells, bool column_axis) {
    std::vector<int> h;
    h.reserve(cells.size());
    for (const Cell& c : cells)
        h.push_back(2 * (column_axis ? c.y : c.x) + (c.s == Orient::U ? 1 : 0));
    std::sort(h.begin(), h.end());
    for (size_t i = 1; i < h.size(); ++i)
        if (h[i] != h[i - 1] + 1) return false;
    return true;
}

}  // namespace

int perimeter(const std::vector<Cell>& cells) {
    if (cells.empty()) throw std::domain_error("empty polyiamond");
    std::vector<Cell> sorted = cells;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return 3 * static_cast<int>(sorted.size()) - 2 * internal_edge_count(sorted);
}

bool Polyiamond::contains(const Cell& c) const {
    return std::binary_search(cells_.begin(), cells_.end(), c);
}

Polyiamond canonicalize(std::vector<Cell> cells) {
    if (cells.empty()) throw std::domain_error("empty polyiamond");
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    // BFS from the first cell; every cell must be reached over shared edges.
    std::vector<Cell> frontier{cells.front()};
    std::vector<char> seen(cells.size(), 0);
    seen[0] = 1;
    size_t reached = 1;
    while (!frontier.empty()) {
        Cell c = frontier.back();
        frontier.pop_back();
        for (const Cell& n : neighbors(c)) {
            auto it = std::lower_bound(cells.begin(), cells.end(), n);
            if (it == cells.end() || *it != n) continue;
            size_t idx = static_cast<size_t>(it - cells.begin());
            if (seen[idx]) continue;
            seen[idx] = 1;
            ++reached;
            frontier.push_back(n);
        }
    }
    if (reached != cells.size()) throw std::domain_error("not edge-connected");

    int min_x = cells.front().x, min_y = cells.front().y;
    for (const Cell& c : cells) {
        min_x = std::min(min_x, c.x);
        min_y = std::min(min_y, c.y);
    }
    for (Cell& c : cells) {
        c.x -= min_x;
        c.y -= min_y;
    }
    std::sort(cells.begin(), cells.end());

    Polyiamond out;
    out.cells_ = std::move(cells);
    out.internal_edges_ = internal_edge_count(out.cells_);
    return out;
}

Decomposition columns_and_rows(const Polyiamond& poly) {
    std::map<int, std::vector<Cell>> cols, rows;
    for (const Cell& c : poly.cells()) {
        cols[c.x].push_back(c);
        rows[c.y].push_back(c);
    }
    Decomposition out;
    for (auto& [x, cells] : cols) {
        std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
            return std::pair(a.y, a.s) < std::pair(b.y, b.s);
        });
        out.columns.push_back(std::move(cells));
    }
    for (auto& [y, cells] : rows) {
        std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
            return std::pair(a.x, a.s) < std::pair(b.x, b.s);
        });
        out.rows.push_back(std::move(cells));
    }
    return out;
}

ColumnRun column_profile(const std::vector<Cell>& column) {
    if (column.empty()) throw std::domain_error("empty polyiamond");
    for (const Cell& c : column)
        if (c.x != column.front().x) throw std::invalid_argument("cells not in one column");
    if (!contiguous_halfindices(column, true)) throw std::domain_error("column not convex");

    int lo_half = 2 * column.front().y + (column.front().s == Orient::U ? 1 : 0);
    int hi_half = lo_half;
    int k = 0, min_y = column.front().y, max_y = column.front().y;
    for (const Cell& c : column) {
        int h = 2 * c.y + (c.s == Orient::U ? 1 : 0);
        lo_half = std::min(lo_half, h);
        hi_half = std::max(hi_half, h);
        min_y = std::min(min_y, c.y);
        max_y = std::max(max_y, c.y);
        if (c.s == Orient::U) ++k;
    }
    bool bottom_d = ((lo_half % 2) + 2) % 2 == 0;  // even half-index = D
    bool top_d = ((hi_half % 2) + 2) % 2 == 0;

    ColumnRun run;
    run.x = column.front().x;
    run.type = bottom_d ? (top_d ? 2 : 1) : (top_d ? 4 : 3);
    run.k = k;
    run.b = min_y;
    run.u = max_y + 1;
    run.cell_count = static_cast<int>(column.size());
    return run;
}

ClassFlags classify(const Polyiamond& poly) {
    Decomposition dec = columns_and_rows(poly);
    ClassFlags f;
    f.column_convex = true;
    for (const auto& col : dec.columns)
        if (!contiguous_halfindices(col, true)) f.column_convex = false;
    f.row_convex = true;
    for (const auto& row : dec.rows)
        if (!contiguous_halfindices(row, false)) f.row_convex = false;
    f.convex = f.column_convex && f.row_convex;

    if (contiguous_halfindices(dec.columns.front(), true)) {
        ColumnRun first = column_profile(dec.columns.front());
        f.first_column_type = first.type;
        f.first_column_k = first.k;
    }

    if (f.column_convex) {
        std::vector<ColumnRun> runs;
        runs.reserve(dec.columns.size());
        for (const auto& col : dec.columns) runs.push_back(column_profile(col));

        f.baryiamond = true;
        for (size_t i = 0; i < runs.size(); ++i) {
            if (runs[i].b != runs[0].b) f.baryiamond = false;
            // Bottom orientation is D exactly for types 1 and 2.
            if (i > 0 && runs[i].type != 1 && runs[i].type != 2) f.baryiamond = false;
        }

        if (f.convex) {
            f.u_monotone = true;
            f.b_monotone = true;
            for (size_t i = 1; i < runs.size(); ++i) {
                if (runs[i].u > runs[i - 1].u) f.u_monotone = false;
                if (runs[i].b < runs[i - 1].b) f.b_monotone = false;
            }
        }
    }
    return f;
}

std::string cell_json(const Cell& c) {
    return "[" + std::to_string(c.x) + "," + std::to_string(c.y) + ",\"" +
           (c.s == Orient::U ? "U" : "D") + "\"]";
}

std::string polyiamond_json(const Polyiamond& poly) {
    std::string out = "[";
    for (size_t i = 0; i < poly.cells().size(); ++i) {
        if (i) out += ",";
        out += cell_json(poly.cells()[i]);
    }
    return out + "]";
}

}  // namespace polyia
