#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "polyia/lattice.hpp"

using namespace polyia;

namespace {
Cell D(int x, int y) { return {x, y, Orient::D}; }
Cell U(int x, int y) { return {x, y, Orient::U}; }
}  // namespace

TEST_CASE("neighbors are symmetric and 3-regular") {
    for (const Cell& c : {D(0, 0), U(0, 0), D(-2, 3), U(5, -1)}) {
        auto ns = neighbors(c);
        CHECK(ns.size() == 3);
        for (const Cell& n : ns) {
            CHECK(n.s != c.s);  // bipartite: D only touches U
            auto back = neighbors(n);
            CHECK(std::count(back.begin(), back.end(), c) == 1);
        }
    }
}

TEST_CASE("single cells have perimeter 3, dominoes 4") {
    CHECK(canonicalize({D(0, 0)}).perimeter() == 3);
    CHECK(canonicalize({U(2, 7)}).perimeter() == 3);
    CHECK(canonicalize({D(0, 0), U(0, 0)}).perimeter() == 4);
}

TEST_CASE("the hexagon of six cells around a vertex has perimeter 6") {
    auto hex = canonicalize({U(0, 0), D(1, 0), U(1, 0), D(1, 1), D(0, 1), U(0, 1)});
    CHECK(hex.cell_count() == 6);
    CHECK(hex.internal_edges() == 6);
    CHECK(hex.perimeter() == 6);
    auto flags = classify(hex);
    CHECK(flags.column_convex);
    CHECK(flags.row_convex);
    CHECK(flags.convex);
}

TEST_CASE("canonicalize is idempotent and translation-invariant") {
    std::vector<Cell> cells = {D(0, 0), U(0, 0), D(1, 0), U(0, -1)};
    auto a = canonicalize(cells);
    std::vector<Cell> shifted;
    for (const Cell& c : cells) shifted.push_back({c.x + 3, c.y - 2, c.s});
    CHECK(canonicalize(shifted) == a);
    CHECK(canonicalize(a.cells()) == a);
    // Input order and duplicates do not matter.
    std::vector<Cell> shuffled = {U(0, -1), D(1, 0), U(0, 0), D(0, 0), D(0, 0)};
    CHECK(canonicalize(shuffled) == a);
}

TEST_CASE("empty and disconnected inputs are errors") {
    CHECK_THROWS_WITH_AS(canonicalize({}), "empty polyiamond", std::domain_error);
    CHECK_THROWS_WITH_AS(perimeter({}), "empty polyiamond", std::domain_error);
    CHECK_THROWS_WITH_AS(canonicalize({D(0, 0), D(5, 5)}), "not edge-connected",
                         std::domain_error);
    // Sharing a vertex only is not edge-connected either.
    CHECK_THROWS_WITH_AS(canonicalize({D(0, 0), D(1, 0)}), "not edge-connected",
                         std::domain_error);
}

TEST_CASE("column profiles classify the four (bottom, top) orientation types") {
    auto run = [](std::vector<Cell> cells) { return column_profile(cells); };

    ColumnRun t1 = run({D(0, 0), U(0, 0)});
    CHECK(t1.type == 1);
    CHECK(t1.k == 1);
    CHECK(t1.b == 0);
    CHECK(t1.u == 1);

    ColumnRun t2 = run({D(0, 0), U(0, 0), D(0, 1)});
    CHECK(t2.type == 2);
    CHECK(t2.k == 1);
    CHECK(t2.u == 2);

    ColumnRun single = run({D(1, 1)});
    CHECK(single.type == 2);
    CHECK(single.k == 0);

    ColumnRun t3 = run({U(5, 2)});
    CHECK(t3.type == 3);
    CHECK(t3.k == 1);
    CHECK(t3.b == 2);
    CHECK(t3.u == 3);

    ColumnRun t4 = run({U(0, 0), D(0, 1)});
    CHECK(t4.type == 4);
    CHECK(t4.k == 1);
    CHECK(t4.u == 2);

    // Negative levels exercise the orientation-from-parity logic.
    ColumnRun neg = run({U(0, -1), D(0, 0), U(0, 0)});
    CHECK(neg.type == 3);
    CHECK(neg.k == 2);
    CHECK(neg.b == -1);
    CHECK(neg.u == 1);
}

TEST_CASE("non-contiguous or mixed-column input to column_profile is an error") {
    CHECK_THROWS_WITH_AS(column_profile({D(0, 0), D(0, 1)}), "column not convex",
                         std::domain_error);
    CHECK_THROWS_WITH_AS(column_profile({D(0, 0), U(1, 0)}), "cells not in one column",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(column_profile({}), "empty polyiamond", std::domain_error);
}

TEST_CASE("columns_and_rows splits cells with edge-sharing consecutive order") {
    auto hex = canonicalize({U(0, 0), D(1, 0), U(1, 0), D(1, 1), D(0, 1), U(0, 1)});
    auto dec = columns_and_rows(hex);
    CHECK(dec.columns.size() == 2);
    CHECK(dec.rows.size() == 2);
    // Column 0 holds U(0,0), D(0,1), U(0,1) bottom-up.
    CHECK(dec.columns[0] == std::vector<Cell>{U(0, 0), D(0, 1), U(0, 1)});
    CHECK(dec.columns[1] == std::vector<Cell>{D(1, 0), U(1, 0), D(1, 1)});
    CHECK(dec.rows[0] == std::vector<Cell>{U(0, 0), D(1, 0), U(1, 0)});
    CHECK(dec.rows[1] == std::vector<Cell>{D(0, 1), U(0, 1), D(1, 1)});
}

TEST_CASE("a bottom-aligned dumbbell is column-convex but not row-convex") {
    // Columns of heights 2, 1, 2 sharing the bottom level: row 1 has cells in
    // columns 0 and 2 only, so that row is not contiguous.
    auto a = canonicalize({D(0, 0), U(0, 0), D(0, 1), U(0, 1),  //
                           D(1, 0), U(1, 0),                    //
                           D(2, 0), U(2, 0), D(2, 1), U(2, 1)});
    auto flags = classify(a);
    CHECK(flags.column_convex);
    CHECK(!flags.row_convex);
    CHECK(!flags.convex);
    CHECK(flags.baryiamond);  // shared bottom, later columns bottom with D
    CHECK(!flags.u_monotone);  // only defined within convex
    CHECK(flags.first_column_type == 1);
    CHECK(flags.first_column_k == 2);
}

TEST_CASE("a convex staircase with distinct column bottoms is not a baryiamond") {
    auto a = canonicalize({D(0, 0), U(0, 0), D(0, 1), U(0, 1), D(1, 1), U(1, 1)});
    auto flags = classify(a);
    CHECK(flags.convex);
    CHECK(!flags.baryiamond);
    CHECK(flags.u_monotone);
    CHECK(flags.b_monotone);
}

TEST_CASE("a single cell satisfies every class predicate") {
    auto flags = classify(canonicalize({D(0, 0)}));
    CHECK(flags.column_convex);
    CHECK(flags.row_convex);
    CHECK(flags.convex);
    CHECK(flags.baryiamond);
    CHECK(flags.u_monotone);
    CHECK(flags.b_monotone);
    CHECK(flags.first_column_type == 2);
    CHECK(flags.first_column_k == 0);
}

TEST_CASE("cell and polyiamond JSON shapes") {
    CHECK(cell_json(D(0, 1)) == "[0,1,\"D\"]");
    CHECK(cell_json(U(-2, 3)) == "[-2,3,\"U\"]");
    auto a = canonicalize({D(0, 0), U(0, 0)});
    CHECK(polyiamond_json(a) == "[[0,0,\"D\"],[0,0,\"U\"]]");
}
