#include "polyia/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "polyia/gf.hpp"

namespace polyia {

namespace {

// Column profile used by the structured counter: type 1..4, k up-cells,
// bottom level b (see ColumnRun for the type convention).
struct Prof {
    int t = 0, k = 0, b = 0;
};

int levels_of(int t, int k) { return (t == 1 || t == 3) ? k : k + 1; }

int standalone_perimeter(int t, int k) {
    switch (t) {
        case 1: return 2 * k + 2;
        case 2: return 2 * k + 3;
        case 3: return 2 * k + 1;
        default: return 2 * k + 2;
    }
}

int dsize_of(int t, int k) {
    switch (t) {
        case 1: return k;
        case 2: return k + 1;
        case 3: return k - 1;
        default: return k;
    }
}

// Levels of the column carrying an up cell (attachable from the right).
void u_interval(const Prof& c, int& lo, int& hi) {
    lo = c.b;
    hi = c.b + levels_of(c.t, c.k) - 1 - ((c.t == 2 || c.t == 4) ? 1 : 0);
}

// Levels carrying a down cell (attachable from the left).
void d_interval(const Prof& c, int& lo, int& hi) {
    lo = c.b + ((c.t == 3 || c.t == 4) ? 1 : 0);
    hi = c.b + levels_of(c.t, c.k) - 1;
}

// Appending `b` to the right of `a` keeps every row contiguous iff `b` only
// dips below `a` when `a` holds the running minimum bottom (same for tops)
// and every shared level pairs an up cell of `a` with a down cell of `b`.
bool rc_extend_ok(const Prof& a, int minb, int maxu, const Prof& b) {
    int b1 = a.b, u1 = a.b + levels_of(a.t, a.k);
    int b2 = b.b, u2 = b.b + levels_of(b.t, b.k);
    if (b2 < b1 && b1 != minb) return false;
    if (u2 > u1 && u1 != maxu) return false;
    int slo = std::max(b1, b2), shi = std::min(u1, u2) - 1;
    int ulo, uhi, dlo, dhi;
    u_interval(a, ulo, uhi);
    d_interval(b, dlo, dhi);
    return slo >= ulo && shi <= uhi && slo >= dlo && shi <= dhi;
}

bool matches(PolyClass cls, bool bary, bool rc, bool um, bool bm) {
    switch (cls) {
        case PolyClass::ColumnConvex: return true;
        case PolyClass::Baryiamond: return bary;
        case PolyClass::Convex: return rc;
        case PolyClass::CpU: return rc && um;
        case PolyClass::CpB: return rc && bm;
        case PolyClass::CpBu: return rc && um && bm;
        default: return false;
    }
}

struct DfsParams {
    int p_max = 0;
    bool bary_only = false;
    PolyClass cls = PolyClass::ColumnConvex;
};

// Depth-first walk over column-convex animals, one column profile per step.
// Every prefix is itself an animal and is tallied on entry. Each extension
// adds at least one boundary edge, so `per > p_max` never needs revisiting.
void dfs(const Prof& last, int per, int minb, int maxu, bool um, bool bm, bool bary, bool rc,
         const DfsParams& prm, std::map<int, Int>& out) {
    if (matches(prm.cls, bary, rc, um, bm)) out[per] += 1;
    int budget = prm.p_max - per;
    if (budget <= 0 || last.k == 0) return;  // no up cells: nothing attaches
    int ulo, uhi;
    u_interval(last, ulo, uhi);
    const int usz = last.k;
    const int b1 = last.b, u1 = last.b + levels_of(last.t, last.k);

    const int tmax = prm.bary_only ? 2 : 4;
    for (int t2 = 1; t2 <= tmax; ++t2) {
        for (int k2 = (t2 == 2 ? 0 : 1);; ++k2) {
            int ds = dsize_of(t2, k2);
            // Best case the new column shares min(ds, usz) edges; the net
            // perimeter gain is non-decreasing in k2, so this break is final.
            if (standalone_perimeter(t2, k2) - 2 * std::min(ds, usz) > budget) break;
            if (ds == 0) continue;
            int off = (t2 == 3 || t2 == 4) ? 1 : 0;
            int lv2 = levels_of(t2, k2);
            int b2lo = prm.bary_only ? 0 : ulo - off - ds + 1;
            int b2hi = prm.bary_only ? 0 : uhi - off;
            for (int b2 = b2lo; b2 <= b2hi; ++b2) {
                int ov = std::min(b2 + lv2 - 1, uhi) - std::max(b2 + off, ulo) + 1;
                if (ov <= 0) continue;
                int net = standalone_perimeter(t2, k2) - 2 * ov;
                if (net > budget) continue;
                Prof nxt{t2, k2, b2};
                int u2 = b2 + lv2;
                dfs(nxt, per + net, std::min(minb, b2), std::max(maxu, u2), um && u2 <= u1,
                    bm && b2 >= b1, bary && t2 <= 2 && b2 == 0,
                    rc && rc_extend_ok(last, minb, maxu, nxt), prm, out);
            }
        }
    }
}

std::vector<Prof> first_columns(int p_max, const CountOptions& opts) {
    if (opts.first_column_type < 0 || opts.first_column_type > 4)
        throw std::invalid_argument("first-column type must be 1..4");
    std::vector<Prof> roots;
    for (int t = 1; t <= 4; ++t) {
        if (opts.first_column_type != 0 && t != opts.first_column_type) continue;
        for (int k = (t == 2 ? 0 : 1); standalone_perimeter(t, k) <= p_max; ++k) {
            if (opts.first_column_k >= 0 && k != opts.first_column_k) continue;
            roots.push_back({t, k, 0});
        }
    }
    return roots;
}

void run_root(const Prof& root, const DfsParams& prm, std::map<int, Int>& out) {
    dfs(root, standalone_perimeter(root.t, root.k), 0, levels_of(root.t, root.k),
        /*um=*/true, /*bm=*/true, /*bary=*/true, /*rc=*/true, prm, out);
}

// Largest perimeter fully covered by animals of at most `cap` cells: every
// animal satisfies p >= ceil(sqrt(6c)), so perimeter p needs c <= p^2/6.
int complete_perimeter(int cap) {
    int p = 0;
    while (static_cast<long>(p + 1) * (p + 1) <= 6L * cap) ++p;
    return p;
}

std::string json_escape_plain(const std::string& s) { return s; }  // labels are [a-z-]

}  // namespace

PolyClass parse_class(const std::string& name) {
    std::string s = name;
    std::replace(s.begin(), s.end(), '_', '-');
    if (s == "all") return PolyClass::All;
    if (s == "baryiamond") return PolyClass::Baryiamond;
    if (s == "column-convex") return PolyClass::ColumnConvex;
    if (s == "convex") return PolyClass::Convex;
    if (s == "cp-bu") return PolyClass::CpBu;
    if (s == "cp-u") return PolyClass::CpU;
    if (s == "cp-b") return PolyClass::CpB;
    throw std::invalid_argument("unknown class: " + name);
}

std::string class_label(PolyClass cls) {
    switch (cls) {
        case PolyClass::All: return "all";
        case PolyClass::Baryiamond: return "baryiamond";
        case PolyClass::ColumnConvex: return "column-convex";
        case PolyClass::Convex: return "convex";
        case PolyClass::CpBu: return "cp-bu";
        case PolyClass::CpU: return "cp-u";
        case PolyClass::CpB: return "cp-b";
    }
    throw std::invalid_argument("unknown class");
}

std::string CountTable::to_csv(bool include_meta) const {
    std::ostringstream os;
    os << "class,perimeter,count\n";
    for (const auto& [p, n] : counts) os << cls << "," << p << "," << n.get_str() << "\n";
    if (include_meta) {
        os << "# p_max=" << meta.p_max;
        if (meta.cell_budget > 0) os << " cell_budget=" << meta.cell_budget;
        if (meta.partial) os << " partial=true";
        os << " threads=" << meta.threads << " wall_seconds=" << meta.wall_seconds << "\n";
    }
    return os.str();
}

std::string CountTable::to_json(bool include_meta) const {
    std::ostringstream os;
    os << "{\n  \"class\": \"" << json_escape_plain(cls) << "\",\n  \"counts\": [";
    bool first = true;
    for (const auto& [p, n] : counts) {
        os << (first ? "" : ", ") << "{\"perimeter\": " << p << ", \"count\": \"" << n.get_str()
           << "\"}";
        first = false;
    }
    os << "]";
    if (include_meta) {
        os << ",\n  \"meta\": {\"p_max\": " << meta.p_max << ", \"cell_budget\": "
           << meta.cell_budget << ", \"partial\": " << (meta.partial ? "true" : "false")
           << ", \"threads\": " << meta.threads << ", \"wall_seconds\": " << meta.wall_seconds
           << "}";
    }
    os << "\n}\n";
    return os.str();
}

int default_cell_budget() {
    if (const char* env = std::getenv("POLYIA_MAX_CELLS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 12;
}

void enumerate_fixed(int c, const std::function<void(const Polyiamond&)>& visit, int max_cells) {
    if (c < 1) throw std::invalid_argument("cell count must be positive");
    if (c > max_cells) throw std::invalid_argument("cell budget exceeded");
    std::set<Polyiamond> level;
    level.insert(canonicalize({{0, 0, Orient::D}}));
    level.insert(canonicalize({{0, 0, Orient::U}}));
    for (int size = 2; size <= c; ++size) {
        std::set<Polyiamond> next;
        for (const Polyiamond& a : level) {
            for (const Cell& cell : a.cells()) {
                for (const Cell& nb : neighbors(cell)) {
                    if (a.contains(nb)) continue;
                    std::vector<Cell> grown = a.cells();
                    grown.push_back(nb);
                    next.insert(canonicalize(std::move(grown)));
                }
            }
        }
        level = std::move(next);
    }
    for (const Polyiamond& a : level) visit(a);
}

void enumerate_fixed(int c, const std::function<void(const Polyiamond&)>& visit) {
    enumerate_fixed(c, visit, default_cell_budget());
}

std::vector<Polyiamond> enumerate_fixed(int c) {
    std::vector<Polyiamond> out;
    enumerate_fixed(c, [&out](const Polyiamond& a) { out.push_back(a); });
    return out;
}

CountTable count_by_perimeter(PolyClass cls, int p_max, const CountOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    if (p_max > opts.p_limit) throw std::invalid_argument("p_max over limit");

    CountTable table;
    table.cls = class_label(cls);
    table.meta.p_max = p_max;
    table.meta.threads = std::max(1, opts.threads);

    if (cls == PolyClass::All) {
        if (opts.first_column_type != 0 || opts.first_column_k != -1)
            throw std::invalid_argument("column filters require a column-structured class");
        int budget = opts.cell_budget > 0 ? opts.cell_budget : default_cell_budget();
        long need = (static_cast<long>(p_max) * p_max + 5) / 6;
        int cap = static_cast<int>(std::min<long>(std::max(1L, need), budget));
        int p_report = std::min(p_max, complete_perimeter(cap));
        table.meta.partial = p_report < p_max;
        table.meta.cell_budget = cap;
        for (int c = 1; c <= cap; ++c)
            enumerate_fixed(
                c,
                [&](const Polyiamond& a) {
                    int p = a.perimeter();
                    if (p <= p_report) table.counts[p] += 1;
                },
                cap);
    } else {
        DfsParams prm{p_max, cls == PolyClass::Baryiamond, cls};
        std::vector<Prof> roots = first_columns(p_max, opts);
        int threads = table.meta.threads;
        if (threads <= 1 || roots.size() <= 1) {
            for (const Prof& r : roots) run_root(r, prm, table.counts);
        } else {
            std::vector<std::map<int, Int>> partial(roots.size());
            std::atomic<size_t> next{0};
            auto worker = [&] {
                for (size_t i = next.fetch_add(1); i < roots.size(); i = next.fetch_add(1))
                    run_root(roots[i], prm, partial[i]);
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < std::min<int>(threads, static_cast<int>(roots.size())); ++t)
                pool.emplace_back(worker);
            for (auto& th : pool) th.join();
            for (const auto& m : partial)
                for (const auto& [p, n] : m) table.counts[p] += n;
        }
    }

    table.meta.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return table;
}

bool CrossCheckReport::all_equal() const {
    for (const auto& row : comparisons)
        if (row.first_mismatch >= 0) return false;
    return true;
}

std::string CrossCheckReport::to_string() const {
    std::ostringstream os;
    os << "class " << cls << " vs series, perimeters 3.." << p_max << "\n";
    for (const auto& row : comparisons) {
        if (row.first_mismatch < 0)
            os << "  " << row.series_name << ": agree\n";
        else
            os << "  " << row.series_name << ": first mismatch at p=" << row.first_mismatch
               << " (enumeration " << row.enum_count.get_str() << ", series "
               << row.series_count.get_str() << ")\n";
    }
    return os.str();
}

std::string CrossCheckReport::to_json() const {
    std::ostringstream os;
    os << "{\n  \"class\": \"" << cls << "\",\n  \"p_max\": " << p_max
       << ",\n  \"comparisons\": [";
    bool first = true;
    for (const auto& row : comparisons) {
        os << (first ? "" : ", ") << "{\"series\": \"" << row.series_name
           << "\", \"first_mismatch\": " << row.first_mismatch;
        if (row.first_mismatch >= 0)
            os << ", \"enumeration\": \"" << row.enum_count.get_str() << "\", \"series_count\": \""
               << row.series_count.get_str() << "\"";
        os << "}";
        first = false;
    }
    os << "],\n  \"all_equal\": " << (all_equal() ? "true" : "false") << "\n}\n";
    return os.str();
}

CrossCheckReport cross_check(PolyClass cls, int p_max, const GfCatalog& catalog,
                             const CountOptions& opts) {
    if (cls == PolyClass::All)
        throw std::invalid_argument("no generating-function counterpart for class all");
    CountTable table = count_by_perimeter(cls, p_max, opts);

    const int order = std::max(p_max + 1, 12);
    std::vector<std::pair<std::string, PowerSeries>> routes;
    switch (cls) {
        case PolyClass::Baryiamond:
            routes.emplace_back("baryiamond_B", gf_baryiamond(catalog, order));
            routes.emplace_back("baryiamond_recursive", gf_baryiamond_recursive(order));
            break;
        case PolyClass::ColumnConvex:
            routes.emplace_back("ccp_C", gf_ccp(catalog, order));
            routes.emplace_back("ccp_altform", gf_ccp_altform(catalog, order));
            break;
        case PolyClass::Convex:
            routes.emplace_back("convex_F", catalog.series("convex_F", order));
            break;
        case PolyClass::CpU:
            routes.emplace_back("Fu_sum", catalog.series("Fu_sum", order));
            break;
        case PolyClass::CpB:
            routes.emplace_back("Fb_sum", catalog.series("Fb_sum", order));
            break;
        case PolyClass::CpBu:
            routes.emplace_back("Fbu_sum", catalog.env().eval_p("_Fbu_sum", order));
            break;
        default:
            break;
    }

    CrossCheckReport report;
    report.cls = class_label(cls);
    report.p_max = p_max;
    for (const auto& [name, series] : routes) {
        CrossCheckRow row;
        row.series_name = name;
        for (int n = 3; n <= p_max; ++n) {
            Int enum_count = 0;
            if (auto it = table.counts.find(n); it != table.counts.end()) enum_count = it->second;
            Rat coeff = series.at(n);
            if (Rat(enum_count) != coeff) {
                row.first_mismatch = n;
                row.enum_count = enum_count;
                row.series_count = coeff.get_num();
                break;
            }
        }
        report.comparisons.push_back(std::move(row));
    }
    return report;
}

}  // namespace polyia
