#include "gridknot/grid.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "gridknot/diagram.hpp"

namespace gridknot {

std::pair<int, int> GridDiagram::row_support(int r) const {
    int a = -1, b = -1;
    for (int c = 0; c < n; ++c)
        if (row_has_one(r, c)) {
            if (a < 0)
                a = c;
            else
                b = c;
        }
    return {a, b};
}

std::string GridDiagram::to_text() const {
    std::ostringstream out;
    out << n << '\n';
    for (int c = 0; c < n; ++c) {
        if (c) out << ' ';
        out << cols[c].first << ',' << cols[c].second;
    }
    out << '\n';
    return out.str();
}

GridDiagram GridDiagram::from_text(const std::string& text) {
    std::istringstream in(text);
    GridDiagram g;
    if (!(in >> g.n) || g.n < 2) throw std::invalid_argument("grid text: bad size");
    g.cols.resize(g.n);
    for (int c = 0; c < g.n; ++c) {
        std::string pair;
        if (!(in >> pair)) throw std::invalid_argument("grid text: missing column pair");
        auto comma = pair.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("grid text: bad pair " + pair);
        g.cols[c].first = std::stoi(pair.substr(0, comma));
        g.cols[c].second = std::stoi(pair.substr(comma + 1));
    }
    return g;
}

GridDiagram grid_unknot() { return GridDiagram{2, {{0, 1}, {0, 1}}}; }

Verdict validate(const GridDiagram& g) {
    if (g.n < 2) return {false, "grid size must be at least 2"};
    if ((int)g.cols.size() != g.n) return {false, "column count differs from n"};
    std::vector<int> row_count(g.n, 0);
    for (int c = 0; c < g.n; ++c) {
        auto [lo, hi] = g.cols[c];
        if (lo < 0 || hi >= g.n) return {false, "row index out of range in column " + std::to_string(c)};
        if (lo >= hi) return {false, "column " + std::to_string(c) + " pair not ordered"};
        ++row_count[lo];
        ++row_count[hi];
    }
    for (int r = 0; r < g.n; ++r)
        if (row_count[r] != 2)
            return {false, "row " + std::to_string(r) + " occurs " + std::to_string(row_count[r]) +
                               " times, expected 2"};
    return {};
}

Norm norm(const GridDiagram& g) {
    Norm v;
    v.n = g.n;
    for (int c = 0; c < g.n; ++c) {
        for (int r : {g.cols[c].first, g.cols[c].second}) {
            int k = r * g.n + c;  // bit index from the most significant end
            v.bits[k >> 6] |= (uint64_t)1 << (63 - (k & 63));
        }
    }
    return v;
}

std::string Norm::to_string() const {
    std::string out;
    for (int k = 0; k < n * n; ++k) {
        if (k && k % n == 0) out += ' ';
        out += (bits[k >> 6] >> (63 - (k & 63))) & 1 ? '1' : '0';
    }
    return out;
}

namespace {

GridDiagram flip_h(const GridDiagram& g) {
    GridDiagram r = g;
    for (auto& [lo, hi] : r.cols) {
        int nl = g.n - 1 - hi, nh = g.n - 1 - lo;
        lo = nl;
        hi = nh;
    }
    return r;
}

GridDiagram flip_v(const GridDiagram& g) {
    GridDiagram r = g;
    std::reverse(r.cols.begin(), r.cols.end());
    return r;
}

GridDiagram transpose(const GridDiagram& g) {
    GridDiagram r;
    r.n = g.n;
    r.cols.assign(g.n, {-1, -1});
    for (int c = 0; c < g.n; ++c) {
        for (int row : {g.cols[c].first, g.cols[c].second}) {
            if (r.cols[row].first < 0)
                r.cols[row].first = c;
            else
                r.cols[row].second = c;
        }
    }
    return r;
}

GridDiagram cycle_row(const GridDiagram& g) {
    GridDiagram r = g;
    for (auto& [lo, hi] : r.cols) {
        int a = (lo + g.n - 1) % g.n, b = (hi + g.n - 1) % g.n;
        lo = std::min(a, b);
        hi = std::max(a, b);
    }
    return r;
}

GridDiagram cycle_col(const GridDiagram& g) {
    GridDiagram r = g;
    std::rotate(r.cols.begin(), r.cols.begin() + 1, r.cols.end());
    return r;
}

// Non-interleaved and sharing no index: supports disjoint or nested.
bool swappable(std::pair<int, int> a, std::pair<int, int> b) {
    if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second)
        return false;
    bool inside1 = a.first < b.first && b.first < a.second;
    bool inside2 = a.first < b.second && b.second < a.second;
    return inside1 == inside2;
}

}  // namespace

GridDiagram apply_move(const GridDiagram& g, Move m) {
    using K = Move::Kind;
    switch (m.kind) {
        case K::FlipH: return flip_h(g);
        case K::FlipV: return flip_v(g);
        case K::FlipDiag: return transpose(g);
        case K::FlipAntidiag: return flip_h(flip_v(transpose(g)));
        case K::Rot90: return transpose(flip_h(g));
        case K::CycleRow: return cycle_row(g);
        case K::CycleCol: return cycle_col(g);
        case K::SwapRows: {
            int i = m.index;
            if (i < 0 || i + 1 >= g.n) throw std::invalid_argument("SwapRows index out of range");
            auto a = g.row_support(i), b = g.row_support(i + 1);
            if (!swappable(a, b))
                throw std::invalid_argument("SwapRows: rows " + std::to_string(i) + "," +
                                            std::to_string(i + 1) + " interleave or share a column");
            GridDiagram r = g;
            for (auto& [lo, hi] : r.cols) {
                if (lo == i) lo = i + 1;
                else if (lo == i + 1) lo = i;
                if (hi == i) hi = i + 1;
                else if (hi == i + 1) hi = i;
                if (lo > hi) std::swap(lo, hi);
            }
            return r;
        }
        case K::SwapCols: {
            int j = m.index;
            if (j < 0 || j + 1 >= g.n) throw std::invalid_argument("SwapCols index out of range");
            if (!swappable(g.cols[j], g.cols[j + 1]))
                throw std::invalid_argument("SwapCols: columns " + std::to_string(j) + "," +
                                            std::to_string(j + 1) + " interleave or share a row");
            GridDiagram r = g;
            std::swap(r.cols[j], r.cols[j + 1]);
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

struct NormHash {
    std::size_t operator()(const Norm& v) const {
        uint64_t h = 1469598103934665603ull;
        for (uint64_t b : v.bits) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return (std::size_t)h;
    }
};

}  // namespace

std::vector<GridDiagram> symmetry_orbit(const GridDiagram& g) {
    std::vector<GridDiagram> out;
    std::unordered_set<Norm, NormHash> seen;
    std::deque<GridDiagram> queue{g};
    seen.insert(norm(g));
    while (!queue.empty()) {
        GridDiagram cur = queue.front();
        queue.pop_front();
        out.push_back(cur);
        for (auto kind : {Move::Kind::FlipH, Move::Kind::FlipV, Move::Kind::FlipDiag,
                          Move::Kind::Rot90, Move::Kind::CycleRow, Move::Kind::CycleCol}) {
            GridDiagram next = apply_move(cur, {kind, 0});
            if (seen.insert(norm(next)).second) queue.push_back(next);
        }
    }
    return out;
}

namespace {

// Shared BFS over M1-M4: stops early via `stop` (return true to abort with
// that state as a witness).  Returns false when the budget ran out first.
template <class Stop>
bool move_closure_search(const GridDiagram& g, std::size_t budget, bool* exhausted, Stop stop) {
    std::unordered_set<Norm, NormHash> seen{norm(g)};
    std::deque<GridDiagram> queue{g};
    std::size_t visited = 0;
    *exhausted = false;
    while (!queue.empty()) {
        if (visited >= budget) {
            *exhausted = true;
            return false;
        }
        GridDiagram cur = queue.front();
        queue.pop_front();
        ++visited;
        auto push = [&](const GridDiagram& next) {
            if (seen.insert(norm(next)).second) queue.push_back(next);
        };
        for (auto kind : {Move::Kind::FlipH, Move::Kind::FlipV, Move::Kind::FlipDiag,
                          Move::Kind::Rot90, Move::Kind::CycleRow, Move::Kind::CycleCol}) {
            GridDiagram next = apply_move(cur, {kind, 0});
            if (stop(next)) return true;
            push(next);
        }
        for (int i = 0; i + 1 < cur.n; ++i) {
            if (swappable(cur.row_support(i), cur.row_support(i + 1))) {
                GridDiagram next = apply_move(cur, {Move::Kind::SwapRows, i});
                if (stop(next)) return true;
                push(next);
            }
            if (swappable(cur.cols[i], cur.cols[i + 1])) {
                GridDiagram next = apply_move(cur, {Move::Kind::SwapCols, i});
                if (stop(next)) return true;
                push(next);
            }
        }
    }
    return false;
}

}  // namespace

NormVerdict is_norm_maximal(const GridDiagram& g, std::size_t budget) {
    Norm base = norm(g);
    bool exhausted = false;
    bool found = move_closure_search(g, budget, &exhausted,
                                     [&](const GridDiagram& next) { return norm(next) > base; });
    if (found) return NormVerdict::NotMaximal;
    return exhausted ? NormVerdict::Inconclusive : NormVerdict::Maximal;
}

std::optional<DestabPosition> destabilizable(const GridDiagram& g, bool cyclic) {
    for (int c = 0; c < g.n; ++c) {
        auto [lo, hi] = g.cols[c];
        if (hi == lo + 1) return DestabPosition{true, c, lo};
        if (cyclic && lo == 0 && hi == g.n - 1) return DestabPosition{true, c, g.n - 1};
    }
    for (int r = 0; r < g.n; ++r) {
        auto [a, b] = g.row_support(r);
        if (b == a + 1) return DestabPosition{false, r, a};
        if (cyclic && a == 0 && b == g.n - 1) return DestabPosition{false, r, g.n - 1};
    }
    return std::nullopt;
}

GridDiagram destabilize(const GridDiagram& g, const DestabPosition& pos) {
    if (g.n == 2) throw std::invalid_argument("cannot destabilize the minimal unknot grid");
    if (!pos.vertical) {
        GridDiagram t = destabilize(transpose(g), DestabPosition{true, pos.index, pos.at});
        return transpose(t);
    }
    int n = g.n, c0 = pos.index;
    if (c0 < 0 || c0 >= n || pos.at < 0 || pos.at >= n)
        throw std::invalid_argument("stale destabilization position");
    if (pos.at == n - 1) {
        // Cyclic pair (0, n-1): one M3 row shift makes it truly adjacent.
        if (g.cols[c0] != std::make_pair(0, n - 1))
            throw std::invalid_argument("stale destabilization position");
        return destabilize(cycle_row(g), DestabPosition{true, c0, n - 2});
    }
    int r0 = pos.at, r1 = pos.at + 1;
    if (g.cols[c0] != std::make_pair(r0, r1))
        throw std::invalid_argument("stale destabilization position");
    // Merge rows r0, r1 and drop column c0.
    int pa = -1, pb = -1;
    for (int c = 0; c < n; ++c) {
        if (c == c0) continue;
        if (g.row_has_one(r0, c)) pa = c;
        if (g.row_has_one(r1, c)) pb = c;
    }
    if (pa == pb) throw std::invalid_argument("destabilization would detach a split component");
    GridDiagram out;
    out.n = n - 1;
    auto relabel = [&](int r) { return r > r0 ? r - 1 : r; };
    for (int c = 0; c < n; ++c) {
        if (c == c0) continue;
        int a = relabel(g.cols[c].first), b = relabel(g.cols[c].second);
        out.cols.push_back({std::min(a, b), std::max(a, b)});
    }
    auto v = validate(out);
    if (!v.ok) throw std::invalid_argument("destabilization produced invalid grid: " + v.reason);
    return out;
}

int component_count(const GridDiagram& g) {
    // Trace corner cycles: from a column end, cross the shared row to the
    // partner column, then use that column's other end.
    int count = 0;
    std::vector<std::array<bool, 2>> seen(g.n, {false, false});
    for (int c = 0; c < g.n; ++c) {
        for (int end = 0; end < 2; ++end) {
            if (seen[c][end]) continue;
            ++count;
            int cc = c, ee = end;
            while (!seen[cc][ee]) {
                seen[cc][ee] = true;
                int row = ee == 0 ? g.cols[cc].first : g.cols[cc].second;
                auto [x, y] = g.row_support(row);
                int nc = x == cc ? y : x;
                int ne = g.cols[nc].first == row ? 0 : 1;
                seen[nc][ne] = true;
                cc = nc;
                ee = 1 - ne;
            }
        }
    }
    return count;
}

namespace {

// Cyclic shifts placing a chosen 1 of the matrix at a target corner cell.
GridDiagram shift_one_to(const GridDiagram& g, int row, int col, int target_row, int target_col) {
    GridDiagram r = g;
    for (int k = 0; k < (row - target_row + g.n) % g.n; ++k) r = cycle_row(r);
    for (int k = 0; k < (col - target_col + g.n) % g.n; ++k) r = cycle_col(r);
    return r;
}

}  // namespace

GridDiagram connected_sum(const GridDiagram& g1, const GridDiagram& g2) {
    for (auto* g : {&g1, &g2}) {
        auto v = validate(*g);
        if (!v.ok) throw std::invalid_argument("connected_sum: invalid grid: " + v.reason);
        if (component_count(*g) != 1)
            throw std::invalid_argument("connected_sum requires single-component grids");
    }
    int n1 = g1.n, n2 = g2.n;
    // Put a 1 of g1 at its bottom-right corner and a 1 of g2 at its top-left
    // corner, delete both corner 1s and cross-splice row and column.
    GridDiagram a = shift_one_to(g1, g1.cols[n1 - 1].second, n1 - 1, n1 - 1, n1 - 1);
    GridDiagram b = shift_one_to(g2, g2.cols[0].first, 0, 0, 0);
    GridDiagram out;
    out.n = n1 + n2 - 1;
    out.cols.resize(out.n);
    for (int c = 0; c < n1 - 1; ++c) out.cols[c] = a.cols[c];
    // Shared column: a's last column loses its corner 1 (row n1-1), b's first
    // column loses its corner 1 (row 0); the survivors pair up.
    int a_rest = a.cols[n1 - 1].first;  // corner is the hi end by construction
    int b_rest = b.cols[0].second + (n1 - 1);
    out.cols[n1 - 1] = {std::min(a_rest, b_rest), std::max(a_rest, b_rest)};
    for (int c = 1; c < n2; ++c)
        out.cols[n1 - 1 + c] = {b.cols[c].first + n1 - 1, b.cols[c].second + n1 - 1};
    auto v = validate(out);
    if (!v.ok) throw std::logic_error("connected_sum produced invalid grid: " + v.reason);
    return out;
}

PlanarKnotDiagram to_planar(const GridDiagram& g) {
    auto verdict = validate(g);
    if (!verdict.ok) throw std::invalid_argument("to_planar: invalid grid: " + verdict.reason);
    if (component_count(g) != 1)
        throw std::invalid_argument("to_planar rejects multi-component grids");

    // Crossing ids for (col, row) strict containments.
    std::vector<std::vector<int>> id(g.n, std::vector<int>(g.n, -1));
    int c_count = 0;
    for (int c = 0; c < g.n; ++c)
        for (int r = g.cols[c].first + 1; r < g.cols[c].second; ++r) {
            auto [x, y] = g.row_support(r);
            if (x < c && c < y) id[c][r] = c_count++;
        }

    PlanarKnotDiagram d;
    d.c = c_count;
    d.sign.assign(c_count, 0);
    d.over_in.assign(c_count, 0);
    d.under_in.assign(c_count, 0);
    d.embedded = true;

    // Slots counterclockwise: 0 = east, 1 = north (toward row 0), 2 = west,
    // 3 = south. Vertical strand occupies N/S and is always over.
    int col = 0, row = g.cols[0].second;  // lower endpoint of column 0
    do {
        int other = g.cols[col].first == row ? g.cols[col].second : g.cols[col].first;
        bool up = other < row;
        for (int r = row + (up ? -1 : 1); r != other; r += up ? -1 : 1) {
            int x = id[col][r];
            if (x < 0) continue;
            d.gauss.push_back({x, true});
            d.over_in[x] = up ? 3 : 1;
        }
        row = other;
        auto [cx, cy] = g.row_support(row);
        int next_col = cx == col ? cy : cx;
        bool right = next_col > col;
        for (int c = col + (right ? 1 : -1); c != next_col; c += right ? 1 : -1) {
            int x = id[c][row];
            if (x < 0) continue;
            d.gauss.push_back({x, false});
            d.under_in[x] = right ? 2 : 0;
        }
        col = next_col;
    } while (!(col == 0 && row == g.cols[0].second));

    if ((int)d.gauss.size() != 2 * c_count)
        throw std::logic_error("grid traversal missed crossings");
    for (int x = 0; x < c_count; ++x)
        d.sign[x] = d.under_in[x] == (d.over_in[x] + 1) % 4 ? 1 : -1;
    return d;
}

}  // namespace gridknot
