#include "gridknot/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "gridknot/invariants.hpp"

namespace gridknot {

std::vector<int> SearchPrefix::column_fill() const {
    std::vector<int> fill(n, 0);
    for (uint32_t row : rows_fixed)
        for (int c = 0; c < n; ++c)
            if (row >> (n - 1 - c) & 1) ++fill[c];
    return fill;
}

std::string CandidateRecord::to_line() const {
    std::ostringstream out;
    out << grid.n;
    for (auto& [lo, hi] : grid.cols) out << ' ' << lo << ',' << hi;
    out << "  " << norm.to_string() << "  dt";
    for (int v : dt.code) out << ' ' << v;
    if (budget_exhausted) out << "  ?";
    return out.str();
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

// Bounded BFS over M1-M4 deciding the step (4)/(5) filters together: reject
// when any reachable matrix has a larger norm or admits a destabilization.
enum class ScanOutcome { Keep, KeepExhausted, NormDominated, Destabilizable };

ScanOutcome canonical_scan(const GridDiagram& g, std::size_t budget) {
    Norm base = norm(g);
    std::unordered_set<Norm, NormHash> seen{base};
    std::deque<GridDiagram> queue{g};
    std::size_t visited = 0;
    while (!queue.empty()) {
        if (visited++ >= budget) return ScanOutcome::KeepExhausted;
        GridDiagram cur = queue.front();
        queue.pop_front();
        if (destabilizable(cur)) return ScanOutcome::Destabilizable;
        auto consider = [&](const GridDiagram& next) -> bool {
            Norm nn = norm(next);
            if (nn > base) return true;
            if (seen.insert(nn).second) queue.push_back(next);
            return false;
        };
        for (auto kind : {Move::Kind::FlipH, Move::Kind::FlipV, Move::Kind::FlipDiag,
                          Move::Kind::Rot90, Move::Kind::CycleRow, Move::Kind::CycleCol})
            if (consider(apply_move(cur, {kind, 0}))) return ScanOutcome::NormDominated;
        for (int i = 0; i + 1 < cur.n; ++i) {
            auto try_swap = [&](Move::Kind kind) -> bool {
                try {
                    return consider(apply_move(cur, {kind, i}));
                } catch (const std::invalid_argument&) {
                    return false;  // interleaved or shared index: move not permitted
                }
            };
            if (try_swap(Move::Kind::SwapRows)) return ScanOutcome::NormDominated;
            if (try_swap(Move::Kind::SwapCols)) return ScanOutcome::NormDominated;
        }
    }
    return ScanOutcome::Keep;
}

// Cheap certificate that some M1+M3 composite already beats the norm: checks
// the whole dihedral-times-shifts orbit with early exit.
bool orbit_dominates(const GridDiagram& g) {
    Norm base = norm(g);
    GridDiagram variants[8];
    variants[0] = g;
    variants[1] = apply_move(g, {Move::Kind::FlipH, 0});
    variants[2] = apply_move(g, {Move::Kind::FlipV, 0});
    variants[3] = apply_move(variants[1], {Move::Kind::FlipV, 0});
    variants[4] = apply_move(g, {Move::Kind::FlipDiag, 0});
    variants[5] = apply_move(variants[4], {Move::Kind::FlipH, 0});
    variants[6] = apply_move(variants[4], {Move::Kind::FlipV, 0});
    variants[7] = apply_move(variants[5], {Move::Kind::FlipV, 0});
    for (auto& v : variants) {
        GridDiagram rowed = v;
        for (int dr = 0; dr < g.n; ++dr) {
            GridDiagram shifted = rowed;
            for (int dc = 0; dc < g.n; ++dc) {
                if (norm(shifted) > base) return true;
                shifted = apply_move(shifted, {Move::Kind::CycleCol, 0});
            }
            rowed = apply_move(rowed, {Move::Kind::CycleRow, 0});
        }
    }
    return false;
}

struct Dfs {
    int n;
    const GenerateOptions* opts;
    const std::function<void(const CandidateRecord&)>* sink;
    int provenance = 0;

    std::vector<uint32_t> rows;
    std::vector<int> col_count;
    std::vector<int> col_first;       // row index of the first 1 per column
    std::vector<int> rot_dead_depth;  // rotation-offset comparison killed at depth

    // Row masks with exactly two bits in descending value, precomputed.
    std::vector<uint32_t> all_rows;

    explicit Dfs(int n_) : n(n_), col_count(n_, 0), col_first(n_, -1), rot_dead_depth(n_, INT32_MAX) {
        for (int c1 = 0; c1 < n; ++c1)
            for (int c2 = c1 + 1; c2 < n; ++c2)
                all_rows.push_back((1u << (n - 1 - c1)) | (1u << (n - 1 - c2)));
    }

    bool place(uint32_t row_mask, int depth, int* completed_col_pair) {
        // Two 1s in adjacent columns of one row destabilize, cyclically too.
        if (row_mask & (row_mask >> 1)) return false;
        if ((row_mask >> (n - 1) & 1) && (row_mask & 1)) return false;
        // Column feasibility and vertical-adjacency pruning.
        int rows_left = n - depth - 1;
        *completed_col_pair = -1;
        for (int c = 0; c < n; ++c) {
            if (!(row_mask >> (n - 1 - c) & 1)) {
                if (2 - col_count[c] > rows_left) return false;
                continue;
            }
            if (col_count[c] == 2) return false;
            if (col_count[c] == 1) {
                // Column completes with pair (col_first[c], depth): reject
                // adjacent pairs, cyclic ones included; they destabilize.
                if (depth == col_first[c] + 1) return false;
                if (col_first[c] == 0 && depth == n - 1) return false;
            } else if (2 > rows_left + 1) {
                return false;
            }
        }
        // Horizontal adjacency with the previous row (and cyclically at the
        // leaf) destabilizes.
        if (depth > 0 && (row_mask & rows[depth - 1])) return false;
        if (depth == n - 1 && (row_mask & rows[0])) return false;
        // Rotation-lexicographic prune: a cyclic row shift must not beat the
        // prefix.
        for (int r = 1; r <= depth; ++r) {
            if (rot_dead_depth[r] <= depth) continue;
            uint32_t ref = rows[depth - r];
            if (row_mask > ref) return false;
            if (row_mask < ref) rot_dead_depth[r] = depth;  // restored on unwind
        }
        rows.push_back(row_mask);
        for (int c = 0; c < n; ++c)
            if (row_mask >> (n - 1 - c) & 1) {
                if (col_count[c] == 0) col_first[c] = depth;
                ++col_count[c];
            }
        return true;
    }

    void unplace(int depth) {
        uint32_t row_mask = rows.back();
        rows.pop_back();
        for (int c = 0; c < n; ++c)
            if (row_mask >> (n - 1 - c) & 1) {
                if (--col_count[c] == 0) col_first[c] = -1;
            }
        for (int r = 1; r < n; ++r)
            if (rot_dead_depth[r] == depth) rot_dead_depth[r] = INT32_MAX;
    }

    bool row0_admissible(uint32_t mask) const {
        // Leading entry 1 and no cyclic column shift beats the first row.
        if (!(mask >> (n - 1) & 1)) return false;
        int c2 = 0;
        for (int c = 1; c < n; ++c)
            if (mask >> (n - 1 - c) & 1) c2 = c;
        return 2 * c2 <= n;
    }

    void descend(int depth) {
        if (depth == n) {
            emit_leaf();
            return;
        }
        for (uint32_t mask : all_rows) {
            if (depth == 0 && !row0_admissible(mask)) continue;
            int completed = -1;
            if (!place(mask, depth, &completed)) continue;
            descend(depth + 1);
            unplace(depth);
        }
    }

    // Walks only the given fixed prefix at the top of the tree.
    void descend_prefix(const std::vector<uint32_t>& fixed, std::size_t at, bool* ok) {
        if (at == fixed.size()) {
            *ok = true;
            descend((int)at);
            return;
        }
        int completed = -1;
        if ((at == 0 && !row0_admissible(fixed[at])) || !place(fixed[at], (int)at, &completed)) {
            *ok = false;
            return;
        }
        descend_prefix(fixed, at + 1, ok);
        unplace((int)at);
    }

    void emit_leaf() {
        GridDiagram g;
        g.n = n;
        g.cols.assign(n, {-1, -1});
        for (int depth = 0; depth < n; ++depth)
            for (int c = 0; c < n; ++c)
                if (rows[depth] >> (n - 1 - c) & 1) {
                    if (g.cols[c].first < 0)
                        g.cols[c].first = depth;
                    else
                        g.cols[c].second = depth;
                }
        if (component_count(g) != 1) return;
        if (orbit_dominates(g)) return;
        PlanarKnotDiagram d = simplify(to_planar(g));
        if (d.c > 0 && !is_prime_diagram(d)) return;
        ScanOutcome scan = canonical_scan(g, opts->m4_budget);
        if (scan == ScanOutcome::NormDominated || scan == ScanOutcome::Destabilizable) return;
        CandidateRecord rec;
        rec.grid = g;
        rec.norm = norm(g);
        rec.dt = dt_code(d);
        rec.provenance = provenance;
        rec.budget_exhausted = scan == ScanOutcome::KeepExhausted;
        (*sink)(rec);
    }
};

int prefix_depth(int n) { return n >= 4 ? 2 : 1; }

std::vector<SearchPrefix> all_prefixes(int n) {
    std::vector<SearchPrefix> out;
    int d = prefix_depth(n);
    Dfs dfs(n);
    // Enumerate prune-surviving prefixes of depth d in DFS order.
    std::function<void(int)> walk = [&](int depth) {
        if (depth == d) {
            out.push_back({n, dfs.rows});
            return;
        }
        for (uint32_t mask : dfs.all_rows) {
            if (depth == 0 && !dfs.row0_admissible(mask)) continue;
            int completed = -1;
            if (!dfs.place(mask, depth, &completed)) continue;
            walk(depth + 1);
            dfs.unplace(depth);
        }
    };
    walk(0);
    return out;
}

}  // namespace

std::vector<std::vector<SearchPrefix>> partition(int n, int k) {
    if (k < 1) throw std::invalid_argument("partition requires k >= 1");
    std::vector<std::vector<SearchPrefix>> sets(k);
    if (k == 1) {
        sets[0].push_back({n, {}});
        return sets;
    }
    auto prefixes = all_prefixes(n);
    for (std::size_t i = 0; i < prefixes.size(); ++i) sets[i % k].push_back(prefixes[i]);
    return sets;
}

void generate_prefixes(int n, const std::vector<SearchPrefix>& prefixes,
                       const GenerateOptions& opts,
                       const std::function<void(const CandidateRecord&)>& sink) {
    Dfs dfs(n);
    dfs.opts = &opts;
    dfs.sink = &sink;
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
        dfs.provenance = (int)i;
        if (prefixes[i].rows_fixed.empty()) {
            dfs.descend(0);
        } else {
            bool ok = false;
            dfs.descend_prefix(prefixes[i].rows_fixed, 0, &ok);
        }
    }
}

void generate(int n, const GenerateOptions& opts,
              const std::function<void(const CandidateRecord&)>& sink) {
    if (n < 2 || n > 12) throw std::invalid_argument("generate supports 2 <= n <= 12");
    if (n == 2) {
        // The unique 2x2 Cromwell matrix; it cannot shrink further, so the
        // destabilization filter does not apply.
        CandidateRecord rec;
        rec.grid = grid_unknot();
        rec.norm = norm(rec.grid);
        sink(rec);
        return;
    }
    int workers = std::max(1, opts.workers);
    if (workers == 1) {
        generate_prefixes(n, {{n, {}}}, opts, sink);
        return;
    }
    auto sets = partition(n, workers);
    std::vector<std::vector<CandidateRecord>> results(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            generate_prefixes(n, sets[w], opts,
                              [&](const CandidateRecord& r) { results[w].push_back(r); });
        });
    for (auto& t : threads) t.join();
    // k-way merge of norm-descending streams reproduces the serial order.
    std::vector<std::size_t> at(workers, 0);
    for (;;) {
        int best = -1;
        for (int w = 0; w < workers; ++w) {
            if (at[w] >= results[w].size()) continue;
            if (best < 0 || results[w][at[w]].norm > results[best][at[best]].norm) best = w;
        }
        if (best < 0) break;
        sink(results[best][at[best]++]);
    }
}

TabulationReport census(int n_max, const KnotTable& table, const GenerateOptions& opts,
                        std::ostream* log, std::vector<CensusCandidate>* out_candidates) {
    std::vector<CensusCandidate> candidates;
    for (int n = 5; n <= n_max; ++n) {
        std::size_t emitted = 0;
        generate(n, opts, [&](const CandidateRecord& rec) {
            ++emitted;
            candidates.push_back({n, rec.grid, fingerprint(simplify(to_planar(rec.grid)))});
        });
        if (log) *log << "n=" << n << " candidates=" << emitted << '\n';
    }
    if (out_candidates) *out_candidates = candidates;
    return tabulate(candidates, table);
}

}  // namespace gridknot
