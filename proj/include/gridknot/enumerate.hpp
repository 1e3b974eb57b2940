#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridknot/grid.hpp"
#include "gridknot/identify.hpp"

namespace gridknot {

// A partial top-down row assignment of a Cromwell matrix.  Row bitmasks use
// bit (n-1-c) for column c, so the numeric value of a mask is the binary
// reading of the row and descending masks realize descending norms.
struct SearchPrefix {
    int n = 0;
    std::vector<uint32_t> rows_fixed;

    std::vector<int> column_fill() const;  // per-column count of placed 1s
};

struct CandidateRecord {
    GridDiagram grid;
    Norm norm;
    DTCode dt;               // canonical code of the simplified diagram
    int provenance = 0;      // index of the search prefix that produced it
    bool budget_exhausted = false;  // M4 scan ran out before settling

    std::string to_line() const;
};

struct GenerateOptions {
    std::size_t m4_budget = 2000;
    int workers = 1;
};

// Emits exactly the valid single-component grids with top-left entry 1 that
// survive primality, bounded norm-canonicality, and the bounded
// destabilization search, in strictly decreasing norm order.
void generate(int n, const GenerateOptions& opts,
              const std::function<void(const CandidateRecord&)>& sink);

// Disjoint, exhaustive split of the search tree into k prefix sets; merging
// the workers' norm-sorted outputs reproduces the serial order.
std::vector<std::vector<SearchPrefix>> partition(int n, int k);

// Runs the prefixes of one set in global DFS order (used by workers and by
// partition-equivalence tests).
void generate_prefixes(int n, const std::vector<SearchPrefix>& prefixes,
                       const GenerateOptions& opts,
                       const std::function<void(const CandidateRecord&)>& sink);

// Steps the full pipeline for n = 5..n_max and tabulates every candidate.
// `log`, when set, receives one progress line per grid size.
TabulationReport census(int n_max, const KnotTable& table, const GenerateOptions& opts,
                        std::ostream* log = nullptr,
                        std::vector<CensusCandidate>* out_candidates = nullptr);

}  // namespace gridknot
