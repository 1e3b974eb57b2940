#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gridknot/diagram.hpp"
#include "gridknot/grid.hpp"
#include "gridknot/invariants.hpp"

namespace gridknot {

struct KnotTableEntry {
    std::string name;   // e.g. 8_19
    int crossings = 0;
    bool alternating = false;
    DTCode dt;
    Fingerprint fp;     // computed at load, not stored in the asset
};

// Identification table for all prime knots with at most 10 crossings.
// Loading realizes every DT code, fingerprints it, and aborts on any
// fingerprint collision (naming both entries).
class KnotTable {
public:
    static KnotTable load(const std::string& path);

    const std::vector<KnotTableEntry>& entries() const { return entries_; }
    const KnotTableEntry* match(const Fingerprint& fp) const;
    const KnotTableEntry* by_name(const std::string& name) const;

private:
    std::vector<KnotTableEntry> entries_;
    std::unordered_map<std::string, int> index_;  // fingerprint serialization -> entry
};

// Result of matching one candidate fingerprint: a table name, the reserved
// "unknot", or a stable per-run class id for fingerprints outside the table.
struct MatchOutcome {
    enum class Kind { Table, Unknot, Unidentified } kind;
    std::string name;  // table name when kind == Table
    int class_id = -1; // allocated in first-seen order when unidentified
};

class Matcher {
public:
    explicit Matcher(const KnotTable* table) : table_(table) {}
    MatchOutcome match(const Fingerprint& fp);
    int unidentified_classes() const { return next_class_; }

private:
    const KnotTable* table_;
    std::unordered_map<std::string, int> classes_;
    int next_class_ = 0;
};

struct CensusCandidate {
    int n = 0;  // grid size the candidate was found at
    GridDiagram grid;
    Fingerprint fp;
};

// Table-2 style report: identified knot classes counted by (arc index,
// table crossing number), unidentified fingerprint classes counted per arc
// index with one representative grid each.
struct TabulationReport {
    int n_min = 5;
    int n_max = 0;
    std::map<int, std::map<int, int>> identified;              // arc -> crossings -> count
    std::map<int, int> unidentified;                           // arc -> class count
    std::map<int, std::vector<std::string>> representatives;   // arc -> grid texts
    std::map<int, std::vector<std::string>> named;             // arc -> identified names

    int subtotal(int arc) const;
    std::string to_tsv() const;
    std::string to_pretty() const;
};

// Candidates must be grouped by increasing n and norm-ordered within each n;
// the arc index of a class is the smallest n at which it appeared.
TabulationReport tabulate(const std::vector<CensusCandidate>& candidates, const KnotTable& table);

Fingerprint unknot_fingerprint();

}  // namespace gridknot
