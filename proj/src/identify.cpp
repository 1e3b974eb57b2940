#include "gridknot/identify.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gridknot {

Fingerprint unknot_fingerprint() {
    Fingerprint f;
    f.jones_norm = LaurentPolynomial(1);
    f.alexander_norm = LaurentPolynomial(1);
    f.det = 1;
    f.chiral = false;
    return f;
}

KnotTable KnotTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open knot table: " + path);
    KnotTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        KnotTableEntry e;
        std::string alt;
        if (!(ls >> e.name >> e.crossings >> alt))
            throw std::runtime_error("knot table line " + std::to_string(lineno) + ": malformed");
        if (alt != "a" && alt != "n")
            throw std::runtime_error("knot table line " + std::to_string(lineno) +
                                     ": alternating flag must be a or n");
        e.alternating = alt == "a";
        int v;
        while (ls >> v) e.dt.code.push_back(v);
        if ((int)e.dt.code.size() != e.crossings)
            throw std::runtime_error("knot table entry " + e.name +
                                     ": crossing count differs from DT length");
        PlanarKnotDiagram d = from_dt(e.dt);  // throws when not realizable
        if (is_alternating(d) != e.alternating)
            throw std::runtime_error("knot table entry " + e.name +
                                     ": alternating flag contradicts the realized diagram");
        e.fp = fingerprint(d);
        auto [it, fresh] = table.index_.emplace(e.fp.serialize(), (int)table.entries_.size());
        if (!fresh)
            throw std::runtime_error("knot table fingerprint collision: " + e.name + " vs " +
                                     table.entries_[it->second].name);
        table.entries_.push_back(std::move(e));
    }
    return table;
}

const KnotTableEntry* KnotTable::match(const Fingerprint& fp) const {
    auto it = index_.find(fp.serialize());
    return it == index_.end() ? nullptr : &entries_[it->second];
}

const KnotTableEntry* KnotTable::by_name(const std::string& name) const {
    for (auto& e : entries_)
        if (e.name == name) return &e;
    return nullptr;
}

MatchOutcome Matcher::match(const Fingerprint& fp) {
    if (fp == unknot_fingerprint()) return {MatchOutcome::Kind::Unknot, "unknot", -1};
    if (table_)
        if (const KnotTableEntry* e = table_->match(fp))
            return {MatchOutcome::Kind::Table, e->name, -1};
    auto [it, fresh] = classes_.emplace(fp.serialize(), next_class_);
    if (fresh) ++next_class_;
    return {MatchOutcome::Kind::Unidentified, "", it->second};
}

int TabulationReport::subtotal(int arc) const {
    int total = 0;
    if (auto it = identified.find(arc); it != identified.end())
        for (auto& [cr, count] : it->second) total += count;
    if (auto it = unidentified.find(arc); it != unidentified.end()) total += it->second;
    return total;
}

std::string TabulationReport::to_tsv() const {
    std::set<int> crossings;
    for (auto& [arc, cells] : identified)
        for (auto& [cr, count] : cells) crossings.insert(cr);
    std::ostringstream out;
    out << "crossings";
    for (int arc = n_min; arc <= n_max; ++arc) out << '\t' << arc;
    out << '\n';
    for (int cr : crossings) {
        out << cr;
        for (int arc = n_min; arc <= n_max; ++arc) {
            out << '\t';
            auto it = identified.find(arc);
            if (it != identified.end()) {
                auto jt = it->second.find(cr);
                if (jt != it->second.end()) out << jt->second;
            }
        }
        out << '\n';
    }
    out << "unidentified";
    for (int arc = n_min; arc <= n_max; ++arc) {
        out << '\t';
        auto it = unidentified.find(arc);
        if (it != unidentified.end() && it->second) out << it->second;
    }
    out << '\n' << "subtotal";
    for (int arc = n_min; arc <= n_max; ++arc) out << '\t' << subtotal(arc);
    out << '\n';
    return out.str();
}

std::string TabulationReport::to_pretty() const {
    std::ostringstream out;
    out << to_tsv();
    for (auto& [arc, names] : named) {
        out << "arc " << arc << ":";
        for (auto& name : names) out << ' ' << name;
        auto it = representatives.find(arc);
        if (it != representatives.end() && !it->second.empty())
            out << " (+" << it->second.size() << " unidentified)";
        out << '\n';
    }
    return out.str();
}

TabulationReport tabulate(const std::vector<CensusCandidate>& candidates, const KnotTable& table) {
    TabulationReport report;
    Matcher matcher(&table);
    std::set<std::string> seen;  // fingerprints from any smaller n
    std::set<int> seen_classes;
    report.n_max = 0;
    for (auto& cand : candidates) {
        report.n_max = std::max(report.n_max, cand.n);
        auto key = cand.fp.serialize();
        if (!seen.insert(key).second) continue;  // appeared at a smaller n or earlier norm
        MatchOutcome m = matcher.match(cand.fp);
        switch (m.kind) {
            case MatchOutcome::Kind::Unknot:
                break;  // never counted as a prime knot
            case MatchOutcome::Kind::Table: {
                const KnotTableEntry* e = table.match(cand.fp);
                report.identified[cand.n][e->crossings]++;
                report.named[cand.n].push_back(m.name);
                break;
            }
            case MatchOutcome::Kind::Unidentified:
                if (seen_classes.insert(m.class_id).second) {
                    report.unidentified[cand.n]++;
                    report.representatives[cand.n].push_back(cand.grid.to_text());
                }
                break;
        }
    }
    if (report.n_max < report.n_min) report.n_max = report.n_min;
    return report;
}

}  // namespace gridknot
