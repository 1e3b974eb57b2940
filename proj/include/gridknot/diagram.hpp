#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gridknot {

struct CrossingVisit {
    int crossing = 0;
    bool over = false;

    bool operator==(const CrossingVisit& o) const = default;
};

// Dowker-Thistlethwaite code: c signed even integers, |values| a permutation
// of {2,...,2c}. An even label is negated when the even-numbered passage of
// its crossing is an over-passage.
struct DTCode {
    std::vector<int> code;

    bool operator==(const DTCode& o) const { return code == o.code; }
    bool operator<(const DTCode& o) const { return code < o.code; }
    std::string to_text() const;  // "c v1 v2 ... vc"
    static DTCode from_text(const std::string&);
};

// Combinatorial oriented knot diagram: cyclic Gauss sequence of 2c visits
// plus per-crossing sign.  When `embedded` is set, the crossing rotations
// are carried as entry slots (slots 0..3 counterclockwise; a passage enters
// at its slot and exits at slot+2).  sign = +1 iff the under-strand enters
// one slot counterclockwise from the over-strand entry.
struct PlanarKnotDiagram {
    int c = 0;
    std::vector<CrossingVisit> gauss;  // 2c entries, cyclic
    std::vector<int> sign;             // per crossing
    bool embedded = false;
    std::vector<int> over_in;          // entry slot of the over passage
    std::vector<int> under_in;         // entry slot of the under passage

    int writhe() const;
    // Position of the over/under visit of each crossing in the gauss cycle.
    std::vector<int> over_pos() const;
    std::vector<int> under_pos() const;
    // Faces of the embedding; requires `embedded`.
    int face_count() const;
};

// Builds a diagram from a signed Gauss sequence without embedding data.
// Checks the two-visits-per-crossing and over/under pairing invariants.
PlanarKnotDiagram from_signed_gauss(const std::vector<CrossingVisit>& gauss,
                                    const std::vector<int>& sign);

// Deterministic code for the fixed traversal start; the canonical variant
// minimizes lexicographically over all 2c starts and both orientations.
DTCode dt_code(const PlanarKnotDiagram& d);
DTCode dt_code_at(const PlanarKnotDiagram& d, int start, int dir);

// Realizes a DT code as an embedded planar diagram, or throws
// std::invalid_argument when the pairing admits no planar embedding.
PlanarKnotDiagram from_dt(const DTCode& code);

bool is_prime_diagram(const PlanarKnotDiagram& d);
bool is_reduced(const PlanarKnotDiagram& d);
bool is_alternating(const PlanarKnotDiagram& d);
PlanarKnotDiagram mirror(const PlanarKnotDiagram& d);

// Kink and bigon removal to a local fixed point; never increases the
// crossing count and keeps the embedding valid.
PlanarKnotDiagram simplify(const PlanarKnotDiagram& d);

std::string gauss_dump(const PlanarKnotDiagram& d);  // debugging format

}  // namespace gridknot
