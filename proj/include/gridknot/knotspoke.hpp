#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridknot/diagram.hpp"
#include "gridknot/grid.hpp"

namespace gridknot {

// Planar combinatorial map of a knot-spoke diagram: a distinguished vertex
// v0 (id 0), 4-valent crossings, and 1-valent spoke tips.  Strand heights at
// v0 are kept as an ordered list of levels, top first; every level hosts
// exactly two strand ends (a passing strand, or spoke halves).  A spoke
// occupies two levels, one per half of its folded arc.
class KnotSpokeDiagram {
public:
    enum class VertexKind { Distinguished, Crossing, Tip };

    struct Dart {
        int vertex = -1;  // -1 when dead
        int edge = -1;
    };
    struct Edge {
        int dart0 = -1, dart1 = -1;  // spokes: dart0 at v0, dart1 at the tip
        bool spoke = false;
        bool alive = false;
    };
    struct Vertex {
        VertexKind kind = VertexKind::Crossing;
        std::vector<int> rotation;  // dart ids, counterclockwise
        int over_dart = -1;         // crossings: one dart of the over strand
        bool alive = false;
    };

    std::vector<Dart> darts;
    std::vector<Edge> edges;
    std::vector<Vertex> vertices;

    // Levels by stable id; level_order lists ids top first.  A level hosts
    // dart ends (dart_level) and/or spoke halves (spoke_level per edge).
    std::vector<int> level_order;
    std::vector<int> dart_level;                    // per dart id, -1 if none
    std::vector<std::pair<int, int>> spoke_level;   // per edge id, {-1,-1} if none
    int next_level_id = 0;
    bool loose_levels = false;  // submaps: height bookkeeping disabled

    static constexpr int v0 = 0;

    int alpha(int dart) const;              // other dart of the edge
    int sigma(int dart) const;              // next dart counterclockwise
    int rotation_index(int dart) const;
    int spoke_count() const;
    int non_spoke_edge_count() const;
    int region_count() const;               // faces of the map
    int level_position(int level_id) const; // 0 = top
    bool is_loop(int edge) const;
    int crossing_count() const;

    void check_valid() const;                // throws std::logic_error
};

struct Wheel {
    KnotSpokeDiagram diagram;  // no non-spoke edges
};

struct TraceStep {
    enum class Kind { Contract, SplitLoop, ShrinkSpoke, DropLoop, Relevel };
    Kind kind;
    std::vector<int> args;  // edge id; Relevel: a dart of the passing level
    bool over = false;      // Relevel: move to top (true) or bottom
    std::string tag;        // case annotation, free-form

    std::string to_line() const;
    static TraceStep from_line(const std::string&);
};

struct ContractionTrace {
    int promoted = -1;  // crossing promoted to v0; -1 = first of the traversal
    std::vector<TraceStep> steps;

    std::string serialize() const;
    static ContractionTrace parse(const std::string&);
};

// Promotes the first crossing of the Gauss traversal to v0.  Rejects
// non-reduced or non-prime inputs.
KnotSpokeDiagram from_planar(const PlanarKnotDiagram& d);

// Contracts edge e (incident to v0, other end a 4-valent crossing); the
// transversal strand receives a new extreme level and transversal loops fold
// into spokes.  Throws std::invalid_argument on loops, spokes, or edges not
// at v0; std::logic_error when region+spoke conservation breaks.
KnotSpokeDiagram contract(const KnotSpokeDiagram& d, int edge);

// v0 when some face meets v0 twice separating non-spoke edges; nullopt
// otherwise.
std::optional<int> cut_point(const KnotSpokeDiagram& d);

// Two non-loop non-spoke edges at v0 whose contraction stays cut-point free.
// Throws std::logic_error (lemma violation) when fewer than two exist.
std::pair<int, int> select_edges(const KnotSpokeDiagram& d);

// Repairs the cut-point created by contracting e: classifies the separating
// curve configuration (cases 1-3), spokes out one side, and ends with the
// prescribed final contraction.  Returns the applied steps and the result.
struct RepairResult {
    ContractionTrace trace;
    KnotSpokeDiagram diagram;
    int case_tag = 0;  // 1, 2, or 3
};
RepairResult repair_cutpoint(const KnotSpokeDiagram& d, int edge);

// Full Bae-Park pipeline: contract admissible edges until one loop remains,
// then split it into two spokes.  The wheel has exactly c+2 spokes.
std::pair<Wheel, ContractionTrace> to_wheel(const PlanarKnotDiagram& d);

// Signed Gauss code of the underlying knot (binder expansion); used for
// fingerprint checks at every rewrite step.
PlanarKnotDiagram expand(const KnotSpokeDiagram& d);

GridDiagram wheel_to_grid(const Wheel& w);

// Dual-graph restriction to non-alternating edges, with structural checks.
struct NonAltDual {
    int vertex_count = 0;                      // regions of d
    std::vector<std::pair<int, int>> edges;    // dual edges (region, region)
    std::vector<bool> region_alternating;      // all boundary edges alternating
};
NonAltDual nonalt_dual(const PlanarKnotDiagram& d);

struct CaseSite {
    int kind = 0;        // 1, 2, or 3
    int pattern = 0;     // case 3: 1 or 2
    bool over = false;   // case 1: the arc crosses over (true) or under
    std::vector<int> gauss_positions;  // witnessing visits, in gauss order
};
CaseSite classify_site(const PlanarKnotDiagram& d);

// Theorem 5 pipeline: one double reduction via the case machinery, then the
// wheel construction; the result has at most c(d) spokes.  Unhandled
// sub-configurations throw CaseFailure.
struct CaseFailure : std::runtime_error {
    explicit CaseFailure(const std::string& what) : std::runtime_error(what) {}
};
std::pair<Wheel, ContractionTrace> reduce_nonalternating(const PlanarKnotDiagram& d);

// Replays a trace against a source diagram, rechecking region+spoke
// conservation and returning every intermediate state.
std::vector<KnotSpokeDiagram> replay(const PlanarKnotDiagram& source, const ContractionTrace&);

}  // namespace gridknot
