#include "gridknot/knotspoke.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gridknot {

int KnotSpokeDiagram::alpha(int dart) const {
    const Edge& e = edges[darts[dart].edge];
    return e.dart0 == dart ? e.dart1 : e.dart0;
}

int KnotSpokeDiagram::rotation_index(int dart) const {
    const auto& rot = vertices[darts[dart].vertex].rotation;
    for (std::size_t i = 0; i < rot.size(); ++i)
        if (rot[i] == dart) return (int)i;
    throw std::logic_error("dart missing from its vertex rotation");
}

int KnotSpokeDiagram::sigma(int dart) const {
    const auto& rot = vertices[darts[dart].vertex].rotation;
    int i = rotation_index(dart);
    return rot[(i + 1) % rot.size()];
}

int KnotSpokeDiagram::spoke_count() const {
    int s = 0;
    for (auto& e : edges)
        if (e.alive && e.spoke) ++s;
    return s;
}

int KnotSpokeDiagram::non_spoke_edge_count() const {
    int s = 0;
    for (auto& e : edges)
        if (e.alive && !e.spoke) ++s;
    return s;
}

bool KnotSpokeDiagram::is_loop(int edge) const {
    const Edge& e = edges[edge];
    return darts[e.dart0].vertex == darts[e.dart1].vertex;
}

int KnotSpokeDiagram::crossing_count() const {
    int c = 0;
    for (auto& v : vertices)
        if (v.alive && v.kind == VertexKind::Crossing) ++c;
    return c;
}

int KnotSpokeDiagram::region_count() const {
    std::vector<int> face(darts.size(), -1);
    int faces = 0;
    for (std::size_t d0 = 0; d0 < darts.size(); ++d0) {
        if (darts[d0].vertex < 0 || face[d0] >= 0) continue;
        int d = (int)d0;
        while (face[d] < 0) {
            face[d] = faces;
            d = sigma(alpha(d));
        }
        ++faces;
    }
    return faces;
}

int KnotSpokeDiagram::level_position(int level_id) const {
    for (std::size_t i = 0; i < level_order.size(); ++i)
        if (level_order[i] == level_id) return (int)i;
    throw std::logic_error("unknown level id");
}

void KnotSpokeDiagram::check_valid() const {
    std::map<int, int> level_use;
    bool strict = !loose_levels;
    for (std::size_t d = 0; d < darts.size(); ++d) {
        if (darts[d].vertex < 0) continue;
        const Vertex& v = vertices[darts[d].vertex];
        if (!v.alive) throw std::logic_error("dart on dead vertex");
        if (!edges[darts[d].edge].alive) throw std::logic_error("dart on dead edge");
        if (dart_level[d] >= 0) {
            if (darts[d].vertex != v0) throw std::logic_error("level on non-v0 dart");
            level_use[dart_level[d]]++;
        }
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!edges[e].alive) continue;
        if (edges[e].spoke) {
            if (!loose_levels && (spoke_level[e].first < 0 || spoke_level[e].second < 0))
                throw std::logic_error("spoke without level pair");
            if (spoke_level[e].first >= 0) level_use[spoke_level[e].first]++;
            if (spoke_level[e].second >= 0) level_use[spoke_level[e].second]++;
            if (darts[edges[e].dart0].vertex != v0)
                throw std::logic_error("spoke not rooted at v0");
            if (vertices[darts[edges[e].dart1].vertex].kind != VertexKind::Tip)
                throw std::logic_error("spoke without tip");
        } else if (!loose_levels) {
            for (int d : {edges[e].dart0, edges[e].dart1})
                if (darts[d].vertex == v0 && dart_level[d] < 0)
                    throw std::logic_error("v0 strand end without level");
        }
    }
    if (strict) {
        for (int lvl : level_order)
            if (level_use[lvl] != 2)
                throw std::logic_error("level must host exactly two strand ends");
        if ((int)level_use.size() != (int)level_order.size())
            throw std::logic_error("level bookkeeping out of sync");
    }
    for (std::size_t vi = 0; vi < vertices.size(); ++vi) {
        const Vertex& v = vertices[vi];
        if (!v.alive) continue;
        for (int d : v.rotation)
            if (darts[d].vertex != (int)vi) throw std::logic_error("rotation/vertex mismatch");
        if (v.kind == VertexKind::Crossing && v.rotation.size() != 4)
            throw std::logic_error("crossing must be 4-valent");
        if (v.kind == VertexKind::Tip && v.rotation.size() != 1)
            throw std::logic_error("tip must be 1-valent");
    }
    // Planarity: V - E + F = 2.
    int V = 0, E = 0;
    for (auto& v : vertices) V += v.alive;
    for (auto& e : edges) E += e.alive;
    if (V - E + region_count() != 2) throw std::logic_error("map is not planar-connected");
}

namespace {

int new_level(KnotSpokeDiagram& d, bool top) {
    int id = d.next_level_id++;
    if (top)
        d.level_order.insert(d.level_order.begin(), id);
    else
        d.level_order.push_back(id);
    return id;
}

void drop_level(KnotSpokeDiagram& d, int id) {
    d.level_order.erase(std::find(d.level_order.begin(), d.level_order.end(), id));
}

int new_dart(KnotSpokeDiagram& d, int vertex, int edge) {
    d.darts.push_back({vertex, edge});
    d.dart_level.push_back(-1);
    return (int)d.darts.size() - 1;
}

void kill_dart(KnotSpokeDiagram& d, int dart) {
    d.darts[dart] = {-1, -1};
    d.dart_level[dart] = -1;
}

// Replaces the loop edge (one dart freshly moved to v0 at an extreme level)
// by a spoke anchored at the other dart's rotation slot.
void fold_loop_to_spoke(KnotSpokeDiagram& d, int edge, int arrived_dart) {
    KnotSpokeDiagram::Edge& e = d.edges[edge];
    int old_dart = e.dart0 == arrived_dart ? e.dart1 : e.dart0;
    auto& rot = d.vertices[KnotSpokeDiagram::v0].rotation;
    rot.erase(std::find(rot.begin(), rot.end(), arrived_dart));
    int tip = (int)d.vertices.size();
    d.vertices.push_back({KnotSpokeDiagram::VertexKind::Tip, {}, -1, true});
    int tip_dart = new_dart(d, tip, edge);
    d.vertices[tip].rotation = {tip_dart};
    d.spoke_level[edge] = {d.dart_level[old_dart], d.dart_level[arrived_dart]};
    d.dart_level[old_dart] = -1;
    kill_dart(d, arrived_dart);
    e.spoke = true;
    e.dart0 = old_dart;
    e.dart1 = tip_dart;
}

}  // namespace

KnotSpokeDiagram from_planar(const PlanarKnotDiagram& d) {
    if (!d.embedded) throw std::invalid_argument("from_planar requires an embedded diagram");
    if (d.c < 1) throw std::invalid_argument("from_planar requires at least one crossing");
    if (!is_reduced(d) || !is_prime_diagram(d))
        throw std::invalid_argument("from_planar rejects non-reduced or non-prime inputs");

    int promoted = d.gauss[0].crossing;
    KnotSpokeDiagram m;
    m.darts.resize(4 * d.c);
    m.dart_level.assign(4 * d.c, -1);
    m.edges.resize(2 * d.c);
    m.spoke_level.assign(2 * d.c, {-1, -1});
    m.vertices.resize(d.c);
    // Vertex ids: promoted crossing becomes v0 (id 0), others keep relative
    // order shifted by one.
    auto vid = [&](int crossing) {
        if (crossing == promoted) return 0;
        return crossing < promoted ? crossing + 1 : crossing;
    };
    for (int x = 0; x < d.c; ++x) {
        int v = vid(x);
        m.vertices[v].alive = true;
        m.vertices[v].kind = x == promoted ? KnotSpokeDiagram::VertexKind::Distinguished
                                           : KnotSpokeDiagram::VertexKind::Crossing;
        for (int s = 0; s < 4; ++s) {
            m.vertices[v].rotation.push_back(4 * x + s);
            m.darts[4 * x + s].vertex = v;
        }
        m.vertices[v].over_dart = 4 * x + d.over_in[x];
    }
    // Edges from the traversal: exit slot of visit i meets entry slot of the
    // next visit.
    int n = 2 * d.c;
    auto entry_slot = [&](int i) {
        auto& v = d.gauss[i];
        return v.over ? d.over_in[v.crossing] : d.under_in[v.crossing];
    };
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        int d_exit = 4 * d.gauss[i].crossing + (entry_slot(i) + 2) % 4;
        int d_entry = 4 * d.gauss[j].crossing + entry_slot(j);
        m.edges[i] = {d_exit, d_entry, false, true};
        m.darts[d_exit].edge = i;
        m.darts[d_entry].edge = i;
    }
    // Heights at v0: over strand on top.
    int over_a = 4 * promoted + d.over_in[promoted];
    int over_b = 4 * promoted + (d.over_in[promoted] + 2) % 4;
    int under_a = 4 * promoted + d.under_in[promoted];
    int under_b = 4 * promoted + (d.under_in[promoted] + 2) % 4;
    int top = new_level(m, false), bottom = new_level(m, false);
    m.dart_level[over_a] = m.dart_level[over_b] = top;
    m.dart_level[under_a] = m.dart_level[under_b] = bottom;
    m.check_valid();
    return m;
}

KnotSpokeDiagram contract(const KnotSpokeDiagram& src, int edge) {
    if (edge < 0 || edge >= (int)src.edges.size() || !src.edges[edge].alive)
        throw std::invalid_argument("contract: no such edge");
    if (src.edges[edge].spoke) throw std::invalid_argument("contract rejects spokes");
    if (src.is_loop(edge)) throw std::invalid_argument("contract rejects loops");
    const auto& e = src.edges[edge];
    int h, a;
    if (src.darts[e.dart0].vertex == KnotSpokeDiagram::v0) {
        h = e.dart0;
        a = e.dart1;
    } else if (src.darts[e.dart1].vertex == KnotSpokeDiagram::v0) {
        h = e.dart1;
        a = e.dart0;
    } else {
        throw std::invalid_argument("contract: edge not incident to v0");
    }
    int v1 = src.darts[a].vertex;
    if (src.vertices[v1].kind != KnotSpokeDiagram::VertexKind::Crossing)
        throw std::invalid_argument("contract: far endpoint is not a 4-valent crossing");

    int before = src.region_count() + src.spoke_count();
    KnotSpokeDiagram d = src;

    const auto& rot1 = d.vertices[v1].rotation;
    int i = d.rotation_index(a);
    int db = rot1[(i + 1) % 4], dc = rot1[(i + 2) % 4], dd = rot1[(i + 3) % 4];
    bool transversal_over = d.vertices[v1].over_dart == db || d.vertices[v1].over_dart == dd;

    // Continuing strand keeps e's height; transversal gets a fresh extreme.
    d.dart_level[dc] = d.dart_level[h];
    int lvl = new_level(d, transversal_over);
    d.dart_level[db] = d.dart_level[dd] = lvl;

    auto& rot0 = d.vertices[KnotSpokeDiagram::v0].rotation;
    auto pos = std::find(rot0.begin(), rot0.end(), h);
    pos = rot0.erase(pos);
    pos = rot0.insert(pos, dd);
    pos = rot0.insert(pos, dc);
    rot0.insert(pos, db);
    for (int moved : {db, dc, dd}) d.darts[moved].vertex = KnotSpokeDiagram::v0;

    d.edges[edge].alive = false;
    kill_dart(d, h);
    kill_dart(d, a);
    d.vertices[v1].alive = false;
    d.vertices[v1].rotation.clear();

    // Transversal loops fold into spokes (their far half sits at the fresh
    // extreme level, so the fold sweeps freely).
    int eb = d.darts[db].edge, ed = d.darts[dd].edge;
    if (eb == ed) throw std::logic_error("contract: transversal edges coincide");
    for (auto [x, arrived] : {std::pair{eb, db}, std::pair{ed, dd}})
        if (!d.edges[x].spoke && d.darts[d.edges[x].dart0].vertex == KnotSpokeDiagram::v0 &&
            d.darts[d.edges[x].dart1].vertex == KnotSpokeDiagram::v0)
            fold_loop_to_spoke(d, x, arrived);
    // A loop on the continuing strand stays; v0 may become a cut-point.

    int after = d.region_count() + d.spoke_count();
    if (after != before)
        throw std::logic_error("contract broke region+spoke conservation: " +
                               std::to_string(before) + " -> " + std::to_string(after));
    d.check_valid();
    return d;
}

namespace {

// Face id per dart; the corner after rotation slot k at a vertex belongs to
// the face of the next dart in rotation.
std::vector<int> face_of_dart(const KnotSpokeDiagram& d) {
    std::vector<int> face(d.darts.size(), -1);
    int faces = 0;
    for (std::size_t d0 = 0; d0 < d.darts.size(); ++d0) {
        if (d.darts[d0].vertex < 0 || face[d0] >= 0) continue;
        int cur = (int)d0;
        while (face[cur] < 0) {
            face[cur] = faces;
            cur = d.sigma(d.alpha(cur));
        }
        ++faces;
    }
    return face;
}

// A witness: two corners of one face at `vertex` whose curve separates the
// non-spoke edges into two nonempty parts without crossing any edge.
struct CutWitness {
    std::set<int> side1, side2;  // non-spoke edge ids per side
};

std::vector<CutWitness> cut_witnesses(const KnotSpokeDiagram& d, int vertex) {
    std::vector<CutWitness> out;
    const auto& rot = d.vertices[vertex].rotation;
    int m = (int)rot.size();
    if (m == 0) return out;
    auto face = face_of_dart(d);
    std::map<int, std::vector<int>> corners;  // face -> corner slots at vertex
    for (int k = 0; k < m; ++k) corners[face[rot[(k + 1) % m]]].push_back(k);
    std::set<std::set<int>> seen;
    for (auto& [f, ks] : corners) {
        if (ks.size() < 2) continue;
        for (std::size_t x = 0; x < ks.size(); ++x)
            for (std::size_t y = x + 1; y < ks.size(); ++y) {
                std::set<int> side1, side2;
                for (int k = ks[x] + 1; k <= ks[y]; ++k) {
                    int dart = rot[((k % m) + m) % m];
                    if (!d.edges[d.darts[dart].edge].spoke) side1.insert(d.darts[dart].edge);
                }
                for (int k = ks[y] + 1; k <= ks[x] + m; ++k) {
                    int dart = rot[((k % m) + m) % m];
                    if (!d.edges[d.darts[dart].edge].spoke) side2.insert(d.darts[dart].edge);
                }
                // A loop with one dart on each side would be crossed by the
                // curve; that corner pair is not a witness.
                bool blocked = false;
                for (int e : side1)
                    if (side2.count(e)) blocked = true;
                if (blocked || side1.empty() || side2.empty()) continue;
                if (seen.insert(std::min(side1, side2)).second)
                    out.push_back({std::move(side1), std::move(side2)});
            }
    }
    return out;
}

// All edges and vertices reachable from the given v0-incident edges without
// passing through v0 (one side of a witness curve).
struct SidePiece {
    std::set<int> edge_set;
    std::set<int> vertex_set;  // excludes v0
};

SidePiece side_closure(const KnotSpokeDiagram& d, const std::set<int>& seed_edges) {
    SidePiece side;
    std::vector<int> stack(seed_edges.begin(), seed_edges.end());
    while (!stack.empty()) {
        int e = stack.back();
        stack.pop_back();
        if (!side.edge_set.insert(e).second) continue;
        for (int dart : {d.edges[e].dart0, d.edges[e].dart1}) {
            int v = d.darts[dart].vertex;
            if (v == KnotSpokeDiagram::v0 || !side.vertex_set.insert(v).second) continue;
            for (int vd : d.vertices[v].rotation) stack.push_back(d.darts[vd].edge);
        }
    }
    return side;
}

}  // namespace

std::optional<int> cut_point(const KnotSpokeDiagram& d) {
    if (!cut_witnesses(d, KnotSpokeDiagram::v0).empty()) return KnotSpokeDiagram::v0;
    return std::nullopt;
}

std::pair<int, int> select_edges(const KnotSpokeDiagram& d) {
    std::vector<int> admissible;
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
        if (!d.edges[e].alive || d.edges[e].spoke || d.is_loop((int)e)) continue;
        int va = d.darts[d.edges[e].dart0].vertex, vb = d.darts[d.edges[e].dart1].vertex;
        if (va != KnotSpokeDiagram::v0 && vb != KnotSpokeDiagram::v0) continue;
        int far = va == KnotSpokeDiagram::v0 ? vb : va;
        if (d.vertices[far].kind != KnotSpokeDiagram::VertexKind::Crossing) continue;
        if (!cut_point(contract(d, (int)e))) admissible.push_back((int)e);
        if (admissible.size() >= 2) break;
    }
    if (admissible.size() < 2)
        throw std::logic_error("lemma violation: fewer than two admissible edges (found " +
                               std::to_string(admissible.size()) + ")");
    return {admissible[0], admissible[1]};
}

namespace {

KnotSpokeDiagram split_loop(const KnotSpokeDiagram& src, int edge) {
    if (!src.edges[edge].alive || src.edges[edge].spoke || !src.is_loop(edge))
        throw std::invalid_argument("split_loop expects a live loop at v0");
    KnotSpokeDiagram d = src;
    int d1 = d.edges[edge].dart0, d2 = d.edges[edge].dart1;
    int lvl = new_level(d, true);
    for (int dart : {d1, d2}) {
        int eid = (int)d.edges.size();
        d.edges.push_back({dart, -1, true, true});
        d.spoke_level.push_back({d.dart_level[dart], lvl});
        int tip = (int)d.vertices.size();
        d.vertices.push_back({KnotSpokeDiagram::VertexKind::Tip, {}, -1, true});
        int tip_dart = new_dart(d, tip, eid);
        d.vertices[tip].rotation = {tip_dart};
        d.edges[eid].dart1 = tip_dart;
        d.darts[dart].edge = eid;
        d.dart_level[dart] = -1;
    }
    d.edges[edge].alive = false;
    d.check_valid();
    return d;
}

}  // namespace

std::string TraceStep::to_line() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Contract: out << "contract e" << args[0]; break;
        case Kind::SplitLoop: out << "split e" << args[0]; break;
        case Kind::ShrinkSpoke: out << "shrink e" << args[0]; break;
        case Kind::DropLoop: out << "droploop e" << args[0]; break;
        case Kind::Relevel:
            out << "relevel d" << args[0] << ' ' << (over ? "top" : "bottom");
            break;
    }
    if (!tag.empty()) out << "  # " << tag;
    return out.str();
}

TraceStep TraceStep::from_line(const std::string& line) {
    TraceStep s;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream in(body);
    std::string word;
    if (!(in >> word)) throw std::invalid_argument("empty trace line");
    auto parse_ref = [&](char prefix) {
        std::string tok;
        if (!(in >> tok) || tok[0] != prefix)
            throw std::invalid_argument("bad trace reference in: " + line);
        return std::stoi(tok.substr(1));
    };
    if (word == "contract") {
        s.kind = Kind::Contract;
        s.args = {parse_ref('e')};
    } else if (word == "split") {
        s.kind = Kind::SplitLoop;
        s.args = {parse_ref('e')};
    } else if (word == "shrink") {
        s.kind = Kind::ShrinkSpoke;
        s.args = {parse_ref('e')};
    } else if (word == "droploop") {
        s.kind = Kind::DropLoop;
        s.args = {parse_ref('e')};
    } else if (word == "relevel") {
        s.kind = Kind::Relevel;
        s.args = {parse_ref('d')};
        std::string where;
        in >> where;
        s.over = where == "top";
    } else {
        throw std::invalid_argument("unknown trace step: " + word);
    }
    auto hash = line.find('#');
    if (hash != std::string::npos) {
        s.tag = line.substr(hash + 1);
        while (!s.tag.empty() && s.tag.front() == ' ') s.tag.erase(s.tag.begin());
    }
    return s;
}

std::string ContractionTrace::serialize() const {
    std::string out;
    if (promoted >= 0) out += "promote v" + std::to_string(promoted) + "\n";
    for (auto& s : steps) out += s.to_line() + "\n";
    return out;
}

ContractionTrace ContractionTrace::parse(const std::string& text) {
    ContractionTrace t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("promote v", 0) == 0) {
            t.promoted = std::stoi(line.substr(9));
            continue;
        }
        t.steps.push_back(TraceStep::from_line(line));
    }
    return t;
}

std::pair<Wheel, ContractionTrace> to_wheel(const PlanarKnotDiagram& d0) {
    KnotSpokeDiagram d = from_planar(d0);
    ContractionTrace trace;
    while (d.non_spoke_edge_count() > 1) {
        auto [e, f] = select_edges(d);
        (void)f;
        d = contract(d, e);
        trace.steps.push_back({TraceStep::Kind::Contract, {e}, false, ""});
    }
    int last = -1;
    for (std::size_t e = 0; e < d.edges.size(); ++e)
        if (d.edges[e].alive && !d.edges[e].spoke) last = (int)e;
    if (last < 0 || !d.is_loop(last))
        throw std::logic_error("wheel construction did not end in a single loop");
    d = split_loop(d, last);
    trace.steps.push_back({TraceStep::Kind::SplitLoop, {last}, false, ""});
    return {Wheel{d}, trace};
}

GridDiagram wheel_to_grid(const Wheel& w) {
    const KnotSpokeDiagram& d = w.diagram;
    if (d.non_spoke_edge_count() != 0)
        throw std::invalid_argument("wheel_to_grid: diagram still has non-spoke edges");
    GridDiagram g;
    g.n = d.spoke_count();
    if ((int)d.level_order.size() != g.n)
        throw std::logic_error("wheel has mismatched level and spoke counts");
    for (int dart : d.vertices[KnotSpokeDiagram::v0].rotation) {
        int e = d.darts[dart].edge;
        if (!d.edges[e].spoke) throw std::logic_error("non-spoke dart in wheel rotation");
        int r1 = d.level_position(d.spoke_level[e].first);
        int r2 = d.level_position(d.spoke_level[e].second);
        g.cols.push_back({std::min(r1, r2), std::max(r1, r2)});
    }
    auto v = validate(g);
    if (!v.ok) throw std::logic_error("wheel produced an invalid grid: " + v.reason);
    return g;
}

// ---------------------------------------------------------------------------
// Binder expansion: recover a signed Gauss code for the underlying knot.
//
// The disk around v0 is cut open into a segment of boundary points (the v0
// rotation order; spokes contribute two adjacent points).  The strand at
// level rank k is drawn at depth d_k, deeper for higher levels: it dives at
// its first endpoint, runs parallel to the boundary, and rises at its second
// endpoint.  Chord a (higher, deeper) and chord b > a (lower, shallower)
// cross exactly once per endpoint of a strictly inside b's span: a's
// vertical leg meets b's horizontal run.  All crossing orders reduce to
// integer comparisons.

namespace {

struct BoundaryPoint {
    int chord;      // level rank (0 = top)
    int dart;       // non-spoke dart at v0, or -1
    int spoke_edge; // spoke id when dart == -1
    int half;       // spoke half
};

}  // namespace

PlanarKnotDiagram expand(const KnotSpokeDiagram& d) {
    std::vector<BoundaryPoint> pts;
    auto rank_of_level = [&](int lvl) { return d.level_position(lvl); };
    for (int dart : d.vertices[KnotSpokeDiagram::v0].rotation) {
        int e = d.darts[dart].edge;
        if (d.edges[e].spoke) {
            pts.push_back({rank_of_level(d.spoke_level[e].first), -1, e, 0});
            pts.push_back({rank_of_level(d.spoke_level[e].second), -1, e, 1});
        } else {
            pts.push_back({rank_of_level(d.dart_level[dart]), dart, -1, -1});
        }
    }
    int m = (int)d.level_order.size();
    std::vector<std::array<int, 2>> span(m, {-1, -1});  // chord -> endpoint positions x1 < x2
    for (int x = 0; x < (int)pts.size(); ++x) {
        auto& s = span[pts[x].chord];
        (s[0] < 0 ? s[0] : s[1]) = x;
    }
    for (auto& s : span)
        if (s[1] < 0) throw std::logic_error("level without two ends");

    // Interior crossings: chord a's leg at endpoint p inside chord b's span,
    // a < b (a is higher and passes over).
    struct IC {
        int leg_chord, run_chord, p;
    };
    std::vector<IC> inter;
    std::map<std::pair<int, int>, int> ic_at;  // (leg endpoint p, run chord) -> id
    for (int b = 0; b < m; ++b)
        for (int a = 0; a < b; ++a)
            for (int p : span[a])
                if (span[b][0] < p && p < span[b][1]) {
                    ic_at[{p, b}] = (int)inter.size();
                    inter.push_back({a, b, p});
                }

    // Visit order along each chord's path from span[0] to span[1]:
    //   dive leg: runs of shallower chords, deepest encountered first;
    //   run: legs at interior points, by position;
    //   rise leg: shallowest first.
    std::vector<std::vector<int>> path(m);
    std::vector<int> chord_of_point(pts.size());
    for (int k = 0; k < m; ++k) {
        chord_of_point[span[k][0]] = k;
        chord_of_point[span[k][1]] = k;
    }
    for (int k = 0; k < m; ++k) {
        for (int b = m - 1; b > k; --b)
            if (auto it = ic_at.find({span[k][0], b}); it != ic_at.end())
                path[k].push_back(it->second);
        for (int p = span[k][0] + 1; p < span[k][1]; ++p) {
            int a = chord_of_point[p];
            if (a < k) path[k].push_back(ic_at.at({p, k}));
        }
        for (int b = k + 1; b < m; ++b)
            if (auto it = ic_at.find({span[k][1], b}); it != ic_at.end())
                path[k].push_back(it->second);
    }

    // Global crossing ids: map crossings first (vertex order), then interior.
    std::map<int, int> xid;
    int next_id = 0;
    for (std::size_t v = 0; v < d.vertices.size(); ++v)
        if (d.vertices[v].alive && d.vertices[v].kind == KnotSpokeDiagram::VertexKind::Crossing)
            xid[(int)v] = next_id++;
    int interior_base = next_id;
    int total = interior_base + (int)inter.size();

    std::vector<CrossingVisit> gauss;
    std::vector<int> sign(total, 1);
    std::vector<int> over_entry(total, -1), under_entry(total, -1);
    std::vector<int> chord_dir(m, 0);  // +1: traversed span0 -> span1

    struct Token {
        int t;  // 0: edge from dart a; 1: disk at point a
        int a;
        bool operator==(const Token&) const = default;
    };
    auto pt_of_dart = [&](int dart) {
        for (int x = 0; x < (int)pts.size(); ++x)
            if (pts[x].dart == dart) return x;
        throw std::logic_error("boundary point for dart missing");
    };
    auto pt_of_half = [&](int e, int half) {
        for (int x = 0; x < (int)pts.size(); ++x)
            if (pts[x].spoke_edge == e && pts[x].half == half) return x;
        throw std::logic_error("boundary point for spoke half missing");
    };

    Token start{0, -1};
    for (std::size_t e = 0; e < d.edges.size(); ++e)
        if (d.edges[e].alive && !d.edges[e].spoke) {
            start = {0, d.edges[e].dart0};
            break;
        }
    if (start.a < 0) {
        for (std::size_t e = 0; e < d.edges.size(); ++e)
            if (d.edges[e].alive && d.edges[e].spoke) {
                start = {1, pt_of_half((int)e, 0)};
                break;
            }
        if (start.a < 0) throw std::logic_error("expand: empty diagram");
    }

    Token cur = start;
    bool looped = false;
    while (!looped || !(cur == start)) {
        looped = true;
        if (cur.t == 0) {
            int far = d.alpha(cur.a);
            int v = d.darts[far].vertex;
            if (v == KnotSpokeDiagram::v0) {
                cur = {1, pt_of_dart(far)};
                continue;
            }
            auto& vert = d.vertices[v];
            if (vert.kind != KnotSpokeDiagram::VertexKind::Crossing)
                throw std::logic_error("expand: strand ran into a tip");
            int idx = d.rotation_index(far);
            int exit = vert.rotation[(idx + 2) % 4];
            bool over = vert.over_dart == far || vert.over_dart == exit;
            int cid = xid[v];
            gauss.push_back({cid, over});
            (over ? over_entry : under_entry)[cid] = far;
            cur = {0, exit};
            continue;
        }
        int k = pts[cur.a].chord;
        bool forward = cur.a == span[k][0];
        chord_dir[k] = forward ? 1 : -1;
        auto emit = [&](int ic_id) {
            bool over = inter[ic_id].leg_chord == k;  // the leg chord is higher
            gauss.push_back({interior_base + ic_id, over});
        };
        if (forward)
            for (int id : path[k]) emit(id);
        else
            for (auto it = path[k].rbegin(); it != path[k].rend(); ++it) emit(*it);
        int out_pt = forward ? span[k][1] : span[k][0];
        const BoundaryPoint& q = pts[out_pt];
        if (q.dart >= 0)
            cur = {0, q.dart};
        else
            cur = {1, pt_of_half(q.spoke_edge, 1 - q.half)};
    }

    if ((int)gauss.size() != 2 * total)
        throw std::logic_error("expand traversal missed crossings (multi-component state?)");

    for (auto& [v, cid] : xid) {
        int oi = d.rotation_index(over_entry[cid]);
        int ui = d.rotation_index(under_entry[cid]);
        sign[cid] = ui == (oi + 1) % 4 ? 1 : -1;
    }
    for (std::size_t i = 0; i < inter.size(); ++i) {
        const IC& ic = inter[i];
        int a = ic.leg_chord, b = ic.run_chord;
        // The boundary line runs left-to-right in v0 rotation order with the
        // disk interior above it.  The leg points into the disk (up) at the
        // start of a's traversal; sign = cross(over_dir, under_dir) with the
        // leg on top.
        bool at_start = (chord_dir[a] > 0) == (ic.p == span[a][0]);
        int run_dir = chord_dir[b];
        if (!chord_dir[a] || !run_dir) throw std::logic_error("expand: chord direction missing");
        sign[interior_base + (int)i] = (at_start ? -1 : 1) * run_dir;
    }
    return from_signed_gauss(gauss, sign);
}

// ---------------------------------------------------------------------------
// Height-preserving rewrites used by the theorem-5 pipeline.

namespace {


// Boundary positions of each level's two strand ends around v0 (spokes
// contribute two adjacent positions).  Used for the height-move validity
// tests: two levels whose end pairs interleave cannot exchange heights.
std::map<int, std::pair<int, int>> level_boundary_spans(const KnotSpokeDiagram& d) {
    std::map<int, std::vector<int>> ends;
    int x = 0;
    for (int dart : d.vertices[KnotSpokeDiagram::v0].rotation) {
        int e = d.darts[dart].edge;
        if (d.edges[e].spoke) {
            ends[d.spoke_level[e].first].push_back(x++);
            ends[d.spoke_level[e].second].push_back(x++);
        } else {
            ends[d.dart_level[dart]].push_back(x++);
        }
    }
    std::map<int, std::pair<int, int>> span;
    for (auto& [lvl, v] : ends) {
        if (v.size() != 2) throw std::logic_error("level without two boundary ends");
        span[lvl] = {v[0], v[1]};
    }
    return span;
}

bool spans_interleave(std::pair<int, int> a, std::pair<int, int> b) {
    auto between = [](int lo, int hi, int x) {
        return lo < hi ? (lo < x && x < hi) : (x > lo || x < hi);
    };
    return between(a.first, a.second, b.first) != between(a.first, a.second, b.second);
}

bool level_has_spoke_half(const KnotSpokeDiagram& d, int lvl) {
    for (std::size_t e = 0; e < d.edges.size(); ++e)
        if (d.edges[e].alive && d.edges[e].spoke &&
            (d.spoke_level[e].first == lvl || d.spoke_level[e].second == lvl))
            return true;
    return false;
}

// Removes a spoke, flattening its folded arc into a single passing level.
// Valid when no level strictly between its two levels is anchored on the
// binder by a spoke half; passing strands dodge the retracting fold.
KnotSpokeDiagram shrink_spoke(const KnotSpokeDiagram& src, int edge) {
    if (!src.edges[edge].alive || !src.edges[edge].spoke)
        throw std::invalid_argument("shrink_spoke expects a live spoke");
    KnotSpokeDiagram d = src;
    auto [la, lb] = d.spoke_level[edge];
    int pa = d.level_position(la), pb = d.level_position(lb);
    if (pa > pb) {
        std::swap(la, lb);
        std::swap(pa, pb);
    }
    for (int p = pa + 1; p < pb; ++p)
        if (level_has_spoke_half(d, d.level_order[p]) )
            throw std::invalid_argument("shrink_spoke: a binder point blocks the fold");
    // Move lb's other occupant onto la, drop lb and the spoke.
    auto move_occupants = [&](int from, int to) {
        for (std::size_t dd = 0; dd < d.darts.size(); ++dd)
            if (d.dart_level[dd] == from) d.dart_level[dd] = to;
        for (std::size_t e2 = 0; e2 < d.edges.size(); ++e2) {
            if (!d.edges[e2].alive || !d.edges[e2].spoke || (int)e2 == edge) continue;
            if (d.spoke_level[e2].first == from) d.spoke_level[e2].first = to;
            if (d.spoke_level[e2].second == from) d.spoke_level[e2].second = to;
        }
    };
    move_occupants(lb, la);
    drop_level(d, lb);
    int tip_dart = d.edges[edge].dart1;
    int v0_dart = d.edges[edge].dart0;
    d.vertices[d.darts[tip_dart].vertex].alive = false;
    d.vertices[d.darts[tip_dart].vertex].rotation.clear();
    auto& rot = d.vertices[KnotSpokeDiagram::v0].rotation;
    rot.erase(std::find(rot.begin(), rot.end(), v0_dart));
    kill_dart(d, tip_dart);
    kill_dart(d, v0_dart);
    d.spoke_level[edge] = {-1, -1};
    d.edges[edge].alive = false;
    d.check_valid();
    return d;
}

// Removes a loop at v0 enclosing no other strand ends, merging its two
// (adjacent) levels.
KnotSpokeDiagram drop_loop(const KnotSpokeDiagram& src, int edge) {
    if (!src.edges[edge].alive || src.edges[edge].spoke || !src.is_loop(edge))
        throw std::invalid_argument("drop_loop expects a live loop at v0");
    KnotSpokeDiagram d = src;
    int d1 = d.edges[edge].dart0, d2 = d.edges[edge].dart1;
    auto& rot = d.vertices[KnotSpokeDiagram::v0].rotation;
    int i1 = d.rotation_index(d1), i2 = d.rotation_index(d2);
    int m = (int)rot.size();
    bool adjacent = (i1 + 1) % m == i2 || (i2 + 1) % m == i1;
    if (!adjacent) throw std::invalid_argument("drop_loop: loop encloses strand ends");
    int la = d.dart_level[d1], lb = d.dart_level[d2];
    int pa = d.level_position(la), pb = d.level_position(lb);
    if (pa > pb) std::swap(pa, pb);
    for (int p = pa + 1; p < pb; ++p)
        if (level_has_spoke_half(d, d.level_order[p]))
            throw std::invalid_argument("drop_loop: a binder point blocks the flattening");
    for (std::size_t dd = 0; dd < d.darts.size(); ++dd)
        if (d.dart_level[dd] == lb && (int)dd != d2) d.dart_level[dd] = la;
    for (std::size_t e2 = 0; e2 < d.edges.size(); ++e2) {
        if (!d.edges[e2].alive || !d.edges[e2].spoke) continue;
        if (d.spoke_level[e2].first == lb) d.spoke_level[e2].first = la;
        if (d.spoke_level[e2].second == lb) d.spoke_level[e2].second = la;
    }
    drop_level(d, lb);
    rot.erase(std::find(rot.begin(), rot.end(), d1));
    rot.erase(std::find(rot.begin(), rot.end(), d2));
    kill_dart(d, d1);
    kill_dart(d, d2);
    d.edges[edge].alive = false;
    d.check_valid();
    return d;
}

// Moves a passing strand's level as far toward an extreme as its chord can
// go: it may pass chords it does not interleave with, but an interleaving
// chord forces a crossing and stops the slide.
KnotSpokeDiagram move_level(const KnotSpokeDiagram& src, int dart, bool to_top) {
    KnotSpokeDiagram d = src;
    if (dart < 0 || dart >= (int)d.darts.size() || d.dart_level[dart] < 0)
        throw std::invalid_argument("move_level expects a leveled v0 dart");
    int lvl = d.dart_level[dart];
    for (std::size_t e = 0; e < d.edges.size(); ++e)
        if (d.edges[e].alive && d.edges[e].spoke &&
            (d.spoke_level[e].first == lvl || d.spoke_level[e].second == lvl))
            throw std::invalid_argument("move_level: level is anchored by a spoke");
    auto spans = level_boundary_spans(d);
    int pos = d.level_position(lvl);
    int target = pos;
    if (to_top) {
        while (target > 0 && !spans_interleave(spans[lvl], spans[d.level_order[target - 1]]))
            --target;
    } else {
        while (target + 1 < (int)d.level_order.size() &&
               !spans_interleave(spans[lvl], spans[d.level_order[target + 1]]))
            ++target;
    }
    d.level_order.erase(d.level_order.begin() + pos);
    d.level_order.insert(d.level_order.begin() + target, lvl);
    d.check_valid();
    return d;
}

}  // namespace

namespace {
KnotSpokeDiagram from_planar_promoted(const PlanarKnotDiagram& d, int promoted) {
    if (promoted < 0) return from_planar(d);
    int n = 2 * d.c;
    int start = 0;
    for (int i = 0; i < n; ++i)
        if (d.gauss[i].crossing == promoted) {
            start = i;
            break;
        }
    PlanarKnotDiagram rot = d;
    std::rotate(rot.gauss.begin(), rot.gauss.begin() + start, rot.gauss.end());
    return from_planar(rot);
}
}  // namespace

std::vector<KnotSpokeDiagram> replay(const PlanarKnotDiagram& source,
                                     const ContractionTrace& trace) {
    std::vector<KnotSpokeDiagram> states;
    states.push_back(from_planar_promoted(source, trace.promoted));
    for (auto& step : trace.steps) {
        const KnotSpokeDiagram& cur = states.back();
        switch (step.kind) {
            case TraceStep::Kind::Contract:
                states.push_back(contract(cur, step.args[0]));
                break;
            case TraceStep::Kind::SplitLoop:
                states.push_back(split_loop(cur, step.args[0]));
                break;
            case TraceStep::Kind::ShrinkSpoke:
                states.push_back(shrink_spoke(cur, step.args[0]));
                break;
            case TraceStep::Kind::DropLoop:
                states.push_back(drop_loop(cur, step.args[0]));
                break;
            case TraceStep::Kind::Relevel:
                states.push_back(move_level(cur, step.args[0], step.over));
                break;
        }
    }
    return states;
}

// ---------------------------------------------------------------------------
// Proposition-8 repair: spoke out one side of the separating curve.

namespace {

// Submap sharing edge/dart ids with `src`: v0 plus one witness side.  Levels
// are replaced by an arbitrary self-consistent pairing (they carry no
// information used by cut-point or admissibility tests).
KnotSpokeDiagram extract_submap(const KnotSpokeDiagram& src, const SidePiece& side) {
    KnotSpokeDiagram s = src;
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        if (!s.edges[e].alive || side.edge_set.count((int)e)) continue;
        if (s.edges[e].spoke) continue;  // spokes at v0 stay; harmless
        // Edge outside the side: drop it (and its darts).
        for (int dart : {s.edges[e].dart0, s.edges[e].dart1}) {
            int v = s.darts[dart].vertex;
            if (v == KnotSpokeDiagram::v0) {
                auto& rot = s.vertices[v].rotation;
                rot.erase(std::find(rot.begin(), rot.end(), dart));
            }
            kill_dart(s, dart);
        }
        s.edges[e].alive = false;
    }
    for (std::size_t v = 1; v < s.vertices.size(); ++v) {
        if (!s.vertices[v].alive || s.vertices[v].kind != KnotSpokeDiagram::VertexKind::Crossing)
            continue;
        if (!side.vertex_set.count((int)v)) {
            s.vertices[v].alive = false;
            s.vertices[v].rotation.clear();
        }
    }
    // Submaps carry no meaningful heights; decisions on them are map-level.
    s.loose_levels = true;
    s.level_order.clear();
    for (auto& lv : s.dart_level) lv = -1;
    for (auto& sp : s.spoke_level) sp = {-1, -1};
    s.check_valid();
    return s;
}

int far_vertex_at_v0_edge(const KnotSpokeDiagram& d, int e) {
    int va = d.darts[d.edges[e].dart0].vertex;
    int vb = d.darts[d.edges[e].dart1].vertex;
    if (va == KnotSpokeDiagram::v0) return vb;
    if (vb == KnotSpokeDiagram::v0) return va;
    return -1;
}

bool contract_ok(const KnotSpokeDiagram& d, int e) {
    if (!d.edges[e].alive || d.edges[e].spoke || d.is_loop(e)) return false;
    int far = far_vertex_at_v0_edge(d, e);
    return far > 0 && d.vertices[far].kind == KnotSpokeDiagram::VertexKind::Crossing;
}

// Cut vertices (other than v0) of a submap: 4-valent vertices carrying a
// witness, with the far side free of v0-incident edges.
struct CutVertexInfo {
    int vertex;
    std::set<int> far_edges;  // non-spoke edges beyond the cut
};

std::vector<CutVertexInfo> submap_cut_vertices(const KnotSpokeDiagram& s) {
    std::vector<CutVertexInfo> out;
    for (std::size_t v = 1; v < s.vertices.size(); ++v) {
        if (!s.vertices[v].alive || s.vertices[v].kind != KnotSpokeDiagram::VertexKind::Crossing)
            continue;
        auto wits = cut_witnesses(s, (int)v);
        for (auto& w : wits) {
            auto v0_incident = [&](const std::set<int>& side) {
                for (int e : side)
                    if (far_vertex_at_v0_edge(s, e) >= 0 ||
                        s.darts[s.edges[e].dart0].vertex == KnotSpokeDiagram::v0 ||
                        s.darts[s.edges[e].dart1].vertex == KnotSpokeDiagram::v0)
                        return true;
                return false;
            };
            bool s1 = v0_incident(w.side1), s2 = v0_incident(w.side2);
            if (s1 && !s2) {
                out.push_back({(int)v, side_closure(s, w.side2).edge_set});
                break;
            }
            if (s2 && !s1) {
                out.push_back({(int)v, side_closure(s, w.side1).edge_set});
                break;
            }
        }
    }
    return out;
}

// Reduces the submap until its only remaining non-spoke edge is `avoid`
// (or none when avoid < 0), applying each contraction to every map in
// `maps` (the global diagram first).  Handles chains of submap cut vertices
// by truncation, following the case-2 recipe.
void reduce_side(std::vector<KnotSpokeDiagram>& maps, std::size_t sub_index, int avoid,
                 ContractionTrace& trace, const std::string& tag, int depth = 0) {
    if (depth > 64) throw CaseFailure("reduce_side: runaway recursion");
    for (;;) {
        KnotSpokeDiagram& sub = maps[sub_index];
        std::vector<int> others;
        for (std::size_t e = 0; e < sub.edges.size(); ++e)
            if (sub.edges[e].alive && !sub.edges[e].spoke && (int)e != avoid)
                others.push_back((int)e);
        if (others.empty()) return;

        auto cuts = submap_cut_vertices(sub);
        if (cuts.empty()) {
            int pick = -1;
            for (int e : others) {
                if (!contract_ok(sub, e)) continue;
                if (!cut_point(contract(sub, e))) {
                    pick = e;
                    break;
                }
            }
            if (pick < 0) throw CaseFailure("reduce_side: no admissible edge in tangle");
            for (auto& m : maps) m = contract(m, pick);
            trace.steps.push_back({TraceStep::Kind::Contract, {pick}, false, tag});
            continue;
        }
        // Truncate at a cut vertex whose v0-side part has no further cuts:
        // pick the one with the largest far side.
        std::size_t best = 0;
        for (std::size_t i = 1; i < cuts.size(); ++i)
            if (cuts[i].far_edges.size() > cuts[best].far_edges.size()) best = i;
        int w = cuts[best].vertex;
        const std::set<int>& far = cuts[best].far_edges;
        // The two darts of w pointing into the far side become the amalgam
        // loop of the truncated diagram.
        std::vector<int> far_darts;
        for (int dart : maps[sub_index].vertices[w].rotation)
            if (far.count(maps[sub_index].darts[dart].edge)) far_darts.push_back(dart);
        if (far_darts.size() != 2) throw CaseFailure("reduce_side: truncation is not a 2-cut");
        int a_edge = maps[sub_index].darts[far_darts[0]].edge;

        KnotSpokeDiagram trunc = maps[sub_index];
        // Kill the far side and reroute the two far darts into one loop.
        std::set<int> far_vertices;
        for (int e : far)
            for (int dart : {trunc.edges[e].dart0, trunc.edges[e].dart1}) {
                int v = trunc.darts[dart].vertex;
                if (v != w && v != KnotSpokeDiagram::v0) far_vertices.insert(v);
            }
        int c_edge = (int)trunc.edges.size();
        trunc.edges.push_back({far_darts[0], far_darts[1], false, true});
        trunc.spoke_level.push_back({-1, -1});
        trunc.darts[far_darts[0]].edge = c_edge;
        trunc.darts[far_darts[1]].edge = c_edge;
        for (int e : far) {
            if (!trunc.edges[e].alive) continue;
            for (int dart : {trunc.edges[e].dart0, trunc.edges[e].dart1}) {
                if (trunc.darts[dart].vertex == KnotSpokeDiagram::v0) {
                    auto& rot = trunc.vertices[KnotSpokeDiagram::v0].rotation;
                    auto it = std::find(rot.begin(), rot.end(), dart);
                    if (it != rot.end()) rot.erase(it);
                }
                if (trunc.darts[dart].edge == (int)e) kill_dart(trunc, dart);
            }
            trunc.edges[e].alive = false;
        }
        for (int v : far_vertices) {
            trunc.vertices[v].alive = false;
            trunc.vertices[v].rotation.clear();
        }
        // Fake levels may now be unpaired; rebuild them.
        trunc = extract_submap(trunc, side_closure(trunc, [&] {
                                   std::set<int> seed;
                                   for (int dart : trunc.vertices[KnotSpokeDiagram::v0].rotation)
                                       if (!trunc.edges[trunc.darts[dart].edge].spoke)
                                           seed.insert(trunc.darts[dart].edge);
                                   return seed;
                               }()));
        maps.push_back(std::move(trunc));
        reduce_side(maps, maps.size() - 1, c_edge, trace, tag, depth + 1);
        maps.pop_back();
        // Contract the first of the two far edges; its partner folds or
        // stays for the next round.
        if (!contract_ok(maps[sub_index], a_edge))
            throw CaseFailure("reduce_side: truncation stub is not contractible");
        for (auto& m : maps) m = contract(m, a_edge);
        trace.steps.push_back({TraceStep::Kind::Contract, {a_edge}, false, tag});
    }
}

struct TransversalInfo {
    int v1;
    int eb, ec, ed;  // edges at the far vertex: CCW next, opposite, CCW prev
};

TransversalInfo transversal_of(const KnotSpokeDiagram& d, int e) {
    TransversalInfo t;
    t.v1 = far_vertex_at_v0_edge(d, e);
    if (t.v1 < 0) throw std::invalid_argument("edge not incident to v0");
    int a = d.darts[d.edges[e].dart0].vertex == t.v1 ? d.edges[e].dart0 : d.edges[e].dart1;
    const auto& rot = d.vertices[t.v1].rotation;
    int i = d.rotation_index(a);
    t.eb = d.darts[rot[(i + 1) % 4]].edge;
    t.ec = d.darts[rot[(i + 2) % 4]].edge;
    t.ed = d.darts[rot[(i + 3) % 4]].edge;
    return t;
}

// The two recipe entry points.  `isolated` is the transversal edge whose
// side gets spoked out alone (case 1); the pair recipe spokes the side
// holding that transversal together with the continuing edge (case 2).
KnotSpokeDiagram repair_isolated(const KnotSpokeDiagram& D, int e, int iso_edge,
                                 const std::set<int>& side_seed, ContractionTrace& trace,
                                 const std::string& tag) {
    KnotSpokeDiagram De = contract(D, e);
    SidePiece side = side_closure(De, side_seed);
    std::vector<KnotSpokeDiagram> maps{D, extract_submap(De, side)};
    reduce_side(maps, 1, iso_edge, trace, tag);
    KnotSpokeDiagram out = contract(maps[0], e);
    trace.steps.push_back({TraceStep::Kind::Contract, {e}, false, tag});
    return out;
}

KnotSpokeDiagram repair_pair(const KnotSpokeDiagram& D, int e, int eb, int ec,
                             const std::set<int>& side_seed, ContractionTrace& trace,
                             const std::string& tag) {
    KnotSpokeDiagram De = contract(D, e);
    SidePiece side = side_closure(De, side_seed);
    KnotSpokeDiagram sub = extract_submap(De, side);
    // Surgery: detach eb and ec from v0 and amalgamate them into one edge.
    int db = sub.darts[sub.edges[eb].dart0].vertex == KnotSpokeDiagram::v0 ? sub.edges[eb].dart0
                                                                           : sub.edges[eb].dart1;
    int dc = sub.darts[sub.edges[ec].dart0].vertex == KnotSpokeDiagram::v0 ? sub.edges[ec].dart0
                                                                           : sub.edges[ec].dart1;
    int fb = sub.alpha(db), fc = sub.alpha(dc);
    auto& rot = sub.vertices[KnotSpokeDiagram::v0].rotation;
    rot.erase(std::find(rot.begin(), rot.end(), db));
    rot.erase(std::find(rot.begin(), rot.end(), dc));
    int c2 = (int)sub.edges.size();
    sub.edges.push_back({fb, fc, false, true});
    sub.spoke_level.push_back({-1, -1});
    sub.darts[fb].edge = c2;
    sub.darts[fc].edge = c2;
    kill_dart(sub, db);
    kill_dart(sub, dc);
    sub.edges[eb].alive = false;
    sub.edges[ec].alive = false;
    sub = extract_submap(sub, side_closure(sub, [&] {
                             std::set<int> seed;
                             for (int dart : sub.vertices[KnotSpokeDiagram::v0].rotation)
                                 if (!sub.edges[sub.darts[dart].edge].spoke)
                                     seed.insert(sub.darts[dart].edge);
                             return seed;
                         }()));
    std::vector<KnotSpokeDiagram> maps{D, std::move(sub)};
    reduce_side(maps, 1, c2, trace, tag);
    if (!contract_ok(maps[0], eb)) throw CaseFailure("repair: pair recipe stub not contractible");
    KnotSpokeDiagram out = contract(maps[0], eb);
    trace.steps.push_back({TraceStep::Kind::Contract, {eb}, false, tag});
    return out;
}

// Separation structure of the cut created by contracting e: every witness
// isolates one transversal edge; both flavors present means case 3.
struct CutShape {
    bool iso_b = false, iso_d = false;
    std::vector<std::set<int>> b_sides, d_sides;        // isolated-side seeds
    std::vector<std::set<int>> pair_sides_d, pair_sides_b;  // complements
};

CutShape cut_shape(const KnotSpokeDiagram& De, const TransversalInfo& t) {
    CutShape shape;
    for (auto& w : cut_witnesses(De, KnotSpokeDiagram::v0)) {
        const std::set<int>* bside = w.side1.count(t.eb) ? &w.side1 : &w.side2;
        const std::set<int>* dside = w.side1.count(t.ed) ? &w.side1 : &w.side2;
        if (bside == dside) continue;  // not a transversal-splitting curve
        if (dside->count(t.ec)) {
            shape.iso_b = true;
            shape.b_sides.push_back(*bside);
            shape.pair_sides_d.push_back(*dside);
        } else {
            shape.iso_d = true;
            shape.d_sides.push_back(*dside);
            shape.pair_sides_b.push_back(*bside);
        }
    }
    return shape;
}

// Full Proposition-8 discharge of the cut created by contracting e.  When
// `protect` is nonempty, only plans whose spoked-out sides avoid every
// protected edge are used.  Tries every witness/recipe combination and
// returns the first repaired, cut-point-free diagram.
KnotSpokeDiagram run_repair_full(const KnotSpokeDiagram& D, int e, const std::set<int>& protect,
                                 ContractionTrace& trace, int* case_tag_out) {
    TransversalInfo t = transversal_of(D, e);
    KnotSpokeDiagram De = contract(D, e);
    CutShape shape = cut_shape(De, t);
    if (!shape.iso_b && !shape.iso_d)
        throw CaseFailure("repair: no separating-curve classification");
    auto clear_of_protected = [&](const std::set<int>& seed) {
        if (protect.empty()) return true;
        SidePiece side = side_closure(De, seed);
        for (int p : protect)
            if (side.edge_set.count(p)) return false;
        return true;
    };
    int tag = shape.iso_b && shape.iso_d ? 3 : (shape.iso_b ? 1 : 2);
    if (case_tag_out) *case_tag_out = tag;
    std::string tagname = "repair case " + std::to_string(tag);
    std::string failures;

    if (tag == 3) {
        // Both curves exist: spoke out the eb tangle, then the ec tangle,
        // then contract eb (e and ec fold into spokes).
        std::set<int> ec_seed{t.ec};
        for (auto& b_side : shape.b_sides) {
            if (!clear_of_protected(b_side) || !clear_of_protected(ec_seed)) continue;
            try {
                ContractionTrace attempt;
                std::vector<KnotSpokeDiagram> maps{
                    D, extract_submap(De, side_closure(De, b_side))};
                reduce_side(maps, 1, t.eb, attempt, tagname);
                KnotSpokeDiagram De2 = contract(maps[0], e);
                std::vector<KnotSpokeDiagram> maps2{
                    maps[0], extract_submap(De2, side_closure(De2, ec_seed))};
                reduce_side(maps2, 1, t.ec, attempt, tagname);
                if (!contract_ok(maps2[0], t.eb))
                    throw CaseFailure("repair: case-3 stub not contractible");
                KnotSpokeDiagram out = contract(maps2[0], t.eb);
                attempt.steps.push_back({TraceStep::Kind::Contract, {t.eb}, false, tagname});
                if (cut_point(out)) throw CaseFailure("repair: case-3 left a cut");
                for (auto& s : attempt.steps) trace.steps.push_back(s);
                return out;
            } catch (const CaseFailure& f) {
                failures += std::string(" / ") + f.what();
            }
        }
        throw CaseFailure("repair: case-3 attempts failed:" + failures);
    }
    // One flavor: the isolated recipe spokes the lone-transversal side; the
    // pair recipe spokes the complement.
    int iso = shape.iso_b ? t.eb : t.ed;
    int other = shape.iso_b ? t.ed : t.eb;
    auto& iso_sides = shape.iso_b ? shape.b_sides : shape.d_sides;
    auto& pair_sides = shape.iso_b ? shape.pair_sides_d : shape.pair_sides_b;
    for (auto& seed : iso_sides) {
        if (!clear_of_protected(seed)) continue;
        try {
            ContractionTrace attempt;
            KnotSpokeDiagram out = repair_isolated(D, e, iso, seed, attempt, tagname);
            if (cut_point(out)) throw CaseFailure("repair: isolated recipe left a cut");
            for (auto& s : attempt.steps) trace.steps.push_back(s);
            return out;
        } catch (const CaseFailure& f) {
            failures += std::string(" / ") + f.what();
        }
    }
    for (auto& seed : pair_sides) {
        if (!clear_of_protected(seed)) continue;
        try {
            ContractionTrace attempt;
            KnotSpokeDiagram out = repair_pair(D, e, other, t.ec, seed, attempt, tagname);
            if (cut_point(out)) throw CaseFailure("repair: pair recipe left a cut");
            for (auto& s : attempt.steps) trace.steps.push_back(s);
            return out;
        } catch (const CaseFailure& f) {
            failures += std::string(" / ") + f.what();
        }
    }
    throw CaseFailure("repair: no recipe avoids the protected side:" + failures);
}

}  // namespace

RepairResult repair_cutpoint(const KnotSpokeDiagram& d, int edge) {
    if (!cut_point(contract(d, edge)))
        throw std::invalid_argument("repair_cutpoint: contraction does not create a cut-point");
    RepairResult result;
    result.diagram = run_repair_full(d, edge, {}, result.trace, &result.case_tag);
    if (cut_point(result.diagram))
        throw CaseFailure("repair_cutpoint: cut-point survived the repair");
    return result;
}

// ---------------------------------------------------------------------------
// Non-alternating analysis (theorem-5 pipeline).

namespace {

// Edge i of a diagram joins visit i to visit i+1; it is alternating when the
// two passages differ.
bool edge_alternating(const PlanarKnotDiagram& d, int i) {
    int n = 2 * d.c;
    return d.gauss[i].over != d.gauss[(i + 1) % n].over;
}

std::vector<int> diagram_face_of_dart(const PlanarKnotDiagram& d);

}  // namespace

NonAltDual nonalt_dual(const PlanarKnotDiagram& d) {
    if (!d.embedded) throw std::invalid_argument("nonalt_dual requires an embedded diagram");
    if (is_alternating(d)) {
        NonAltDual empty;
        empty.vertex_count = d.face_count();
        empty.region_alternating.assign(empty.vertex_count, true);
        return empty;
    }
    if (!is_reduced(d) || !is_prime_diagram(d))
        throw std::invalid_argument("nonalt_dual requires a reduced prime diagram");
    int n = 2 * d.c;
    auto face = diagram_face_of_dart(d);
    NonAltDual dual;
    dual.vertex_count = d.face_count();
    dual.region_alternating.assign(dual.vertex_count, true);
    std::vector<std::vector<int>> adjacency(dual.vertex_count);
    auto op = d.over_pos(), up = d.under_pos();
    auto entry_slot = [&](int i) {
        auto& v = d.gauss[i];
        return v.over ? d.over_in[v.crossing] : d.under_in[v.crossing];
    };
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        int exit_dart = 4 * d.gauss[i].crossing + (entry_slot(i) + 2) % 4;
        int entry_dart = 4 * d.gauss[j].crossing + entry_slot(j);
        int f1 = face[exit_dart], f2 = face[entry_dart];
        if (!edge_alternating(d, i)) {
            dual.edges.push_back({std::min(f1, f2), std::max(f1, f2)});
            dual.region_alternating[f1] = dual.region_alternating[f2] = false;
            adjacency[f1].push_back(f2);
            adjacency[f2].push_back(f1);
        }
    }
    (void)op;
    (void)up;
    // Structural facts: even valency, no bridges (every edge on a cycle),
    // bipartite (every cycle even), and no bigons.
    for (int v = 0; v < dual.vertex_count; ++v)
        if (adjacency[v].size() % 2)
            throw CaseFailure("nonalt dual: odd-valent region (input not minimal/prime?)");
    std::set<std::pair<int, int>> seen_pairs;
    for (auto& e : dual.edges)
        if (!seen_pairs.insert(e).second)
            throw CaseFailure("nonalt dual: bigon between regions (input not prime?)");
    // Bipartite check over the subgraph.
    std::vector<int> color(dual.vertex_count, -1);
    for (int start = 0; start < dual.vertex_count; ++start) {
        if (color[start] >= 0 || adjacency[start].empty()) continue;
        color[start] = 0;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : adjacency[v]) {
                if (color[u] < 0) {
                    color[u] = 1 - color[v];
                    stack.push_back(u);
                } else if (color[u] == color[v]) {
                    throw CaseFailure("nonalt dual: odd cycle (input not minimal?)");
                }
            }
        }
    }
    // Bridge check: an edge not on any cycle separates; reuse a simple
    // removal test (the dual graphs here are tiny).
    for (std::size_t k = 0; k < dual.edges.size(); ++k) {
        auto [a, b] = dual.edges[k];
        // Is there an a-b path avoiding edge k?
        std::vector<bool> vis(dual.vertex_count, false);
        std::vector<int> stack{a};
        vis[a] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (std::size_t k2 = 0; k2 < dual.edges.size(); ++k2) {
                if (k2 == k) continue;
                auto [x, y] = dual.edges[k2];
                int other = -1;
                if (x == v) other = y;
                if (y == v) other = x;
                if (other >= 0 && !vis[other]) {
                    vis[other] = true;
                    stack.push_back(other);
                }
            }
        }
        if (!vis[b]) throw CaseFailure("nonalt dual: bridge edge (every edge must lie on a cycle)");
    }
    return dual;
}

namespace {

std::vector<int> diagram_face_of_dart(const PlanarKnotDiagram& d) {
    // Darts 4x+slot as in diagram.cpp's face tracing.
    int n = 2 * d.c;
    auto entry_slot = [&](int i) {
        auto& v = d.gauss[i];
        return v.over ? d.over_in[v.crossing] : d.under_in[v.crossing];
    };
    std::vector<int> alpha(4 * d.c, -1);
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        int exit = 4 * d.gauss[i].crossing + (entry_slot(i) + 2) % 4;
        int entry = 4 * d.gauss[j].crossing + entry_slot(j);
        alpha[exit] = entry;
        alpha[entry] = exit;
    }
    std::vector<int> face(4 * d.c, -1);
    int faces = 0;
    for (int d0 = 0; d0 < 4 * d.c; ++d0) {
        if (face[d0] >= 0) continue;
        int cur = d0;
        while (face[cur] < 0) {
            face[cur] = faces;
            int nxt = alpha[cur];
            cur = 4 * (nxt / 4) + (nxt % 4 + 1) % 4;
        }
        ++faces;
    }
    return face;
}

}  // namespace

CaseSite classify_site(const PlanarKnotDiagram& d) {
    if (is_alternating(d))
        throw std::invalid_argument("classify_site requires a non-alternating diagram");
    int n = 2 * d.c;
    CaseSite site;
    // Case I: three consecutive passages of one type along the knot.
    for (int i = 0; i < n; ++i) {
        bool o = d.gauss[i].over;
        if (d.gauss[(i + 1) % n].over == o && d.gauss[(i + 2) % n].over == o) {
            site.kind = 1;
            site.over = o;
            site.gauss_positions = {i, (i + 1) % n, (i + 2) % n};
            return site;
        }
    }
    // Cases II / III: look at each non-alternating edge end.
    auto other_visit = [&](int crossing, int pos) {
        auto op = d.over_pos(), up = d.under_pos();
        return op[crossing] == pos ? up[crossing] : op[crossing];
    };
    int case3_at = -1;
    for (int i = 0; i < n; ++i) {
        if (edge_alternating(d, i)) continue;
        for (int end : {i, (i + 1) % n}) {
            int j = other_visit(d.gauss[end].crossing, end);
            bool left_alt = edge_alternating(d, (j - 1 + n) % n);
            bool right_alt = edge_alternating(d, j);
            if (left_alt && right_alt) {
                site.kind = 2;
                site.over = d.gauss[j].over;
                site.gauss_positions = {i, end, j};
                return site;
            }
            if ((left_alt || right_alt) && case3_at < 0) case3_at = i * n + end;
        }
    }
    if (case3_at >= 0) {
        site.kind = 3;
        site.pattern = 1;  // refined by the reduction
        int i = case3_at / n, end = case3_at % n;
        site.gauss_positions = {i, end, other_visit(d.gauss[end].crossing, end)};
        return site;
    }
    throw CaseFailure("classify_site: no case-I/II/III site found");
}

// ---------------------------------------------------------------------------
// reduce_nonalternating.

namespace {

struct Pipeline {
    KnotSpokeDiagram D;
    ContractionTrace trace;
    std::set<int> protect;           // edges that repairs must not spoke away
    std::set<int> protect_vertices;  // crossings the chains must not absorb
    std::string tag;

    void step_contract(int e) {
        if (!contract_ok(D, e)) throw CaseFailure(tag + ": planned edge is not contractible");
        if (cut_point(contract(D, e))) {
            D = run_repair_full(D, e, protect, trace, nullptr);
        } else {
            D = contract(D, e);
            trace.steps.push_back({TraceStep::Kind::Contract, {e}, false, tag});
        }
    }

    void step_shrink(int e) {
        try {
            D = shrink_spoke(D, e);
        } catch (const std::invalid_argument& ex) {
            throw CaseFailure(tag + ": " + ex.what());
        }
        trace.steps.push_back({TraceStep::Kind::ShrinkSpoke, {e}, false, tag});
    }

    void step_relevel(int dart, bool top) {
        int lvl = D.dart_level[dart];
        if (lvl < 0) throw CaseFailure(tag + ": relevel dart is not at v0");
        int pos = D.level_position(lvl);
        if ((top && pos == 0) || (!top && pos + 1 == (int)D.level_order.size())) return;
        D = move_level(D, dart, top);
        trace.steps.push_back({TraceStep::Kind::Relevel, {dart}, top, tag});
    }
};

// Map-level face ids (corner after rotation slot k belongs to the face of
// the next dart in rotation).
int map_corner_face(const KnotSpokeDiagram& D, const std::vector<int>& face, int vertex,
                    int slot) {
    const auto& rot = D.vertices[vertex].rotation;
    return face[rot[(slot + 1) % rot.size()]];
}

// Boundary edges of face f at vertex v: edges flanking each corner of f.
std::vector<std::pair<int, int>> face_corner_edges(const KnotSpokeDiagram& D,
                                                   const std::vector<int>& face, int f, int v) {
    std::vector<std::pair<int, int>> out;
    const auto& rot = D.vertices[v].rotation;
    int m = (int)rot.size();
    for (int k = 0; k < m; ++k)
        if (face[rot[(k + 1) % m]] == f)
            out.push_back({D.darts[rot[k]].edge, D.darts[rot[(k + 1) % m]].edge});
    return out;
}

// Contracts chain edges at the v0 corner of the region until the region's
// boundary at v0 is flanked by protected edges only (the triangular state).
void triangularize(Pipeline& P, int region_corner_vertex, int region_corner_slot) {
    for (int guard = 0; guard < 256; ++guard) {
        auto face = face_of_dart(P.D);
        if (!P.D.vertices[region_corner_vertex].alive)
            throw CaseFailure(P.tag + ": region corner vertex vanished");
        int f = map_corner_face(P.D, face, region_corner_vertex, region_corner_slot);
        auto corners = face_corner_edges(P.D, face, f, KnotSpokeDiagram::v0);
        if (corners.empty()) throw CaseFailure(P.tag + ": region never reached v0");
        int chain = -1;
        for (auto& [e1, e2] : corners) {
            for (int e : {e1, e2})
                if (!P.protect.count(e) && !P.D.edges[e].spoke && contract_ok(P.D, e) &&
                    !P.protect_vertices.count(far_vertex_at_v0_edge(P.D, e)))
                    chain = e;
            if (chain >= 0) break;
        }
        if (chain < 0) return;  // only protected edges remain: triangular
        P.step_contract(chain);
    }
    throw CaseFailure(P.tag + ": triangularization did not terminate");
}

// Shared ending: run the plain wheel pipeline on the reduced state.
std::pair<Wheel, ContractionTrace> finish_wheel(Pipeline& P, int max_spokes) {
    if (cut_point(P.D)) throw CaseFailure(P.tag + ": cut-point after the double reduction");
    while (P.D.non_spoke_edge_count() > 1) {
        int pick = -1;
        for (std::size_t e = 0; e < P.D.edges.size() && pick < 0; ++e)
            if (contract_ok(P.D, (int)e) && !cut_point(contract(P.D, (int)e))) pick = (int)e;
        if (pick < 0) throw CaseFailure(P.tag + ": no admissible edge while finishing");
        P.D = contract(P.D, pick);
        P.trace.steps.push_back({TraceStep::Kind::Contract, {pick}, false, P.tag});
    }
    int last = -1;
    for (std::size_t e = 0; e < P.D.edges.size(); ++e)
        if (P.D.edges[e].alive && !P.D.edges[e].spoke) last = (int)e;
    if (last < 0 || !P.D.is_loop(last))
        throw CaseFailure(P.tag + ": reduction did not end in a single loop");
    P.D = split_loop(P.D, last);
    P.trace.steps.push_back({TraceStep::Kind::SplitLoop, {last}, false, P.tag});
    if (P.D.spoke_count() > max_spokes)
        throw CaseFailure(P.tag + ": wheel exceeded the crossing-number bound");
    return {Wheel{P.D}, P.trace};
}

// Rotates d so that `promoted` is the first visited crossing; returns the
// positions shift.
PlanarKnotDiagram rotate_to(const PlanarKnotDiagram& d, int promoted, int* shift) {
    int n = 2 * d.c;
    int start = 0;
    for (int i = 0; i < n; ++i)
        if (d.gauss[i].crossing == promoted) {
            start = i;
            break;
        }
    PlanarKnotDiagram rot = d;
    std::rotate(rot.gauss.begin(), rot.gauss.begin() + start, rot.gauss.end());
    *shift = start;
    return rot;
}

// Diagram-level entry slot and edge->map-dart helpers (map darts are
// 4*crossing + slot, independent of the promotion).
int diag_entry_slot(const PlanarKnotDiagram& d, int i) {
    auto& v = d.gauss[i];
    return v.over ? d.over_in[v.crossing] : d.under_in[v.crossing];
}

// Executes case I (or its arc-direction variants) on the rotated diagram.
// `positions` are the three consecutive same-flag visits in rot_d, and
// `r1_face_dart` selects which side of the arc carries R1 and R2 (a map dart
// whose face is R1).
std::pair<Wheel, ContractionTrace> execute_case_I(const PlanarKnotDiagram& rot_d, int promoted,
                                                  std::array<int, 3> positions, bool arc_over,
                                                  bool side_ccw) {
    Pipeline P;
    P.tag = "case I";
    P.D = from_planar(rot_d);
    P.trace.promoted = promoted;

    int w[3], s_in[3];
    for (int j = 0; j < 3; ++j) {
        w[j] = rot_d.gauss[positions[j]].crossing;
        s_in[j] = diag_entry_slot(rot_d, positions[j]);
    }
    if (w[0] == w[1] || w[1] == w[2] || w[0] == w[2])
        throw CaseFailure("case I: arc revisits a crossing");
    // Anchors: the transversal dart on the chosen side of travel.
    int anchor[3], arc_in, arc_out, g1, g2;
    for (int j = 0; j < 3; ++j) {
        int slot = (s_in[j] + (side_ccw ? 1 : 3)) % 4;
        anchor[j] = P.D.darts[4 * w[j] + slot].edge;
    }
    arc_in = P.D.darts[4 * w[0] + s_in[0]].edge;
    g1 = P.D.darts[4 * w[0] + (s_in[0] + 2) % 4].edge;
    g2 = P.D.darts[4 * w[1] + (s_in[1] + 2) % 4].edge;
    arc_out = P.D.darts[4 * w[2] + (s_in[2] + 2) % 4].edge;
    // The first anchor must run from v0 (the promoted vertex) to w[0].
    if (far_vertex_at_v0_edge(P.D, anchor[0]) < 0)
        throw CaseFailure("case I: first anchor does not reach the promoted vertex");
    P.protect = {anchor[0], anchor[1], anchor[2], arc_in, g1, g2, arc_out};
    if (P.protect.size() != 7) throw CaseFailure("case I: degenerate site (shared edges)");

    auto map_vertex = [&](int crossing) {
        int promoted_crossing = rot_d.gauss[0].crossing;
        if (crossing == promoted_crossing) return 0;
        return crossing < promoted_crossing ? crossing + 1 : crossing;
    };
    P.protect_vertices = {map_vertex(w[0]), map_vertex(w[1]), map_vertex(w[2])};
    // Triangularize R1 (corner at w[0] between the anchor and the exit
    // dart), then R2 (corner at w[2] between the entry dart and the anchor).
    int r1_slot = side_ccw ? (s_in[0] + 1) % 4 : (s_in[0] + 2) % 4;
    int r2_slot = side_ccw ? (s_in[2] + 0) % 4 : (s_in[2] + 3) % 4;
    triangularize(P, map_vertex(w[0]), r1_slot);
    triangularize(P, map_vertex(w[2]), r2_slot);

    // The isotopy: contract the anchors in order, shrinking each folded arc
    // piece; keep the arc's passing level at the extreme before each fold.
    int arc_track_dart = 4 * w[0] + (s_in[0] + 2) % 4;  // g1-side dart, lands at v0
    P.step_contract(anchor[0]);
    if (P.D.dart_level[arc_track_dart] < 0) throw CaseFailure("case I: arc did not land at v0");
    P.step_relevel(arc_track_dart, arc_over);
    P.step_contract(anchor[1]);
    if (!P.D.edges[g1].alive || !P.D.edges[g1].spoke)
        throw CaseFailure("case I: first arc piece did not fold");
    P.step_shrink(g1);
    int arc_track2 = 4 * w[1] + (s_in[1] + 2) % 4;  // g2-side dart
    if (P.D.dart_level[arc_track2] < 0) throw CaseFailure("case I: arc lost its level");
    P.step_relevel(arc_track2, arc_over);
    P.step_contract(anchor[2]);
    if (!P.D.edges[g2].alive || !P.D.edges[g2].spoke)
        throw CaseFailure("case I: second arc piece did not fold");
    P.step_shrink(g2);

    return finish_wheel(P, rot_d.c);
}

// Case II: contract the mid transversal edge, re-level the arc, then slide
// the arc past its two remaining crossings.
std::pair<Wheel, ContractionTrace> execute_case_II(const PlanarKnotDiagram& rot_d, int promoted,
                                                   int mid_edge_pos, int arc_mid_pos,
                                                   bool side_ccw) {
    int n = 2 * rot_d.c;
    Pipeline P;
    P.tag = "case II";
    P.D = from_planar(rot_d);
    P.trace.promoted = promoted;

    int j = arc_mid_pos;
    int jn = (j + 1) % n, jp = (j - 1 + n) % n;
    int v2 = rot_d.gauss[j].crossing;
    int v1 = rot_d.gauss[jp].crossing, v3 = rot_d.gauss[jn].crossing;
    if (v1 == v2 || v2 == v3 || v1 == v3) throw CaseFailure("case II: degenerate arc");
    bool arc_mid_over = rot_d.gauss[j].over;
    int s2 = diag_entry_slot(rot_d, j);
    int s1 = diag_entry_slot(rot_d, jp), s3 = diag_entry_slot(rot_d, jn);

    int mid_edge = P.D.darts[4 * rot_d.gauss[mid_edge_pos].crossing +
                             (diag_entry_slot(rot_d, mid_edge_pos) + 2) % 4]
                       .edge;
    int g1 = P.D.darts[4 * v1 + (s1 + 2) % 4].edge;  // edge jp -> j
    int g2 = P.D.darts[4 * v2 + (s2 + 2) % 4].edge;  // edge j -> jn
    int arc_in = P.D.darts[4 * v1 + s1].edge;
    int arc_out = P.D.darts[4 * v3 + (s3 + 2) % 4].edge;
    int anchor1 = P.D.darts[4 * v1 + (s1 + (side_ccw ? 1 : 3)) % 4].edge;
    int anchor3 = P.D.darts[4 * v3 + (s3 + (side_ccw ? 1 : 3)) % 4].edge;
    P.protect = {mid_edge, g1, g2, arc_in, arc_out, anchor1, anchor3};
    if (P.protect.size() != 7) throw CaseFailure("case II: degenerate site (shared edges)");

    auto map_vertex = [&](int crossing) {
        int promoted_crossing = rot_d.gauss[0].crossing;
        if (crossing == promoted_crossing) return 0;
        return crossing < promoted_crossing ? crossing + 1 : crossing;
    };
    P.protect_vertices = {map_vertex(v1), map_vertex(v2), map_vertex(v3)};
    // Triangularize the two regions flanking the mid edge: their corners sit
    // at v2 between the mid edge's dart and the two arc darts.
    int mid_dart_slot_at_v2 = -1;
    for (int s = 0; s < 4; ++s)
        if (P.D.darts[4 * v2 + s].edge == mid_edge) mid_dart_slot_at_v2 = s;
    if (mid_dart_slot_at_v2 < 0) throw CaseFailure("case II: mid edge is not at the arc crossing");
    triangularize(P, map_vertex(v2), mid_dart_slot_at_v2);
    triangularize(P, map_vertex(v2), (mid_dart_slot_at_v2 + 3) % 4);

    if (!contract_ok(P.D, mid_edge))
        throw CaseFailure("case II: mid edge is not anchored at v0 after triangularization");
    P.step_contract(mid_edge);

    int arc_track = 4 * v2 + (s2 + 2) % 4;  // g2-side dart of the arc at v2
    if (P.D.dart_level[arc_track] < 0) throw CaseFailure("case II: arc did not land at v0");
    bool outer_over = !arc_mid_over;  // g1, g2 are alternating edges
    P.step_relevel(arc_track, outer_over);
    P.step_contract(anchor1);
    if (!P.D.edges[g1].alive || !P.D.edges[g1].spoke)
        throw CaseFailure("case II: first arc piece did not fold");
    P.step_shrink(g1);
    if (P.D.dart_level[arc_track] < 0) throw CaseFailure("case II: arc lost its level");
    P.step_relevel(arc_track, outer_over);
    P.step_contract(anchor3);
    if (!P.D.edges[g2].alive || !P.D.edges[g2].spoke)
        throw CaseFailure("case II: second arc piece did not fold");
    P.step_shrink(g2);

    return finish_wheel(P, rot_d.c);
}

}  // namespace

std::pair<Wheel, ContractionTrace> reduce_nonalternating(const PlanarKnotDiagram& d) {
    if (!d.embedded) throw std::invalid_argument("reduce_nonalternating requires an embedding");
    if (is_alternating(d))
        throw std::invalid_argument("reduce_nonalternating rejects alternating inputs");
    if (!is_reduced(d) || !is_prime_diagram(d))
        throw std::invalid_argument("reduce_nonalternating requires a reduced prime diagram");
    nonalt_dual(d);  // structural facts are fatal diagnostics
    int n = 2 * d.c;
    std::string failures;

    // Case I sites: every run of three consecutive same-flag passages, every
    // arc side, every promotion implied by the anchor.
    for (int i = 0; i < n; ++i) {
        bool o = d.gauss[i].over;
        if (d.gauss[(i + 1) % n].over != o || d.gauss[(i + 2) % n].over != o) continue;
        for (bool side : {true, false}) {
            // Promote the far endpoint of the first anchor.
            int w0 = d.gauss[i].crossing;
            int slot = (diag_entry_slot(d, i) + (side ? 1 : 3)) % 4;
            // Identify the anchor's far crossing by walking the gauss edges.
            // Dart (w0, slot) belongs to the edge whose other end we need.
            int far = -1;
            {
                auto entry = [&](int k) { return diag_entry_slot(d, k); };
                for (int k = 0; k < n && far < 0; ++k) {
                    int kn = (k + 1) % n;
                    int exit_dart = 4 * d.gauss[k].crossing + (entry(k) + 2) % 4;
                    int entry_dart = 4 * d.gauss[kn].crossing + entry(kn);
                    if (exit_dart == 4 * w0 + slot) far = d.gauss[kn].crossing;
                    if (entry_dart == 4 * w0 + slot) far = d.gauss[k].crossing;
                }
            }
            if (far < 0 || far == d.gauss[i].crossing || far == d.gauss[(i + 1) % n].crossing ||
                far == d.gauss[(i + 2) % n].crossing)
                continue;
            try {
                int shift = 0;
                PlanarKnotDiagram rot_d = rotate_to(d, far, &shift);
                auto reloc = [&](int p) { return (p - shift + n) % n; };
                return execute_case_I(rot_d, far,
                                      {reloc(i), reloc((i + 1) % n), reloc((i + 2) % n)}, o, side);
            } catch (const CaseFailure& f) {
                failures += std::string("  ") + f.what() + "\n";
            }
        }
    }

    // Case II sites: a non-alternating edge whose crossing arc has two
    // alternating edges.
    for (int i = 0; i < n; ++i) {
        if (edge_alternating(d, i)) continue;
        for (int end : {i, (i + 1) % n}) {
            auto op = d.over_pos(), up = d.under_pos();
            int x = d.gauss[end].crossing;
            int j = op[x] == end ? up[x] : op[x];
            if (!edge_alternating(d, (j - 1 + n) % n) || !edge_alternating(d, j)) continue;
            // Promote the far endpoint of the mid edge (its other end).
            int other_end = end == i ? (i + 1) % n : i;
            int far = d.gauss[other_end].crossing;
            int v1 = d.gauss[(j - 1 + n) % n].crossing, v3 = d.gauss[(j + 1) % n].crossing;
            if (far == x || far == v1 || far == v3) continue;
            for (bool side : {true, false}) {
                try {
                    int shift = 0;
                    PlanarKnotDiagram rot_d = rotate_to(d, far, &shift);
                    auto reloc = [&](int p) { return (p - shift + n) % n; };
                    return execute_case_II(rot_d, far, reloc(i), reloc(j), side);
                } catch (const CaseFailure& f) {
                    failures += std::string("  ") + f.what() + "\n";
                }
            }
        }
    }

    throw CaseFailure("reduce_nonalternating: no case I/II configuration succeeded:\n" + failures);
}

}  // namespace gridknot
