#include "gridknot/diagram.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gridknot {

std::string DTCode::to_text() const {
    std::ostringstream out;
    out << code.size();
    for (int v : code) out << ' ' << v;
    return out.str();
}

DTCode DTCode::from_text(const std::string& text) {
    std::istringstream in(text);
    std::size_t c;
    if (!(in >> c)) throw std::invalid_argument("DT text: missing length");
    DTCode dt;
    dt.code.resize(c);
    for (std::size_t i = 0; i < c; ++i)
        if (!(in >> dt.code[i])) throw std::invalid_argument("DT text: missing entry");
    return dt;
}

int PlanarKnotDiagram::writhe() const {
    int w = 0;
    for (int s : sign) w += s;
    return w;
}

std::vector<int> PlanarKnotDiagram::over_pos() const {
    std::vector<int> p(c, -1);
    for (int i = 0; i < 2 * c; ++i)
        if (gauss[i].over) p[gauss[i].crossing] = i;
    return p;
}

std::vector<int> PlanarKnotDiagram::under_pos() const {
    std::vector<int> p(c, -1);
    for (int i = 0; i < 2 * c; ++i)
        if (!gauss[i].over) p[gauss[i].crossing] = i;
    return p;
}

namespace {

void check_gauss(const std::vector<CrossingVisit>& gauss, const std::vector<int>& sign) {
    int c = (int)sign.size();
    if ((int)gauss.size() != 2 * c) throw std::invalid_argument("gauss length != 2c");
    std::vector<int> over_seen(c, 0), under_seen(c, 0);
    for (auto& v : gauss) {
        if (v.crossing < 0 || v.crossing >= c) throw std::invalid_argument("crossing id out of range");
        (v.over ? over_seen : under_seen)[v.crossing]++;
    }
    for (int x = 0; x < c; ++x)
        if (over_seen[x] != 1 || under_seen[x] != 1)
            throw std::invalid_argument("crossing " + std::to_string(x) +
                                        " must appear once over and once under");
    for (int s : sign)
        if (s != 1 && s != -1) throw std::invalid_argument("crossing sign must be +-1");
}

// Oriented darts of the embedding: dart = 4*crossing + slot.  sigma = next
// slot counterclockwise, alpha = the other end of the edge leaving the slot.
struct DartMaps {
    std::vector<int> alpha;
};

// Entry/exit slots of visit i, using the diagram's slot data.
inline int entry_slot(const PlanarKnotDiagram& d, int i) {
    auto& v = d.gauss[i];
    return v.over ? d.over_in[v.crossing] : d.under_in[v.crossing];
}

DartMaps edge_darts(const PlanarKnotDiagram& d) {
    DartMaps m;
    m.alpha.assign(4 * d.c, -1);
    int n = 2 * d.c;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        int exit = 4 * d.gauss[i].crossing + (entry_slot(d, i) + 2) % 4;
        int entry = 4 * d.gauss[j].crossing + entry_slot(d, j);
        if (m.alpha[exit] != -1 || m.alpha[entry] != -1)
            throw std::logic_error("inconsistent slot assignment");
        m.alpha[exit] = entry;
        m.alpha[entry] = exit;
    }
    return m;
}

int count_faces(const DartMaps& m) {
    int n = (int)m.alpha.size();
    std::vector<bool> seen(n, false);
    int faces = 0;
    for (int d0 = 0; d0 < n; ++d0) {
        if (seen[d0]) continue;
        ++faces;
        int d = d0;
        do {
            seen[d] = true;
            int x = d / 4, s = d % 4;
            d = m.alpha[4 * x + (s + 1) % 4];  // next dart along the face
        } while (d != d0);
    }
    return faces;
}

}  // namespace

int PlanarKnotDiagram::face_count() const {
    if (!embedded) throw std::logic_error("face_count requires an embedded diagram");
    if (c == 0) return 2;
    return count_faces(edge_darts(*this));
}

PlanarKnotDiagram from_signed_gauss(const std::vector<CrossingVisit>& gauss,
                                    const std::vector<int>& sign) {
    check_gauss(gauss, sign);
    PlanarKnotDiagram d;
    d.c = (int)sign.size();
    d.gauss = gauss;
    d.sign = sign;
    return d;
}

DTCode dt_code_at(const PlanarKnotDiagram& d, int start, int dir) {
    int n = 2 * d.c;
    DTCode dt;
    dt.code.resize(d.c);
    if (d.c == 0) return dt;
    std::vector<int> label_odd(d.c, 0), label_even(d.c, 0);
    std::vector<bool> even_over(d.c, false);
    for (int k = 0; k < n; ++k) {
        int i = ((start + dir * k) % n + n) % n;
        int label = k + 1;
        auto& v = d.gauss[i];
        if (label % 2 == 1)
            label_odd[v.crossing] = label;
        else {
            label_even[v.crossing] = label;
            even_over[v.crossing] = v.over;
        }
    }
    for (int x = 0; x < d.c; ++x) {
        if (!label_odd[x] || !label_even[x])
            throw std::logic_error("crossing visited twice at the same parity");
        int idx = (label_odd[x] - 1) / 2;
        dt.code[idx] = even_over[x] ? -label_even[x] : label_even[x];
    }
    return dt;
}

namespace {

// Canonical order: compare |entry| first, preferring the positive sign on
// ties, so alternating diagrams canonicalize to all-positive codes.
bool dt_less(const DTCode& a, const DTCode& b) {
    for (std::size_t i = 0; i < a.code.size(); ++i) {
        auto ka = std::pair{std::abs(a.code[i]), a.code[i] < 0};
        auto kb = std::pair{std::abs(b.code[i]), b.code[i] < 0};
        if (ka != kb) return ka < kb;
    }
    return false;
}

}  // namespace

DTCode dt_code(const PlanarKnotDiagram& d) {
    DTCode best;
    bool first = true;
    for (int dir : {1, -1})
        for (int start = 0; start < 2 * d.c; ++start) {
            DTCode cand = dt_code_at(d, start, dir);
            if (first || dt_less(cand, best)) {
                best = cand;
                first = false;
            }
        }
    if (first) best.code.clear();
    return best;
}

PlanarKnotDiagram from_dt(const DTCode& dt) {
    int c = (int)dt.code.size();
    if (c == 0) return PlanarKnotDiagram{};
    std::vector<bool> seen(2 * c + 1, false);
    for (int v : dt.code) {
        int a = std::abs(v);
        if (a < 2 || a > 2 * c || a % 2 || seen[a])
            throw std::invalid_argument("DT code is not a signed pairing of even labels");
        seen[a] = true;
    }
    // Positions 0..2c-1 carry labels 1..2c; crossing i joins label 2i+1 with
    // |code[i]|.
    std::vector<CrossingVisit> gauss(2 * c);
    for (int i = 0; i < c; ++i) {
        bool even_is_over = dt.code[i] < 0;
        gauss[2 * i] = {i, !even_is_over};
        gauss[std::abs(dt.code[i]) - 1] = {i, even_is_over};
    }
    PlanarKnotDiagram d;
    d.c = c;
    d.gauss = gauss;
    d.sign.assign(c, 1);
    d.over_in.assign(c, 0);
    d.under_in.assign(c, 1);
    d.embedded = true;
    check_gauss(d.gauss, d.sign);

    // Search the per-crossing strand interleavings for a genus-0 rotation
    // system; the first crossing's choice is fixed (mirror symmetry).
    if (c > 24) throw std::invalid_argument("from_dt: too many crossings to realize");
    for (uint64_t mask = 0; mask < (uint64_t)1 << (c - 1); ++mask) {
        for (int x = 1; x < c; ++x) d.under_in[x] = (mask >> (x - 1)) & 1 ? 3 : 1;
        if (count_faces(edge_darts(d)) == c + 2) {
            for (int x = 0; x < c; ++x) d.sign[x] = d.under_in[x] == 1 ? 1 : -1;
            return d;
        }
    }
    throw std::invalid_argument("DT code is not realizable as a planar diagram");
}

bool is_reduced(const PlanarKnotDiagram& d) {
    int n = 2 * d.c;
    auto op = d.over_pos(), up = d.under_pos();
    for (int x = 0; x < d.c; ++x) {
        int p = std::min(op[x], up[x]), q = std::max(op[x], up[x]);
        // Nugatory iff no chord has exactly one visit strictly between p and q.
        std::vector<int> inside(d.c, 0);
        for (int i = p + 1; i < q; ++i) inside[d.gauss[i].crossing]++;
        bool interleaved = false;
        for (int y = 0; y < d.c; ++y)
            if (inside[y] == 1) interleaved = true;
        if (!interleaved) return false;
    }
    return n == 0 || true;
}

namespace {

// A proper cyclic interval of visits that contains at least one crossing,
// misses at least one, and touches no crossing partially.
bool has_split_interval(const PlanarKnotDiagram& d) {
    int n = 2 * d.c;
    for (int a = 0; a < n; ++a) {
        std::vector<int> cnt(d.c, 0);
        int open = 0, complete = 0;
        for (int len = 1; len < n; ++len) {
            int i = (a + len - 1) % n;
            int x = d.gauss[i].crossing;
            if (++cnt[x] == 1) ++open;
            if (cnt[x] == 2) {
                --open;
                ++complete;
            }
            if (open == 0 && complete >= 1 && complete < d.c) return true;
        }
    }
    return false;
}

}  // namespace

bool is_prime_diagram(const PlanarKnotDiagram& d) {
    if (d.c < 1) throw std::invalid_argument("is_prime_diagram requires at least one crossing");
    return is_reduced(d) && !has_split_interval(d);
}

bool is_alternating(const PlanarKnotDiagram& d) {
    int n = 2 * d.c;
    for (int i = 0; i < n; ++i)
        if (d.gauss[i].over == d.gauss[(i + 1) % n].over) return false;
    return true;
}

PlanarKnotDiagram mirror(const PlanarKnotDiagram& d) {
    PlanarKnotDiagram m = d;
    for (auto& v : m.gauss) v.over = !v.over;
    for (auto& s : m.sign) s = -s;
    if (m.embedded) std::swap(m.over_in, m.under_in);
    return m;
}

PlanarKnotDiagram simplify(const PlanarKnotDiagram& d) {
    PlanarKnotDiagram cur = d;
    bool changed = true;
    while (changed && cur.c > 0) {
        changed = false;
        int n = 2 * cur.c;
        std::vector<bool> drop(cur.c, false);
        // Kink: the two visits of a crossing are cyclically adjacent.
        for (int i = 0; i < n && !changed; ++i) {
            int j = (i + 1) % n;
            if (cur.gauss[i].crossing == cur.gauss[j].crossing) {
                drop[cur.gauss[i].crossing] = true;
                changed = true;
            }
        }
        // Bigon: crossings x != y adjacent in two places, one strand over at
        // both (then the other strand is under at both).
        if (!changed) {
            for (int i = 0; i < n && !changed; ++i) {
                int j = (i + 1) % n;
                int x = cur.gauss[i].crossing, y = cur.gauss[j].crossing;
                if (x == y || cur.gauss[i].over != cur.gauss[j].over) continue;
                for (int k = 0; k < n && !changed; ++k) {
                    int l = (k + 1) % n;
                    if (k == i) continue;
                    int u = cur.gauss[k].crossing, v = cur.gauss[l].crossing;
                    if ((u == x && v == y) || (u == y && v == x)) {
                        drop[x] = drop[y] = true;
                        changed = true;
                    }
                }
            }
        }
        if (!changed) break;
        // Rebuild without the dropped crossings.
        std::vector<int> remap(cur.c, -1);
        int next = 0;
        for (int x = 0; x < cur.c; ++x)
            if (!drop[x]) remap[x] = next++;
        PlanarKnotDiagram out;
        out.c = next;
        out.embedded = cur.embedded;
        out.sign.resize(next);
        if (cur.embedded) {
            out.over_in.resize(next);
            out.under_in.resize(next);
        }
        for (int x = 0; x < cur.c; ++x) {
            if (remap[x] < 0) continue;
            out.sign[remap[x]] = cur.sign[x];
            if (cur.embedded) {
                out.over_in[remap[x]] = cur.over_in[x];
                out.under_in[remap[x]] = cur.under_in[x];
            }
        }
        for (auto& v : cur.gauss)
            if (remap[v.crossing] >= 0) out.gauss.push_back({remap[v.crossing], v.over});
        cur = out;
    }
    return cur;
}

std::string gauss_dump(const PlanarKnotDiagram& d) {
    std::ostringstream out;
    out << d.c << " :";
    for (auto& v : d.gauss)
        out << ' ' << (v.over ? 'O' : 'U') << v.crossing + 1
            << (d.sign[v.crossing] > 0 ? '+' : '-');
    return out.str();
}

}  // namespace gridknot
