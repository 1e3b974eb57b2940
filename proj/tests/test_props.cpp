#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gridknot/invariants.hpp"
#include "gridknot/knotspoke.hpp"
#include "test_util.hpp"

using namespace gridknot;
using gridknot::testutil::random_knot_grid;
using gridknot::testutil::random_move;

// Fast versions of the acceptance property suites; the acceptance binary
// reruns them at full scale.

TEST_CASE("fingerprint invariance under random M1-M4 sequences") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 5 + (int)(rng() % 3);
        GridDiagram g = random_knot_grid(n, rng);
        Fingerprint base = fingerprint(simplify(to_planar(g)));
        GridDiagram cur = g;
        for (int step = 0; step < 4; ++step) {
            cur = random_move(cur, rng);
            REQUIRE(validate(cur).ok);
            REQUIRE(component_count(cur) == 1);
        }
        CHECK(fingerprint(simplify(to_planar(cur))) == base);
    }
}

TEST_CASE("fingerprint invariance under (de)stabilization") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 5 + (int)(rng() % 3);
        GridDiagram g = random_knot_grid(n, rng);
        Fingerprint base = fingerprint(simplify(to_planar(g)));
        GridDiagram stabilized = connected_sum(g, grid_unknot());
        CHECK(fingerprint(simplify(to_planar(stabilized))) == base);
        GridDiagram cur = g;
        while (auto pos = destabilizable(cur)) {
            if (cur.n == 2) break;
            cur = destabilize(cur, *pos);
            CHECK(fingerprint(simplify(to_planar(cur))) == base);
            REQUIRE(component_count(cur) == 1);
        }
    }
}

TEST_CASE("face count r = c + 2 on every connected diagram") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 4 + (int)(rng() % 4);
        GridDiagram g = random_knot_grid(n, rng);
        PlanarKnotDiagram d = to_planar(g);
        if (d.c == 0) continue;
        CHECK(d.face_count() == d.c + 2);
        PlanarKnotDiagram s = simplify(d);
        if (s.c > 0) CHECK(s.face_count() == s.c + 2);
    }
}

TEST_CASE("conservation and the two-witness lemma along wheel construction") {
    std::mt19937_64 rng(17);
    int ran = 0;
    for (int trial = 0; trial < 3000 && ran < 60; ++trial) {
        int n = 6 + (int)(rng() % 2);
        GridDiagram g = random_knot_grid(n, rng);
        PlanarKnotDiagram d = simplify(to_planar(g));
        if (d.c < 1 || !is_prime_diagram(d)) continue;
        ++ran;
        Fingerprint base = fingerprint(d);
        KnotSpokeDiagram cur = from_planar(d);
        int sr = cur.region_count() + cur.spoke_count();
        REQUIRE(sr == d.c + 2);
        while (cur.non_spoke_edge_count() > 1) {
            // Count admissible edges by hand: at least two must exist.
            int admissible = 0;
            int pick = -1;
            for (std::size_t e = 0; e < cur.edges.size(); ++e) {
                if (!cur.edges[e].alive || cur.edges[e].spoke || cur.is_loop((int)e)) continue;
                int va = cur.darts[cur.edges[e].dart0].vertex;
                int vb = cur.darts[cur.edges[e].dart1].vertex;
                if (va != KnotSpokeDiagram::v0 && vb != KnotSpokeDiagram::v0) continue;
                int far = va == KnotSpokeDiagram::v0 ? vb : va;
                if (cur.vertices[far].kind != KnotSpokeDiagram::VertexKind::Crossing) continue;
                if (!cut_point(contract(cur, (int)e))) {
                    ++admissible;
                    if (pick < 0) pick = (int)e;
                }
            }
            CHECK(admissible >= 2);
            REQUIRE(pick >= 0);
            cur = contract(cur, pick);
            CHECK(cur.region_count() + cur.spoke_count() == sr);
            CHECK(fingerprint(expand(cur)) == base);
        }
        auto [wheel, trace] = to_wheel(d);
        CHECK(wheel.diagram.spoke_count() == d.c + 2);
        CHECK(fingerprint(to_planar(wheel_to_grid(wheel))) == base);
    }
    CHECK(ran >= 25);
}

TEST_CASE("dt round trip on canonical codes from random grids") {
    std::mt19937_64 rng(19);
    int ran = 0;
    for (int trial = 0; trial < 2000 && ran < 40; ++trial) {
        GridDiagram g = random_knot_grid(6 + (int)(rng() % 3), rng);
        PlanarKnotDiagram d = simplify(to_planar(g));
        if (d.c < 3 || d.c > 14) continue;
        ++ran;
        DTCode canon = dt_code(d);
        PlanarKnotDiagram realized = from_dt(canon);
        CHECK(dt_code(realized) == canon);
        // Prime codes realize uniquely up to mirror, so the knot survives.
        if (is_prime_diagram(d)) CHECK(fingerprint(realized) == fingerprint(d));
    }
    CHECK(ran >= 20);
}

TEST_CASE("norm is injective on matrices") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        GridDiagram a = random_knot_grid(6, rng);
        GridDiagram b = random_knot_grid(6, rng);
        CHECK((norm(a) == norm(b)) == (a == b));
    }
}

TEST_CASE("component count invariant under moves and destabilization") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        GridDiagram g = random_knot_grid(6, rng);
        GridDiagram moved = random_move(g, rng);
        CHECK(component_count(moved) == 1);
        if (auto pos = destabilizable(g)) {
            GridDiagram smaller = destabilize(g, *pos);
            CHECK(component_count(smaller) == 1);
        }
    }
}
