#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "gridknot/diagram.hpp"
#include "gridknot/grid.hpp"

using namespace gridknot;

namespace {

// Right-handed trefoil as a signed Gauss sequence.
PlanarKnotDiagram trefoil() {
    return from_signed_gauss({{0, true}, {1, false}, {2, true}, {0, false}, {1, true}, {2, false}},
                             {1, 1, 1});
}

PlanarKnotDiagram kink(int sign = 1) {
    return from_signed_gauss({{0, true}, {0, false}}, {sign});
}

// Independent pairing oracle for the fixed-start DT code: walk the labels
// by hand from the gauss sequence.
std::vector<int> dt_pairing_oracle(const PlanarKnotDiagram& d) {
    int n = 2 * d.c;
    std::map<int, std::pair<int, bool>> odd_of, even_of;  // crossing -> (label, over)
    for (int i = 0; i < n; ++i) {
        int label = i + 1;
        if (label % 2)
            odd_of[d.gauss[i].crossing] = {label, d.gauss[i].over};
        else
            even_of[d.gauss[i].crossing] = {label, d.gauss[i].over};
    }
    std::vector<int> code(d.c);
    for (int x = 0; x < d.c; ++x) {
        auto [odd, over_odd] = odd_of.at(x);
        auto [even, over_even] = even_of.at(x);
        (void)over_odd;
        code[(odd - 1) / 2] = over_even ? -even : even;
    }
    return code;
}

}  // namespace

TEST_CASE("gauss validation") {
    CHECK_THROWS(from_signed_gauss({{0, true}, {0, true}}, {1}));
    CHECK_THROWS(from_signed_gauss({{0, true}}, {1}));
    CHECK_THROWS(from_signed_gauss({{0, true}, {0, false}}, {2}));
}

TEST_CASE("dt code of the trefoil") {
    PlanarKnotDiagram d = trefoil();
    CHECK(dt_code_at(d, 0, 1).code == dt_pairing_oracle(d));
    DTCode canon = dt_code(d);
    CHECK(canon.code == std::vector<int>{4, 6, 2});
}

TEST_CASE("dt code text round trip") {
    DTCode c{{4, 6, 2}};
    CHECK(c.to_text() == "3 4 6 2");
    CHECK(DTCode::from_text("3 4 6 2") == c);
    CHECK(dt_code(PlanarKnotDiagram{}).code.empty());
}

TEST_CASE("mirror flips every even-label sign") {
    PlanarKnotDiagram d = trefoil();
    auto base = dt_code_at(d, 0, 1).code;
    auto flipped = dt_code_at(mirror(d), 0, 1).code;
    REQUIRE(base.size() == flipped.size());
    for (std::size_t i = 0; i < base.size(); ++i) CHECK(base[i] == -flipped[i]);
}

TEST_CASE("from_dt realizes the trefoil") {
    PlanarKnotDiagram d = from_dt(DTCode{{4, 6, 2}});
    CHECK(d.c == 3);
    CHECK(d.embedded);
    CHECK(d.face_count() == 5);
    CHECK(dt_code(d).code == std::vector<int>{4, 6, 2});
    CHECK(is_alternating(d));
    PlanarKnotDiagram e = from_dt(DTCode{{}});
    CHECK(e.c == 0);
}

TEST_CASE("from_dt rejects bad input") {
    CHECK_THROWS_AS(from_dt(DTCode{{4, 4, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(from_dt(DTCode{{3, 6, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(from_dt(DTCode{{8, 6, 2}}), std::invalid_argument);
}

TEST_CASE("primality") {
    CHECK(is_prime_diagram(trefoil()));
    CHECK_FALSE(is_prime_diagram(kink()));
    // Granny knot gauss sequence: two trefoil factors in series.
    PlanarKnotDiagram granny = from_signed_gauss(
        {{0, true}, {1, false}, {2, true}, {0, false}, {1, true}, {2, false},
         {3, true}, {4, false}, {5, true}, {3, false}, {4, true}, {5, false}},
        {1, 1, 1, 1, 1, 1});
    CHECK_FALSE(is_prime_diagram(granny));
    CHECK_THROWS(is_prime_diagram(PlanarKnotDiagram{}));
}

TEST_CASE("reduced and alternating flags") {
    CHECK(is_reduced(trefoil()));
    CHECK(is_alternating(trefoil()));
    CHECK_FALSE(is_reduced(kink()));
    // Trefoil with an extra kink spliced in at the end.
    PlanarKnotDiagram with_kink = from_signed_gauss(
        {{0, true}, {1, false}, {2, true}, {0, false}, {1, true}, {2, false}, {3, true}, {3, false}},
        {1, 1, 1, 1});
    CHECK_FALSE(is_reduced(with_kink));
    // Torus-braid style sequence with three consecutive over-passages.
    PlanarKnotDiagram non_alt = from_signed_gauss(
        {{0, true}, {1, true}, {2, true}, {0, false}, {1, false}, {2, false}}, {1, 1, 1});
    CHECK_FALSE(is_alternating(non_alt));
    CHECK(is_alternating(mirror(trefoil())));
    CHECK(is_prime_diagram(mirror(trefoil())));
}

TEST_CASE("simplify removes stacked kinks") {
    PlanarKnotDiagram three_kinks = from_signed_gauss(
        {{0, true}, {0, false}, {1, true}, {1, false}, {2, true}, {2, false}}, {1, -1, 1});
    PlanarKnotDiagram s = simplify(three_kinks);
    CHECK(s.c == 0);
    // A reduced diagram is a fixed point.
    PlanarKnotDiagram t = simplify(trefoil());
    CHECK(t.c == 3);
    CHECK(t.gauss == trefoil().gauss);
}

TEST_CASE("simplify removes bigons") {
    // Unknot posed with one R2 pair: O1 O2 U1 U2 with matching flags.
    PlanarKnotDiagram r2 = from_signed_gauss({{0, true}, {1, true}, {0, false}, {1, false}},
                                             {1, -1});
    CHECK(simplify(r2).c == 0);
}

TEST_CASE("face count of grid diagrams is c + 2") {
    GridDiagram fig6{6, {{0, 3}, {2, 4}, {1, 3}, {2, 5}, {0, 4}, {1, 5}}};
    PlanarKnotDiagram d = to_planar(fig6);
    CHECK(d.face_count() == d.c + 2);
}
