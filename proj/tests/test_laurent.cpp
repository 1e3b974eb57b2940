#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gridknot/laurent.hpp"

using gridknot::LaurentPolynomial;

TEST_CASE("constants and monomials") {
    LaurentPolynomial zero;
    CHECK(zero.is_zero());
    CHECK(zero.serialize() == "0");
    LaurentPolynomial one(1);
    CHECK(one.is_one());
    CHECK((one + zero) == one);
    auto m = LaurentPolynomial::monomial(-3, -2);
    CHECK(m.coeff(-2) == -3);
    CHECK(m.min_exp() == -2);
    CHECK(m.max_exp() == -2);
}

TEST_CASE("ring arithmetic") {
    // (t - 1)(t + 1) = t^2 - 1
    auto t = LaurentPolynomial::monomial(1, 1);
    auto p = (t - LaurentPolynomial(1)) * (t + LaurentPolynomial(1));
    CHECK(p.coeff(2) == 1);
    CHECK(p.coeff(0) == -1);
    CHECK(p.coeff(1) == 0);
    CHECK(p == LaurentPolynomial::parse("-1:0 1:2"));
    // cancellation drops terms entirely
    CHECK((p - p).is_zero());
}

TEST_CASE("shift, invert, eval") {
    auto p = LaurentPolynomial::parse("1:-1 -1:0 1:1");  // t^-1 - 1 + t
    CHECK(p.shifted(1) == LaurentPolynomial::parse("1:0 -1:1 1:2"));
    CHECK(p.inverted() == p);
    CHECK(p.eval(1) == 1);
    CHECK(p.eval(-1) == -3);
    auto q = LaurentPolynomial::parse("1:0 -3:1 1:2");
    CHECK(q.eval(-1) == 5);
    CHECK(q.eval(2) == -1);
}

TEST_CASE("serialization round trip and ordering") {
    auto p = LaurentPolynomial::parse("-1:-4 1:-3 1:-1");
    CHECK(p.serialize() == "-1:-4 1:-3 1:-1");
    CHECK(LaurentPolynomial::parse(p.serialize()) == p);
    auto q = p.inverted();
    CHECK(q.serialize() == "1:1 1:3 -1:4");
    CHECK((p < q) != (q < p));
}

TEST_CASE("overflow is reported, not wrapped") {
    auto big = LaurentPolynomial::monomial(std::numeric_limits<long long>::max(), 0);
    CHECK_THROWS_AS(big * LaurentPolynomial(2), std::overflow_error);
    CHECK_THROWS_AS(big + big, std::overflow_error);
}
