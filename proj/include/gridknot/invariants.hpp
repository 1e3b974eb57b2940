#pragma once

#include <string>

#include "gridknot/diagram.hpp"
#include "gridknot/laurent.hpp"

namespace gridknot {

// Mirror-normalized identification key: the lexicographically smaller of
// V(t), V(1/t); the Alexander polynomial shifted to minimal non-negative
// exponents with positive leading coefficient; |Delta(-1)|.
struct Fingerprint {
    LaurentPolynomial jones_norm;
    LaurentPolynomial alexander_norm;
    long long det = 1;
    bool chiral = false;  // V(t) != V(1/t)

    bool operator==(const Fingerprint& o) const {
        return jones_norm == o.jones_norm && alexander_norm == o.alexander_norm && det == o.det;
    }
    bool operator<(const Fingerprint& o) const;
    std::string serialize() const;
};

struct FingerprintHash {
    std::size_t operator()(const Fingerprint& f) const;
};

// Kauffman bracket state sum in A over all 2^c smoothings.  Throws
// std::length_error when c exceeds the state budget (24).
LaurentPolynomial kauffman_bracket(const PlanarKnotDiagram& d);

// V(t) with integer exponents (A = t^(-1/4) after the writhe correction).
LaurentPolynomial jones(const PlanarKnotDiagram& d);

// Alexander polynomial, normalized as in Fingerprint.
LaurentPolynomial alexander(const PlanarKnotDiagram& d);
long long determinant(const PlanarKnotDiagram& d);

// Simplifies first, then assembles the normalized triple.
Fingerprint fingerprint(const PlanarKnotDiagram& d);

}  // namespace gridknot
