#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace gridknot {

// Exact integer-coefficient polynomial in one variable with negative
// exponents allowed.  Canonical: no zero coefficients are stored.
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    explicit LaurentPolynomial(long long constant);
    static LaurentPolynomial monomial(long long coeff, int exp);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    int min_exp() const;  // throws on zero polynomial
    int max_exp() const;
    long long coeff(int exp) const;
    void set_coeff(int exp, long long c);

    LaurentPolynomial operator+(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-(const LaurentPolynomial& o) const;
    LaurentPolynomial operator*(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-() const;
    bool operator==(const LaurentPolynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPolynomial& o) const { return terms_ != o.terms_; }
    // Total order on the sorted (exp, coeff) term sequences.
    bool operator<(const LaurentPolynomial& o) const { return terms_ < o.terms_; }

    LaurentPolynomial shifted(int dexp) const;   // multiply by x^dexp
    LaurentPolynomial inverted() const;          // substitute x -> 1/x
    long long eval(long long x) const;           // exact, requires min_exp >= 0 or x = +-1

    // "coeff:exp" pairs sorted by exponent, e.g. "-1:-4 1:-3 1:-1"; "0" when zero.
    std::string serialize() const;
    static LaurentPolynomial parse(const std::string& text);

    const std::map<int, long long>& terms() const { return terms_; }

private:
    std::map<int, long long> terms_;
};

// Throwing helpers used wherever coefficient arithmetic could overflow.
long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);

}  // namespace gridknot
