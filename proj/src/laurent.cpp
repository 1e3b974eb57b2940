#include "gridknot/laurent.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace gridknot {

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow in +");
    return r;
}

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow in *");
    return r;
}

LaurentPolynomial::LaurentPolynomial(long long constant) {
    if (constant != 0) terms_[0] = constant;
}

LaurentPolynomial LaurentPolynomial::monomial(long long coeff, int exp) {
    LaurentPolynomial p;
    if (coeff != 0) p.terms_[exp] = coeff;
    return p;
}

bool LaurentPolynomial::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

int LaurentPolynomial::min_exp() const {
    if (terms_.empty()) throw std::domain_error("min_exp of zero polynomial");
    return terms_.begin()->first;
}

int LaurentPolynomial::max_exp() const {
    if (terms_.empty()) throw std::domain_error("max_exp of zero polynomial");
    return terms_.rbegin()->first;
}

long long LaurentPolynomial::coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? 0 : it->second;
}

void LaurentPolynomial::set_coeff(int exp, long long c) {
    if (c == 0)
        terms_.erase(exp);
    else
        terms_[exp] = c;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    for (auto& [e, c] : o.terms_) r.set_coeff(e, checked_add(r.coeff(e), c));
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const {
    return *this + (-o);
}

LaurentPolynomial LaurentPolynomial::operator-() const {
    LaurentPolynomial r;
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
    LaurentPolynomial r;
    for (auto& [e1, c1] : terms_)
        for (auto& [e2, c2] : o.terms_)
            r.set_coeff(e1 + e2, checked_add(r.coeff(e1 + e2), checked_mul(c1, c2)));
    return r;
}

LaurentPolynomial LaurentPolynomial::shifted(int dexp) const {
    LaurentPolynomial r;
    for (auto& [e, c] : terms_) r.terms_[e + dexp] = c;
    return r;
}

LaurentPolynomial LaurentPolynomial::inverted() const {
    LaurentPolynomial r;
    for (auto& [e, c] : terms_) r.terms_[-e] = c;
    return r;
}

long long LaurentPolynomial::eval(long long x) const {
    if (terms_.empty()) return 0;
    if (x == 1 || x == -1) {
        long long acc = 0;
        for (auto& [e, c] : terms_) acc = checked_add(acc, (x == -1 && (e & 1)) ? -c : c);
        return acc;
    }
    if (min_exp() < 0) throw std::domain_error("eval with negative exponents at |x| != 1");
    long long acc = 0;
    for (auto& [e, c] : terms_) {
        long long p = 1;
        for (int i = 0; i < e; ++i) p = checked_mul(p, x);
        acc = checked_add(acc, checked_mul(c, p));
    }
    return acc;
}

std::string LaurentPolynomial::serialize() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (!first) out << ' ';
        out << c << ':' << e;
        first = false;
    }
    return out.str();
}

LaurentPolynomial LaurentPolynomial::parse(const std::string& text) {
    LaurentPolynomial r;
    if (text == "0") return r;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("bad polynomial term: " + tok);
        long long c = std::stoll(tok.substr(0, colon));
        int e = std::stoi(tok.substr(colon + 1));
        if (c != 0) r.set_coeff(e, checked_add(r.coeff(e), c));
    }
    return r;
}

}  // namespace gridknot
