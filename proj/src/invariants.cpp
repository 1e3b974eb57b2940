#include "gridknot/invariants.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gridknot {

namespace {

using boost::multiprecision::cpp_int;

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 0; i < k; ++i) r = checked_mul(r, n - i) / (i + 1);
    return r;
}

}  // namespace

LaurentPolynomial kauffman_bracket(const PlanarKnotDiagram& d) {
    if (d.c > 24) throw std::length_error("kauffman_bracket: state budget exceeded, simplify first");
    if (d.c == 0) return LaurentPolynomial(1);

    int c = d.c, n = 2 * c;
    auto op = d.over_pos(), up = d.under_pos();
    // Arc i runs from visit i to visit i+1.  Per crossing, the A-smoothing of
    // a positive crossing joins the strands respecting orientation; for a
    // negative crossing it is the orientation-reversing one.
    struct Joins {
        int a1, a2, b1, b2;  // A-smoothing unions (a1,a2),(b1,b2); B swaps roles
        bool a_preserving;
    };
    std::vector<Joins> joins(c);
    for (int x = 0; x < c; ++x) {
        int p = std::min(op[x], up[x]), q = std::max(op[x], up[x]);
        int pm = (p + n - 1) % n, qm = (q + n - 1) % n;
        joins[x] = {pm, q, qm, p, d.sign[x] > 0};
    }

    // count[exponent a-b + c][loops-1]
    std::vector<std::vector<long long>> count(2 * c + 1, std::vector<long long>(n, 0));
    for (uint32_t state = 0; state < (uint32_t)1 << c; ++state) {
        Dsu dsu(n);
        for (int x = 0; x < c; ++x) {
            bool a_side = (state >> x) & 1;
            bool preserving = joins[x].a_preserving == a_side;
            int p = joins[x].b2, q = joins[x].a2;  // p < q positions
            int pm = joins[x].a1, qm = joins[x].b1;
            if (preserving) {
                dsu.unite(pm, q);
                dsu.unite(qm, p);
            } else {
                dsu.unite(pm, qm);
                dsu.unite(p, q);
            }
        }
        int loops = 0;
        for (int i = 0; i < n; ++i)
            if (dsu.find(i) == i) ++loops;
        int a = __builtin_popcount(state);
        count[2 * a - c + c][loops - 1]++;
    }

    // Sum count * A^(a-b) * delta^m with delta = -A^2 - A^-2.
    LaurentPolynomial bracket;
    for (int xi = 0; xi <= 2 * c; ++xi)
        for (int m = 0; m < n; ++m) {
            long long cnt = count[xi][m];
            if (!cnt) continue;
            int exp_ab = xi - c;
            long long s = (m % 2) ? -cnt : cnt;
            for (int k = 0; k <= m; ++k) {
                int e = exp_ab + 4 * k - 2 * m;
                bracket.set_coeff(e, checked_add(bracket.coeff(e), checked_mul(s, binomial(m, k))));
            }
        }
    return bracket;
}

LaurentPolynomial jones(const PlanarKnotDiagram& d) {
    LaurentPolynomial b = kauffman_bracket(d);
    int w = d.writhe();
    // (-A)^(-3w) * <D>, then A = t^(-1/4).
    LaurentPolynomial v = b.shifted(-3 * w);
    if (w & 1) v = -v;
    LaurentPolynomial out;
    for (auto& [e, c] : v.terms()) {
        if (e % 4 != 0) throw std::logic_error("jones: quarter exponents did not cancel");
        out.set_coeff(-e / 4, c);
    }
    return out;
}

namespace {

// Dense polynomial in t with non-negative exponents over big integers.
using Poly = std::vector<cpp_int>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

Poly sub(Poly a, const Poly& b) {
    if (b.size() > a.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// Exact division, used by the fraction-free elimination.
Poly divide_exact(Poly num, const Poly& den) {
    if (den.empty()) throw std::logic_error("division by zero polynomial");
    if (num.empty()) return {};
    Poly q(num.size() - den.size() + 1);
    for (int i = (int)q.size() - 1; i >= 0; --i) {
        cpp_int lead = num[i + den.size() - 1];
        if (lead == 0) continue;
        if (lead % den.back() != 0) throw std::logic_error("inexact polynomial division");
        q[i] = lead / den.back();
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= q[i] * den[j];
    }
    trim(num);
    if (!num.empty()) throw std::logic_error("inexact polynomial division (remainder)");
    trim(q);
    return q;
}

// Fraction-free Bareiss determinant over Z[t].
Poly poly_det(std::vector<std::vector<Poly>> m) {
    int n = (int)m.size();
    if (n == 0) return Poly{1};
    int sign = 1;
    Poly prev{1};
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].empty()) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m[i][k].empty()) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return {};
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = divide_exact(sub(mul(m[i][j], m[k][k]), mul(m[i][k], m[k][j])), prev);
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    if (sign < 0)
        for (auto& c : det) c = -c;
    return det;
}

LaurentPolynomial normalize_alexander(const Poly& p) {
    if (p.empty()) throw std::logic_error("alexander polynomial vanished");
    std::size_t low = 0;
    while (p[low] == 0) ++low;
    LaurentPolynomial out;
    bool negate = p.back() < 0;
    for (std::size_t i = low; i < p.size(); ++i) {
        cpp_int c = negate ? -p[i] : p[i];
        if (c == 0) continue;
        if (c > std::numeric_limits<long long>::max() || c < std::numeric_limits<long long>::min())
            throw std::overflow_error("alexander coefficient exceeds int64");
        out.set_coeff((int)(i - low), (long long)c);
    }
    return out;
}

}  // namespace

LaurentPolynomial alexander(const PlanarKnotDiagram& d) {
    if (d.c == 0) return LaurentPolynomial(1);
    int c = d.c, n = 2 * c;
    // Arcs of the diagram: maximal runs between under-passages.  arc_at[i] is
    // the arc carrying visit i; an under visit terminates its arc.
    std::vector<int> arc_at(n, -1);
    int first_under = -1;
    for (int i = 0; i < n; ++i)
        if (!d.gauss[i].over) {
            first_under = i;
            break;
        }
    int arc = 0;
    for (int k = 0; k < n; ++k) {
        int i = (first_under + 1 + k) % n;
        arc_at[i] = arc;
        if (!d.gauss[i].over) ++arc;
    }
    // arc == c after the loop: each under-passage closes one arc.

    auto op = d.over_pos(), up = d.under_pos();
    Poly one_minus_t = {1, -1}, tpoly = {0, 1}, minus_one = {-1}, minus_t = {0, -1}, one = {1};
    std::vector<std::vector<Poly>> m(c, std::vector<Poly>(c));
    auto add = [&](int row, int col, const Poly& v) { m[row][col] = sub(m[row][col], mul(v, minus_one)); };
    for (int x = 0; x < c; ++x) {
        int o = arc_at[op[x]];
        int uin = arc_at[up[x]];
        int uout = (arc_at[up[x]] + 1) % c;
        // Wirtinger relation rows, abelianized; units chosen so entries stay
        // in Z[t].
        add(x, o, one_minus_t);
        if (d.sign[x] > 0) {
            add(x, uin, tpoly);
            add(x, uout, minus_one);
        } else {
            add(x, uin, minus_one);
            add(x, uout, tpoly);
        }
    }
    // Delete the last column: determinant of the (c-1)x(c-1) minor.
    std::vector<std::vector<Poly>> minor(c - 1, std::vector<Poly>(c - 1));
    for (int i = 0; i + 1 < c; ++i)
        for (int j = 0; j + 1 < c; ++j) minor[i][j] = m[i][j];
    return normalize_alexander(poly_det(std::move(minor)));
}

long long determinant(const PlanarKnotDiagram& d) {
    long long v = alexander(d).eval(-1);
    return v < 0 ? -v : v;
}

bool Fingerprint::operator<(const Fingerprint& o) const {
    if (det != o.det) return det < o.det;
    if (jones_norm != o.jones_norm) return jones_norm < o.jones_norm;
    return alexander_norm < o.alexander_norm;
}

std::string Fingerprint::serialize() const {
    return "J[" + jones_norm.serialize() + "] A[" + alexander_norm.serialize() + "] d" +
           std::to_string(det) + (chiral ? " c" : " a");
}

std::size_t FingerprintHash::operator()(const Fingerprint& f) const {
    return std::hash<std::string>()(f.serialize());
}

Fingerprint fingerprint(const PlanarKnotDiagram& d) {
    PlanarKnotDiagram s = simplify(d);
    Fingerprint f;
    LaurentPolynomial j = jones(s);
    LaurentPolynomial ji = j.inverted();
    f.chiral = j != ji;
    f.jones_norm = ji < j ? ji : j;
    f.alexander_norm = alexander(s);
    f.det = f.alexander_norm.eval(-1);
    if (f.det < 0) f.det = -f.det;
    return f;
}

}  // namespace gridknot
