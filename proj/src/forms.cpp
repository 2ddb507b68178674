#include "cubiclocus/forms.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "cubiclocus/factor.hpp"
#include "cubiclocus/modp.hpp"

namespace cubiclocus {

Int disc_reduced(const IntegerMatrixCubic& f) {
    const Int &a = f.a, &b = f.b, &c = f.c, &d = f.d;
    return -3 * b * b * c * c + 4 * a * c * c * c + 4 * b * b * b * d +
           a * a * d * d - 6 * a * b * c * d;
}

Int disc_classical(const BinaryCubicForm& f) {
    const Int &a = f.c0, &b = f.c1, &c = f.c2, &d = f.c3;
    return 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c -
           4 * a * c * c * c - 27 * a * a * d * d;
}

BinaryCubicForm act(const UnimodularMatrix& m, const BinaryCubicForm& f) {
    const Int &A = m.m00, &B = m.m01, &C = m.m10, &D = m.m11;
    const Int &c0 = f.c0, &c1 = f.c1, &c2 = f.c2, &c3 = f.c3;
    Int g0 = f.eval(A, C);
    Int g3 = f.eval(B, D);
    Int g1 = 3 * c0 * A * A * B + c1 * (A * A * D + 2 * A * B * C) +
             c2 * (2 * A * C * D + B * C * C) + 3 * c3 * C * C * D;
    Int g2 = 3 * c0 * A * B * B + c1 * (2 * A * B * D + B * B * C) +
             c2 * (A * D * D + 2 * B * C * D) + 3 * c3 * C * D * D;
    return {g0, g1, g2, g3};
}

RootClass classify_roots_mod_p(const BinaryCubicForm& f, const Int& p) {
    std::array<Int, 4> c{mod(f.c0, p), mod(f.c1, p), mod(f.c2, p), mod(f.c3, p)};
    if (c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0)
        throw AllZeroModP("classify_roots_mod_p: form vanishes mod p");

    RootClass rc;
    // multiplicity of (1:0) = number of leading coefficients divisible by p
    int m_inf = 0;
    while (c[m_inf] == 0) ++m_inf;

    // affine roots of f(t,1)
    for (auto& [r, mult] : cubic_roots_mod_p(c, p))
        rc.roots.push_back({{r, Int(1)}, mult});
    if (m_inf > 0) rc.roots.push_back({{Int(1), Int(0)}, m_inf});

    rc.kind = RootKind::NoRoot;
    for (auto& [pt, mult] : rc.roots) {
        if (mult == 3) {
            rc.kind = RootKind::TripleRoot;
            rc.witness = pt;
            return rc;
        }
    }
    // a double root always comes with a simple companion (pattern 2+1), so
    // the remaining cases are SimpleRoot or NoRoot
    for (auto& [pt, mult] : rc.roots) {
        if (mult == 1) {
            rc.kind = RootKind::SimpleRoot;
            rc.witness = pt;
            return rc;
        }
    }
    return rc;
}

namespace {

// Small-prime classifier on raw residues, for exhaustive counting. A triple
// root excludes any other root, so the first root found settles the class.
RootKind classify_small(long c0, long c1, long c2, long c3, long p) {
    auto md = [p](long x) { long r = x % p; return r < 0 ? r + p : r; };
    long c[4] = {md(c0), md(c1), md(c2), md(c3)};
    int m_inf = 0;
    while (m_inf < 4 && c[m_inf] == 0) ++m_inf;
    assert(m_inf < 4);
    if (m_inf == 3) return RootKind::TripleRoot;
    if (m_inf >= 1) return RootKind::SimpleRoot;  // (1:0) simple, or 2+1 pattern
    for (long r = 0; r < p; ++r) {
        long q[4] = {c[0], c[1], c[2], c[3]};
        int deg = 3, mult = 0;
        for (;;) {
            long b[4];
            b[0] = q[0];
            for (int i = 1; i <= deg; ++i) b[i] = (q[i] + b[i - 1] * r) % p;
            if (b[deg] != 0) break;  // remainder nonzero
            ++mult;
            --deg;
            if (deg < 0) break;
            for (int i = 0; i <= deg; ++i) q[i] = b[i];
        }
        if (mult == 3) return RootKind::TripleRoot;
        if (mult >= 1) return RootKind::SimpleRoot;  // 1, or 2 with linear companion
    }
    return RootKind::NoRoot;
}

}  // namespace

RootClassCounts count_root_classes(long p, Population population) {
    if (p > 101) throw GuardViolation("count_root_classes: guard p <= 101 violated");
    RootClassCounts rc;
    if (population == Population::MonicCubicPoly) {
        for (long a = 0; a < p; ++a)
            for (long b = 0; b < p; ++b)
                for (long c = 0; c < p; ++c) {
                    switch (classify_small(1, a, b, c, p)) {
                        case RootKind::SimpleRoot: rc.simple_count++; break;
                        case RootKind::TripleRoot: rc.triple_count++; break;
                        case RootKind::NoRoot: rc.none_count++; break;
                    }
                }
        rc.total = p * p * p;
    } else {
        for (long a = 0; a < p; ++a)
            for (long b = 0; b < p; ++b)
                for (long c = 0; c < p; ++c)
                    for (long d = 0; d < p; ++d) {
                        if (a == 0 && b == 0 && c == 0 && d == 0) continue;
                        switch (classify_small(a, b, c, d, p)) {
                            case RootKind::SimpleRoot: rc.simple_count++; break;
                            case RootKind::TripleRoot: rc.triple_count++; break;
                            case RootKind::NoRoot: rc.none_count++; break;
                        }
                    }
        rc.total = p * p * p * p - 1;
    }
    return rc;
}

bool is_irreducible_over_Q(const IntegerMatrixCubic& f) {
    if (f.a == 0 || f.d == 0) return false;  // root at (1:0) resp. (0:1)
    BinaryCubicForm F = f.embed();
    // cheap certificate: no root mod p rules out a P^1(Q) point
    for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L}) {
        Int P(p);
        if (mod(F.c0, P) == 0 && mod(F.c1, P) == 0 && mod(F.c2, P) == 0 &&
            mod(F.c3, P) == 0)
            continue;
        if (classify_roots_mod_p(F, P).kind == RootKind::NoRoot) return true;
    }
    // rational-root test: u/v = s/t with s | d, t | a
    for (const Int& s : divisors(f.d)) {
        for (const Int& t : divisors(f.a)) {
            Int g;
            mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t());
            if (g != 1) continue;
            if (F.eval(s, t) == 0 || F.eval(-s, t) == 0) return false;
        }
    }
    return true;
}

bool unit_cube_test(const Int& a, const Int& p) {
    if (mod(a, p) == 0) throw std::invalid_argument("unit_cube_test: p | a");
    if (p == 3) {
        Int r = mod(a, Int(9));
        return r == 1 || r == 8;
    }
    if (mod(p, Int(3)) == 2) return true;
    return powmod(mod(a, p), (p - 1) / 3, p) == 1;
}

bool is_fundamental_discriminant(const Int& d) {
    if (d == 0) return false;
    Int r = mod(d, Int(4));
    if (r == 1) return is_squarefree(d);
    if (r == 0) {
        Int dp = d / 4;
        Int r2 = mod(dp, Int(4));
        return (r2 == 2 || r2 == 3) && is_squarefree(dp);
    }
    return false;
}

long count_fundamental_up_to(long X) {
    std::vector<bool> sf(X + 1, true);
    sf[0] = false;
    for (long q = 2; q * q <= X; ++q)
        for (long m = q * q; m <= X; m += q * q) sf[m] = false;
    long count = 0;
    for (long d = 1; d <= X; ++d) {
        if (d % 4 == 1 && sf[d]) ++count;
        else if (d % 4 == 0) {
            long dp = d / 4;
            if ((dp % 4 == 2 || dp % 4 == 3) && sf[dp]) ++count;
        }
    }
    return count;
}

std::string to_string(const BinaryCubicForm& f) {
    std::ostringstream os;
    os << f.c0 << "," << f.c1 << "," << f.c2 << "," << f.c3;
    return os.str();
}

std::string to_string(const IntegerMatrixCubic& f) {
    std::ostringstream os;
    os << "im:" << f.a << "," << f.b << "," << f.c << "," << f.d;
    return os.str();
}

namespace {

std::vector<Int> parse_ints(const std::string& s) {
    std::vector<Int> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (cur.empty()) throw std::invalid_argument("parse: empty coefficient");
            out.emplace_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    return out;
}

}  // namespace

BinaryCubicForm parse_form(const std::string& s) {
    if (s.rfind("im:", 0) == 0) {
        auto v = parse_ints(s.substr(3));
        if (v.size() != 4) throw std::invalid_argument("parse_form: need 4 coefficients");
        return IntegerMatrixCubic(v[0], v[1], v[2], v[3]).embed();
    }
    auto v = parse_ints(s);
    if (v.size() != 4) throw std::invalid_argument("parse_form: need 4 coefficients");
    return {v[0], v[1], v[2], v[3]};
}

std::optional<IntegerMatrixCubic> parse_integer_matrix(const std::string& s) {
    if (s.rfind("im:", 0) == 0) {
        auto v = parse_ints(s.substr(3));
        if (v.size() != 4) throw std::invalid_argument("parse: need 4 coefficients");
        return IntegerMatrixCubic(v[0], v[1], v[2], v[3]);
    }
    auto v = parse_ints(s);
    if (v.size() != 4) throw std::invalid_argument("parse: need 4 coefficients");
    if (mod(v[1], Int(3)) != 0 || mod(v[2], Int(3)) != 0) return std::nullopt;
    return IntegerMatrixCubic(v[0], v[1] / 3, v[2] / 3, v[3]);
}

}  // namespace cubiclocus
