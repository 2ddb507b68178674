#include "cubiclocus/modp.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>

namespace cubiclocus {

std::uint64_t max_enum_guard(std::uint64_t dflt) {
    if (const char* s = std::getenv("CUBICLOCUS_MAX_ENUM")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return dflt;
}

Int powmod(const Int& base, const Int& exp, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int invmod(const Int& a, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
        throw std::invalid_argument("invmod: not invertible");
    return r;
}

std::vector<Int> sqrt_mod_p(const Int& a0, const Int& p) {
    Int a = mod(a0, p);
    if (a == 0) return {Int(0)};
    if (p == 2) return {a};
    if (powmod(a, (p - 1) / 2, p) != 1) return {};
    Int x;
    if (mod(p, Int(4)) == 3) {
        x = powmod(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks. Deterministic non-residue scan.
        Int q = p - 1;
        unsigned long s = 0;
        while (mpz_even_p(q.get_mpz_t())) { q /= 2; ++s; }
        Int z = 2;
        while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
        Int m(s), c = powmod(z, q, p), t = powmod(a, q, p);
        x = powmod(a, (q + 1) / 2, p);
        while (t != 1) {
            Int tt = t;
            long i = 0;
            while (tt != 1) { tt = mod(tt * tt, p); ++i; }
            Int b = c;
            for (long j = 0; j < m.get_si() - i - 1; ++j) b = mod(b * b, p);
            x = mod(x * b, p);
            c = mod(b * b, p);
            t = mod(t * c, p);
            m = i;
        }
    }
    Int y = mod(p - x, p);
    if (x == y) return {x};
    if (x > y) std::swap(x, y);
    return {x, y};
}

bool is_cube_fp(const Int& a0, const Int& p) {
    Int a = mod(a0, p);
    if (a == 0) throw std::invalid_argument("is_cube_fp: zero");
    if (mod(p, Int(3)) != 1) return true;  // cube map bijective, or p = 3
    return powmod(a, (p - 1) / 3, p) == 1;
}

namespace {

// Small dense polynomials over F_p (degree <= 3 inputs, quotient-ring work
// stays at degree < 4). Coefficients ascending.
using Poly = std::vector<Int>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, const Int& p) {
    Poly r(a.size() + b.size(), Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], p);
    trim(r);
    // reduce mod m (m monic-scaled below)
    const size_t dm = m.size() - 1;
    Int lead_inv = invmod(m.back(), p);
    while (r.size() > dm) {
        Int c = mod(r.back() * lead_inv, p);
        size_t off = r.size() - 1 - dm;
        for (size_t i = 0; i < m.size(); ++i) r[off + i] = mod(r[off + i] - c * m[i], p);
        trim(r);
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, const Int& p) {
    trim(a); trim(b);
    while (!b.empty()) {
        // a mod b
        Int lead_inv = invmod(b.back(), p);
        while (a.size() >= b.size() && !a.empty()) {
            Int c = mod(a.back() * lead_inv, p);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[off + i] = mod(a[off + i] - c * b[i], p);
            trim(a);
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        Int inv = invmod(a.back(), p);
        for (auto& c : a) c = mod(c * inv, p);
    }
    return a;
}

// t^p mod m, binary exponentiation in F_p[t]/(m).
Poly x_pow_p_mod(const Poly& m, const Int& p) {
    Poly result{Int(1)};
    Poly base{Int(0), Int(1)};
    Int e = p;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = poly_mul_mod(result, base, m, p);
        e /= 2;
        if (e > 0) base = poly_mul_mod(base, base, m, p);
    }
    return result;
}

Int eval_poly(const Poly& f, const Int& t, const Int& p) {
    Int r = 0;
    for (size_t i = f.size(); i-- > 0;) r = mod(r * t + f[i], p);
    return r;
}

// Distinct roots of a squarefree product of linear factors (deg <= 3).
void split_linear(const Poly& h, const Int& p, std::vector<Int>& out) {
    size_t d = h.size() - 1;
    if (d == 0) return;
    if (d == 1) {
        out.push_back(mod(-h[0] * invmod(h[1], p), p));
        return;
    }
    if (d == 2) {
        Int a = h[2], b = h[1], c = h[0];
        Int disc = mod(b * b - 4 * a * c, p);
        for (const Int& s : sqrt_mod_p(disc, p)) {
            out.push_back(mod((s - b) * invmod(2 * a, p), p));
            if (s == mod(p - s, p)) break;
        }
        return;
    }
    // d == 3, p odd here (small p handled by brute force): split with
    // gcd(h, (t+s)^((p-1)/2) - 1) over a deterministic shift sequence.
    for (Int s = 0;; ++s) {
        Int r0 = mod(-s, p);
        if (eval_poly(h, r0, p) == 0) {
            out.push_back(r0);
            // synthetic division by (t - r0)
            Poly q(h.size() - 1, Int(0));
            Int carry = 0;
            for (size_t i = h.size(); i-- > 1;) {
                carry = mod(h[i] + carry * r0, p);
                q[i - 1] = carry;
            }
            split_linear(q, p, out);
            return;
        }
        Poly w{Int(1)};
        Int e = (p - 1) / 2;
        Poly base{mod(s, p), Int(1)};
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) w = poly_mul_mod(w, base, h, p);
            e /= 2;
            if (e > 0) base = poly_mul_mod(base, base, h, p);
        }
        if (w.empty()) w.push_back(Int(0));
        w[0] = mod(w[0] - 1, p);
        trim(w);
        Poly g = poly_gcd(h, w, p);
        if (g.size() > 1 && g.size() < h.size()) {
            split_linear(g, p, out);
            // h / g
            Poly q(h.size() - g.size() + 1, Int(0)), r = h;
            Int linv = invmod(g.back(), p);
            while (r.size() >= g.size() && !r.empty()) {
                Int c = mod(r.back() * linv, p);
                size_t off = r.size() - g.size();
                q[off] = c;
                for (size_t i = 0; i < g.size(); ++i) r[off + i] = mod(r[off + i] - c * g[i], p);
                trim(r);
            }
            split_linear(q, p, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<Int, int>> cubic_roots_mod_p(const std::array<Int, 4>& c,
                                                   const Int& p) {
    Poly f{mod(c[3], p), mod(c[2], p), mod(c[1], p), mod(c[0], p)};
    trim(f);
    if (f.empty()) throw std::invalid_argument("cubic_roots_mod_p: zero polynomial mod p");

    std::vector<Int> roots;
    if (p <= 1024) {
        for (Int t = 0; t < p; ++t)
            if (eval_poly(f, t, p) == 0) roots.push_back(t);
    } else {
        // distinct-root part: gcd(f, t^p - t)
        Poly m = f;
        Poly xp = x_pow_p_mod(m, p);
        // xp - x
        if (xp.size() < 2) xp.resize(2, Int(0));
        xp[1] = mod(xp[1] - 1, p);
        trim(xp);
        Poly h = poly_gcd(f, xp, p);
        split_linear(h, p, roots);
        std::sort(roots.begin(), roots.end());
    }

    std::vector<std::pair<Int, int>> out;
    for (const Int& r : roots) {
        Poly q = f;
        int mult = 0;
        while (!q.empty() && eval_poly(q, r, p) == 0) {
            // synthetic division by (t - r)
            Poly nq(q.size() - 1, Int(0));
            Int carry = 0;
            for (size_t i = q.size(); i-- > 1;) {
                carry = mod(q[i] + carry * r, p);
                nq[i - 1] = carry;
            }
            q = nq;
            ++mult;
        }
        out.emplace_back(r, mult);
    }
    return out;
}

}  // namespace cubiclocus
