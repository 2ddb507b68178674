#include "cubiclocus/dhcount.hpp"

#include "cubiclocus/modp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <thread>
#include <vector>

namespace cubiclocus {

namespace {

using i128 = __int128;

long isqrt_floor(i128 n) {
    if (n < 0) return -1;
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (static_cast<i128>(r) * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

long icbrt_floor(i128 n) {
    if (n < 0) return -1;
    long r = static_cast<long>(std::cbrt(static_cast<double>(n)));
    while (static_cast<i128>(r) * r * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

struct ImForm {
    long a, b, c, d;
};

long disc_red_l(const ImForm& f) {
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    i128 D = -3 * b * b * c * c + 4 * a * c * c * c + 4 * b * b * b * d +
             a * a * d * d - 6 * a * b * c * d;
    return static_cast<long>(D);
}

bool irreducible_l(const ImForm& f) {
    return is_irreducible_over_Q(IntegerMatrixCubic(f.a, f.b, f.c, f.d));
}

// Belabas positive-classical-discriminant domain (disc_reduced < 0), stated
// on the reduced Hessian (pi, q, r) = (b^2-ac, bc-ad, c^2-bd).
bool in_domain_pos_cl(const ImForm& f) {
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    i128 pi = b * b - a * c, q = b * c - a * d, r = c * c - b * d;
    if (a <= 0) return false;
    if (!(b > 0 || (b == 0 && d >= 0))) return false;
    i128 ad = d < 0 ? -d : d, ac = c < 0 ? -c : c;
    if (!(pi < r || (pi == r && (a < ad || (a == ad && b < ac))))) return false;
    if (q > pi || -q > pi) return false;
    if (q == 0 && d >= 0) return false;  // Belabas Def 3.2 tie rule
    i128 abm = a - b < 0 ? b - a : a - b;
    if (pi == q && b >= abm) return false;
    return true;
}

// Mathews negative-classical-discriminant domain (disc_reduced > 0),
// conditions in integer-matrix coordinates.
bool in_domain_neg_cl(const ImForm& f) {
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    if (!(d * d - a * a + 3 * a * c - 3 * b * d > 0)) return false;
    if (a <= 0) return false;
    if (!(b > 0 || (b == 0 && d >= 0))) return false;
    i128 lhs = a * d - 9 * b * c;
    i128 up = (a + 3 * b) * (a + 3 * b) + 3 * a * c;
    i128 lo = -(a - 3 * b) * (a - 3 * b) - 3 * a * c;
    return lo < lhs && lhs < up;
}

// ---- ReducedEnumeration, disc_reduced < 0: Hessian-first ----
// Reduced positive-definite Hessians |q| <= pi <= r with 1 <= 4*pi*r - q^2
// <= X; the fiber over a Hessian is cut out by r*a^2 - q*a*b + pi*b^2 = pi^2
// with c = (b*q - a*r)/pi and d = (c*q - b*r)/pi.
void neg_disc_classes(long X, int threads, std::vector<long>& out) {
    long pi_max = isqrt_floor(static_cast<i128>(X) / 3);
    std::vector<std::vector<long>> lists(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            std::vector<long>& list = lists[t];
            for (long pi = 1 + t; pi <= pi_max; pi += threads) {
                for (long q = -pi; q <= pi; ++q) {
                    i128 q2 = static_cast<i128>(q) * q;
                    long r_lo = std::max(pi, static_cast<long>((q2 + 1 + 4 * pi - 1) / (4 * pi)));
                    long r_hi = static_cast<long>((static_cast<i128>(X) + q2) / (4 * pi));
                    for (long r = r_lo; r <= r_hi; ++r) {
                        i128 D = 4 * static_cast<i128>(pi) * r - q2;  // = |disc|
                        if (D < 1 || D > X) continue;
                        i128 a2max = 4 * static_cast<i128>(pi) * pi * pi / D;
                        long amax = isqrt_floor(a2max);
                        for (long a = -amax; a <= amax; ++a) {
                            // pi*b^2 - q*a*b + (r*a^2 - pi^2) = 0
                            i128 disc_b = q2 * a * a -
                                          4 * static_cast<i128>(pi) *
                                              (static_cast<i128>(r) * a * a -
                                               static_cast<i128>(pi) * pi);
                            if (disc_b < 0) continue;
                            long s = isqrt_floor(disc_b);
                            if (static_cast<i128>(s) * s != disc_b) continue;
                            for (int sgn = 0; sgn < (s == 0 ? 1 : 2); ++sgn) {
                                i128 num = static_cast<i128>(q) * a + (sgn ? -s : s);
                                if (num % (2 * pi) != 0) continue;
                                long b = static_cast<long>(num / (2 * pi));
                                i128 cnum = static_cast<i128>(b) * q -
                                            static_cast<i128>(a) * r;
                                if (cnum % pi != 0) continue;
                                long c = static_cast<long>(cnum / pi);
                                i128 dnum = static_cast<i128>(c) * q -
                                            static_cast<i128>(b) * r;
                                if (dnum % pi != 0) continue;
                                long d = static_cast<long>(dnum / pi);
                                ImForm f{a, b, c, d};
                                // exact Hessian match
                                if (static_cast<i128>(b) * b - static_cast<i128>(a) * c != pi) continue;
                                if (static_cast<i128>(b) * c - static_cast<i128>(a) * d != q) continue;
                                if (static_cast<i128>(c) * c - static_cast<i128>(b) * d != r) continue;
                                if (!in_domain_pos_cl(f)) continue;
                                long Dr = disc_red_l(f);
                                if (!(Dr < 0 && -Dr <= X)) continue;
                                if (!irreducible_l(f)) continue;
                                // each GL-class = two SL-classes
                                list.push_back(-Dr);
                                list.push_back(-Dr);
                            }
                        }
                    }
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& l : lists) out.insert(out.end(), l.begin(), l.end());
}

// ---- ReducedEnumeration, disc_reduced > 0: Mathews domain ----
void pos_disc_classes_bounded(long X, long amax, long bmax, int threads,
                              std::vector<long>& out) {
    std::vector<std::vector<long>> lists(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            std::vector<long>& list = lists[t];
            for (long a = 1 + t; a <= amax; a += threads) {
                for (long b = 0; b <= bmax; ++b) {
                    // window nonempty: a^2 + 9b^2 + 3ac > 0
                    i128 c_lo_num = -(static_cast<i128>(a) * a + 9 * static_cast<i128>(b) * b);
                    long c_lo = static_cast<long>(c_lo_num / (3 * a)) - 1;
                    // min_d disc = 4(ac - b^2)^3 / a^2 <= X
                    i128 rhs = static_cast<i128>(a) * a * X / 4;
                    long k = icbrt_floor(rhs);
                    long c_hi = static_cast<long>((static_cast<i128>(b) * b + k) / a) + 1;
                    for (long c = c_lo; c <= c_hi; ++c) {
                        // Mathews d-window: a*d strictly between mw_lo and mw_hi;
                        // endpoints padded, each candidate is exact-checked below
                        i128 mw_lo_num = 9 * static_cast<i128>(b) * c -
                                         (static_cast<i128>(a) - 3 * b) * (a - 3 * b) -
                                         3 * static_cast<i128>(a) * c;
                        i128 mw_hi_num = 9 * static_cast<i128>(b) * c +
                                         (static_cast<i128>(a) + 3 * b) * (a + 3 * b) +
                                         3 * static_cast<i128>(a) * c;
                        long d_lo = static_cast<long>(mw_lo_num / a) - 2;
                        long d_hi = static_cast<long>(mw_hi_num / a) + 2;
                        // disc window: a^2 d^2 + (4b^3-6abc) d + (4ac^3-3b^2c^2) <= X
                        i128 B = 4 * static_cast<i128>(b) * b * b -
                                 6 * static_cast<i128>(a) * b * c;
                        i128 C0 = 4 * static_cast<i128>(a) * c * c * c -
                                  3 * static_cast<i128>(b) * b * c * c;
                        i128 A2 = static_cast<i128>(a) * a;
                        i128 discX = B * B - 4 * A2 * (C0 - X);
                        if (discX < 0) continue;
                        long sX = isqrt_floor(discX);
                        long dX_lo = static_cast<long>((-B - sX) / (2 * A2)) - 2;
                        long dX_hi = static_cast<long>((-B + sX) / (2 * A2)) + 2;
                        d_lo = std::max(d_lo, dX_lo);
                        d_hi = std::min(d_hi, dX_hi);
                        for (long d = d_lo; d <= d_hi; ++d) {
                            ImForm f{a, b, c, d};
                            long Dr = disc_red_l(f);
                            if (!(Dr >= 1 && Dr <= X)) continue;
                            if (!in_domain_neg_cl(f)) continue;
                            if (!irreducible_l(f)) continue;
                            list.push_back(Dr);
                            list.push_back(Dr);
                        }
                    }
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& l : lists) out.insert(out.end(), l.begin(), l.end());
}

void pos_disc_classes(long X, int threads, std::vector<long>& out) {
    long base = static_cast<long>(2.0 * std::pow(16.0 * X, 0.25)) + 4;
    long amax = base, bmax = base;
    std::vector<long> cur;
    pos_disc_classes_bounded(X, amax, bmax, threads, cur);
    // expand shells until an expansion contributes nothing
    for (int round = 0; round < 16; ++round) {
        std::vector<long> next;
        pos_disc_classes_bounded(X, amax + 8, bmax + 8, threads, next);
        if (next.size() == cur.size()) {
            out.insert(out.end(), cur.begin(), cur.end());
            return;
        }
        cur = std::move(next);
        amax += 8;
        bmax += 8;
    }
    throw std::logic_error("count_classes: Mathews bounds failed to stabilize");
}

// ---- BoxOrbitDedup oracle ----

struct TupleLess {
    bool operator()(const std::array<long, 4>& x, const std::array<long, 4>& y) const {
        return x < y;
    }
};

std::vector<long> box_classes(long X) {
    long B0 = 5 + isqrt_floor(X);
    for (long widen = 0; widen < 3; ++widen) {
        long B1 = 4 * B0 + widen * B0;
        long B1_check = B1 + B0;
        auto run = [&](long closure_box) -> std::vector<long> {
            // seeds
            std::vector<std::array<long, 4>> seeds;
            for (long a = -B0; a <= B0; ++a)
                for (long b = -B0; b <= B0; ++b)
                    for (long c = -B0; c <= B0; ++c)
                        for (long d = -B0; d <= B0; ++d) {
                            ImForm f{a, b, c, d};
                            if (a == 0 && b == 0 && c == 0 && d == 0) continue;
                            long Dr = disc_red_l(f);
                            if (Dr == 0 || Dr > X || Dr < -X) continue;
                            if (!irreducible_l(f)) continue;
                            seeds.push_back({a, b, c, d});
                        }
            // closure under S, T, T^-1 within the closure box, union-find
            std::map<std::array<long, 4>, long, TupleLess> id;
            std::vector<long> parent;
            auto find = [&](long x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            auto unite = [&](long x, long y) {
                x = find(x);
                y = find(y);
                if (x != y) parent[std::max(x, y)] = std::min(x, y);
            };
            auto get_id = [&](const std::array<long, 4>& f) {
                auto it = id.find(f);
                if (it != id.end()) return it->second;
                long n = static_cast<long>(parent.size());
                id.emplace(f, n);
                parent.push_back(n);
                return n;
            };
            auto in_box = [&](const std::array<long, 4>& f) {
                for (long x : f)
                    if (x > closure_box || x < -closure_box) return false;
                return true;
            };
            auto gen_S = [](const std::array<long, 4>& f) -> std::array<long, 4> {
                // u -> -v, v -> u: (a,b,c,d) -> (-d, c, -b, a)
                return {-f[3], f[2], -f[1], f[0]};
            };
            auto gen_T = [](const std::array<long, 4>& f) -> std::array<long, 4> {
                // u -> u + v: a unchanged pattern per shear expansion
                long a = f[0], b = f[1], c = f[2], d = f[3];
                return {a, a + b, a + 2 * b + c, a + 3 * b + 3 * c + d};
            };
            auto gen_Ti = [](const std::array<long, 4>& f) -> std::array<long, 4> {
                long a = f[0], b = f[1], c = f[2], d = f[3];
                return {a, b - a, a - 2 * b + c, -a + 3 * b - 3 * c + d};
            };
            std::vector<std::array<long, 4>> stack;
            for (auto& s : seeds) {
                get_id(s);
                stack.push_back(s);
            }
            while (!stack.empty()) {
                auto f = stack.back();
                stack.pop_back();
                long fi = get_id(f);
                for (auto g : {gen_S(f), gen_T(f), gen_Ti(f)}) {
                    if (!in_box(g)) continue;
                    bool fresh = id.find(g) == id.end();
                    long gi = get_id(g);
                    unite(fi, gi);
                    if (fresh) stack.push_back(g);
                }
            }
            std::map<long, long> comp_disc;  // component root -> |disc|
            for (auto& s : seeds) {
                long root = find(id[s]);
                ImForm f{s[0], s[1], s[2], s[3]};
                long Dr = disc_red_l(f);
                comp_disc.emplace(root, Dr < 0 ? -Dr : Dr);
            }
            std::vector<long> discs;
            for (auto& [root, d] : comp_disc) discs.push_back(d);
            return discs;
        };
        std::vector<long> c1 = run(B1);
        std::vector<long> c2 = run(B1_check);
        std::sort(c1.begin(), c1.end());
        std::sort(c2.begin(), c2.end());
        if (c1 == c2) return c1;
        // an orbit escaped the enlarged box: widen and retry
    }
    throw std::logic_error("BoxOrbitDedup: closure box failed to stabilize");
}

}  // namespace

std::vector<long> class_discs(long X, CountMethod method, int threads) {
    if (X < 1) throw std::invalid_argument("count_classes: X >= 1");
    if (threads < 1) threads = 1;
    std::vector<long> discs;
    if (method == CountMethod::ReducedEnumeration) {
        if (X > static_cast<long>(max_enum_guard(1000000)))
            throw GuardViolation("count_classes: guard X <= 10^6 violated");
        neg_disc_classes(X, threads, discs);
        pos_disc_classes(X, threads, discs);
    } else {
        if (X > 500)
            throw GuardViolation("count_classes: BoxOrbitDedup guard X <= 500 violated");
        discs = box_classes(X);
    }
    std::sort(discs.begin(), discs.end());
    return discs;
}

ClassCountReport count_classes(long X, CountMethod method, int threads) {
    ClassCountReport rep;
    rep.X = X;
    rep.method = method;
    rep.class_count = static_cast<long>(class_discs(X, method, threads).size());
    rep.slope = Rat(rep.class_count, X);
    rep.slope.canonicalize();
    return rep;
}

// ---------------------------------------------------------------------------
// canonical_representative
// ---------------------------------------------------------------------------

namespace {

struct Quad {
    Int pi, q, r;  // pi x^2 + q xy + r y^2
};

Quad hessian(const IntegerMatrixCubic& f) {
    return {f.b * f.b - f.a * f.c, f.b * f.c - f.a * f.d, f.c * f.c - f.b * f.d};
}

UnimodularMatrix mat_mul(const UnimodularMatrix& A, const UnimodularMatrix& B) {
    return {A.m00 * B.m00 + A.m01 * B.m10, A.m00 * B.m01 + A.m01 * B.m11,
            A.m10 * B.m00 + A.m11 * B.m10, A.m10 * B.m01 + A.m11 * B.m11};
}

Quad quad_act(const Quad& H, const UnimodularMatrix& M) {
    const Int &al = M.m00, &be = M.m01, &ga = M.m10, &de = M.m11;
    Int pi = H.pi * al * al + H.q * al * ga + H.r * ga * ga;
    Int r = H.pi * be * be + H.q * be * de + H.r * de * de;
    Int q = 2 * H.pi * al * be + H.q * (al * de + be * ga) + 2 * H.r * ga * de;
    return {pi, q, r};
}

// SL2-reduce a positive definite quadratic; returns the transform M with
// H o M reduced (-pi < q <= pi <= r, and q >= 0 when pi == r).
UnimodularMatrix reduce_pd_quad(Quad H) {
    UnimodularMatrix M = UnimodularMatrix::identity();
    for (int it = 0; it < 10000; ++it) {
        if (H.q > H.pi || H.q <= -H.pi) {
            // translate: q -> q + 2 k pi into (-pi, pi]
            Int k = (H.pi - H.q);
            mpz_fdiv_q(k.get_mpz_t(), k.get_mpz_t(), Int(2 * H.pi).get_mpz_t());
            UnimodularMatrix T(1, k, 0, 1);
            H = quad_act(H, T);
            M = mat_mul(M, T);
            continue;
        }
        if (H.r < H.pi) {
            UnimodularMatrix S(0, -1, 1, 0);
            H = quad_act(H, S);
            M = mat_mul(M, S);
            continue;
        }
        if (H.pi == H.r && H.q < 0) {
            UnimodularMatrix S(0, -1, 1, 0);
            H = quad_act(H, S);
            M = mat_mul(M, S);
            continue;
        }
        return M;
    }
    throw std::logic_error("reduce_pd_quad: did not terminate");
}

// All A in SL2(Z) with H o A = H, for H positive definite reduced.
std::vector<UnimodularMatrix> pd_automorphs(const Quad& H) {
    std::vector<UnimodularMatrix> out;
    Int disc = 4 * H.pi * H.r - H.q * H.q;
    // first column (al, ga): H(al, ga) = pi
    Int ga_max2 = 4 * H.pi * H.pi / disc;  // ga^2 <= 4 pi^2 / disc
    Int ga_max;
    mpz_sqrt(ga_max.get_mpz_t(), ga_max2.get_mpz_t());
    for (Int ga = -ga_max; ga <= ga_max; ++ga) {
        // pi al^2 + q al ga + (r ga^2 - pi) = 0
        Int db = H.q * H.q * ga * ga - 4 * H.pi * (H.r * ga * ga - H.pi);
        if (db < 0) continue;
        Int s;
        mpz_sqrt(s.get_mpz_t(), db.get_mpz_t());
        if (s * s != db) continue;
        for (int sgn = 0; sgn < (s == 0 ? 1 : 2); ++sgn) {
            Int num = -H.q * ga + (sgn ? -s : s);
            if (!mpz_divisible_p(num.get_mpz_t(), Int(2 * H.pi).get_mpz_t())) continue;
            Int al = num / (2 * H.pi);
            // second column: be = -r ga / pi, de = al + q ga / pi
            Int benum = -H.r * ga, denum = H.pi * al + H.q * ga;
            if (!mpz_divisible_p(benum.get_mpz_t(), H.pi.get_mpz_t())) continue;
            if (!mpz_divisible_p(denum.get_mpz_t(), H.pi.get_mpz_t())) continue;
            Int be = benum / H.pi, de = denum / H.pi;
            if (al * de - be * ga != 1) continue;
            Quad HH = quad_act(H, UnimodularMatrix(al, be, ga, de));
            if (HH.pi == H.pi && HH.q == H.q && HH.r == H.r)
                out.emplace_back(al, be, ga, de);
        }
    }
    return out;
}

IntegerMatrixCubic to_im(const BinaryCubicForm& F) {
    if (mod(F.c1, Int(3)) != 0 || mod(F.c2, Int(3)) != 0)
        throw std::logic_error("GL2(Z) action left the integer-matrix lattice");
    return {F.c0, F.c1 / 3, F.c2 / 3, F.c3};
}

std::array<Int, 4> tuple_of(const IntegerMatrixCubic& f) {
    return {f.a, f.b, f.c, f.d};
}

// Mathews reduction with determinant tracking.
std::pair<IntegerMatrixCubic, int> mathews_reduce(IntegerMatrixCubic f) {
    int det = 1;
    // ensure a != 0 first (reducible inputs may need it)
    if (f.a == 0) {
        BinaryCubicForm F = f.embed();
        for (long u0 = 0; u0 < 64; ++u0) {
            bool done = false;
            for (long v0 = 1; v0 <= 64 && !done; ++v0) {
                Int g;
                mpz_gcd(g.get_mpz_t(), Int(u0).get_mpz_t(), Int(v0).get_mpz_t());
                if (g != 1) continue;
                if (F.eval(Int(u0), Int(v0)) == 0) continue;
                // M with first column (u0, v0)
                Int m01, m11;
                {
                    Int gg, s, t;
                    mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                               Int(u0).get_mpz_t(), Int(v0).get_mpz_t());
                    // u0*s + v0*t = 1 -> det (u0, -t; v0, s) = u0 s + t v0 = 1
                    m01 = -t;
                    m11 = s;
                }
                UnimodularMatrix M(Int(u0), m01, Int(v0), m11);
                f = to_im(act(M, F));
                done = true;
            }
            if (done) break;
        }
        if (f.a == 0) throw std::logic_error("mathews_reduce: could not make a nonzero");
    }
    for (int it = 0; it < 100000; ++it) {
        const Int &a = f.a, &b = f.b, &c = f.c, &d = f.d;
        if (d * d - a * a + 3 * a * c - 3 * b * d <= 0) {
            f = IntegerMatrixCubic(d, c, b, a);  // swap u <-> v
            det = -det;
            continue;
        }
        if (a < 0) {
            f = IntegerMatrixCubic(-a, b, -c, d);  // u -> -u
            det = -det;
            continue;
        }
        if (b < 0 || (b == 0 && d < 0)) {
            f = IntegerMatrixCubic(a, -b, c, -d);  // v -> -v
            det = -det;
            continue;
        }
        if (a * d - 9 * b * c >= (a + 3 * b) * (a + 3 * b) + 3 * a * c) {
            // u -> u + v
            f = IntegerMatrixCubic(a, a + b, a + 2 * b + c, a + 3 * b + 3 * c + d);
            continue;
        }
        if (a * d - 9 * b * c <= -(a - 3 * b) * (a - 3 * b) - 3 * a * c) {
            // u -> u - v
            f = IntegerMatrixCubic(a, b - a, a - 2 * b + c, -a + 3 * b - 3 * c + d);
            continue;
        }
        return {f, det};
    }
    throw std::logic_error("mathews_reduce: did not terminate");
}

}  // namespace

IntegerMatrixCubic canonical_representative(const IntegerMatrixCubic& f) {
    Int D = disc_reduced(f);
    if (D == 0) throw std::invalid_argument("canonical_representative: disc = 0");

    if (D < 0) {
        // positive definite Hessian: SL-reduce it, then take the lex-least
        // form over the automorph set of the reduced Hessian
        Quad H = hessian(f);
        UnimodularMatrix M0 = reduce_pd_quad(H);
        Quad Hred = quad_act(H, M0);
        BinaryCubicForm F = f.embed();
        std::optional<std::array<Int, 4>> best;
        IntegerMatrixCubic best_form = f;
        for (const UnimodularMatrix& A : pd_automorphs(Hred)) {
            IntegerMatrixCubic cand = to_im(act(mat_mul(M0, A), F));
            auto tup = tuple_of(cand);
            if (!best || tup < *best) {
                best = tup;
                best_form = cand;
            }
        }
        return best_form;
    }

    // disc_reduced > 0: Mathews fixpoint with determinant tracking; the
    // sigma-twist separates the two SL-classes inside a GL-class
    auto [R, s] = mathews_reduce(f);
    if (!is_irreducible_over_Q(f)) return R;  // reducible: GL-canonical only
    IntegerMatrixCubic R_sigma(R.a, -R.b, R.c, -R.d);  // R o diag(1,-1)
    auto [R2, s2] = mathews_reduce(R_sigma);
    if (tuple_of(R2) != tuple_of(R))
        throw std::logic_error("canonical_representative: Mathews domain not unique");
    // an irreducible binary cubic has no orientation-reversing automorphism,
    // so the path determinant is well defined and separates the SL-classes
    if (s2 != -1)
        throw std::logic_error("canonical_representative: unexpected automorphism");
    return s == 1 ? R : R_sigma;
}

}  // namespace cubiclocus
