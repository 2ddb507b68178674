#include <climits>
#include <set>
#include <sstream>

#include "cubiclocus/modp.hpp"
#include "cubiclocus/padic.hpp"

namespace cubiclocus {

namespace {

constexpr unsigned U = 1, V = 2, X = 4, Y = 8;

using Coeffs = std::array<Int, 4>;

int content_val(const Coeffs& c, const Int& p) {
    int best = INT_MAX;
    for (const Int& x : c) {
        if (x == 0) continue;
        int w = 0;
        Int t = x;
        while (w < best && mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
            t /= p;
            ++w;
        }
        best = std::min(best, w);
        if (best == 0) return 0;
    }
    return best;
}

Coeffs divide_out(const Coeffs& c, const Int& p, int k) {
    Int pk = int_pow(p, k);
    Coeffs out;
    for (int i = 0; i < 4; ++i) out[i] = c[i] / pk;
    return out;
}

Coeffs sub_second_var(const Coeffs& c, const Int& p) {  // v -> p*v
    return {c[0], c[1] * p, c[2] * p * p, c[3] * p * p * p};
}
Coeffs sub_first_var(const Coeffs& c, const Int& p) {  // u -> p*u
    return {c[0] * p * p * p, c[1] * p * p, c[2] * p, c[3]};
}
Coeffs swap_vars(const Coeffs& c) { return {c[3], c[2], c[1], c[0]}; }

Coeffs apply_matrix(const Coeffs& c, const UnimodularMatrix& m) {
    BinaryCubicForm f(c[0], c[1], c[2], c[3]);
    return act(m, f).coeffs();
}

RootClass classify(const Coeffs& c, const Int& p) {
    return classify_roots_mod_p(BinaryCubicForm(c[0], c[1], c[2], c[3]), p);
}

// State of the reduction walk; mask = variables allowed to carry the unit.
struct RedState {
    Coeffs f, g;
    unsigned mask;
};

std::string signature(const RedState& s, const Int& p) {
    SurfacePair sp{BinaryCubicForm(s.f[0], s.f[1], s.f[2], s.f[3]),
                   BinaryCubicForm(s.g[0], s.g[1], s.g[2], s.g[3])};
    ValuationProfile vp = profile_of(sp, p, 6);
    std::ostringstream os;
    for (int i = 0; i < 8; ++i) os << vp.val[i] << (vp.exact[i] ? "e" : "b") << ",";
    os << s.mask;
    return os.str();
}

// ---- exact mod-p analysis for p <= 101 ----

struct ModPAnalysis {
    bool candidate = false;  // some legal pair (f-pt, g-pt) with equal values
    bool liftable = false;   // legal pair with a unit partial derivative
    unsigned forced = 0;     // vars that vanish in every legal pair
};

struct SideBits {
    // per value bucket: pack existence bits
    // bit 0: any point, 1: mask-unit point, 2: w=0 point, 3: w=0 & mask-unit,
    // 4: a!=0 point, 5: a!=0 & mask-unit, 6: b!=0, 7: b!=0 & mask-unit
    std::vector<std::uint8_t> bits;
};

SideBits side_bits(const Coeffs& cz, long p, unsigned mask, unsigned bit_lo) {
    SideBits sb;
    sb.bits.assign(p, 0);
    long c[4];
    for (int i = 0; i < 4; ++i) {
        Int r = mod(cz[i], Int(p));
        c[i] = static_cast<long>(mpz_get_ui(r.get_mpz_t()));
    }
    for (long a = 0; a < p; ++a) {
        for (long b = 0; b < p; ++b) {
            long a2 = (a * a) % p, b2 = (b * b) % p, ab = (a * b) % p;
            long val = (c[0] * ((a2 * a) % p) + c[1] * ((a2 * b) % p) +
                        c[2] * ((a * b2) % p) + c[3] * ((b2 * b) % p)) %
                       p;
            long gu = (3 * c[0] % p * a2 + 2 * c[1] % p * ab + c[2] * b2) % p;
            long gv = (c[1] * a2 + 2 * c[2] % p * ab + 3 * c[3] % p * b2) % p;
            bool w0 = gu != 0 || gv != 0;
            bool munit = (((mask >> bit_lo) & 1u) && a != 0) ||
                         (((mask >> (bit_lo + 1)) & 1u) && b != 0);
            std::uint8_t m = 1;
            if (munit) m |= 2;
            if (w0) m |= 4;
            if (w0 && munit) m |= 8;
            if (a != 0) m |= 16;
            if (a != 0 && munit) m |= 32;
            if (b != 0) m |= 64;
            if (b != 0 && munit) m |= 128;
            sb.bits[val] |= m;
        }
    }
    return sb;
}

ModPAnalysis analyze_mod_p(const RedState& s, long p) {
    SideBits fb = side_bits(s.f, p, s.mask, 0);
    SideBits gb = side_bits(s.g, p, s.mask, 2);
    ModPAnalysis an;
    bool var_alive[4] = {false, false, false, false};  // u, v, x, y
    for (long v = 0; v < p; ++v) {
        std::uint8_t fe = fb.bits[v], ge = gb.bits[v];
        if (!(fe & 1) || !(ge & 1)) continue;
        bool f_any = fe & 1, f_unit = fe & 2, f_w0 = fe & 4, f_w0u = fe & 8;
        bool g_any = ge & 1, g_unit = ge & 2, g_w0 = ge & 4, g_w0u = ge & 8;
        if (!((f_unit && g_any) || (f_any && g_unit))) continue;
        an.candidate = true;
        if ((f_w0u && g_any) || (f_w0 && g_unit) || (f_unit && g_w0) ||
            (f_any && g_w0u))
            an.liftable = true;
        // which variables can be nonzero in some legal pair at this value
        bool f_anz = fe & 16, f_anzu = fe & 32, f_bnz = fe & 64, f_bnzu = fe & 128;
        bool g_anz = ge & 16, g_anzu = ge & 32, g_bnz = ge & 64, g_bnzu = ge & 128;
        if ((f_anzu && g_any) || (f_anz && g_unit)) var_alive[0] = true;
        if ((f_bnzu && g_any) || (f_bnz && g_unit)) var_alive[1] = true;
        if ((g_anzu && f_any) || (g_anz && f_unit)) var_alive[2] = true;
        if ((g_bnzu && f_any) || (g_bnz && f_unit)) var_alive[3] = true;
    }
    if (an.candidate)
        for (int i = 0; i < 4; ++i)
            if (!var_alive[i]) an.forced |= (1u << i);
    return an;
}

// ---- helpers for the symbolic path (p > 101) ----

// verdict helpers
PadicVerdict make(Solubility k, int moves, bool overflow = false) {
    PadicVerdict v;
    v.kind = k;
    v.level = moves;
    v.frontier_overflow = overflow;
    return v;
}

// Move a triple root to (1:0). Mask handling: coordinate roots need only a
// swap or nothing; a general root needs a full GL move, which is admissible
// only when the side's two mask bits agree.
bool move_triple_root_to_10(Coeffs& c, unsigned& mask, unsigned bit_lo,
                            const std::array<Int, 2>& root, const Int& p) {
    (void)p;
    const Int &u0 = root[0], &v0 = root[1];
    unsigned lo = (mask >> bit_lo) & 1u, hi = (mask >> (bit_lo + 1)) & 1u;
    if (v0 == 0) return true;  // already the root (1:0), fbar = c3 v^3
    if (u0 == 0) {             // root (0:1): swap the variables
        c = swap_vars(c);
        mask = (mask & ~(3u << bit_lo)) | (lo << (bit_lo + 1)) | (hi << bit_lo);
        return true;
    }
    if (lo != hi) return false;
    // root (r:1), r != 0: M = (r, r-1; 1, 1) has det 1 and sends (1:0) to (r:1)
    UnimodularMatrix M(u0, u0 - 1, v0, v0);  // v0 = 1 for affine roots
    c = apply_matrix(c, M);
    return true;
}

}  // namespace

PadicVerdict decide_by_reduction(const SurfacePair& sp, const Int& p,
                                 int max_moves) {
    RedState s{sp.f.coeffs(), sp.g.coeffs(), kAllVars};
    const bool small_p = p <= 101;
    const long pl = small_p ? p.get_si() : 0;
    std::set<std::string> seen;
    int moves = 0;

    for (; moves <= max_moves; ++moves) {
        if (s.mask == 0) return make(Solubility::Insoluble, moves);

        // strip the common content of the equation
        int cf = content_val(s.f, p), cg = content_val(s.g, p);
        int m = std::min(cf, cg);
        if (m > 0) {
            s.f = divide_out(s.f, p, m);
            s.g = divide_out(s.g, p, m);
            cf -= m;
            cg -= m;
        }
        // orient: keep f primitive
        if (cf > 0) {
            std::swap(s.f, s.g);
            std::swap(cf, cg);
            s.mask = ((s.mask & 3u) << 2) | ((s.mask >> 2) & 3u);
        }
        int xi = cg;
        if (xi >= 3) {
            // (f, p^xi g~) is equisoluble with (f, p^(xi mod 3) g~) for the
            // unconstrained problem only
            if (s.mask != kAllVars) return make(Solubility::Unknown, moves);
            s.g = divide_out(s.g, p, 3 * (xi / 3));
            xi %= 3;
        }

        std::string sig = signature(s, p);
        if (!seen.insert(sig).second)
            return make(Solubility::Unknown, moves);  // profile cycle

        Coeffs gt = xi > 0 ? divide_out(s.g, p, xi) : s.g;
        RootClass F = classify(s.f, p);
        RootClass G = classify(gt, p);

        // both reductions rootless with xi > 0: values of the primitive side
        // have valuation in 3Z, the other side in xi + 3Z; they never meet
        if (F.kind == RootKind::NoRoot && G.kind == RootKind::NoRoot && xi > 0)
            return make(Solubility::Insoluble, moves);

        if (small_p) {
            ModPAnalysis an = analyze_mod_p(s, pl);
            if (!an.candidate) return make(Solubility::Insoluble, moves);
            if (an.liftable) return make(Solubility::Soluble, moves);
            if (an.forced) {
                if (an.forced & U) s.f = sub_first_var(s.f, p);
                if (an.forced & V) s.f = sub_second_var(s.f, p);
                if (an.forced & X) s.g = sub_first_var(s.g, p);
                if (an.forced & Y) s.g = sub_second_var(s.g, p);
                s.mask &= ~an.forced;
                continue;
            }
            // stalled: no variable is forced and nothing lifts at level 1;
            // delegate to the bounded level-BFS with the same constraint
            int depth = pl < 10 ? 10 : 6;
            PadicVerdict v = decide_tuple(s.f, s.g, pl, depth, s.mask, 400000);
            v.level = moves;
            v.witness.reset();  // coordinates refer to the transformed state
            return v;
        }

        // ---- symbolic path, p > 101 ----
        auto root_mask_ok = [&](const std::array<Int, 2>& r, unsigned bit_lo) {
            return (((s.mask >> bit_lo) & 1u) && r[0] != 0) ||
                   (((s.mask >> (bit_lo + 1)) & 1u) && r[1] != 0);
        };

        if (F.kind == RootKind::SimpleRoot) {
            for (auto& [pt, mult] : F.roots)
                if (mult == 1 && root_mask_ok(pt, 0))
                    return make(Solubility::Soluble, moves);
            if (s.mask & (X | Y)) {
                if (xi >= 1) return make(Solubility::Soluble, moves);
                for (auto& [pt, mult] : G.roots)
                    if (root_mask_ok(pt, 2)) return make(Solubility::Soluble, moves);
            }
            return make(Solubility::Unknown, moves);
        }
        if (G.kind == RootKind::SimpleRoot) {
            if (xi == 0) {
                for (auto& [pt, mult] : G.roots)
                    if (mult == 1 && root_mask_ok(pt, 2))
                        return make(Solubility::Soluble, moves);
                if (s.mask & (U | V)) {
                    for (auto& [pt, mult] : F.roots)
                        if (root_mask_ok(pt, 0)) return make(Solubility::Soluble, moves);
                }
                return make(Solubility::Unknown, moves);
            }
            // xi >= 1: a simple root of g~ covers pZ_p, in particular
            // p^(3-xi) f(u0,v0) for any (u0,v0)
            for (auto& [pt, mult] : G.roots)
                if (mult == 1 && root_mask_ok(pt, 2))
                    return make(Solubility::Soluble, moves);
            if ((s.mask & (U | V)) == 0) return make(Solubility::Unknown, moves);
            if (F.kind == RootKind::NoRoot) {
                // masked solutions need a (u,v)-unit, but then the sides'
                // valuations are 0 vs >= xi
                if ((s.mask & (X | Y)) == 0) return make(Solubility::Insoluble, moves);
                return make(Solubility::Unknown, moves);
            }
            // F triple: fall through to the triple descent below
        }

        if (F.kind == RootKind::NoRoot && G.kind == RootKind::NoRoot) {
            // xi == 0 here (xi > 0 handled above): absolutely irreducible pair;
            // smooth points with any prescribed unit variable exist for p > 101
            return make(Solubility::Soluble, moves);
        }
        if (xi == 0 && ((F.kind == RootKind::NoRoot && G.kind == RootKind::TripleRoot) ||
                        (F.kind == RootKind::TripleRoot && G.kind == RootKind::NoRoot))) {
            // rootless side surjects onto F_p^* (p >= 17), hitting the cube
            // value class of the triple side
            return make(Solubility::Soluble, moves);
        }

        if (F.kind == RootKind::NoRoot && xi >= 1) {
            // every solution has u = v = 0 (mod p)
            s.f = sub_first_var(s.f, p);
            s.f = sub_second_var(s.f, p);
            s.mask &= ~(U | V);
            continue;
        }

        if (F.kind == RootKind::TripleRoot && xi >= 1) {
            if (!move_triple_root_to_10(s.f, s.mask, 0, F.witness, p))
                return make(Solubility::Unknown, moves);
            // now fbar = c3 v^3 with the right side divisible by p: v = 0 forced
            s.f = sub_second_var(s.f, p);
            s.mask &= ~V;
            continue;
        }

        if (F.kind == RootKind::TripleRoot && G.kind == RootKind::TripleRoot && xi == 0) {
            if (!move_triple_root_to_10(s.f, s.mask, 0, F.witness, p))
                return make(Solubility::Unknown, moves);
            if (!move_triple_root_to_10(s.g, s.mask, 2, G.witness, p))
                return make(Solubility::Unknown, moves);
            // diagonal juncture c3 v^3 = d3 y^3 (p != 3 since p > 101)
            Int c3 = mod(s.f[3], p), d3 = mod(s.g[3], p);
            Int ratio = mod(d3 * invmod(c3, p), p);
            if (is_cube_fp(ratio, p)) return make(Solubility::Soluble, moves);
            s.f = sub_second_var(s.f, p);
            s.g = sub_second_var(s.g, p);
            s.mask &= ~(V | Y);
            continue;
        }

        return make(Solubility::Unknown, moves);
    }
    return make(Solubility::Unknown, moves);
}

}  // namespace cubiclocus
