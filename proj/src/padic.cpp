#include "cubiclocus/padic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "cubiclocus/modp.hpp"
#include "cubiclocus/rng.hpp"

namespace cubiclocus {

ValuationProfile profile_of(const SurfacePair& sp, const Int& p, int cap) {
    ValuationProfile vp;
    std::array<Int, 8> cs{sp.f.c0, sp.f.c1, sp.f.c2, sp.f.c3,
                          sp.g.c0, sp.g.c1, sp.g.c2, sp.g.c3};
    for (int i = 0; i < 8; ++i) {
        if (cs[i] == 0) {
            vp.val[i] = cap;
            vp.exact[i] = false;  // only a lower bound
            continue;
        }
        int w = 0;
        Int t = cs[i];
        while (w < cap && mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
            t /= p;
            ++w;
        }
        vp.val[i] = w;
        vp.exact[i] = w < cap;
    }
    return vp;
}

namespace {

using u64 = std::uint64_t;

// ---------- value rings for the level engine ----------
// Points mod p^k are stored as plain integer representatives in [0, p^k); an
// extension to level k+1 adds digit*p^k without reduction.

struct RingU64 {
    using V = u64;
    u64 p, pk;
    V red(const Int& z) const {
        Int r = mod(z, Int(static_cast<unsigned long>(pk)));
        return mpz_get_ui(r.get_mpz_t());
    }
    V mul(V a, V b) const { return (a * b) % pk; }  // pk <= 2^31
    V add(V a, V b) const { V s = a + b; return s >= pk ? s - pk : s; }
    bool unit(V a) const { return a % p != 0; }
    int vp_cap(V a, int k) const {
        if (a == 0) return k;
        int w = 0;
        while (a % p == 0 && w < k) { a /= p; ++w; }
        return w;
    }
    static Int lift(V a) { return Int(static_cast<unsigned long>(a)); }
};

struct RingMpz {
    using V = Int;
    Int p, pk;
    V red(const Int& z) const { return mod(z, pk); }
    V mul(const V& a, const V& b) const { return mod(a * b, pk); }
    V add(const V& a, const V& b) const { return mod(a + b, pk); }
    bool unit(const V& a) const { return mod(a, p) != 0; }
    int vp_cap(V a, int k) const {
        if (a == 0) return k;
        int w = 0;
        while (w < k && mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
            a /= p;
            ++w;
        }
        return w;
    }
    static Int lift(const V& a) { return a; }
};

template <class V>
struct Pt {
    V a, b;
};

template <class V>
struct BucketSide {
    int wmin_any = 0, wmin_unit = 0;
    bool any = false, unit = false;
    // lex-min points of each flavor, for deterministic witnesses
    Pt<V> min_any{}, min_unit{}, min_anyw{}, min_unitw{};
    bool anyw = false, unitw = false;  // flavors restricted to w <= wlim
};

template <class V>
bool lex_less(const Pt<V>& x, const Pt<V>& y) {
    return x.a < y.a || (x.a == y.a && x.b < y.b);
}

struct EngineResult {
    bool decided = false;
    PadicVerdict verdict;
};

// Process levels [k0, k1]; `fpts`/`gpts` enter as the level-k0 frontier and
// leave as the level-(k1+1) frontier when undecided (k1 < depth).
template <class Ring>
EngineResult run_levels(const std::array<Int, 4>& fc, const std::array<Int, 4>& gc,
                        long p, int k0, int k1, int depth, unsigned mask,
                        std::size_t cap, std::vector<Pt<typename Ring::V>>& fpts,
                        std::vector<Pt<typename Ring::V>>& gpts, bool& overflow,
                        const Int& pk0) {
    using V = typename Ring::V;

    Int pk_z = pk0;  // p^k for the level being processed
    for (int k = k0; k <= k1; ++k) {
        Ring ring;
        if constexpr (std::is_same_v<Ring, RingU64>) {
            ring.p = static_cast<u64>(p);
            ring.pk = mpz_get_ui(pk_z.get_mpz_t());
        } else {
            ring.p = p;
            ring.pk = pk_z;
        }
        const int wlim = (k - 1) / 2;  // promote iff k > 2w
        std::array<V, 4> fck, gck;
        for (int i = 0; i < 4; ++i) {
            fck[i] = ring.red(fc[i]);
            gck[i] = ring.red(gc[i]);
        }
        const V two = ring.red(Int(2)), three = ring.red(Int(3));

        struct PtData {
            Pt<V> pt;
            V val;
            int w;
            bool unit;
        };
        auto build = [&](const std::vector<Pt<V>>& pts, const std::array<V, 4>& c,
                         unsigned bit_lo) {
            std::vector<PtData> out;
            out.reserve(pts.size());
            for (const Pt<V>& q : pts) {
                V a2 = ring.mul(q.a, q.a), b2 = ring.mul(q.b, q.b),
                  ab = ring.mul(q.a, q.b);
                V val = ring.add(
                    ring.add(ring.mul(c[0], ring.mul(a2, q.a)),
                             ring.mul(c[1], ring.mul(a2, q.b))),
                    ring.add(ring.mul(c[2], ring.mul(q.a, b2)),
                             ring.mul(c[3], ring.mul(b2, q.b))));
                V gu = ring.add(ring.add(ring.mul(three, ring.mul(c[0], a2)),
                                         ring.mul(two, ring.mul(c[1], ab))),
                                ring.mul(c[2], b2));
                V gv = ring.add(ring.add(ring.mul(c[1], a2),
                                         ring.mul(two, ring.mul(c[2], ab))),
                                ring.mul(three, ring.mul(c[3], b2)));
                PtData d;
                d.pt = q;
                d.val = val;
                d.w = std::min(ring.vp_cap(gu, k), ring.vp_cap(gv, k));
                d.unit = (((mask >> bit_lo) & 1u) && ring.unit(q.a)) ||
                         (((mask >> (bit_lo + 1)) & 1u) && ring.unit(q.b));
                out.push_back(std::move(d));
            }
            return out;
        };
        std::vector<PtData> fdata = build(fpts, fck, 0);
        std::vector<PtData> gdata = build(gpts, gck, 2);

        auto bucketize = [&](const std::vector<PtData>& data) {
            std::map<V, BucketSide<V>> m;
            for (const auto& d : data) {
                auto& e = m[d.val];
                if (!e.any || d.w < e.wmin_any) e.wmin_any = d.w;
                if (!e.any || lex_less(d.pt, e.min_any)) e.min_any = d.pt;
                e.any = true;
                if (d.w <= wlim) {
                    if (!e.anyw || lex_less(d.pt, e.min_anyw)) e.min_anyw = d.pt;
                    e.anyw = true;
                }
                if (d.unit) {
                    if (!e.unit || d.w < e.wmin_unit) e.wmin_unit = d.w;
                    if (!e.unit || lex_less(d.pt, e.min_unit)) e.min_unit = d.pt;
                    e.unit = true;
                    if (d.w <= wlim) {
                        if (!e.unitw || lex_less(d.pt, e.min_unitw)) e.min_unitw = d.pt;
                        e.unitw = true;
                    }
                }
            }
            return m;
        };
        std::map<V, BucketSide<V>> fbuck = bucketize(fdata);
        std::map<V, BucketSide<V>> gbuck = bucketize(gdata);

        bool any_candidate = false;
        std::optional<V> promote_val;
        for (auto& [val, fe] : fbuck) {
            auto it = gbuck.find(val);
            if (it == gbuck.end()) continue;
            auto& ge = it->second;
            if (!((fe.unit && ge.any) || (fe.any && ge.unit))) continue;
            any_candidate = true;
            int wbest = k + 1;
            if (fe.unit && ge.any) wbest = std::min(wbest, std::min(fe.wmin_unit, ge.wmin_any));
            if (fe.any && ge.unit) wbest = std::min(wbest, std::min(fe.wmin_any, ge.wmin_unit));
            if (wbest <= wlim && !promote_val) promote_val = val;
        }

        if (!any_candidate) {
            EngineResult r;
            r.decided = true;
            r.verdict.kind = Solubility::Insoluble;
            r.verdict.level = k;
            return r;
        }
        if (promote_val) {
            const BucketSide<V>& ge = gbuck[*promote_val];
            std::vector<PtData> fs;
            for (auto& d : fdata)
                if (d.val == *promote_val) fs.push_back(d);
            std::sort(fs.begin(), fs.end(),
                      [](const PtData& x, const PtData& y) { return lex_less(x.pt, y.pt); });
            EngineResult r;
            r.decided = true;
            r.verdict.kind = Solubility::Soluble;
            r.verdict.level = k;
            for (auto& d : fs) {
                const Pt<V>* partner = nullptr;
                if (d.unit && d.w <= wlim && ge.any) partner = &ge.min_any;
                else if (d.unit && ge.anyw) partner = &ge.min_anyw;
                else if (d.w <= wlim && ge.unit) partner = &ge.min_unit;
                else if (ge.unitw) partner = &ge.min_unitw;
                if (partner) {
                    r.verdict.witness = {Ring::lift(d.pt.a), Ring::lift(d.pt.b),
                                         Ring::lift(partner->a), Ring::lift(partner->b)};
                    return r;
                }
            }
            throw std::logic_error("decide: witness selection failed");
        }

        if (k == depth) return {};  // undecided at full depth

        // extend matched points to level k+1: child = parent + digit * p^k
        std::size_t fmatch = 0, gmatch = 0;
        for (auto& d : fdata)
            if (gbuck.count(d.val)) ++fmatch;
        for (auto& d : gdata)
            if (fbuck.count(d.val)) ++gmatch;
        std::size_t next_size = (fmatch + gmatch) * static_cast<std::size_t>(p) * p;
        if (next_size > cap) {
            overflow = true;
            return {};
        }
        std::vector<Pt<V>> nf, ng;
        nf.reserve(fmatch * p * p);
        ng.reserve(gmatch * p * p);
        const V pkv = ring.pk;
        auto spawn = [&](const std::vector<PtData>& data,
                         const std::map<V, BucketSide<V>>& other, std::vector<Pt<V>>& out) {
            for (const auto& d : data) {
                if (!other.count(d.val)) continue;
                V astep{}, off_a = d.pt.a;
                (void)astep;
                for (long da = 0; da < p; ++da) {
                    V bb = d.pt.b;
                    for (long db = 0; db < p; ++db) {
                        out.push_back({off_a, bb});
                        bb = bb + pkv;  // plain add, no reduction
                    }
                    off_a = off_a + pkv;
                }
            }
        };
        spawn(fdata, gbuck, nf);
        spawn(gdata, fbuck, ng);
        fpts = std::move(nf);
        gpts = std::move(ng);
        pk_z *= p;
    }
    return {};
}

PadicVerdict decide_raw(const std::array<Int, 4>& fc, const std::array<Int, 4>& gc,
                        long p, int depth, unsigned mask, std::size_t cap) {
    if (depth < 2) throw std::invalid_argument("decide: depth must be >= 2");
    if (mask == 0 || mask > kAllVars)
        throw std::invalid_argument("decide: bad unit mask");

    // initial level-1 frontier: all points of (Z/p)^2 on each side
    if (2 * static_cast<std::size_t>(p) * static_cast<std::size_t>(p) > cap) {
        PadicVerdict v;
        v.kind = Solubility::Unknown;
        v.level = 0;
        v.frontier_overflow = true;
        return v;
    }

    // u64 segment while p^k <= 2^31
    int k_u64 = 0;
    {
        u64 pk = 1;
        while (k_u64 < depth && pk <= (1ULL << 31) / static_cast<u64>(p)) {
            pk *= static_cast<u64>(p);
            ++k_u64;
        }
    }
    bool overflow = false;
    std::vector<Pt<u64>> fu, gu;
    fu.reserve(p * p);
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b) fu.push_back({static_cast<u64>(a), static_cast<u64>(b)});
    gu = fu;

    if (k_u64 > 0) {
        EngineResult r = run_levels<RingU64>(fc, gc, p, 1, std::min(depth, k_u64),
                                             depth, mask, cap, fu, gu, overflow, Int(p));
        if (r.decided) return r.verdict;
        if (overflow || depth <= k_u64) {
            PadicVerdict v;
            v.kind = Solubility::Unknown;
            v.level = overflow ? 0 : depth;
            v.frontier_overflow = overflow;
            return v;
        }
    }
    // mpz continuation
    std::vector<Pt<Int>> fz, gz;
    if (k_u64 > 0) {
        for (auto& q : fu) fz.push_back({RingU64::lift(q.a), RingU64::lift(q.b)});
        for (auto& q : gu) gz.push_back({RingU64::lift(q.a), RingU64::lift(q.b)});
    } else {
        for (long a = 0; a < p; ++a)
            for (long b = 0; b < p; ++b) fz.push_back({Int(a), Int(b)});
        gz = fz;
    }
    Int pk0 = 1;
    for (int i = 0; i <= k_u64; ++i) pk0 *= p;
    EngineResult r = run_levels<RingMpz>(fc, gc, p, k_u64 + 1, depth, depth, mask,
                                         cap, fz, gz, overflow, pk0);
    if (r.decided) return r.verdict;
    PadicVerdict v;
    v.kind = Solubility::Unknown;
    v.level = overflow ? 0 : depth;
    v.frontier_overflow = overflow;
    return v;
}

}  // namespace

PadicVerdict decide(const SurfacePair& sp, const Int& p, int depth,
                    unsigned unit_mask, std::size_t frontier_cap) {
    if (!p.fits_slong_p())
        throw GuardViolation("decide: p too large for level-BFS (use decide_by_reduction)");
    return decide_raw(sp.f.coeffs(), sp.g.coeffs(), p.get_si(), depth, unit_mask,
                      frontier_cap);
}

PadicVerdict decide_tuple(const std::array<Int, 4>& fc, const std::array<Int, 4>& gc,
                          long p, int depth, unsigned mask, std::size_t cap) {
    return decide_raw(fc, gc, p, depth, mask, cap);
}

// ---------------------------------------------------------------------------
// exhaustive_bracket: per-form probe tables over all residue forms mod p^L,
// then a pair join that replays the decide() per-level logic exactly (the
// tables are pruning-free, which provably does not change verdicts).
// ---------------------------------------------------------------------------

namespace {

struct ProbeEnt {
    std::uint8_t wany = 255, wunit = 255;  // 255 = flavor absent
};

struct ProbeTables {
    long p, L;
    u64 pkL;
    long nforms;
    std::vector<long> lvl_off;  // offset of level-k block, vals mod p^k
    long per_form;
    std::vector<ProbeEnt> t;

    const ProbeEnt& at(long fid, int k, u64 val) const {
        return t[fid * per_form + lvl_off[k] + static_cast<long>(val)];
    }
};

ProbeTables build_probe_tables(long p, int L) {
    ProbeTables T;
    T.p = p;
    T.L = L;
    T.pkL = 1;
    for (int i = 0; i < L; ++i) T.pkL *= static_cast<u64>(p);
    T.nforms = 1;
    for (int i = 0; i < 4; ++i) T.nforms *= static_cast<long>(T.pkL);
    T.lvl_off.assign(L + 1, 0);
    long off = 0;
    u64 pk = 1;
    for (int k = 1; k <= L; ++k) {
        pk *= static_cast<u64>(p);
        T.lvl_off[k] = off;
        off += static_cast<long>(pk);
    }
    T.per_form = off;
    T.t.assign(static_cast<std::size_t>(T.nforms) * T.per_form, ProbeEnt{});

    const u64 M = T.pkL;
    std::vector<u64> pks(L + 1);
    pks[0] = 1;
    for (int k = 1; k <= L; ++k) pks[k] = pks[k - 1] * static_cast<u64>(p);

    for (long fid = 0; fid < T.nforms; ++fid) {
        u64 c[4];
        long rest = fid;
        for (int i = 0; i < 4; ++i) {
            c[i] = static_cast<u64>(rest % static_cast<long>(M));
            rest /= static_cast<long>(M);
        }
        ProbeEnt* base = &T.t[static_cast<std::size_t>(fid) * T.per_form];
        for (u64 a = 0; a < M; ++a) {
            for (u64 b = 0; b < M; ++b) {
                u64 a2 = (a * a) % M, b2 = (b * b) % M, ab = (a * b) % M;
                u64 val = (c[0] * ((a2 * a) % M) + c[1] * ((a2 * b) % M) +
                           c[2] * ((a * b2) % M) + c[3] * ((b2 * b) % M)) %
                          M;
                u64 gu = (3 * c[0] % M * a2 + 2 * c[1] % M * ab + c[2] * b2) % M;
                u64 gv = (c[1] * a2 + 2 * c[2] % M * ab + 3 * c[3] % M * b2) % M;
                bool unit = (a % static_cast<u64>(p)) || (b % static_cast<u64>(p));
                for (int k = 1; k <= L; ++k) {
                    u64 vk = val % pks[k];
                    auto vp_cap = [&](u64 x) {
                        x %= pks[k];
                        if (x == 0) return k;
                        int w = 0;
                        while (x % static_cast<u64>(p) == 0) { x /= static_cast<u64>(p); ++w; }
                        return std::min(w, k);
                    };
                    int w = std::min(vp_cap(gu), vp_cap(gv));
                    ProbeEnt& e = base[T.lvl_off[k] + static_cast<long>(vk)];
                    if (w < e.wany) e.wany = static_cast<std::uint8_t>(w);
                    if (unit && w < e.wunit) e.wunit = static_cast<std::uint8_t>(w);
                }
            }
        }
    }
    return T;
}

// 0 = soluble, 1 = insoluble, 2 = unknown
int pair_verdict(const ProbeTables& T, long fid, long gid) {
    u64 pk = 1;
    for (int k = 1; k <= T.L; ++k) {
        pk *= static_cast<u64>(T.p);
        const int wlim = (k - 1) / 2;
        bool candidate = false, promote = false;
        const ProbeEnt* fb = &T.t[static_cast<std::size_t>(fid) * T.per_form + T.lvl_off[k]];
        const ProbeEnt* gb = &T.t[static_cast<std::size_t>(gid) * T.per_form + T.lvl_off[k]];
        for (u64 v = 0; v < pk; ++v) {
            const ProbeEnt &fe = fb[v], &ge = gb[v];
            bool f_any = fe.wany != 255, f_unit = fe.wunit != 255;
            bool g_any = ge.wany != 255, g_unit = ge.wunit != 255;
            if (!((f_unit && g_any) || (f_any && g_unit))) continue;
            candidate = true;
            int wbest = k + 1;
            if (f_unit && g_any) wbest = std::min(wbest, std::min<int>(fe.wunit, ge.wany));
            if (f_any && g_unit) wbest = std::min(wbest, std::min<int>(fe.wany, ge.wunit));
            if (wbest <= wlim) { promote = true; break; }
        }
        if (promote) return 0;
        if (!candidate) return 1;
    }
    return 2;
}

}  // namespace

Bracket exhaustive_bracket(long p, int level, int threads) {
    if (level < 1) throw std::invalid_argument("exhaustive_bracket: level >= 1");
    {
        unsigned __int128 sz = 1;
        const u64 guard = max_enum_guard(1ULL << 36);
        for (int i = 0; i < 8 * level; ++i) {
            sz *= static_cast<unsigned>(p);
            if (sz > guard)
                throw GuardViolation(
                    "exhaustive_bracket: guard p^(8*level) <= 2^36 violated");
        }
    }
    ProbeTables T = build_probe_tables(p, level);
    const long n = T.nforms;
    if (threads < 1) threads = 1;
    std::vector<std::array<long, 3>> tallies(threads, {0, 0, 0});
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            auto& tal = tallies[t];
            for (long fid = t; fid < n; fid += threads)
                for (long gid = 0; gid < n; ++gid) ++tal[pair_verdict(T, fid, gid)];
        });
    }
    for (auto& th : pool) th.join();
    Bracket br;
    for (auto& tal : tallies) {
        br.soluble += tal[0];
        br.insoluble += tal[1];
        br.unknown += tal[2];
    }
    br.total = Int(n) * Int(n);
    br.lower = Rat(Int(br.soluble), br.total);
    br.upper = Rat(br.total - Int(br.insoluble), br.total);
    br.lower.canonicalize();
    br.upper.canonicalize();
    return br;
}

McEstimate mc_estimate(long p, long samples, int level, std::uint64_t seed,
                       int threads) {
    if (samples < 1000)
        throw std::invalid_argument("mc_estimate: samples must be >= 10^3");
    if (level < 2) throw std::invalid_argument("mc_estimate: level >= 2");
    Int plev = int_pow(Int(p), level);
    if (!plev.fits_ulong_p())
        throw GuardViolation("mc_estimate: p^level must fit 64 bits");
    const u64 m = mpz_get_ui(plev.get_mpz_t());

    if (threads < 1) threads = 1;
    std::vector<std::array<long, 3>> tallies(threads, {0, 0, 0});
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            auto& tal = tallies[t];
            for (long i = t; i < samples; i += threads) {
                CounterRng rng(seed, static_cast<u64>(i));
                std::array<Int, 4> fc, gc;
                for (int j = 0; j < 4; ++j) fc[j] = Int(static_cast<unsigned long>(rng.below(m)));
                for (int j = 0; j < 4; ++j) gc[j] = Int(static_cast<unsigned long>(rng.below(m)));
                PadicVerdict v = decide_tuple(fc, gc, p, level);
                switch (v.kind) {
                    case Solubility::Soluble: ++tal[0]; break;
                    case Solubility::Insoluble: ++tal[1]; break;
                    case Solubility::Unknown: ++tal[2]; break;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    McEstimate e;
    for (auto& tal : tallies) {
        e.soluble += tal[0];
        e.insoluble += tal[1];
        e.unknown += tal[2];
    }
    e.samples = samples;
    long decided = e.soluble + e.insoluble;
    e.estimate = decided ? static_cast<double>(e.soluble) / decided : 0.0;
    e.stderr_ = decided ? std::sqrt(e.estimate * (1.0 - e.estimate) / decided) : 0.0;
    e.unknown_fraction = static_cast<double>(e.unknown) / samples;
    return e;
}

}  // namespace cubiclocus
