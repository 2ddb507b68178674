#include "cubiclocus/points.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "cubiclocus/factor.hpp"
#include "cubiclocus/rng.hpp"

namespace cubiclocus {

ProjectivePoint normalize_point(std::vector<Int> coords) {
    Int g = 0;
    bool all_zero = true;
    for (const Int& c : coords) {
        if (c != 0) all_zero = false;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (all_zero) throw std::invalid_argument("ProjectivePoint: all coordinates zero");
    for (Int& c : coords) c /= g;
    for (const Int& c : coords) {
        if (c == 0) continue;
        if (c < 0)
            for (Int& x : coords) x = -x;
        break;
    }
    ProjectivePoint pt;
    pt.coords = std::move(coords);
    return pt;
}

std::string to_string(const ProjectivePoint& pt) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < pt.coords.size(); ++i)
        os << pt.coords[i] << (i + 1 < pt.coords.size() ? ":" : ")");
    return os.str();
}

namespace {

// exact cube root when t is a perfect cube
std::optional<Int> exact_cbrt(const Int& t) {
    if (t == 0) return Int(0);
    Int a = abs(t), r;
    int exactp = mpz_root(r.get_mpz_t(), a.get_mpz_t(), 3);
    if (!exactp) return std::nullopt;
    return t < 0 ? Int(-r) : r;
}

bool point_less(const ProjectivePoint& a, const ProjectivePoint& b) {
    Int ha = 0, hb = 0;
    for (int i = 0; i < 2; ++i) {
        Int xa = abs(a.coords[i]), xb = abs(b.coords[i]);
        if (xa > ha) ha = xa;
        if (xb > hb) hb = xb;
    }
    if (ha != hb) return ha < hb;
    return a.coords < b.coords;
}

}  // namespace

std::vector<ProjectivePoint> search_curve_points(const GenusOneCurve& C,
                                                 long height, int threads) {
    if (height < 1) throw std::invalid_argument("search_curve_points: height >= 1");
    const BinaryCubicForm f = C.f.embed();
    if (threads < 1) threads = 1;
    std::vector<std::set<std::vector<Int>>> found(threads);

    auto scan_row = [&](long u, std::set<std::vector<Int>>& out) {
        // f(u, v) for v = -H..H by cubic finite differences: 3 adds per step
        Int v0(-height);
        Int y = f.eval(Int(u), v0);
        // forward differences at step 1 in v
        Int d1 = f.eval(Int(u), v0 + 1) - y;
        Int d2 = f.eval(Int(u), v0 + 2) - 2 * f.eval(Int(u), v0 + 1) + y;
        Int d3 = 6 * f.c3;  // third difference of a cubic in v
        for (long v = -height; v <= height; ++v) {
            if (u != 0 || v != 0) {
                // cheap cube-residue prefilter mod 9 and mod 7
                unsigned long m9 = mpz_fdiv_ui(y.get_mpz_t(), 9);
                if (m9 == 0 || m9 == 1 || m9 == 8) {
                    unsigned long m7 = mpz_fdiv_ui(y.get_mpz_t(), 7);
                    if (m7 == 0 || m7 == 1 || m7 == 6) {
                        if (auto z = exact_cbrt(y))
                            out.insert(
                                normalize_point({Int(u), Int(v), *z}).coords);
                    }
                }
            }
            y += d1;
            d1 += d2;
            d2 += d3;
        }
    };

    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (long u = -height + t; u <= height; u += threads) scan_row(u, found[t]);
        });
    }
    for (auto& th : pool) th.join();

    std::set<std::vector<Int>> all;
    for (auto& s : found) all.insert(s.begin(), s.end());
    std::vector<ProjectivePoint> out;
    for (auto& c : all) {
        ProjectivePoint pt;
        pt.coords = c;
        // the normalized representative may exceed the height filter's raw
        // (u,v); keep it iff its own height is within bounds (always true:
        // normalization divides by the gcd)
        out.push_back(std::move(pt));
    }
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

ProjectivePoint combine(const BinaryCubicForm& f, const ProjectivePoint& on_f,
                        const BinaryCubicForm& g, const ProjectivePoint& on_g) {
    if (on_f.coords.size() != 3 || on_g.coords.size() != 3)
        throw std::invalid_argument("combine: inputs must be P^2 points");
    const Int &u = on_f.coords[0], &v = on_f.coords[1], &z = on_f.coords[2];
    const Int &up = on_g.coords[0], &vp = on_g.coords[1], &zp = on_g.coords[2];
    if (z == 0 || zp == 0) throw std::invalid_argument("combine: z z' = 0");
    ProjectivePoint pt = normalize_point({zp * u, zp * v, z * up, z * vp});
    if (f.eval(pt.coords[0], pt.coords[1]) != g.eval(pt.coords[2], pt.coords[3]))
        throw std::logic_error("combine: surface equation failed");
    return pt;
}

LocalSolubilityReport is_everywhere_locally_soluble(const SurfacePair& sp,
                                                    int depth) {
    LocalSolubilityReport rep;
    rep.real_soluble = true;

    Int D = disc_classical(sp.f) * disc_classical(sp.g);
    std::vector<Int> primes;
    bool singular = (D == 0);
    if (singular) {
        for (long p : {2L,  3L,  5L,  7L,  11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L,
                       41L, 43L, 47L, 53L, 59L, 61L, 67L, 71L, 73L, 79L, 83L, 89L, 97L})
            primes.emplace_back(p);
        rep.note = "singular pair (disc product 0): primes <= ~100 tested, Unknown beyond";
    } else {
        std::set<Int> ps{Int(2), Int(3), Int(5), Int(7)};
        for (const Int& p : prime_divisors(D)) ps.insert(p);
        primes.assign(ps.begin(), ps.end());
        rep.note =
            "primes outside {p <= 7} and p | disc(f)disc(g) skipped: smooth "
            "reduction has a liftable F_p-point";
    }

    bool any_unknown = singular;
    for (const Int& p : primes) {
        PadicVerdict v = (p <= 31) ? decide(sp, p, depth)
                                   : decide_by_reduction(sp, p);
        rep.checked_primes.emplace_back(p, v);
        if (v.kind == Solubility::Insoluble) {
            rep.verdict = LocalVerdict::LocalObstructionAt;
            rep.obstruction_prime = p;
            return rep;
        }
        if (v.kind == Solubility::Unknown) any_unknown = true;
    }
    rep.verdict = any_unknown ? LocalVerdict::Unknown
                              : LocalVerdict::EverywhereLocallySoluble;
    return rep;
}

Theorem1Stats theorem1_statistic(long H, long samples, std::uint64_t seed,
                                 int depth, int threads) {
    if (samples < 1000)
        throw std::invalid_argument("theorem1_statistic: samples >= 10^3");
    if (H < 1) throw std::invalid_argument("theorem1_statistic: H >= 1");
    if (threads < 1) threads = 1;

    struct Tally {
        long els = 0, obs = 0, unk = 0, degen = 0;
    };
    std::vector<Tally> tallies(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            Tally& tal = tallies[t];
            for (long i = t; i < samples; i += threads) {
                CounterRng rng(seed, static_cast<std::uint64_t>(i));
                std::array<long, 8> c;
                for (auto& x : c) x = rng.box(H);
                if ((c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0) ||
                    (c[4] == 0 && c[5] == 0 && c[6] == 0 && c[7] == 0)) {
                    ++tal.degen;
                    continue;
                }
                SurfacePair sp{BinaryCubicForm(c[0], c[1], c[2], c[3]),
                               BinaryCubicForm(c[4], c[5], c[6], c[7])};
                switch (is_everywhere_locally_soluble(sp, depth).verdict) {
                    case LocalVerdict::EverywhereLocallySoluble: ++tal.els; break;
                    case LocalVerdict::LocalObstructionAt: ++tal.obs; break;
                    case LocalVerdict::Unknown: ++tal.unk; break;
                }
            }
        });
    }
    for (auto& th : pool) th.join();

    Theorem1Stats st;
    st.samples = samples;
    for (auto& tal : tallies) {
        st.els += tal.els;
        st.obstructed += tal.obs;
        st.unknown += tal.unk;
        st.degenerate_discarded += tal.degen;
    }
    long decided = st.els + st.obstructed;
    st.fraction = decided ? static_cast<double>(st.els) / decided : 0.0;
    st.stderr_ = decided ? std::sqrt(st.fraction * (1 - st.fraction) / decided) : 0.0;
    long considered = samples - st.degenerate_discarded;
    st.unknown_fraction =
        considered ? static_cast<double>(st.unknown) / considered : 0.0;
    return st;
}

std::optional<ProjectivePoint> search_surface_point(const IntegerMatrixCubic& f,
                                                    const IntegerMatrixCubic& g,
                                                    long height, long fallback_cap,
                                                    int threads) {
    if (height < 1) throw std::invalid_argument("search_surface_point: height >= 1");
    BinaryCubicForm fb = f.embed(), gb = g.embed();

    auto fpts = search_curve_points({f}, height, threads);
    auto gpts = search_curve_points({g}, height, threads);
    for (const auto& pf : fpts) {
        if (pf.coords[2] == 0) continue;
        for (const auto& pg : gpts) {
            if (pg.coords[2] == 0) continue;
            return combine(fb, pf, gb, pg);
        }
    }

    // direct enumeration fallback, capped: hash g-values over (x2,x3), then
    // match f-values over (x0,x1)
    long B = std::min(height, fallback_cap);
    std::map<Int, std::pair<long, long>> gvals;
    for (long x2 = -B; x2 <= B; ++x2)
        for (long x3 = -B; x3 <= B; ++x3) {
            if (x2 == 0 && x3 == 0) continue;
            gvals.emplace(gb.eval(Int(x2), Int(x3)), std::make_pair(x2, x3));
        }
    for (long x0 = -B; x0 <= B; ++x0)
        for (long x1 = -B; x1 <= B; ++x1) {
            Int val = fb.eval(Int(x0), Int(x1));
            auto it = gvals.find(val);
            if (it == gvals.end()) continue;
            if (x0 == 0 && x1 == 0 && it->second.first == 0 && it->second.second == 0)
                continue;
            ProjectivePoint pt = normalize_point(
                {Int(x0), Int(x1), Int(it->second.first), Int(it->second.second)});
            if (fb.eval(pt.coords[0], pt.coords[1]) !=
                gb.eval(pt.coords[2], pt.coords[3]))
                throw std::logic_error("search_surface_point: verification failed");
            return pt;
        }
    return std::nullopt;
}

std::vector<SurfaceFixture> load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixtures file: " + path);
    std::vector<SurfaceFixture> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string label;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            label = line.substr(hash + 1);
            line = line.substr(0, hash);
        }
        // trim
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r\n");
            size_t b = s.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = trim(line);
        label = trim(label);
        if (line.empty()) continue;
        auto bar = line.find('|');
        if (bar == std::string::npos)
            throw std::runtime_error("fixtures: missing '|' separator");
        auto strip_prefix = [&](std::string s, const char* pre) {
            s = trim(s);
            if (s.rfind(pre, 0) != 0)
                throw std::runtime_error("fixtures: expected prefix");
            return s.substr(std::string(pre).size());
        };
        BinaryCubicForm f = parse_form(strip_prefix(line.substr(0, bar), "f:"));
        BinaryCubicForm g = parse_form(strip_prefix(line.substr(bar + 1), "g:"));
        out.push_back({SurfacePair{f, g}, label});
    }
    return out;
}

}  // namespace cubiclocus
