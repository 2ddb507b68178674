#include <doctest.h>

#include "cubiclocus/density.hpp"
#include "cubiclocus/modp.hpp"
#include "cubiclocus/forms.hpp"
#include "cubiclocus/padic.hpp"
#include "cubiclocus/rng.hpp"

using namespace cubiclocus;

namespace {

SurfacePair pair_of(std::initializer_list<long> f, std::initializer_list<long> g) {
    auto fi = f.begin(), gi = g.begin();
    return {BinaryCubicForm(fi[0], fi[1], fi[2], fi[3]),
            BinaryCubicForm(gi[0], gi[1], gi[2], gi[3])};
}

// Re-verify a Soluble witness: congruence mod p^level, min valuation 0, and
// the Hensel criterion level > 2*min_w.
void check_witness(const SurfacePair& sp, const Int& p, const PadicVerdict& v) {
    REQUIRE(v.kind == Solubility::Soluble);
    REQUIRE(v.witness.has_value());
    const auto& w = *v.witness;
    Int pk = int_pow(p, v.level);
    Int F = sp.f.eval(w[0], w[1]) - sp.g.eval(w[2], w[3]);
    CHECK(mod(F, pk) == 0);
    bool has_unit = false;
    for (const Int& c : w)
        if (mod(c, p) != 0) has_unit = true;
    CHECK(has_unit);
    auto [fu, fv] = sp.f.gradient(w[0], w[1]);
    auto [gu, gv] = sp.g.gradient(w[2], w[3]);
    int best = v.level;
    for (Int d : {fu, fv, gu, gv}) {
        if (d == 0) continue;
        int val = 0;
        Int t = d;
        while (val < v.level && mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
            t /= p;
            ++val;
        }
        best = std::min(best, val);
    }
    CHECK(v.level > 2 * best);
}

SurfacePair random_pair(CounterRng& rng, long range) {
    auto draw = [&]() -> BinaryCubicForm {
        for (;;) {
            long a = rng.box(range), b = rng.box(range), c = rng.box(range),
                 d = rng.box(range);
            if (a || b || c || d) return {a, b, c, d};
        }
    };
    return {draw(), draw()};
}

}  // namespace

TEST_CASE("decide examples") {
    auto cubes = pair_of({1, 0, 0, 0}, {1, 0, 0, 0});
    PadicVerdict v = decide(cubes, 5, 4);
    CHECK(v.kind == Solubility::Soluble);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == std::array<Int, 4>{1, 0, 1, 0});

    auto nonc = pair_of({1, 0, 0, -2}, {7, 0, 0, -14});
    CHECK(decide(nonc, 7, 6).kind == Solubility::Insoluble);

    auto cg = pair_of({5, 0, 0, 9}, {-10, 0, 0, -12});
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        PadicVerdict w = decide(cg, p, 24);
        CHECK(w.kind == Solubility::Soluble);
        check_witness(cg, p, w);
    }
    // primes dividing 3 * disc(f) * disc(g)
    Int D3 = 3 * disc_classical(cg.f) * disc_classical(cg.g);
    for (long p : {2L, 3L, 5L}) (void)p;  // small set covered above
    CHECK(mod(D3, Int(2)) == 0);

    CHECK_THROWS_AS(decide(cubes, 5, 1), std::invalid_argument);
}

TEST_CASE("decide is deterministic") {
    CounterRng rng(23, 0);
    for (int i = 0; i < 50; ++i) {
        SurfacePair sp = random_pair(rng, 30);
        PadicVerdict a = decide(sp, 3, 8);
        PadicVerdict b = decide(sp, 3, 8);
        CHECK(a.kind == b.kind);
        CHECK(a.level == b.level);
        CHECK(a.witness == b.witness);
    }
}

TEST_CASE("soluble witnesses verify congruence and Hensel condition") {
    CounterRng rng(29, 0);
    for (long p : {2L, 3L, 5L, 7L}) {
        int found = 0;
        for (int i = 0; i < 400 && found < 120; ++i) {
            SurfacePair sp = random_pair(rng, 20);
            PadicVerdict v = decide(sp, p, 12);
            if (v.kind != Solubility::Soluble) continue;
            ++found;
            check_witness(sp, p, v);
        }
        CHECK(found > 0);
    }
}

TEST_CASE("decide verdict invariance") {
    CounterRng rng(31, 0);
    const UnimodularMatrix mats[] = {UnimodularMatrix(0, -1, 1, 0),
                                     UnimodularMatrix(1, 1, 0, 1),
                                     UnimodularMatrix(1, 0, -2, 1)};
    for (long p : {2L, 3L, 5L}) {
        for (int i = 0; i < 60; ++i) {
            SurfacePair sp = random_pair(rng, 25);
            PadicVerdict base = decide(sp, p, 8);
            // independent SL2(Z) substitutions on f and on g
            const UnimodularMatrix &mf = mats[rng.below(3)], &mg = mats[rng.below(3)];
            SurfacePair tr{act(mf, sp.f), act(mg, sp.g)};
            PadicVerdict vt = decide(tr, p, 8);
            CHECK(vt.kind == base.kind);
            CHECK(vt.level == base.level);
            // swap
            PadicVerdict vs = decide(SurfacePair{sp.g, sp.f}, p, 8);
            CHECK(vs.kind == base.kind);
            // common unit scaling mod p^depth
            long unit = 1 + static_cast<long>(rng.below(p - 1 > 0 ? p - 1 : 1));
            if (p == 2) unit = 1;
            auto scale = [&](const BinaryCubicForm& h) {
                return BinaryCubicForm(h.c0 * unit, h.c1 * unit, h.c2 * unit,
                                       h.c3 * unit);
            };
            PadicVerdict vu = decide(SurfacePair{scale(sp.f), scale(sp.g)}, p, 8);
            CHECK(vu.kind == base.kind);
        }
    }
}

TEST_CASE("decide_by_reduction examples") {
    // simple root on f-side: one classification step
    auto simple = pair_of({1, 1, 1, 0}, {3, 3, 3, 3});
    CHECK(decide_by_reduction(simple, 5).kind == Solubility::Soluble);

    // xi = 1, both reductions rootless
    auto nn = pair_of({1, 0, 0, -2}, {7, 0, 0, -14});
    CHECK(decide_by_reduction(nn, 7).kind == Solubility::Insoluble);

    // stalled descent: (u+v)^3 = 2(x+y)^3 at p = 7 cycles forever
    auto stall = pair_of({1, 3, 3, 1}, {2, 6, 6, 2});
    CHECK(decide_by_reduction(stall, 7).kind == Solubility::Unknown);
    CHECK(decide(stall, 7, 6).kind == Solubility::Unknown);
}

TEST_CASE("decide_by_reduction handles large primes symbolically") {
    const long p = 1000003;
    auto simple = pair_of({1, 1, 1, 0}, {1, 0, 0, 5});
    CHECK(decide_by_reduction(simple, p).kind == Solubility::Soluble);
    // f NoRoot needs a rootless cubic mod p; u^3 - 5 v^3 for a suitable p
    // with 5 a non-cube works at p = 1000003 (p = 1 mod 3)
    BinaryCubicForm f(1, 0, 0, -5);
    bool fnone = classify_roots_mod_p(f, p).kind == RootKind::NoRoot;
    if (fnone) {
        SurfacePair sp{f, BinaryCubicForm(Int(p), Int(0), Int(0), Int(-5) * p)};
        CHECK(decide_by_reduction(sp, p).kind == Solubility::Insoluble);
    }
}

TEST_CASE("decide and decide_by_reduction never disagree when decisive") {
    CounterRng rng(37, 0);
    for (long p : {2L, 3L, 5L, 7L}) {
        for (int i = 0; i < 10000 / 4; ++i) {
            SurfacePair sp = random_pair(rng, 60);
            PadicVerdict a = decide(sp, p, 12);
            PadicVerdict b = decide_by_reduction(sp, p);
            if (a.kind != Solubility::Unknown && b.kind != Solubility::Unknown)
                CHECK(a.kind == b.kind);
        }
    }
}

TEST_CASE("exhaustive_bracket nests and brackets theta") {
    Bracket b2 = exhaustive_bracket(2, 2, 2);
    Bracket b3 = exhaustive_bracket(2, 3, 2);
    CHECK(b2.lower <= b2.upper);
    CHECK(b3.lower <= b3.upper);
    CHECK(b3.lower >= b2.lower);
    CHECK(b3.upper <= b2.upper);
    Rat th2 = theta(2);
    CHECK(b3.lower <= th2);
    CHECK(th2 <= b3.upper);

    Bracket c1 = exhaustive_bracket(3, 1, 2);
    Bracket c2 = exhaustive_bracket(3, 2, 2);
    CHECK(c2.lower >= c1.lower);
    CHECK(c2.upper <= c1.upper);
    Rat th3 = theta(3);
    CHECK(c2.lower <= th3);
    CHECK(th3 <= c2.upper);

    CHECK_THROWS_AS(exhaustive_bracket(5, 4, 1), GuardViolation);
}

TEST_CASE("bracket is independent of thread count") {
    Bracket a = exhaustive_bracket(2, 2, 1);
    Bracket b = exhaustive_bracket(2, 2, 4);
    CHECK(a.soluble == b.soluble);
    CHECK(a.insoluble == b.insoluble);
    CHECK(a.unknown == b.unknown);
}

TEST_CASE("mc_estimate determinism and sanity") {
    McEstimate a = mc_estimate(3, 2000, 4, 42, 2);
    McEstimate b = mc_estimate(3, 2000, 4, 42, 4);
    CHECK(a.soluble == b.soluble);
    CHECK(a.insoluble == b.insoluble);
    CHECK(a.unknown == b.unknown);
    CHECK(a.estimate == b.estimate);

    // loose 5-sigma sanity at small sample size; the acceptance suite runs
    // the full 3-sigma criterion at 10^5 samples
    double th3 = theta(3).get_d();
    CHECK(std::abs(a.estimate - th3) <= 5 * a.stderr_ + 1e-3);

    CHECK_THROWS_AS(mc_estimate(3, 100, 4, 0), std::invalid_argument);
}

TEST_CASE("profile_of reports exactness flags") {
    SurfacePair sp = pair_of({4, 2, 1, 0}, {8, 0, 1, 2});
    ValuationProfile vp = profile_of(sp, 2, 16);
    CHECK(vp.val[0] == 2);
    CHECK(vp.exact[0]);
    CHECK(vp.val[1] == 1);
    CHECK(vp.val[2] == 0);
    CHECK(vp.val[3] == 16);      // zero coefficient: lower bound only
    CHECK_FALSE(vp.exact[3]);
    CHECK(vp.val[4] == 3);
}
