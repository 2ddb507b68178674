#include <doctest.h>

#include "cubiclocus/factor.hpp"
#include "cubiclocus/modp.hpp"
#include "cubiclocus/forms.hpp"
#include "cubiclocus/rng.hpp"

using namespace cubiclocus;

namespace {

BinaryCubicForm rand_form(CounterRng& rng, long range) {
    for (;;) {
        long c0 = rng.box(range), c1 = rng.box(range), c2 = rng.box(range),
             c3 = rng.box(range);
        if (c0 || c1 || c2 || c3) return {c0, c1, c2, c3};
    }
}

IntegerMatrixCubic rand_im(CounterRng& rng, long range) {
    for (;;) {
        long a = rng.box(range), b = rng.box(range), c = rng.box(range),
             d = rng.box(range);
        if (a || b || c || d) return {a, b, c, d};
    }
}

}  // namespace

TEST_CASE("disc_reduced examples") {
    CHECK(disc_reduced({1, 0, 0, 1}) == 1);   // only a^2 d^2 survives
    CHECK(disc_reduced({1, 0, 0, 0}) == 0);   // u^3
}

TEST_CASE("disc_classical examples") {
    CHECK(disc_classical({1, 0, 0, 1}) == -27);  // u^3 + v^3
    CHECK(disc_classical({0, 1, 1, 0}) == 1);    // u v (u + v)
    CHECK(disc_classical({1, 0, 0, 0}) == 0);    // repeated root
}

TEST_CASE("disc_classical(embed) = -27 disc_reduced, interpolation grid plus random") {
    // degree <= 2 per variable on each side; a {-3..3}^4 grid exceeds the
    // interpolation bound, so equality on the grid proves the identity
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            for (long c = -3; c <= 3; ++c)
                for (long d = -3; d <= 3; ++d) {
                    if (!a && !b && !c && !d) continue;
                    IntegerMatrixCubic f(a, b, c, d);
                    CHECK(disc_classical(f.embed()) == -27 * disc_reduced(f));
                }
    CounterRng rng(7, 0);
    for (int i = 0; i < 10000; ++i) {
        IntegerMatrixCubic f = rand_im(rng, 1000);
        CHECK(disc_classical(f.embed()) == -27 * disc_reduced(f));
    }
}

TEST_CASE("act: identity, swap, shear examples") {
    BinaryCubicForm f(2, 3, 5, 7);
    CHECK(act(UnimodularMatrix::identity(), f) == f);
    BinaryCubicForm diag(4, 0, 0, 9);
    CHECK(act(UnimodularMatrix(0, 1, 1, 0), diag) == BinaryCubicForm(9, 0, 0, 4));
    BinaryCubicForm u3(1, 0, 0, 0);
    CHECK(act(UnimodularMatrix(1, 1, 0, 1), u3) == BinaryCubicForm(1, 3, 3, 1));
}

TEST_CASE("det^6 scaling law on random pairs") {
    CounterRng rng(11, 0);
    const long dets[] = {-2, -1, 1, 2, 3};
    for (int i = 0; i < 10000; ++i) {
        BinaryCubicForm f = rand_form(rng, 50);
        // random matrix with prescribed determinant: (a, b; c, d), ad - bc = D
        long a = rng.box(8), b = rng.box(8);
        long D = dets[rng.below(5)];
        // solve a*d - b*c = D over small values
        bool found = false;
        for (long c = -8; c <= 8 && !found; ++c)
            for (long d = -8; d <= 8 && !found; ++d)
                if (a * d - b * c == D) {
                    UnimodularMatrix m(a, b, c, d);
                    Int lhs = disc_classical(act(m, f));
                    CHECK(lhs == int_pow(Int(D), 6) * disc_classical(f));
                    found = true;
                }
    }
}

TEST_CASE("act rejects det 0") {
    CHECK_THROWS_AS(UnimodularMatrix(1, 2, 2, 4), std::invalid_argument);
}

TEST_CASE("classify_roots_mod_p examples") {
    CHECK(classify_roots_mod_p({1, 0, 0, -2}, 7).kind == RootKind::NoRoot);
    auto triple = classify_roots_mod_p({1, 0, 0, 0}, 5);
    CHECK(triple.kind == RootKind::TripleRoot);
    CHECK(triple.witness == std::array<Int, 2>{0, 1});  // u^3 vanishes at (0:1)
    auto simple = classify_roots_mod_p({0, 1, 0, 0}, 5);  // u^2 v
    CHECK(simple.kind == RootKind::SimpleRoot);
    CHECK(simple.witness == std::array<Int, 2>{1, 0});
}

TEST_CASE("classify errors on forms vanishing mod p") {
    CHECK_THROWS_AS(classify_roots_mod_p({5, 10, 15, 5}, 5), AllZeroModP);
}

TEST_CASE("classification is SL2(F_p)-invariant") {
    CounterRng rng(13, 0);
    for (long p : {2L, 3L, 5L, 7L, 13L}) {
        for (int i = 0; i < 300; ++i) {
            BinaryCubicForm f = rand_form(rng, 40);
            Int P(p);
            if (mod(f.c0, P) == 0 && mod(f.c1, P) == 0 && mod(f.c2, P) == 0 &&
                mod(f.c3, P) == 0)
                continue;
            long k = static_cast<long>(rng.below(p));
            for (auto m : {UnimodularMatrix(0, -1, 1, 0), UnimodularMatrix(1, k, 0, 1)}) {
                CHECK(classify_roots_mod_p(act(m, f), P).kind ==
                      classify_roots_mod_p(f, P).kind);
            }
        }
    }
}

TEST_CASE("count_root_classes: frozen examples and Lemma 1 closed forms") {
    auto m5 = count_root_classes(5, Population::MonicCubicPoly);
    CHECK(m5.simple_count == 80);  // sigma1(5) * 125 = (16/25)*125
    CHECK(m5.triple_count == 5);   // exactly the (x-r)^3
    CHECK(m5.total == 125);
    auto b2 = count_root_classes(2, Population::PrimitiveBinaryCubic);
    CHECK(b2.simple_count == 10);  // sigma*(2) * 15 = (2/3)*15
    CHECK(b2.total == 15);

    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        auto mono = count_root_classes(p, Population::MonicCubicPoly);
        Rat sigma1 = rat(2, 3) * rat(p * p - 1) / rat(p * p);
        Rat tau1 = rat(1, p * p);
        CHECK(Rat(mono.simple_count, mono.total) == sigma1);
        CHECK(Rat(mono.triple_count, mono.total) == tau1);
        auto prim = count_root_classes(p, Population::PrimitiveBinaryCubic);
        Rat sigma_star = rat(1, 3) * rat(p) * rat(2 * p + 1) / rat(p * p + 1);
        Rat tau_star = rat(1, p * p + 1);
        Rat sf(prim.simple_count, prim.total), tf(prim.triple_count, prim.total);
        sf.canonicalize();
        tf.canonicalize();
        CHECK(sf == sigma_star);
        CHECK(tf == tau_star);
    }
}

TEST_CASE("count_root_classes guard") {
    CHECK_THROWS_AS(count_root_classes(103, Population::MonicCubicPoly), GuardViolation);
}

TEST_CASE("is_irreducible_over_Q examples") {
    CHECK_FALSE(is_irreducible_over_Q({1, 0, 0, 1}));  // u + v divides
    CHECK(is_irreducible_over_Q({1, 0, 0, 2}));        // u^3 + 2v^3
    CHECK_FALSE(is_irreducible_over_Q({2, 0, 0, 2}));  // proportional to u^3+v^3
}

TEST_CASE("unit_cube_test examples") {
    CHECK(unit_cube_test(2, 5));        // p = 2 mod 3: always a cube
    CHECK_FALSE(unit_cube_test(2, 7));  // 2^2 = 4 != 1 mod 7
    CHECK(unit_cube_test(10, 3));       // 10 = 1 mod 9
    CHECK_THROWS_AS(unit_cube_test(14, 7), std::invalid_argument);
}

TEST_CASE("unit_cube_test acceptance rate equals sigma2") {
    // over units mod p^2 (p != 3) and mod 9 (p = 3)
    for (long p : {2L, 3L, 5L, 7L, 13L}) {
        long modulus = p == 3 ? 9 : p * p;
        long hits = 0, total = 0;
        for (long a = 1; a < modulus; ++a) {
            if (a % p == 0) continue;
            ++total;
            if (unit_cube_test(a, p)) ++hits;
        }
        Rat rate(hits, total);
        rate.canonicalize();
        Rat sigma2 = (p % 3 == 2) ? rat(1) : rat(1, 3);
        CHECK(rate == sigma2);
    }
}

TEST_CASE("fundamental discriminants") {
    CHECK(is_fundamental_discriminant(5));
    CHECK(is_fundamental_discriminant(8));   // 4*2, 2 squarefree, 2 mod 4
    CHECK_FALSE(is_fundamental_discriminant(9));
    CHECK(is_fundamental_discriminant(-3));
    CHECK(is_fundamental_discriminant(-4));
    CHECK_FALSE(is_fundamental_discriminant(-5));  // -5 = 3 mod 4
    CHECK_FALSE(is_fundamental_discriminant(0));

    // batch sieve agrees with the per-integer rule on a sample
    long cnt = 0;
    for (long d = 1; d <= 2000; ++d)
        if (is_fundamental_discriminant(d)) ++cnt;
    CHECK(cnt == count_fundamental_up_to(2000));
}

TEST_CASE("serialization round trip") {
    BinaryCubicForm f(5, 0, 0, 9);
    CHECK(parse_form(to_string(f)) == f);
    IntegerMatrixCubic im(5, 0, 0, 9);
    CHECK(to_string(im) == "im:5,0,0,9");
    CHECK(parse_form("im:5,0,0,9") == im.embed());
    auto back = parse_integer_matrix("im:5,0,0,9");
    REQUIRE(back.has_value());
    CHECK(*back == im);
    CHECK(parse_integer_matrix("1,1,1,1") == std::nullopt);
    CHECK_THROWS_AS(parse_form("1,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_form("0,0,0,0"), std::invalid_argument);
}

TEST_CASE("GL2(Z) action preserves the integer-matrix lattice") {
    CounterRng rng(17, 0);
    for (int i = 0; i < 2000; ++i) {
        IntegerMatrixCubic f = rand_im(rng, 30);
        long a = rng.box(6), b = rng.box(6);
        for (long c = -6; c <= 6; ++c) {
            bool ok = false;
            for (long d = -6; d <= 6; ++d)
                if (a * d - b * c == 1 || a * d - b * c == -1) {
                    BinaryCubicForm g = act(UnimodularMatrix(a, b, c, d), f.embed());
                    CHECK(mod(g.c1, Int(3)) == 0);
                    CHECK(mod(g.c2, Int(3)) == 0);
                    ok = true;
                    break;
                }
            if (ok) break;
        }
    }
}
