#include <doctest.h>

#include "cubiclocus/decimal.hpp"
#include "cubiclocus/density.hpp"
#include "cubiclocus/primes.hpp"

using namespace cubiclocus;

TEST_CASE("lemma1_constants examples") {
    auto L5 = lemma1_constants(5);
    CHECK(L5.sigma1 == rat(16, 25));
    CHECK(L5.tau1 == rat(1, 25));
    CHECK(L5.sigma_star == rat(55, 78));
    CHECK(L5.tau_star == rat(1, 26));
    CHECK(L5.sigma2 == 1);
    auto L2 = lemma1_constants(2);
    CHECK(L2.sigma_star == rat(2, 3));
    CHECK(L2.tau_star == rat(1, 5));
    CHECK(L2.sigma2 == 1);
    CHECK(lemma1_constants(7).sigma2 == rat(1, 3));
    CHECK(lemma1_constants(3).sigma2 == rat(1, 3));
}

TEST_CASE("sigma_star and tau_star derive from the unrestricted constants") {
    for (long p : primes_up_to(100)) {
        auto L = lemma1_constants(p);
        Rat p4 = rat_pow(rat(p), 4);
        CHECK(L.sigma_star == L.sigma * p4 / (p4 - 1));
        CHECK(L.tau_star == L.tau * p4 / (p4 - 1));
    }
}

TEST_CASE("lambda simplifies when sigma2 = 1") {
    for (long p : primes_up_to(100))
        CHECK(lemma_lambda(p, rat(1)) == 1 - inv_pow(p, 1) + inv_pow(p, 2));
}

TEST_CASE("gamma0 at p=5 equals 770/781") {
    CHECK(lemma_gamma(5, 0, lemma1_constants(5).sigma1) == rat(770, 781));
}

TEST_CASE("fixpoint identities, exact for all p <= 100") {
    for (long p : primes_up_to(100)) {
        auto L = lemma1_constants(p);
        for (Rat s2 : {rat(1), rat(1, 3)}) {
            Rat s1 = L.sigma1, t1 = L.tau1;
            DensityProfile d = alpha_assembly(p, s1, s2);
            Rat q1 = inv_pow(p, 1), q2 = inv_pow(p, 2);

            // lambda = 1 - 1/p + 1/p^2 {1 - tau1 + tau1 (s2 + (1-s2)((p-1)s2/p + lambda/p))}
            CHECK(d.lambda ==
                  1 - q1 + q2 * (1 - t1 + t1 * (s2 + (1 - s2) * (rat(p - 1) * s2 * q1 +
                                                                d.lambda * q1))));
            // rho = (p-1)s2/p + 1/p {(p-1)/p + (p-1)s2/p^2 + (s1 + t1 rho)/p^2}
            CHECK(d.rho == rat(p - 1) * s2 * q1 +
                               q1 * (rat(p - 1) * q1 + rat(p - 1) * s2 * q2 +
                                     (s1 + t1 * d.rho) * q2));
            // omega = s2 + (1-s2)/p (1 - 1/p + (1-1/p)s2/p + (1 - t1 + t1 omega)/p^2)
            CHECK(d.omega ==
                  s2 + (1 - s2) * q1 *
                           (1 - q1 + (1 - q1) * s2 * q1 + (1 - t1 + t1 * d.omega) * q2));
            // gamma fixpoints
            CHECK(d.gamma0 == 1 - q2 + q2 * (s1 + t1 * d.gamma0 * q1));
            CHECK(d.gamma1 ==
                  1 - q2 - rat(p - 1) * q2 +
                      rat(1 + (p - 1)) * q2 * (1 - q1 + (s1 + t1 * d.gamma1) * q2));
            // kappa = (1-1/p)^2 s2 + 1/p^2 - 1/p^6 + alpha1(0)/p^6 + 2 kappa1 (1-1/p)/p
            CHECK(d.kappa == rat_pow(1 - q1, 2) * s2 + q2 - inv_pow(p, 6) +
                                 d.alpha1_0 * inv_pow(p, 6) +
                                 2 * d.kappa1 * q1 * (1 - q1));
            // defining identities
            CHECK(d.epsilon == d.A + d.alpha1_1 * inv_pow(p, 4));
            CHECK(d.kappa == d.B + d.alpha1_0 * inv_pow(p, 6));
            CHECK(d.omega1 == d.C + d.alpha1_1 * inv_pow(p, 9));
            // alpha2 relations
            CHECK(d.alpha2_1 == d.gamma1);
            CHECK(d.alpha2_2 == d.gamma0 * q1);
        }
    }
}

TEST_CASE("branch identity: recursion equals the validated closed form") {
    for (long p : primes_up_to(500)) {
        CHECK(chi_via_recursion(p) == chi_closed_form(p));
        // and the branches pair with sigma2, not with the printed rule
        CHECK(chi_via_recursion(p, rat(1)) == chi_closed_form_simple_branch(p));
        CHECK(chi_via_recursion(p, rat(1, 3)) == chi_closed_form_P_branch(p));
    }
}

TEST_CASE("closed-form denominators are positive for small x") {
    for (long p : {2L, 3L, 5L, 7L, 11L, 9973L}) {
        Rat x = inv_pow(p, 1);
        CHECK(paper_Q_poly().eval(x) > 0);
        CHECK(chi_closed_form_simple_branch(p) > 0);
        CHECK(chi_closed_form_P_branch(p) > 0);
    }
}

TEST_CASE("theta_3 renders as 0.9965901 and theta bounds hold") {
    CHECK(decimal_prefix(theta(3), 7) == "0.9965901");
    CHECK(to_decimal(theta(3), 7) == "0.9965902");  // 0.99659015... rounds up
    for (long p : primes_up_to(1000)) {
        Rat t = theta(p);
        CHECK(t > 1 - inv_pow(p, 3));
        CHECK(t < 1);
    }
}

TEST_CASE("profile fields lie in [0,1] and E >= 0") {
    for (long p : primes_up_to(1000)) {
        DensityProfile d = density_profile(p);
        for (const Rat* r : {&d.sigma1, &d.tau1, &d.sigma_star, &d.tau_star,
                             &d.sigma2, &d.lambda, &d.rho, &d.omega, &d.gamma0,
                             &d.gamma1, &d.alpha1_0, &d.alpha1_1, &d.alpha1_2,
                             &d.alpha2_1, &d.alpha2_2, &d.kappa, &d.kappa1,
                             &d.epsilon, &d.omega1, &d.chi, &d.theta}) {
            CHECK(*r >= 0);
            CHECK(*r <= 1);
        }
        CHECK(d.E >= 0);
        CHECK(d.theta == 1 - d.chi);
    }
}

TEST_CASE("density_product small bounds and monotonicity") {
    ProductResult p10 = density_product(10, ResidueClassFilter::All, 9);
    // theta_2 * theta_3 * theta_5 * theta_7 exactly
    Rat expect = theta(2) * theta(3) * theta(5) * theta(7);
    expect.canonicalize();
    CHECK(p10.value == expect);
    CHECK(p10.primes_used == 4);

    ProductResult p30 = density_product(30, ResidueClassFilter::All, 9);
    CHECK(p30.value < p10.value);  // tail decreases the product

    // residue-class filters: p = 3 in neither class
    ProductResult c1 = density_product(10, ResidueClassFilter::OneMod3, 9);
    ProductResult c2 = density_product(10, ResidueClassFilter::TwoMod3, 9);
    CHECK(c1.value == theta(7));
    Rat t25 = theta(2) * theta(5);
    t25.canonicalize();
    CHECK(c2.value == t25);

    CHECK_THROWS_AS(density_product(2000000, ResidueClassFilter::All, 7),
                    GuardViolation);
}

TEST_CASE("exact and fixed-point product paths agree on printed digits") {
    ProductResult ex = density_product(2000, ResidueClassFilter::All, 7, 2);
    ProductResult fx = density_product_fixed(2000, ResidueClassFilter::All, 7);
    CHECK(ex.decimal == fx.decimal);
    CHECK(ex.exact);
    CHECK_FALSE(fx.exact);
}

TEST_CASE("decimal rendering is exact") {
    CHECK(to_decimal(rat(1, 3), 5) == "0.33333");
    CHECK(to_decimal(rat(2, 3), 5) == "0.66667");
    CHECK(to_decimal(rat(1, 2), 1) == "0.5");
    CHECK(to_decimal(rat(5, 2), 1) == "2");      // half-even: 2.5 -> 2
    CHECK(to_decimal(rat(7, 2), 1) == "4");      // half-even: 3.5 -> 4
    CHECK(to_decimal(rat(999, 1000), 2) == "1.0");  // carry
    CHECK(to_decimal(rat(-1, 8), 3) == "-0.125");
    CHECK(decimal_prefix(rat(2, 3), 5) == "0.66666");
    CHECK(to_decimal(rat(325, 100), 2) == "3.2");  // 3.25 half-even down
}
