#pragma once

#include <optional>
#include <string>

#include "cubiclocus/rational_fn.hpp"
#include "cubiclocus/types.hpp"

namespace cubiclocus {

// Every exact rational intermediate of the local-density recursion for one
// prime. All probability fields lie in [0,1]; chi in (0, p^-3); theta = 1-chi.
struct DensityProfile {
    long p = 0;
    // Lemma 1 constants; sigma/tau are the unrestricted binary-form values
    // with sigma_star = sigma*p^4/(p^4-1), tau_star = tau*p^4/(p^4-1)
    Rat sigma1, tau1, sigma_star, tau_star, sigma2, sigma, tau;
    // recursion lemmas
    Rat lambda, rho, omega, gamma0, gamma1;
    // alpha assembly
    Rat A, B, C, kappa, kappa1, epsilon, omega1;
    Rat alpha1_0, alpha1_1, alpha1_2, alpha2_1, alpha2_2;
    Rat E, chi, theta;
    char branch = '?';  // 'S' = (1+x^4)(1+x^2)x^4/Q branch, 'P' = P(x) branch
};

struct Lemma1Constants {
    Rat sigma1, tau1, sigma_star, tau_star, sigma2, sigma, tau;
};
Lemma1Constants lemma1_constants(long p);

// The recursion lemmas, parameterized on sigma2 (and sigma1) so both printed
// branches can be tested against the recursion.
Rat lemma_lambda(long p, const Rat& sigma2);
Rat lemma_rho(long p, const Rat& sigma1, const Rat& sigma2);
Rat lemma_omega(long p, const Rat& sigma2);
Rat lemma_gamma(long p, int i, const Rat& sigma1);

// Full dependency-ordered assembly; verifies the self-referential identities
// (epsilon = A + alpha1(1)/p^4, kappa = B + alpha1(0)/p^6,
//  omega1 = C + alpha1(1)/p^9) exactly after assembly.
DensityProfile alpha_assembly(long p, const Rat& sigma1, const Rat& sigma2);

// chi via the eq-(4)/E(p) assembly. Computes both the unsimplified triple sum
// over (xi, i) and the closed E(p) form; they must agree exactly.
Rat chi_via_recursion(long p, std::optional<Rat> sigma2_override = std::nullopt);

// The paper's printed closed forms, evaluated at x = 1/p.
Rat chi_closed_form_simple_branch(long p);  // (1+x^4)(1+x^2)x^4 / Q(x)
Rat chi_closed_form_P_branch(long p);       // P(x) x^4 / (...)Q(x)

// Branch per the validated pairing: simple branch iff p = 2 (mod 3), i.e.
// sigma2 = 1; P branch otherwise (p = 1 mod 3 and p = 3). The paper's text
// pairs them the other way; see docs/branch-resolution.md.
Rat chi_closed_form(long p);
char chi_branch(long p);

Rat theta(long p);

// Full per-prime profile (recursion path).
DensityProfile density_profile(long p, std::optional<Rat> sigma2_override = std::nullopt);

enum class ResidueClassFilter { OneMod3, TwoMod3, All };

struct ProductResult {
    Rat value;            // exact rational product (exact path only)
    std::string decimal;  // rendered to the requested digits
    long primes_used = 0;
    bool exact = true;
};

// prod of theta_p over filtered primes <= bound (theta_infinity = 1). p = 3
// belongs to neither residue-class product and enters only under All.
// Guard: bound <= 10^6. Exact-rational path for bound <= 10^5; beyond that a
// high-precision fixed-point path (>= 40 guard digits) is used.
ProductResult density_product(long bound, ResidueClassFilter filter, int digits,
                              int threads = 1);
// Fixed-point path, exposed for the agreement test.
ProductResult density_product_fixed(long bound, ResidueClassFilter filter,
                                    int digits);

// The printed P(x) and Q(x), exposed for tests.
IntPoly paper_P_poly();
IntPoly paper_Q_poly();

}  // namespace cubiclocus
