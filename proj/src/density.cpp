#include "cubiclocus/density.hpp"

#include <thread>

#include "cubiclocus/decimal.hpp"
#include "cubiclocus/primes.hpp"

namespace cubiclocus {

namespace {

Rat one() { return Rat(1); }

void check_unit_interval(const Rat& x, const char* name) {
    if (x < 0 || x > 1)
        throw std::logic_error(std::string("density: ") + name + " outside [0,1]");
}

}  // namespace

Lemma1Constants lemma1_constants(long p) {
    Lemma1Constants L;
    Rat p2 = rat(p) * rat(p);
    L.sigma1 = rat(2, 3) * (p2 - 1) / p2;
    L.tau1 = 1 / p2;
    L.sigma_star = rat(1, 3) * rat(p) * rat(2 * p + 1) / (p2 + 1);
    L.tau_star = 1 / (p2 + 1);
    L.sigma2 = (p % 3 == 2) ? rat(1) : rat(1, 3);
    // unrestricted binary-form constants of Cor. 6
    Rat p3 = p2 * rat(p), p4 = p2 * p2;
    L.sigma = rat(1, 3) * (p2 - 1) * rat(2 * p + 1) / p3;
    L.tau = (p2 - 1) / p4;
    for (auto* r : {&L.sigma1, &L.tau1, &L.sigma_star, &L.tau_star, &L.sigma2,
                    &L.sigma, &L.tau})
        r->canonicalize();
    return L;
}

Rat lemma_lambda(long p, const Rat& s2) {
    Rat c = one() - (one() - s2) * inv_pow(p, 5);
    Rat v = one() - inv_pow(p, 1) + inv_pow(p, 2) -
            rat_pow(one() - s2, 2) * inv_pow(p, 4) -
            (one() - s2) * s2 * inv_pow(p, 5);
    return v / c;
}

Rat lemma_rho(long p, const Rat& s1, const Rat& s2) {
    Rat c = one() - inv_pow(p, 5);
    Rat v = (one() - inv_pow(p, 1) + inv_pow(p, 2) - inv_pow(p, 3)) * s2 +
            inv_pow(p, 1) - inv_pow(p, 2) + s1 * inv_pow(p, 3);
    return v / c;
}

Rat lemma_omega(long p, const Rat& s2) {
    Rat c = one() - (one() - s2) * inv_pow(p, 5);
    Rat v = s2 + (one() - s2) * inv_pow(p, 1) *
                     (one() - (one() - s2) * inv_pow(p, 1) +
                      (one() - s2) * inv_pow(p, 2) - inv_pow(p, 4));
    return v / c;
}

Rat lemma_gamma(long p, int i, const Rat& s1) {
    if (i != 0 && i != 1) throw std::invalid_argument("lemma_gamma: i in {0,1}");
    Rat c = one() - inv_pow(p, 5);
    Rat v = one() - inv_pow(p, 2) + s1 * inv_pow(p, 2 + i);
    return v / c;
}

DensityProfile alpha_assembly(long p, const Rat& s1, const Rat& s2) {
    DensityProfile d;
    d.p = p;
    d.sigma1 = s1;
    d.sigma2 = s2;

    const Rat q1 = inv_pow(p, 1), q2 = inv_pow(p, 2), q3 = inv_pow(p, 3),
              q4 = inv_pow(p, 4), q5 = inv_pow(p, 5), q6 = inv_pow(p, 6),
              q9 = inv_pow(p, 9), q10 = inv_pow(p, 10);

    d.lambda = lemma_lambda(p, s2);
    d.rho = lemma_rho(p, s1, s2);
    d.omega = lemma_omega(p, s2);
    d.gamma0 = lemma_gamma(p, 0, s1);
    d.gamma1 = lemma_gamma(p, 1, s1);

    d.kappa1 = (one() - (one() - s2) * q2 +
                (one() - s2) * q3 * (one() - (one() - s2) * q1 - s2 * q2)) /
               (one() - (one() - s2) * q5);
    d.B = rat_pow(one() - q1, 2) * s2 + q2 - q6 +
          2 * rat(p - 1) * d.kappa1 * q2;
    d.alpha1_0 = (s2 + (one() - s2) * (q2 + (d.B - 1) * q4 +
                                       2 * d.lambda * q1 * (one() - q1) +
                                       rat_pow(one() - q1, 2) * s2)) /
                 (one() - (one() - s2) * q10);
    d.kappa = d.B + d.alpha1_0 * q6;

    d.A = one() - q1 +
          rat(p - 1) * q2 * (s2 + (one() - s2) * ((one() - q1) * s2 + d.lambda * q1)) +
          (s1 + (one() - s1) * d.gamma1) * q2 - d.gamma1 * q4;
    d.C = one() - q1 + rat(p - 1) * d.rho * q2 +
          rat(p - 1) * (s1 + d.rho * q2) * q3 +
          (s1 + (one() - s1 - q2) * d.gamma0) * q3 + d.A * q5;
    d.alpha1_1 = ((one() - q1) * d.omega + d.C * q1) / (one() - q10);
    d.epsilon = d.A + d.alpha1_1 * q4;
    d.omega1 = d.C + d.alpha1_1 * q9;
    d.alpha1_2 = (one() - q1) * d.rho + d.A * q1 + d.alpha1_1 * q5;
    d.alpha2_1 = d.gamma1;
    d.alpha2_2 = d.gamma0 * q1;

    // defining identities, re-checked post-assembly
    if (d.epsilon != d.A + d.alpha1_1 * q4)
        throw std::logic_error("alpha_assembly: epsilon identity failed");
    if (d.kappa != d.B + d.alpha1_0 * q6)
        throw std::logic_error("alpha_assembly: kappa identity failed");
    if (d.omega1 != d.C + d.alpha1_1 * q9)
        throw std::logic_error("alpha_assembly: omega1 identity failed");

    for (auto [v, n] : {std::pair<const Rat*, const char*>{&d.lambda, "lambda"},
                        {&d.rho, "rho"},
                        {&d.omega, "omega"},
                        {&d.gamma0, "gamma0"},
                        {&d.gamma1, "gamma1"},
                        {&d.alpha1_0, "alpha1_0"},
                        {&d.alpha1_1, "alpha1_1"},
                        {&d.alpha1_2, "alpha1_2"},
                        {&d.alpha2_1, "alpha2_1"},
                        {&d.alpha2_2, "alpha2_2"},
                        {&d.kappa, "kappa"},
                        {&d.kappa1, "kappa1"},
                        {&d.epsilon, "epsilon"},
                        {&d.omega1, "omega1"}})
        check_unit_interval(*v, n);
    return d;
}

DensityProfile density_profile(long p, std::optional<Rat> sigma2_override) {
    Lemma1Constants L = lemma1_constants(p);
    Rat s2 = sigma2_override.value_or(L.sigma2);
    DensityProfile d = alpha_assembly(p, L.sigma1, s2);
    d.tau1 = L.tau1;
    d.sigma_star = L.sigma_star;
    d.tau_star = L.tau_star;
    d.sigma = L.sigma;
    d.tau = L.tau;
    d.branch = (s2 == 1) ? 'S' : 'P';

    const Rat q1 = inv_pow(p, 1), q2 = inv_pow(p, 2), q4 = inv_pow(p, 4),
              q8 = inv_pow(p, 8), q12 = inv_pow(p, 12);

    // E(p) assembly
    d.E = one() - d.alpha1_0 + (one() - d.alpha1_1) * q4 +
          (one() - d.alpha1_2) * q8 +
          (one() - q1) * (one() + q4) / (3 * rat(p) * rat(p)) *
              (2 - d.alpha2_1 - d.alpha2_2) +
          rat_pow(one() - q1, 2) * (one() + q4) / 9;
    d.chi = d.E / (rat_pow(rat(p), 4) * rat_pow(one() + q2, 2) * (one() - q12));

    // unsimplified eq-(4) triple sum over xi in {0,1,2}, i in {1..4}
    Rat b1 = d.tau_star * d.tau_star;
    Rat rest = one() - d.sigma_star - d.tau_star;
    Rat b2 = d.tau_star * rest, b4 = rest * rest;
    const Rat betas[4] = {b1, b2, b2, b4};
    const Rat alphas[4][3] = {
        {d.alpha1_0, d.alpha1_1, d.alpha1_2},
        {one(), d.alpha2_1, d.alpha2_2},
        {one(), d.alpha2_2, d.alpha2_1},  // alpha3(xi) = alpha2(3-xi)
        {one(), Rat(0), Rat(0)}};
    Rat chi_sum(0);
    for (int xi = 0; xi < 3; ++xi)
        for (int i = 0; i < 4; ++i)
            chi_sum += inv_pow(p, 4 * xi) * betas[i] / (one() - q12) *
                       (one() - alphas[i][xi]);
    if (chi_sum != d.chi)
        throw std::logic_error("density: eq-(4) sum and E(p) assembly disagree");

    if (d.E < 0) throw std::logic_error("density: E(p) negative");
    if (!(d.chi > 0 && d.chi < inv_pow(p, 3)))
        throw std::logic_error("density: chi outside (0, p^-3)");
    d.theta = one() - d.chi;
    return d;
}

Rat chi_via_recursion(long p, std::optional<Rat> sigma2_override) {
    return density_profile(p, std::move(sigma2_override)).chi;
}

IntPoly paper_Q_poly() {
    IntPoly nine({Int(9)});
    IntPoly a({Int(1), Int(1), Int(1), Int(1), Int(1)});
    IntPoly b({Int(1), Int(1), Int(1)});
    IntPoly c({Int(1), Int(-1), Int(1)});
    IntPoly d({Int(1), Int(0), Int(-1)});
    return nine * a * a * b * c * d;
}

IntPoly paper_P_poly() {
    // coefficients ascending x^0 .. x^35
    static const long pc[] = {45,  -45, 180, -180, 306,  -315, 450,  -477, 639,
                              -639, 702, -669, 543, -489, 336,  -293, 110,  -68,
                              -184, 197, -361, 342, -378, 342,  -314, 292,  -236,
                              228,  -132, 126, -58,  56,  -16,  16,   -4,   4};
    std::vector<Int> c;
    for (long v : pc) c.emplace_back(v);
    return IntPoly(std::move(c));
}

Rat chi_closed_form_simple_branch(long p) {
    Rat x = inv_pow(p, 1);
    IntPoly num = IntPoly({Int(1), Int(0), Int(0), Int(0), Int(1)}) *    // 1+x^4
                  IntPoly({Int(1), Int(0), Int(1)});                    // 1+x^2
    RationalFunction f(num, paper_Q_poly());
    return f.eval(x) * rat_pow(x, 4);
}

Rat chi_closed_form_P_branch(long p) {
    Rat x = inv_pow(p, 1);
    // (3-2x^10)(3-2x^5)(1-x+x^2-x^3+x^4)(1-x^2+x^4)(1+x^2)^3 Q(x)
    std::vector<Int> d1(11, Int(0)); d1[0] = 3; d1[10] = -2;
    std::vector<Int> d2(6, Int(0)); d2[0] = 3; d2[5] = -2;
    IntPoly f1(std::move(d1)), f2(std::move(d2));
    IntPoly f3({Int(1), Int(-1), Int(1), Int(-1), Int(1)});
    IntPoly f4({Int(1), Int(0), Int(-1), Int(0), Int(1)});
    IntPoly f5({Int(1), Int(0), Int(1)});
    IntPoly denom = f1 * f2 * f3 * f4 * f5 * f5 * f5 * paper_Q_poly();
    RationalFunction f(paper_P_poly(), denom);
    return f.eval(x) * rat_pow(x, 4);
}

char chi_branch(long p) { return (p % 3 == 2) ? 'S' : 'P'; }

Rat chi_closed_form(long p) {
    return chi_branch(p) == 'S' ? chi_closed_form_simple_branch(p)
                                : chi_closed_form_P_branch(p);
}

Rat theta(long p) {
    Rat t = 1 - chi_via_recursion(p);
    t.canonicalize();
    return t;
}

namespace {

bool pass_filter(long p, ResidueClassFilter f) {
    switch (f) {
        case ResidueClassFilter::OneMod3: return p % 3 == 1;
        case ResidueClassFilter::TwoMod3: return p % 3 == 2;
        case ResidueClassFilter::All: return true;
    }
    return false;
}

constexpr long kProductBoundGuard = 1000000;

std::vector<long> filtered_primes(long bound, ResidueClassFilter filter) {
    if (bound < 0) throw std::invalid_argument("density_product: negative bound");
    if (bound > static_cast<long>(max_enum_guard(kProductBoundGuard)))
        throw GuardViolation("density_product: guard bound <= 10^6 violated");
    std::vector<long> ps;
    for (long p : primes_up_to(bound))
        if (pass_filter(p, filter)) ps.push_back(p);
    return ps;
}

}  // namespace

ProductResult density_product(long bound, ResidueClassFilter filter, int digits,
                              int threads) {
    if (bound > 100000) {
        // exact-rational operands get impractically large; switch paths
        return density_product_fixed(bound, filter, digits);
    }
    std::vector<long> ps = filtered_primes(bound, filter);
    if (threads < 1) threads = 1;
    size_t n = ps.size();
    std::vector<Rat> partial(threads, Rat(1));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            // tree-reduce the chunk to keep operand sizes balanced
            std::vector<Rat> vals;
            for (size_t i = t; i < n; i += threads) vals.push_back(theta(ps[i]));
            while (vals.size() > 1) {
                std::vector<Rat> next;
                for (size_t i = 0; i + 1 < vals.size(); i += 2)
                    next.push_back(vals[i] * vals[i + 1]);
                if (vals.size() & 1) next.push_back(vals.back());
                vals = std::move(next);
            }
            if (!vals.empty()) partial[t] = vals[0];
        });
    }
    for (auto& th : pool) th.join();
    Rat prod(1);
    for (auto& r : partial) prod *= r;
    prod.canonicalize();
    ProductResult res;
    res.value = prod;
    res.decimal = to_decimal(prod, digits);
    res.primes_used = static_cast<long>(n);
    res.exact = true;
    return res;
}

ProductResult density_product_fixed(long bound, ResidueClassFilter filter,
                                    int digits) {
    std::vector<long> ps = filtered_primes(bound, filter);
    // >= 40 guard digits past the requested precision
    const int total_digits = digits + 45;
    const mp_bitcnt_t prec = static_cast<mp_bitcnt_t>(total_digits * 3.33) + 64;
    mpf_class acc(1, prec);
    for (long p : ps) {
        mpf_class t(0, prec);
        mpf_set_q(t.get_mpf_t(), theta(p).get_mpq_t());
        acc *= t;
    }
    // exact decimal rendering happens on a rational snapshot of the fixed-point
    // accumulator; the guard digits make the printed digits stable
    Rat snapshot(acc);
    snapshot.canonicalize();
    ProductResult res;
    res.value = snapshot;
    res.decimal = to_decimal(snapshot, digits);
    res.primes_used = static_cast<long>(ps.size());
    res.exact = false;
    return res;
}

}  // namespace cubiclocus
