#include "cubiclocus/rational_fn.hpp"

namespace cubiclocus {

namespace {

Int content(const IntPoly& f) {
    Int g = 0;
    for (const Int& x : f.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

}  // namespace

RationalFunction::RationalFunction(IntPoly n, IntPoly d)
    : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero())
        throw std::invalid_argument("RationalFunction: zero denominator");
    if (num.is_zero()) return;
    // content-gcd reduction keeps the pair canonical enough for exact use;
    // common polynomial factors are left alone (evaluation is exact anyway)
    Int g;
    Int cn = content(num), cd = content(den);
    mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (g > 1) {
        for (Int& x : num.c) x /= g;
        for (Int& x : den.c) x /= g;
    }
}

Rat RationalFunction::eval(const Rat& x) const {
    Rat d = den.eval(x);
    if (d == 0) throw std::domain_error("RationalFunction: pole");
    Rat r = num.eval(x) / d;
    r.canonicalize();
    return r;
}

}  // namespace cubiclocus
