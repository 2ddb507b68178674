#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubiclocus {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown on guard violations; the message names the guard.
struct GuardViolation : std::runtime_error {
    explicit GuardViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Enumeration guard override, read from CUBICLOCUS_MAX_ENUM.
std::uint64_t max_enum_guard(std::uint64_t dflt);

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// x^e for e >= 0
inline Rat rat_pow(const Rat& x, unsigned e) {
    Rat r(1);
    Rat b = x;
    unsigned k = e;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

inline Int int_pow(const Int& x, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

// 1/p^k as an exact rational
inline Rat inv_pow(long p, unsigned k) {
    Rat r(1, int_pow(Int(p), k));
    r.canonicalize();
    return r;
}

}  // namespace cubiclocus
