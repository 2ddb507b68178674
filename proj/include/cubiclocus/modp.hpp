#pragma once

#include <array>
#include <vector>

#include "cubiclocus/types.hpp"

namespace cubiclocus {

// Nonnegative residue.
inline Int mod(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int powmod(const Int& base, const Int& exp, const Int& m);
Int invmod(const Int& a, const Int& p);

// Square root mod an odd prime (Tonelli-Shanks); empty if a is a non-residue.
std::vector<Int> sqrt_mod_p(const Int& a, const Int& p);

// Is a (a unit mod p) a cube in F_p^*?
bool is_cube_fp(const Int& a, const Int& p);

// Distinct roots in F_p of c[0]*t^3 + c[1]*t^2 + c[2]*t + c[3], together with
// multiplicities. Degree may be < 3 (leading zeros allowed); the zero
// polynomial is rejected. Deterministic, ascending root order.
std::vector<std::pair<Int, int>> cubic_roots_mod_p(const std::array<Int, 4>& c,
                                                   const Int& p);

}  // namespace cubiclocus
