#pragma once

#include <vector>

#include "cubiclocus/types.hpp"

namespace cubiclocus {

// Distinct prime divisors of |n|, ascending. n must be nonzero.
std::vector<Int> prime_divisors(const Int& n);

// Full factorization of |n| as (prime, exponent), ascending.
std::vector<std::pair<Int, int>> factorize(const Int& n);

bool is_prime_u64(std::uint64_t n);
bool is_squarefree(const Int& n);

// All positive divisors of |n| (n nonzero), ascending.
std::vector<Int> divisors(const Int& n);

}  // namespace cubiclocus
