#pragma once

#include <vector>

namespace cubiclocus {

// Simple sieve of Eratosthenes; primes <= bound ascending.
std::vector<long> primes_up_to(long bound);

}  // namespace cubiclocus
