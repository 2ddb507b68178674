#include "cubiclocus/primes.hpp"

namespace cubiclocus {

std::vector<long> primes_up_to(long bound) {
    std::vector<long> out;
    if (bound < 2) return out;
    std::vector<bool> comp(bound + 1, false);
    for (long i = 2; i <= bound; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (long j = i * i; j <= bound && i <= bound / i; j += i) comp[j] = true;
        }
    }
    return out;
}

}  // namespace cubiclocus
