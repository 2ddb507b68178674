#include "cubiclocus/factor.hpp"

#include <numeric>

#include "cubiclocus/modp.hpp"

#include <algorithm>
#include <cassert>

namespace cubiclocus {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mulmod_u64(x, x, n) + c) % n; };
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            u64 diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

void factor_u64(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

// Pollard rho on mpz for cofactors beyond 64 bits.
void factor_mpz(const Int& n, std::vector<Int>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out.push_back(n);
        return;
    }
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        auto f = [&](const Int& v) { return mod(v * v + c, n); };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            Int diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) {
            factor_mpz(d, out);
            factor_mpz(n / d, out);
            return;
        }
    }
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic Miller-Rabin bases for n < 2^64
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<Int, int>> factorize(const Int& n0) {
    if (n0 == 0) throw std::invalid_argument("factorize: zero");
    Int n = abs(n0);
    std::vector<Int> primes;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            primes.push_back(Int(static_cast<unsigned long>(p)));
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    for (u64 p = 17; p < 100000 && n > 1; p += 2) {
        if (mpz_cmp_ui(n.get_mpz_t(), p * p) < 0) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            primes.push_back(Int(static_cast<unsigned long>(p)));
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    if (n > 1) {
        if (n.fits_ulong_p()) {
            std::vector<u64> fs;
            factor_u64(mpz_get_ui(n.get_mpz_t()), fs);
            for (u64 f : fs) primes.push_back(Int(static_cast<unsigned long>(f)));
        } else {
            std::vector<Int> fs;
            factor_mpz(n, fs);
            primes.insert(primes.end(), fs.begin(), fs.end());
        }
    }
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Int, int>> out;
    for (const Int& p : primes) {
        if (!out.empty() && out.back().first == p)
            out.back().second++;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

std::vector<Int> prime_divisors(const Int& n) {
    std::vector<Int> out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    Int a = abs(n);
    if (a == 1) return true;
    for (auto& [p, e] : factorize(a))
        if (e >= 2) return false;
    return true;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> out{Int(1)};
    for (auto& [p, e] : factorize(n)) {
        size_t base = out.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cubiclocus
