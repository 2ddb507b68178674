#include "cubiclocus/decimal.hpp"

namespace cubiclocus {

namespace {

Int ten_pow(long k) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return r;
}

// floor(log10(x)) for x > 0
long dec_exponent(const Rat& x) {
    const Int num = x.get_num(), den = x.get_den();
    // digit-count estimate, then settle exactly by comparison with powers of 10
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    auto cmp_pow = [&](long k) {
        if (k >= 0) return cmp(num, den * ten_pow(k));
        return cmp(num * ten_pow(-k), den);
    };
    while (cmp_pow(e) < 0) --e;
    while (cmp_pow(e + 1) >= 0) ++e;
    return e;
}

std::string place_digits(const std::string& digits, long e) {
    // digits are the significant digits of a value in [10^e, 10^{e+1})
    const long D = static_cast<long>(digits.size());
    std::string s;
    if (e < 0) {
        s = "0.";
        s.append(static_cast<size_t>(-e - 1), '0');
        s += digits;
    } else if (e + 1 >= D) {
        s = digits;
        s.append(static_cast<size_t>(e + 1 - D), '0');
    } else {
        s = digits.substr(0, static_cast<size_t>(e + 1)) + "." +
            digits.substr(static_cast<size_t>(e + 1));
    }
    return s;
}

std::string render(const Rat& x0, int D, bool round_half_even) {
    if (D <= 0) throw std::invalid_argument("to_decimal: digits must be positive");
    if (x0 == 0) return "0";
    Rat x = x0 < 0 ? Rat(-x0) : x0;
    long e = dec_exponent(x);
    // m = num * 10^(D-1-e) / den, rounded
    Int num = x.get_num(), den = x.get_den();
    long shift = D - 1 - e;
    if (shift >= 0)
        num *= ten_pow(shift);
    else
        den *= ten_pow(-shift);
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (round_half_even) {
        Int twice = 2 * r;
        if (twice > den || (twice == den && mpz_odd_p(q.get_mpz_t()))) q += 1;
    }
    if (q == ten_pow(D)) {  // carry: 9.99... -> 10.0
        q = ten_pow(D - 1);
        ++e;
    }
    std::string digits = q.get_str();
    std::string s = place_digits(digits, e);
    return x0 < 0 ? "-" + s : s;
}

}  // namespace

std::string to_decimal(const Rat& x, int significant_digits) {
    return render(x, significant_digits, true);
}

std::string decimal_prefix(const Rat& x, int significant_digits) {
    return render(x, significant_digits, false);
}

}  // namespace cubiclocus
