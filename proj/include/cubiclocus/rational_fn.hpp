#pragma once

#include <vector>

#include "cubiclocus/types.hpp"

namespace cubiclocus {

// Integer-coefficient polynomial in one variable, coefficients ascending.
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    Rat eval(const Rat& x) const {
        Rat r(0);
        for (size_t i = c.size(); i-- > 0;) r = r * x + Rat(c[i]);
        return r;
    }

    IntPoly operator*(const IntPoly& o) const {
        if (is_zero() || o.is_zero()) return IntPoly{};
        std::vector<Int> r(c.size() + o.c.size() - 1, Int(0));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
        return IntPoly(std::move(r));
    }
};

// numerator/denominator pair, gcd-reduced on construction.
struct RationalFunction {
    IntPoly num, den;

    RationalFunction(IntPoly n, IntPoly d);
    Rat eval(const Rat& x) const;
};

}  // namespace cubiclocus
