#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cubiclocus/types.hpp"

namespace cubiclocus {

struct AllZeroModP : std::invalid_argument {
    explicit AllZeroModP(const std::string& m) : std::invalid_argument(m) {}
};

// c0*u^3 + c1*u^2*v + c2*u*v^2 + c3*v^3. The zero form is unrepresentable.
struct BinaryCubicForm {
    Int c0, c1, c2, c3;

    BinaryCubicForm(Int a, Int b, Int c, Int d)
        : c0(std::move(a)), c1(std::move(b)), c2(std::move(c)), c3(std::move(d)) {
        if (c0 == 0 && c1 == 0 && c2 == 0 && c3 == 0)
            throw std::invalid_argument("BinaryCubicForm: zero form");
    }

    Int eval(const Int& u, const Int& v) const {
        return ((c0 * u + c1 * v) * u + c2 * v * v) * u + c3 * v * v * v;
    }
    // (df/du, df/dv)
    std::pair<Int, Int> gradient(const Int& u, const Int& v) const {
        return {3 * c0 * u * u + 2 * c1 * u * v + c2 * v * v,
                c1 * u * u + 2 * c2 * u * v + 3 * c3 * v * v};
    }
    std::array<Int, 4> coeffs() const { return {c0, c1, c2, c3}; }
    bool operator==(const BinaryCubicForm&) const = default;
};

// a*u^3 + 3b*u^2*v + 3c*u*v^2 + d*v^3, the lattice V(Z).
struct IntegerMatrixCubic {
    Int a, b, c, d;

    IntegerMatrixCubic(Int a_, Int b_, Int c_, Int d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (a == 0 && b == 0 && c == 0 && d == 0)
            throw std::invalid_argument("IntegerMatrixCubic: zero form");
    }

    BinaryCubicForm embed() const { return {a, 3 * b, 3 * c, d}; }
    bool operator==(const IntegerMatrixCubic&) const = default;
};

// Reduced discriminant -3b^2c^2 + 4ac^3 + 4b^3d + a^2d^2 - 6abcd.
Int disc_reduced(const IntegerMatrixCubic& f);

// Classical binary-cubic discriminant 18*c0c1c2c3 - 4c1^3c3 + c1^2c2^2
// - 4c0c2^3 - 27c0^2c3^2; vanishes iff the form has a repeated root.
Int disc_classical(const BinaryCubicForm& f);

// Row-substitution convention used everywhere: u -> m00*u + m01*v,
// v -> m10*u + m11*v.
struct UnimodularMatrix {
    Int m00, m01, m10, m11;

    UnimodularMatrix(Int a, Int b, Int c, Int d)
        : m00(std::move(a)), m01(std::move(b)), m10(std::move(c)), m11(std::move(d)) {
        if (det() == 0) throw std::invalid_argument("UnimodularMatrix: det 0");
    }
    Int det() const { return m00 * m11 - m01 * m10; }

    static UnimodularMatrix identity() { return {1, 0, 0, 1}; }
    static UnimodularMatrix shear_S() { return {0, -1, 1, 0}; }
    static UnimodularMatrix shear_T() { return {1, 1, 0, 1}; }
};

BinaryCubicForm act(const UnimodularMatrix& m, const BinaryCubicForm& f);

enum class RootKind { NoRoot, SimpleRoot, TripleRoot };

// Classification of f over P^1(F_p) by factorization multiplicity (never by
// derivative vanishing, so characteristic 3 needs no special case).
// SimpleRoot covers the patterns 1+1+1, 2+1 and 1+quadratic.
struct RootClass {
    RootKind kind;
    std::array<Int, 2> witness{Int(0), Int(0)};  // a root point for Simple/Triple
    // all distinct P^1(F_p) roots with multiplicities, (u0,v0) normalized
    std::vector<std::pair<std::array<Int, 2>, int>> roots;
};

RootClass classify_roots_mod_p(const BinaryCubicForm& f, const Int& p);

enum class Population { MonicCubicPoly, PrimitiveBinaryCubic };

struct RootClassCounts {
    long simple_count = 0, triple_count = 0, none_count = 0;
    long total = 0;
};

// Exhaustive counts over the stated population (guard p <= 101).
RootClassCounts count_root_classes(long p, Population population);

// f irreducible over Q iff it has no point in P^1(Q) (rational-root test).
bool is_irreducible_over_Q(const IntegerMatrixCubic& f);

// Is a (p-adic unit) a cube in Z_p^*?  p=2 mod 3: always; p=1 mod 3: Euler
// criterion mod p; p=3: a = +-1 mod 9.
bool unit_cube_test(const Int& a, const Int& p);

bool is_fundamental_discriminant(const Int& d);
// #{0 < d <= X fundamental}, by squarefree sieve.
long count_fundamental_up_to(long X);

// Serialization: "c0,c1,c2,c3" or "im:a,b,c,d".
std::string to_string(const BinaryCubicForm& f);
std::string to_string(const IntegerMatrixCubic& f);
BinaryCubicForm parse_form(const std::string& s);                 // either syntax
std::optional<IntegerMatrixCubic> parse_integer_matrix(const std::string& s);

}  // namespace cubiclocus
