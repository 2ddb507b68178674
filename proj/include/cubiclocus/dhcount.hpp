#pragma once

#include "cubiclocus/forms.hpp"

namespace cubiclocus {

enum class CountMethod { ReducedEnumeration, BoxOrbitDedup };

struct ClassCountReport {
    long X = 0;
    long class_count = 0;
    Rat slope;  // class_count / X
    CountMethod method = CountMethod::ReducedEnumeration;
};

// SL2(Z)-classes of irreducible f in V(Z) with 0 < |disc_reduced(f)| <= X.
// ReducedEnumeration guard: X <= 10^6; BoxOrbitDedup guard: X <= 500.
ClassCountReport count_classes(long X, CountMethod method, int threads = 1);

// |disc_reduced| per counted class, sorted ascending (one entry per class);
// count_classes(X') for X' <= X is recoverable by prefix counting.
std::vector<long> class_discs(long X, CountMethod method, int threads = 1);

// Deterministic class-canonical form; idempotent, constant on SL2(Z)-orbits.
// Requires disc_reduced(f) != 0.
IntegerMatrixCubic canonical_representative(const IntegerMatrixCubic& f);

}  // namespace cubiclocus
