#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "cubiclocus/forms.hpp"
#include "cubiclocus/types.hpp"

namespace cubiclocus {

// Solubility semantics are projective: a common integer scaling of all
// coefficients is irrelevant.
struct SurfacePair {
    BinaryCubicForm f, g;
};

enum class Solubility { Soluble, Insoluble, Unknown };

struct PadicVerdict {
    Solubility kind = Solubility::Unknown;
    int level = 0;  // level decided at, or depth reached for Unknown
    std::optional<std::array<Int, 4>> witness;  // (u,v,x,y) mod p^level
    bool frontier_overflow = false;
};

// Known p-adic valuations of the eight coefficients c0..c3, d0..d3 plus
// per-slot exactness flags (exact slots carry the true valuation, inexact
// slots a lower bound).
struct ValuationProfile {
    std::array<int, 8> val{};
    std::array<bool, 8> exact{};
};

ValuationProfile profile_of(const SurfacePair& sp, const Int& p, int cap = 16);

// Variable bitmask for the side condition min_{w in mask} v_p(w) = 0:
// bit 0 = u, 1 = v, 2 = x, 3 = y.
constexpr unsigned kAllVars = 0xF;

// Level-BFS over primitive solution candidates mod p^k, k = 1..depth.
// A candidate at level k is promoted to Soluble when some partial derivative
// of F = f(u,v) - g(x,y) has valuation w with k > 2w (Newton/Hensel).
// Insoluble is returned only when the candidate frontier is empty.
// Deterministic: identical inputs yield identical verdicts and witnesses
// (lexicographic candidate order).
PadicVerdict decide(const SurfacePair& sp, const Int& p, int depth,
                    unsigned unit_mask = kAllVars,
                    std::size_t frontier_cap = 1000000);

// decide() on raw coefficient tuples (a side may reduce to the zero form);
// this is the oracle entry point for exhaustive enumeration and sampling.
PadicVerdict decide_tuple(const std::array<Int, 4>& fc,
                          const std::array<Int, 4>& gc, long p, int depth,
                          unsigned mask = kAllVars, std::size_t cap = 1000000);

// The valuation-profile case tree: classify (fbar, gbar), Simple root on
// either side (with xi handling) -> Soluble, NoRoot/NoRoot with xi > 0 ->
// Insoluble, otherwise apply the substitution moves tracking the profile;
// profile repetition or move exhaustion -> Unknown.
PadicVerdict decide_by_reduction(const SurfacePair& sp, const Int& p,
                                 int max_moves = 64);

struct Bracket {
    Rat lower, upper;
    long soluble = 0, insoluble = 0, unknown = 0;
    Int total;
};

// Enumerates all coefficient 8-tuples mod p^level and runs the decide logic
// with depth = level. theta_p lies in [lower, upper]; brackets nest in level.
// Guard: p^(8*level) <= 2^36 (CUBICLOCUS_MAX_ENUM overrides).
Bracket exhaustive_bracket(long p, int level, int threads = 1);

struct McEstimate {
    double estimate = 0, stderr_ = 0, unknown_fraction = 0;
    long soluble = 0, insoluble = 0, unknown = 0, samples = 0;
};

// Uniform coefficient 8-tuples mod p^level from deterministic counter-based
// substreams keyed by (seed, sample index); decide with depth = level.
// The undecided fraction is reported, never folded into the estimate.
McEstimate mc_estimate(long p, long samples, int level, std::uint64_t seed,
                       int threads = 1);

}  // namespace cubiclocus
