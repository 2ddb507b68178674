#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubiclocus/forms.hpp"
#include "cubiclocus/padic.hpp"

namespace cubiclocus {

// Primitive integer tuple: gcd 1, first nonzero coordinate positive.
struct ProjectivePoint {
    std::vector<Int> coords;
    bool operator==(const ProjectivePoint&) const = default;
};

ProjectivePoint normalize_point(std::vector<Int> coords);
std::string to_string(const ProjectivePoint& pt);

// The curve z^3 = f(u,v) in P^2.
struct GenusOneCurve {
    IntegerMatrixCubic f;
};

// All primitive (u:v:z) with max(|u|,|v|) <= height and z^3 = f(u,v), z found
// by exact integer cube root (unbounded). Sorted by max(|u|,|v|), then
// lexicographically.
std::vector<ProjectivePoint> search_curve_points(const GenusOneCurve& C,
                                                 long height, int threads = 1);

// (z'u : z'v : zu' : zv') from (u:v:z) on C_f and (u':v':z') on C_g; requires
// z z' != 0; the result is re-verified against f(x0,x1) = g(x2,x3).
ProjectivePoint combine(const BinaryCubicForm& f, const ProjectivePoint& on_f,
                        const BinaryCubicForm& g, const ProjectivePoint& on_g);

enum class LocalVerdict { EverywhereLocallySoluble, LocalObstructionAt, Unknown };

struct LocalSolubilityReport {
    bool real_soluble = true;  // a nonzero binary cubic surjects onto R
    std::vector<std::pair<Int, PadicVerdict>> checked_primes;
    LocalVerdict verdict = LocalVerdict::Unknown;
    Int obstruction_prime;  // set when verdict == LocalObstructionAt
    std::string note;       // which primes were skipped and why
};

// Finite primes checked: all p <= 7 plus every p dividing
// disc_classical(f)*disc_classical(g); elsewhere the reduction is a smooth
// cubic surface with a liftable F_p-point. Singular pairs (disc product 0)
// are tested for p <= 100 and reported Unknown beyond.
LocalSolubilityReport is_everywhere_locally_soluble(const SurfacePair& sp,
                                                    int depth = 24);

struct Theorem1Stats {
    double fraction = 0, stderr_ = 0, unknown_fraction = 0;
    long els = 0, obstructed = 0, unknown = 0, degenerate_discarded = 0;
    long samples = 0;
};

// Uniform coefficient 8-tuples from (Z cap [-H,H])^8; all-zero-side samples
// are discarded; fraction is among decided samples.
Theorem1Stats theorem1_statistic(long H, long samples, std::uint64_t seed,
                                 int depth = 24, int threads = 1);

// Point search on the surface f(x0,x1) = g(x2,x3): curve search on C_f, C_g
// combined first, then a capped direct enumeration. Absence proves nothing.
std::optional<ProjectivePoint> search_surface_point(const IntegerMatrixCubic& f,
                                                    const IntegerMatrixCubic& g,
                                                    long height,
                                                    long fallback_cap = 300,
                                                    int threads = 1);

// Fixtures file: one surface per line "f:c0,c1,c2,c3|g:d0,d1,d2,d3 # label".
struct SurfaceFixture {
    SurfacePair sp;
    std::string label;
};
std::vector<SurfaceFixture> load_fixtures(const std::string& path);

}  // namespace cubiclocus
