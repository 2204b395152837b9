#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lidx {

using Int = std::int64_t;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>; // row-major: m[i][j] is row i, column j

// Thrown when a configured enumeration or search cap would be exceeded.
// Distinct from std::invalid_argument so callers can tell "bad input"
// apart from "input too large for exhaustive treatment".
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Limits for the exhaustive routines. All defaults are sized so that every
// bundled workload finishes in seconds; callers may raise or lower them.
struct Caps {
    Int sum_of_squares_max_target = 1000000;    // largest target for sum_of_squares
    Int scalar_collinear_max_modulus = 100000;  // largest modulus scanned for witnesses
    Int codebook_max_words = 10000000;          // upper bound on enumeration work
    Int codebook_materialize_limit = 100000;    // above this, analysis streams words
    long long search_max_nodes = 50000000;      // node budget for lattice searches
};

const Caps& default_caps();

// floor-division remainder, always in [0, q)
Int mod_floor(Int a, Int q);
// floor division (rounds toward negative infinity)
Int floor_div(Int a, Int b);

// overflow-checked arithmetic; throws std::overflow_error instead of wrapping
Int checked_mul(Int a, Int b);
Int checked_pow(Int base, int exponent);

Int isqrt(Int v); // largest s with s*s <= v
Int gcd_nonneg(Int a, Int b);

Int norm_sq(const Vec& v);

// SplitMix64 finalizer; used to derive independent RNG substreams
std::uint64_t mix64(std::uint64_t z);

} // namespace lidx
