#pragma once

#include <lidx/common.hpp>

#include <functional>
#include <limits>

namespace lidx {

// Linear code over Z_q of a given length: the additive span of the generator
// rows. Generators are stored reduced into [0, q); an empty generator list is
// the zero code.
struct LinearCode {
    Int q = 0;
    int length = 0;
    Mat generators;
};

LinearCode make_linear_code(Int q, int length, Mat generators);
LinearCode zero_code(Int q, int length);

// Fully enumerated code: the exact word set, sorted lexicographically.
struct Codebook {
    LinearCode code;
    Mat words;

    Int cardinality() const { return static_cast<Int>(words.size()); }
    bool contains(const Vec& w) const;
    // index into words, or -1 when absent
    long long index_of(const Vec& w) const;
};

// Materializes the word set. Work is bounded by the product of generator
// orders; above caps.codebook_max_words a resource_error is raised.
Codebook enumerate(const LinearCode& code, const Caps& caps = default_caps());

// Streams every word reachable from the generators without materializing the
// set. Words repeat when generators are dependent; the zero word is visited
// exactly once, first.
void for_each_codeword(const LinearCode& code, const std::function<void(const Vec&)>& fn,
                       const Caps& caps = default_caps());

// additive order of a row in Z_q^n: q / gcd(q, entries)
Int additive_order(const Vec& row, Int q);

// centered representative in (-q/2, q/2]; input must lie in [0, q)
Int centered(Int r, Int q);
Vec centered(const Vec& v, Int q);

// componentwise reduction into [0, p); accepts arbitrary integers
Vec reduce_mod(const Vec& v, Int p);

// sentinel squared distance of the zero code (no nonzero word)
inline constexpr Int kUnboundedSq = std::numeric_limits<Int>::max();

struct MinDistance {
    Int sq = kUnboundedSq;
    double value = 0.0; // sqrt(sq), +inf for the zero code
};

// Minimum Euclidean norm over nonzero words, in the centered representation.
MinDistance min_euclidean_distance(const Codebook& book);
// Same value computed by streaming; used when the code is too large to hold.
MinDistance min_distance_streamed(const LinearCode& code, const Caps& caps = default_caps());

// Rank of the generator matrix over the prime field F_q; composite q throws.
int rank_over_prime_field(const LinearCode& code);

// m-fold Cartesian power: block-diagonal generators, length m * n.
LinearCode cartesian_power(const LinearCode& code, int m);

} // namespace lidx
