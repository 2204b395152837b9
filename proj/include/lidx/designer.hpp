#pragma once

#include <lidx/index_code.hpp>

#include <array>
#include <optional>
#include <string>

namespace lidx {

enum class DesignKind { canonical, sum_of_squares, cartesian_lift };

std::string to_string(DesignKind kind);
DesignKind design_kind_from_string(const std::string& text);

// One solution lambda * b == x (mod modulus) with |b|^2 == modulus, b the
// centered representative.
struct CollinearityWitness {
    Int modulus = 0;
    std::vector<int> levels; // 1-based levels whose primes multiply to modulus
    Int lambda = 0;
    Vec witness;
};

// Result of checking that a decomposition x of q is collinear with a
// norm-sqrt(P) vector modulo every product P of a nonempty prime subset.
struct CollinearityCertificate {
    std::vector<Int> primes;
    Vec decomposition; // x with sum x_i^2 == product of the primes
    bool pass = false;
    std::vector<CollinearityWitness> witnesses; // solved subsets, smallest first
    std::vector<SubsetMask> failures;           // subsets with no witness
    double predicted_gain_db = 0;               // (N/2) * 20 log10 2, valid when pass
};

struct RejectedDecomposition {
    Vec decomposition;
    int failing_level = 0; // 1-based; 0 when the failure is not tied to one level
    Int failing_prime = 0;
    std::string reason;
};

// A code whose gain report is uniform and matches a closed-form prediction.
// Every constructor below re-derives the gain from the finished code and
// refuses to hand back a design whose report disagrees with the prediction.
struct UniformDesign {
    DesignKind kind = DesignKind::canonical;
    CrtIndexCode code;
    double predicted_gain_db = 0;
    int copies = 1;    // Cartesian copies of the base design
    Vec decomposition; // sum-of-squares designs only
    std::vector<CollinearityWitness> level_witnesses; // sum-of-squares designs only
    std::optional<CollinearityCertificate> certificate;
};

struct SosDesignResult {
    std::vector<UniformDesign> designs;
    std::vector<RejectedDecomposition> rejections;
};

// Level codes spanned by k canonical unit vectors, all levels sharing the
// canonical index shared_index (1-based). The remaining k-1 indices default
// to the smallest indices distinct from shared_index; level_indices, when
// nonempty, overrides them per level (each entry has size k and must contain
// shared_index). Requires 1 <= k < n. Gain: (n/k) * 20 log10 2.
UniformDesign design_canonical(const std::vector<Int>& primes, int n, int k, int shared_index,
                               const std::vector<std::vector<int>>& level_indices = {},
                               const Caps& caps = default_caps());

// Rank-1 designs from decompositions of q = p_1 ... p_r into n_squares
// squares. For each decomposition x, every level needs a scalar-collinear
// witness modulo its prime; the witness (smallest lambda) becomes the level
// generator. Designs whose measured gain is not uniformly
// (n_squares / 2) * 20 log10 2 are rejected, as are decompositions with a
// witnessless level. Requires at least two primes and n_squares in [1, 8].
SosDesignResult design_sos(const std::vector<Int>& primes, int n_squares,
                           const Caps& caps = default_caps());

// Witness search for every nonempty subset product of the primes, subsets in
// size-then-numeric order. pass == true iff all 2^r - 1 products solve.
CollinearityCertificate certify_collinearity(const std::vector<Int>& primes,
                                             const Vec& decomposition,
                                             const Caps& caps = default_caps());

// Block-diagonal lift: each level code becomes its m-fold Cartesian power,
// multiplying length and rank by m and leaving the gain unchanged. Accepts a
// rank-1 sum-of-squares design; copies == 1 returns it unchanged.
UniformDesign lift_cartesian(const UniformDesign& design, int copies,
                             const Caps& caps = default_caps());

// Two-prime comparison for primes that are sums of two squares: the CRT code
// built from the generators (a_j, b_j) spans the same plane lattice as
// {(a, b), (-b, a)} where (a, b) is the complex product
// (a_1 + i b_1)(a_2 + i b_2).
struct GaussianEquivalence {
    Int p1 = 0, p2 = 0;
    std::array<Int, 2> unit1{}, unit2{};
    std::array<Int, 2> product{}; // (a1 a2 - b1 b2, a2 b1 + a1 b2)
    Int q = 0;
    Mat crt_basis;      // reduced basis of the two-level CRT lattice
    Mat rotation_basis; // reduced basis of the span of (a, b) and (-b, a)
    bool equal = false;
};

GaussianEquivalence gaussian_equivalence(Int p1, std::array<Int, 2> ab1, Int p2,
                                         std::array<Int, 2> ab2,
                                         const Caps& caps = default_caps());

} // namespace lidx
