#pragma once

#include <lidx/common.hpp>

namespace lidx {

// Deterministic trial division. Accepts 0 <= p < 2^31; larger inputs throw.
bool is_prime(Int p);

// A set of pairwise distinct primes p_1..p_r with their product q and the
// cofactors m_j = q / p_j. Validated on construction.
struct PrimeSet {
    std::vector<Int> primes;
    Int q = 1;
    std::vector<Int> cofactors;

    int size() const { return static_cast<int>(primes.size()); }
};

PrimeSet make_prime_set(const std::vector<Int>& primes);

struct ExtendedGcd {
    Int g; // gcd(a, b) >= 0
    Int u; // u*a + v*b == g
    Int v;
};

ExtendedGcd extended_gcd(Int a, Int b);

// Inverse of a modulo m (m >= 2, gcd(a, m) == 1), returned in [1, m).
Int mod_inverse(Int a, Int m);

// Orthogonal idempotent basis of Z_q = Z_{p_1} x ... x Z_{p_r}:
// e_j = x_j * m_j mod q with x_j * m_j == 1 (mod p_j). Checked eagerly:
// e_j == 1 (mod p_j), e_j == 0 (mod p_i) for i != j, sum e_j == 1 (mod q),
// e_j^2 == e_j (mod q).
struct CrtBasis {
    std::vector<Int> bezout;      // x_j in [0, p_j)
    std::vector<Int> idempotents; // e_j in [0, q)
};

CrtBasis crt_basis(const PrimeSet& ps);

// One representation target == sum of coordinates squared, coordinates
// nonnegative and nondecreasing.
struct SquareDecomposition {
    Int target = 0;
    Vec coordinates;
};

// Complete list of decompositions of target into exactly n_squares squares
// (zeros allowed), in lexicographic order. Bounded exhaustive search;
// targets above the cap raise resource_error.
std::vector<SquareDecomposition> sum_of_squares(Int target, int n_squares,
                                                const Caps& caps = default_caps());

// A scalar lambda (unit mod modulus) together with the integer witness
// b = centered(lambda^{-1} * x mod modulus) satisfying
// lambda * b == x (mod modulus) and |b|^2 == modulus.
struct CollinearSolution {
    Int lambda = 0;
    Vec witness;
};

// All such solutions, sorted by lambda. Scans every unit of Z_modulus;
// moduli above the cap raise resource_error. Sign symmetry holds: if
// (lambda, b) is returned then so is (modulus - lambda, -b mod modulus).
std::vector<CollinearSolution> scalar_collinear(const Vec& x, Int modulus,
                                                const Caps& caps = default_caps());

} // namespace lidx
