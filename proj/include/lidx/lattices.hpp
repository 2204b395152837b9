#pragma once

#include <lidx/codes.hpp>
#include <lidx/ring_arith.hpp>

#include <memory>
#include <optional>
#include <utility>

namespace lidx {

// Remembers that a lattice is the q-periodic lift of a linear code. The
// codebook pointer is null when the code was too large to materialize; the
// coset routines then stream it.
struct CodeProvenance {
    LinearCode code;
    std::shared_ptr<const Codebook> book;
};

// Full-rank sublattice of Z^n. The basis is kept in column-style Hermite
// normal form: upper triangular, positive diagonal, entries right of the
// diagonal reduced into [0, diagonal). Equal lattices therefore compare
// equal as matrices.
struct IntegerLattice {
    int dim = 0;
    Mat basis;
    std::optional<CodeProvenance> lift;

    Int volume() const; // product of the diagonal (positive determinant)
};

// Canonical basis of the lattice generated by the given vectors; throws
// std::invalid_argument when the span has rank < dim.
IntegerLattice basis_from_generators(const std::vector<Vec>& generators, int dim);

// q-periodic lift of a code: the preimages of the words under reduction
// mod q. Volume q^n / |C| is asserted against the Hermite form.
IntegerLattice construction_a(const LinearCode& code, const Caps& caps = default_caps());

// Multilevel lift: combines one code per prime level through the idempotent
// basis into a single code over Z_q and lifts that. Returns the combined
// code together with the lattice.
std::pair<LinearCode, IntegerLattice> construction_pia(const PrimeSet& ps, const CrtBasis& crt,
                                                       const std::vector<LinearCode>& levels,
                                                       const Caps& caps = default_caps());

bool lattice_contains(const IntegerLattice& lat, const Vec& v);

// Shortest nonzero vector. Code-lifted lattices use the exact coset scan
// min(code distance, q); general bases run a bounded enumeration.
MinDistance min_distance(const IntegerLattice& lat, const Caps& caps = default_caps());

// Number of lattice vectors achieving the minimum distance.
Int kissing_number(const IntegerLattice& lat, const Caps& caps = default_caps());

// (d/2)^n / volume
double centre_density(const IntegerLattice& lat, const Caps& caps = default_caps());

// Nearest lattice point to y; exact ties resolve to the lexicographically
// smallest point.
Vec quantize(const IntegerLattice& lat, const std::vector<double>& y,
             const Caps& caps = default_caps());

// Nearest point of the coset lattice {w + q*Z^n : w in words} to target,
// where words hold representatives in [0, q)^n. Shared by quantize and the
// side-information decoders.
Vec nearest_coset_point(const Mat& words, Int q, const std::vector<double>& target);

} // namespace lidx
