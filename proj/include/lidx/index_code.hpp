#pragma once

#include <lidx/lattices.hpp>

#include <cstdint>
#include <optional>

namespace lidx {

// Multilevel code over Z_q = Z_{p_1} x ... x Z_{p_r}: one linear code per
// prime level, combined through the idempotent basis into a single code whose
// q-periodic lift is the transmit lattice. The level map is a bijection from
// C_1 x ... x C_r onto the combined code.
struct CrtIndexCode {
    PrimeSet primes;
    CrtBasis crt;
    int length = 0;
    std::vector<LinearCode> level_codes;
    std::vector<Codebook> level_books;
    std::vector<int> level_ranks; // rank of each level code over its prime field
    LinearCode combined;
    IntegerLattice lattice;
    Int cardinality = 0; // product of level cardinalities
    Int d0_sq = 0;       // squared minimum distance of the lattice

    int levels() const { return static_cast<int>(level_codes.size()); }
};

CrtIndexCode make_crt_index_code(const std::vector<Int>& primes,
                                 const std::vector<Mat>& level_generators, int length,
                                 const Caps& caps = default_caps());

// Subset of levels as a bitmask; bit j-1 stands for level j.
using SubsetMask = std::uint32_t;

std::vector<int> mask_to_levels(SubsetMask mask, int r);
SubsetMask levels_to_mask(const std::vector<int>& levels, int r);
std::string subset_to_string(SubsetMask mask, int r);

// All nonempty proper subsets ordered by size, then numerically.
std::vector<SubsetMask> proper_subsets(int r);

// Combined word of one codeword per level.
Vec encode(const CrtIndexCode& code, const std::vector<Vec>& level_words);

// Level codewords recovered from a combined word by reduction mod each
// prime; a residue outside its level code raises std::runtime_error.
std::vector<Vec> decode_exact(const CrtIndexCode& code, const Vec& word);

// Streams the combined words formed from the levels in mask only (other
// levels pinned to zero), visiting each exactly once. The all-zero word
// comes first.
void for_each_masked_word(const CrtIndexCode& code, SubsetMask mask,
                          const std::function<void(const Vec&)>& fn);

// Those same words, materialized and sorted.
Mat masked_words(const CrtIndexCode& code, SubsetMask mask, const Caps& caps = default_caps());

// Lattice decodable by a receiver that already knows the levels in mask:
// the lift of the combined code with those levels zeroed.
IntegerLattice sublattice_known(const CrtIndexCode& code, SubsetMask mask,
                                const Caps& caps = default_caps());

// Squared minimum distance of sublattice_known(mask), by streaming.
Int subset_min_distance_sq(const CrtIndexCode& code, SubsetMask mask);

// The words still possible given known level values: a translate of the
// zeroed-level combined code.
struct TranslatedConstellation {
    SubsetMask known = 0;
    Vec translate;  // combined word of the known levels, zeros elsewhere
    Mat points;     // sorted; translate + masked words, mod q
    Int d_sq = 0;   // squared minimum distance between points (lattice d_S^2)
};

TranslatedConstellation subcode(const CrtIndexCode& code, SubsetMask known,
                                const std::vector<Vec>& known_words,
                                const Caps& caps = default_caps());

struct GainRow {
    SubsetMask mask = 0;
    std::vector<int> levels;       // 1-based indices
    Int d_sq = 0;                  // squared distance with this side information
    double rate_bits_per_dim = 0;  // sum of the subset's level rates
    double gain_db = 0;            // 10*log10(d_sq/d0_sq) / rate
};

struct GainReport {
    int length = 0;
    Int q = 0;
    std::vector<Int> primes;
    std::vector<int> ranks;
    Int d0_sq = 0;
    std::vector<GainRow> rows;                  // size-then-numeric subset order
    std::optional<double> overall_gain_db;      // min over rows; absent when r == 1
    std::optional<bool> uniform;                // rows agree within tolerance
    std::optional<double> equal_rank_bound_db;  // (n/k) * 20*log10(2), equal ranks only
    std::vector<double> level_rates;            // (k_j / n) * log2(p_j)
    double total_rate = 0;
};

double uniform_gain_tolerance_db(); // 1e-9

GainReport gain_report(const CrtIndexCode& code, const Caps& caps = default_caps());

// (n/k) * 20*log10(2) when every level has rank k; absent otherwise.
std::optional<double> gain_upper_bound(const CrtIndexCode& code);

struct VolumeIdentityRow {
    SubsetMask mask = 0;
    Int sublattice_volume = 0;
    Int expected_volume = 0; // prod_{j in S} p_j^{k_j} * vol(lattice)
    Int d_sq = 0;
    bool volume_ok = false;
    bool lower_ok = false; // d0^2 <= d_S^2
    bool upper_ok = false; // d_S^2 <= (prod_{j in S} p_j)^2 * d0^2
};

struct VolumeIdentityReport {
    bool pass = false;
    std::vector<VolumeIdentityRow> rows;
};

// Exact volume and distance-sandwich identities for every proper subset.
VolumeIdentityReport verify_volume_identities(const CrtIndexCode& code,
                                              const Caps& caps = default_caps());

} // namespace lidx
