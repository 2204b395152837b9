#pragma once

#include <lidx/index_code.hpp>
#include <lidx/lattices.hpp>

#include <cstdint>
#include <optional>

namespace lidx {

// Mean squared coordinate of the centered constellation (energy per
// dimension), averaged over every codeword.
double avg_energy_per_dim(const CrtIndexCode& code);

// Real transmit vector: the centered representative of encode(level_words).
std::vector<double> transmit_point(const CrtIndexCode& code,
                                   const std::vector<Vec>& level_words);

// Exact maximum-likelihood decoding of y against the translated constellation
// a receiver holding the words of the known levels searches: the translate of
// the unknown-level combination, extended periodically. known == 0 decodes
// the full code. Returns all level words (known levels echo their input).
// known_words uses one slot per level; slots outside the known set are
// ignored.
std::vector<Vec> ml_decode(const CrtIndexCode& code, const std::vector<double>& y,
                           SubsetMask known, const std::vector<Vec>& known_words,
                           const Caps& caps = default_caps());

// Union-bound approximation of the per-dimension symbol error rate of a
// lattice constellation at noise variance sigma2 per dimension:
// (1/dim) * kissing * Q(sqrt(d_sq / (4 sigma2))).
double theoretical_ser(int dim, Int d_sq, Int kissing, double sigma2);
double theoretical_ser(const IntegerLattice& lat, double sigma2,
                       const Caps& caps = default_caps());

struct SnrGrid {
    double start_db = 0;
    double stop_db = 0;
    double step_db = 0;
};

struct ChannelConfig {
    std::optional<SnrGrid> grid;     // SNR sweep in dB, or...
    std::vector<double> sigma2_list; // ...explicit noise variances per dimension
    long long trials = 0;
    std::uint64_t seed = 0;
    std::vector<SubsetMask> subsets; // curves to run; empty selects every
                                     // nonempty proper subset plus no side
                                     // information (mask 0)
    bool with_theory = false;
};

struct SerPoint {
    double snr_db = 0;
    double sigma2 = 0;
    long long trials = 0;
    long long errors = 0;
    double ser = 0;
    double stderr_ = 0; // binomial standard error
    std::optional<double> theory;
};

struct SerCurve {
    SubsetMask known = 0;
    std::vector<int> levels; // 1-based known levels
    Int d_sq = 0;            // minimum squared distance of the decoded constellation
    Int kissing = 0;
    std::vector<SerPoint> points;
};

// Monte Carlo sweep: per subset and SNR point, draw uniform messages,
// transmit the centered codeword, add white Gaussian noise, decode with the
// true side information, and count decoding errors (the decoded unknown-level
// tuple differs from the transmitted one). SNR is 10 log10 of
// avg_energy_per_dim over sigma2. Bitwise deterministic for a fixed config:
// each (subset, point) pair draws from its own seeded substream.
std::vector<SerCurve> monte_carlo(const CrtIndexCode& code, const ChannelConfig& cfg,
                                  const Caps& caps = default_caps());

} // namespace lidx
