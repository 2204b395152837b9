#include <lidx/sim.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lidx {

namespace {

double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// (0, 1] and [0, 1) from the top 53 bits of the engine word.
double u_open(std::mt19937_64& eng) { return static_cast<double>((eng() >> 11) + 1) * 0x1p-53; }
double u_half(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1p-53; }

// Box-Muller pairs; consumes two engine words per two coordinates.
void add_noise(std::mt19937_64& eng, std::vector<double>& y, double sigma) {
    for (std::size_t i = 0; i < y.size(); i += 2) {
        const double radius = sigma * std::sqrt(-2.0 * std::log(u_open(eng)));
        const double angle = 2.0 * std::numbers::pi * u_half(eng);
        y[i] += radius * std::cos(angle);
        if (i + 1 < y.size()) y[i + 1] += radius * std::sin(angle);
    }
}

// Unbiased uniform draw from [0, m) by rejection.
std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t m) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % m;
    std::uint64_t v;
    do {
        v = eng();
    } while (v >= limit);
    return v % m;
}

std::uint64_t substream_seed(std::uint64_t master, SubsetMask mask, std::size_t point) {
    return mix64(mix64(mix64(master) ^ (std::uint64_t(mask) + 0x9e3779b97f4a7c15ull)) ^
                 std::uint64_t(point));
}

// Sorted unknown-combination words flattened for the decoding loop. The
// nearest constellation point to a target in [0, q)^n is found per word by
// choosing each coordinate independently among the one-period shifts.
struct DecoderTable {
    Int q = 0;
    int n = 0;
    Mat words;
    std::vector<double> flat;

    void build(Mat word_list, Int modulus, int length) {
        q = modulus;
        n = length;
        words = std::move(word_list);
        flat.reserve(words.size() * static_cast<std::size_t>(n));
        for (const Vec& w : words)
            for (Int v : w) flat.push_back(static_cast<double>(v));
    }

    std::size_t nearest(const std::vector<double>& target) const {
        const double period = static_cast<double>(q);
        std::size_t best = 0;
        double best_sq = std::numeric_limits<double>::infinity();
        const double* row = flat.data();
        for (std::size_t w = 0; w < words.size(); ++w, row += n) {
            double sq = 0;
            for (int i = 0; i < n; ++i) {
                const double d0 = target[i] - row[i];
                const double d1 = std::abs(d0) <= period / 2 ? d0
                                  : d0 > 0                   ? d0 - period
                                                             : d0 + period;
                sq += d1 * d1;
                if (sq >= best_sq) break;
            }
            if (sq < best_sq) {
                best_sq = sq;
                best = w;
            }
        }
        return best;
    }
};

Mat level_contributions(const CrtIndexCode& code, int level) {
    const Int q = code.primes.q;
    const Int e = code.crt.idempotents[level];
    Mat table;
    table.reserve(code.level_books[level].words.size());
    for (const Vec& w : code.level_books[level].words) {
        Vec c(w.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            c[i] = mod_floor(checked_mul(e, w[i]), q);
        table.push_back(std::move(c));
    }
    return table;
}

void accumulate_mod(Vec& acc, const Vec& add, Int q) {
    for (std::size_t i = 0; i < acc.size(); ++i) {
        acc[i] += add[i];
        if (acc[i] >= q) acc[i] -= q;
    }
}

SubsetMask full_mask(int r) { return (SubsetMask(1) << r) - 1; }

} // namespace

double avg_energy_per_dim(const CrtIndexCode& code) {
    const Int q = code.primes.q;
    long double total = 0;
    for_each_masked_word(code, full_mask(code.levels()), [&](const Vec& w) {
        for (Int r : w) {
            const Int c = 2 * r > q ? r - q : r;
            total += static_cast<long double>(c) * c;
        }
    });
    return static_cast<double>(total / (static_cast<long double>(code.cardinality) * code.length));
}

std::vector<double> transmit_point(const CrtIndexCode& code,
                                   const std::vector<Vec>& level_words) {
    const Vec x = centered(encode(code, level_words), code.primes.q);
    return std::vector<double>(x.begin(), x.end());
}

std::vector<Vec> ml_decode(const CrtIndexCode& code, const std::vector<double>& y,
                           SubsetMask known, const std::vector<Vec>& known_words,
                           const Caps& caps) {
    const int r = code.levels();
    const Int q = code.primes.q;
    if (known >= full_mask(r))
        throw std::invalid_argument("ml_decode: side information cannot cover every level");
    if (static_cast<int>(y.size()) != code.length)
        throw std::invalid_argument("ml_decode: length mismatch");

    Vec t(code.length, 0);
    if (known != 0) {
        if (static_cast<int>(known_words.size()) != r)
            throw std::invalid_argument("ml_decode: one slot per level required");
        for (int j = 0; j < r; ++j) {
            if (!(known & (SubsetMask(1) << j))) continue;
            if (!code.level_books[j].contains(known_words[j]))
                throw std::invalid_argument("ml_decode: known word is not in its level code");
            const Int e = code.crt.idempotents[j];
            for (int i = 0; i < code.length; ++i)
                t[i] = mod_floor(t[i] + checked_mul(e, known_words[j][i]), q);
        }
    }

    DecoderTable table;
    table.build(masked_words(code, full_mask(r) & ~known, caps), q, code.length);

    std::vector<double> reduced(code.length);
    for (int i = 0; i < code.length; ++i) {
        const double shifted = y[i] - static_cast<double>(t[i]);
        reduced[i] = shifted - static_cast<double>(q) * std::floor(shifted / q);
    }
    const Vec& w = table.words[table.nearest(reduced)];

    Vec x(code.length);
    for (int i = 0; i < code.length; ++i) {
        x[i] = t[i] + w[i];
        if (x[i] >= q) x[i] -= q;
    }
    return decode_exact(code, x);
}

double theoretical_ser(int dim, Int d_sq, Int kissing, double sigma2) {
    if (dim < 1) throw std::invalid_argument("theoretical_ser: dimension must be positive");
    if (sigma2 <= 0) return 0;
    const double arg = std::sqrt(static_cast<double>(d_sq) / (4.0 * sigma2));
    return static_cast<double>(kissing) / dim * gaussian_tail(arg);
}

double theoretical_ser(const IntegerLattice& lat, double sigma2, const Caps& caps) {
    return theoretical_ser(lat.dim, min_distance(lat, caps).sq, kissing_number(lat, caps),
                           sigma2);
}

std::vector<SerCurve> monte_carlo(const CrtIndexCode& code, const ChannelConfig& cfg,
                                  const Caps& caps) {
    const int r = code.levels();
    const int n = code.length;
    const Int q = code.primes.q;
    if (cfg.trials < 1) throw std::invalid_argument("monte_carlo: trials must be at least 1");
    if (cfg.grid.has_value() == !cfg.sigma2_list.empty())
        throw std::invalid_argument("monte_carlo: exactly one of grid and sigma2_list required");

    const double energy = avg_energy_per_dim(code);

    std::vector<std::pair<double, double>> points; // (snr_db, sigma2)
    if (cfg.grid) {
        const SnrGrid& g = *cfg.grid;
        if (g.step_db <= 0 || g.stop_db < g.start_db)
            throw std::invalid_argument("monte_carlo: SNR grid must ascend");
        for (double snr = g.start_db; snr <= g.stop_db + 1e-9; snr += g.step_db)
            points.emplace_back(snr, energy * std::pow(10.0, -snr / 10.0));
    } else {
        for (double s2 : cfg.sigma2_list) {
            if (s2 <= 0) throw std::invalid_argument("monte_carlo: sigma2 must be positive");
            points.emplace_back(10.0 * std::log10(energy / s2), s2);
        }
    }

    std::vector<SubsetMask> masks = cfg.subsets;
    if (masks.empty()) {
        masks.push_back(0);
        for (SubsetMask m : proper_subsets(r)) masks.push_back(m);
    } else {
        for (std::size_t i = 0; i < masks.size(); ++i) {
            if (masks[i] >= full_mask(r))
                throw std::invalid_argument(
                    "monte_carlo: side information cannot cover every level");
            for (std::size_t k = i + 1; k < masks.size(); ++k)
                if (masks[i] == masks[k])
                    throw std::invalid_argument("monte_carlo: repeated subset");
        }
    }

    std::vector<Mat> contrib;
    contrib.reserve(r);
    for (int j = 0; j < r; ++j) contrib.push_back(level_contributions(code, j));

    std::vector<SerCurve> curves;
    for (SubsetMask mask : masks) {
        SerCurve curve;
        curve.known = mask;
        curve.levels = mask_to_levels(mask, r);
        if (mask == 0) {
            curve.d_sq = code.d0_sq;
            curve.kissing = kissing_number(code.lattice, caps);
        } else {
            curve.d_sq = subset_min_distance_sq(code, mask);
            curve.kissing = kissing_number(sublattice_known(code, mask, caps), caps);
        }

        DecoderTable table;
        table.build(masked_words(code, full_mask(r) & ~mask, caps), q, n);

        std::vector<int> known_levels, unknown_levels;
        for (int j = 0; j < r; ++j)
            (mask & (SubsetMask(1) << j) ? known_levels : unknown_levels).push_back(j);

        for (std::size_t ip = 0; ip < points.size(); ++ip) {
            const auto [snr_db, sigma2] = points[ip];
            const double sigma = std::sqrt(sigma2);
            std::mt19937_64 rng(substream_seed(cfg.seed, mask, ip));

            long long errors = 0;
            Vec translate(n), truth(n), word(n);
            std::vector<double> y(n), reduced(n);
            for (long long trial = 0; trial < cfg.trials; ++trial) {
                std::fill(translate.begin(), translate.end(), 0);
                std::fill(truth.begin(), truth.end(), 0);
                for (int j = 0; j < r; ++j) {
                    const Mat& t = contrib[j];
                    const Vec& pick = t[uniform_below(rng, t.size())];
                    accumulate_mod(mask & (SubsetMask(1) << j) ? translate : truth, pick, q);
                }
                for (int i = 0; i < n; ++i) {
                    word[i] = translate[i] + truth[i];
                    if (word[i] >= q) word[i] -= q;
                    const Int c = 2 * word[i] > q ? word[i] - q : word[i];
                    y[i] = static_cast<double>(c);
                }
                add_noise(rng, y, sigma);
                for (int i = 0; i < n; ++i) {
                    const double shifted = y[i] - static_cast<double>(translate[i]);
                    reduced[i] = shifted - static_cast<double>(q) * std::floor(shifted / q);
                }
                errors += table.words[table.nearest(reduced)] != truth;
            }

            SerPoint pt;
            pt.snr_db = snr_db;
            pt.sigma2 = sigma2;
            pt.trials = cfg.trials;
            pt.errors = errors;
            pt.ser = static_cast<double>(errors) / cfg.trials;
            pt.stderr_ = std::sqrt(pt.ser * (1.0 - pt.ser) / cfg.trials);
            if (cfg.with_theory)
                pt.theory = theoretical_ser(n, curve.d_sq, curve.kissing, sigma2);
            curve.points.push_back(pt);
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

} // namespace lidx
