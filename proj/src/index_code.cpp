#include <lidx/index_code.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

namespace lidx {

namespace {

// contribution of one level word to a combined word: (e_j * word) mod q
Mat contribution_table(const Codebook& book, Int idempotent, Int q) {
    Mat table;
    table.reserve(book.words.size());
    for (const Vec& w : book.words) {
        Vec c(w.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            c[i] = mod_floor(checked_mul(idempotent, w[i]), q);
        table.push_back(std::move(c));
    }
    return table;
}

void masked_rec(const std::vector<const Mat*>& tables, std::size_t depth, Int q, Vec& partial,
                const std::function<void(const Vec&)>& fn) {
    if (depth == tables.size()) {
        fn(partial);
        return;
    }
    const Mat& table = *tables[depth];
    Vec saved = partial;
    for (const Vec& contrib : table) {
        for (std::size_t i = 0; i < partial.size(); ++i) {
            partial[i] = saved[i] + contrib[i];
            if (partial[i] >= q) partial[i] -= q;
        }
        masked_rec(tables, depth + 1, q, partial, fn);
    }
    partial = saved;
}

Int masked_min_norm_sq(const CrtIndexCode& code, SubsetMask include) {
    const Int q = code.primes.q;
    Int best = kUnboundedSq;
    for_each_masked_word(code, include, [&](const Vec& w) {
        Int nsq = 0;
        for (Int r : w) {
            const Int c = 2 * r > q ? r - q : r;
            nsq += c * c;
        }
        if (nsq != 0 && nsq < best) best = nsq;
    });
    return std::min(best, checked_mul(q, q));
}

SubsetMask full_mask(int r) { return (SubsetMask(1) << r) - 1; }

} // namespace

std::vector<int> mask_to_levels(SubsetMask mask, int r) {
    std::vector<int> out;
    for (int j = 0; j < r; ++j)
        if (mask & (SubsetMask(1) << j)) out.push_back(j + 1);
    return out;
}

SubsetMask levels_to_mask(const std::vector<int>& levels, int r) {
    SubsetMask mask = 0;
    for (int j : levels) {
        if (j < 1 || j > r) throw std::invalid_argument("levels_to_mask: level index out of range");
        const SubsetMask bit = SubsetMask(1) << (j - 1);
        if (mask & bit) throw std::invalid_argument("levels_to_mask: repeated level index");
        mask |= bit;
    }
    return mask;
}

std::string subset_to_string(SubsetMask mask, int r) {
    std::string s = "{";
    bool first = true;
    for (int j : mask_to_levels(mask, r)) {
        if (!first) s += ',';
        s += std::to_string(j);
        first = false;
    }
    return s + "}";
}

std::vector<SubsetMask> proper_subsets(int r) {
    std::vector<SubsetMask> masks;
    for (SubsetMask m = 1; m < full_mask(r); ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](SubsetMask a, SubsetMask b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    return masks;
}

CrtIndexCode make_crt_index_code(const std::vector<Int>& primes,
                                 const std::vector<Mat>& level_generators, int length,
                                 const Caps& caps) {
    if (primes.size() != level_generators.size())
        throw std::invalid_argument("make_crt_index_code: one generator matrix per prime required");
    CrtIndexCode code;
    code.primes = make_prime_set(primes);
    code.crt = crt_basis(code.primes);
    code.length = length;

    code.cardinality = 1;
    for (std::size_t j = 0; j < primes.size(); ++j) {
        LinearCode level = make_linear_code(primes[j], length, level_generators[j]);
        code.level_books.push_back(enumerate(level, caps));
        code.level_ranks.push_back(rank_over_prime_field(level));
        code.cardinality = checked_mul(code.cardinality, code.level_books.back().cardinality());
        code.level_codes.push_back(std::move(level));
    }

    auto [combined, lattice] = construction_pia(code.primes, code.crt, code.level_codes, caps);
    code.combined = std::move(combined);
    code.lattice = std::move(lattice);
    code.d0_sq = masked_min_norm_sq(code, full_mask(code.levels()));

    // Round-trip check of the level map: exhaustive when the combined book is
    // materialized, sampled otherwise.
    if (code.lattice.lift->book) {
        for (const Vec& w : code.lattice.lift->book->words)
            if (encode(code, decode_exact(code, w)) != w)
                throw std::runtime_error("make_crt_index_code: level map round trip failed");
    } else {
        std::mt19937_64 rng(0x1d5a9f3b7c2e41ull);
        for (int t = 0; t < 128; ++t) {
            std::vector<Vec> words;
            for (int j = 0; j < code.levels(); ++j) {
                const auto& book = code.level_books[j];
                words.push_back(book.words[rng() % book.words.size()]);
            }
            const Vec x = encode(code, words);
            if (decode_exact(code, x) != words)
                throw std::runtime_error("make_crt_index_code: level map round trip failed");
        }
    }
    return code;
}

Vec encode(const CrtIndexCode& code, const std::vector<Vec>& level_words) {
    if (static_cast<int>(level_words.size()) != code.levels())
        throw std::invalid_argument("encode: one word per level required");
    const Int q = code.primes.q;
    Vec x(code.length, 0);
    for (int j = 0; j < code.levels(); ++j) {
        if (!code.level_books[j].contains(level_words[j]))
            throw std::invalid_argument("encode: word is not in its level code");
        const Int e = code.crt.idempotents[j];
        for (int i = 0; i < code.length; ++i)
            x[i] = mod_floor(x[i] + checked_mul(e, level_words[j][i]), q);
    }
    return x;
}

std::vector<Vec> decode_exact(const CrtIndexCode& code, const Vec& word) {
    if (static_cast<int>(word.size()) != code.length)
        throw std::invalid_argument("decode_exact: length mismatch");
    for (Int c : word)
        if (c < 0 || c >= code.primes.q)
            throw std::invalid_argument("decode_exact: entry outside [0, q)");
    std::vector<Vec> levels;
    for (int j = 0; j < code.levels(); ++j) {
        Vec w = reduce_mod(word, code.primes.primes[j]);
        if (!code.level_books[j].contains(w))
            throw std::runtime_error("decode_exact: residue is not a level codeword at level " +
                                     std::to_string(j + 1));
        levels.push_back(std::move(w));
    }
    return levels;
}

void for_each_masked_word(const CrtIndexCode& code, SubsetMask mask,
                          const std::function<void(const Vec&)>& fn) {
    if (mask > full_mask(code.levels()))
        throw std::invalid_argument("for_each_masked_word: mask out of range");
    std::vector<Mat> tables;
    std::vector<const Mat*> included;
    for (int j = 0; j < code.levels(); ++j)
        if (mask & (SubsetMask(1) << j))
            tables.push_back(contribution_table(code.level_books[j], code.crt.idempotents[j],
                                                code.primes.q));
    for (const Mat& t : tables) included.push_back(&t);
    Vec partial(code.length, 0);
    masked_rec(included, 0, code.primes.q, partial, fn);
}

Mat masked_words(const CrtIndexCode& code, SubsetMask mask, const Caps& caps) {
    Int expected = 1;
    for (int j = 0; j < code.levels(); ++j)
        if (mask & (SubsetMask(1) << j))
            expected = checked_mul(expected, code.level_books[j].cardinality());
    if (expected > caps.codebook_max_words)
        throw resource_error("masked_words: word count exceeds cap");
    Mat words;
    words.reserve(static_cast<std::size_t>(expected));
    for_each_masked_word(code, mask, [&](const Vec& w) { words.push_back(w); });
    std::sort(words.begin(), words.end());
    return words;
}

IntegerLattice sublattice_known(const CrtIndexCode& code, SubsetMask known, const Caps& caps) {
    const int r = code.levels();
    if (known == 0 || known >= full_mask(r))
        throw std::invalid_argument("sublattice_known: subset must be nonempty and proper");
    const SubsetMask rest = full_mask(r) & ~known;
    const Int q = code.primes.q;

    Mat rows;
    Int cardinality = 1;
    for (int j = 0; j < r; ++j) {
        if (!(rest & (SubsetMask(1) << j))) continue;
        cardinality = checked_mul(cardinality, code.level_books[j].cardinality());
        const Int e = code.crt.idempotents[j];
        for (const Vec& g : code.level_codes[j].generators) {
            Vec row(code.length);
            for (int i = 0; i < code.length; ++i) row[i] = mod_floor(checked_mul(e, g[i]), q);
            rows.push_back(std::move(row));
        }
    }
    LinearCode sub = make_linear_code(q, code.length, rows);
    Mat spanning = rows;
    for (int i = 0; i < code.length; ++i) {
        Vec unit(code.length, 0);
        unit[i] = q;
        spanning.push_back(std::move(unit));
    }
    IntegerLattice lat = basis_from_generators(spanning, code.length);
    if (checked_mul(lat.volume(), cardinality) != checked_pow(q, code.length))
        throw std::runtime_error("sublattice_known: volume does not match q^n / |C|");
    CodeProvenance prov{sub, nullptr};
    if (cardinality <= caps.codebook_materialize_limit)
        prov.book = std::make_shared<Codebook>(Codebook{sub, masked_words(code, rest, caps)});
    lat.lift = std::move(prov);
    return lat;
}

Int subset_min_distance_sq(const CrtIndexCode& code, SubsetMask known) {
    const int r = code.levels();
    if (known == 0 || known >= full_mask(r))
        throw std::invalid_argument("subset_min_distance_sq: subset must be nonempty and proper");
    return masked_min_norm_sq(code, full_mask(r) & ~known);
}

TranslatedConstellation subcode(const CrtIndexCode& code, SubsetMask known,
                                const std::vector<Vec>& known_words, const Caps& caps) {
    const int r = code.levels();
    if (known == 0 || known >= full_mask(r))
        throw std::invalid_argument("subcode: subset must be nonempty and proper");
    if (static_cast<int>(known_words.size()) != r)
        throw std::invalid_argument("subcode: one slot per level required");
    const Int q = code.primes.q;

    Vec t(code.length, 0);
    for (int j = 0; j < r; ++j) {
        if (!(known & (SubsetMask(1) << j))) continue;
        if (!code.level_books[j].contains(known_words[j]))
            throw std::invalid_argument("subcode: known word is not in its level code");
        const Int e = code.crt.idempotents[j];
        for (int i = 0; i < code.length; ++i)
            t[i] = mod_floor(t[i] + checked_mul(e, known_words[j][i]), q);
    }

    TranslatedConstellation c;
    c.known = known;
    c.translate = t;
    c.points = masked_words(code, full_mask(r) & ~known, caps);
    for (Vec& p : c.points)
        for (int i = 0; i < code.length; ++i) {
            p[i] += t[i];
            if (p[i] >= q) p[i] -= q;
        }
    std::sort(c.points.begin(), c.points.end());
    c.d_sq = subset_min_distance_sq(code, known);
    return c;
}

double uniform_gain_tolerance_db() { return 1e-9; }

GainReport gain_report(const CrtIndexCode& code, const Caps& caps) {
    (void)caps;
    const int r = code.levels();
    const int n = code.length;
    for (int k : code.level_ranks)
        if (k == 0)
            throw std::domain_error("gain_report: a level with rank 0 carries no rate");

    GainReport rep;
    rep.length = n;
    rep.q = code.primes.q;
    rep.primes = code.primes.primes;
    rep.ranks = code.level_ranks;
    rep.d0_sq = code.d0_sq;
    for (int j = 0; j < r; ++j)
        rep.level_rates.push_back(static_cast<double>(code.level_ranks[j]) / n *
                                  std::log2(static_cast<double>(code.primes.primes[j])));
    rep.total_rate = 0;
    for (double rate : rep.level_rates) rep.total_rate += rate;

    for (SubsetMask mask : proper_subsets(r)) {
        GainRow row;
        row.mask = mask;
        row.levels = mask_to_levels(mask, r);
        row.d_sq = subset_min_distance_sq(code, mask);
        row.rate_bits_per_dim = 0;
        for (int j : row.levels) row.rate_bits_per_dim += rep.level_rates[j - 1];
        row.gain_db = 10.0 * std::log10(static_cast<double>(row.d_sq) /
                                        static_cast<double>(code.d0_sq)) /
                      row.rate_bits_per_dim;
        rep.rows.push_back(std::move(row));
    }

    if (!rep.rows.empty()) {
        double lo = rep.rows[0].gain_db, hi = rep.rows[0].gain_db;
        for (const GainRow& row : rep.rows) {
            lo = std::min(lo, row.gain_db);
            hi = std::max(hi, row.gain_db);
        }
        rep.overall_gain_db = lo;
        rep.uniform = (hi - lo) <= uniform_gain_tolerance_db();
    }

    const std::optional<double> bound = gain_upper_bound(code);
    if (bound) rep.equal_rank_bound_db = bound;
    return rep;
}

std::optional<double> gain_upper_bound(const CrtIndexCode& code) {
    if (code.level_ranks.empty()) return std::nullopt;
    const int k = code.level_ranks[0];
    for (int kj : code.level_ranks)
        if (kj != k) return std::nullopt;
    if (k == 0) return std::nullopt;
    return static_cast<double>(code.length) / k * 20.0 * std::log10(2.0);
}

VolumeIdentityReport verify_volume_identities(const CrtIndexCode& code, const Caps& caps) {
    VolumeIdentityReport rep;
    rep.pass = true;
    const Int vol = code.lattice.volume();
    for (SubsetMask mask : proper_subsets(code.levels())) {
        VolumeIdentityRow row;
        row.mask = mask;
        row.d_sq = subset_min_distance_sq(code, mask);
        row.sublattice_volume = sublattice_known(code, mask, caps).volume();
        Int factor = 1;
        Int prod_p = 1;
        for (int j : mask_to_levels(mask, code.levels())) {
            factor = checked_mul(factor,
                                 checked_pow(code.primes.primes[j - 1], code.level_ranks[j - 1]));
            prod_p = checked_mul(prod_p, code.primes.primes[j - 1]);
        }
        row.expected_volume = checked_mul(factor, vol);
        row.volume_ok = row.sublattice_volume == row.expected_volume;
        row.lower_ok = code.d0_sq <= row.d_sq;
        row.upper_ok = row.d_sq <= checked_mul(checked_mul(prod_p, prod_p), code.d0_sq);
        rep.pass = rep.pass && row.volume_ok && row.lower_ok && row.upper_ok;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace lidx
