#include <lidx/designer.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lidx {

namespace {

constexpr double kGainToleranceDb = 1e-9;

double db_per_bit(double ratio) { return ratio * 20.0 * std::log10(2.0); }

// Measured gain of a finished code, required to be uniform at the predicted
// value. Throws when the report disagrees with the closed form.
void confirm_gain(const CrtIndexCode& code, double predicted_db, const Caps& caps,
                  const char* who) {
    if (code.levels() < 2) return; // no proper subsets to compare
    const GainReport rep = gain_report(code, caps);
    if (!rep.uniform.value_or(false) ||
        std::abs(*rep.overall_gain_db - predicted_db) > kGainToleranceDb)
        throw std::runtime_error(std::string(who) + ": measured gain does not confirm the design");
}

bool gain_confirms(const CrtIndexCode& code, double predicted_db, const Caps& caps) {
    const GainReport rep = gain_report(code, caps);
    return rep.uniform.value_or(false) &&
           std::abs(*rep.overall_gain_db - predicted_db) <= kGainToleranceDb;
}

Int level_lattice_min_sq(const Codebook& book, Int p) {
    Int best = checked_mul(p, p);
    for (const Vec& w : book.words) {
        Int nsq = 0;
        for (Int r : w) {
            const Int c = 2 * r > p ? r - p : r;
            nsq += c * c;
        }
        if (nsq != 0 && nsq < best) best = nsq;
    }
    return best;
}

} // namespace

std::string to_string(DesignKind kind) {
    switch (kind) {
    case DesignKind::canonical: return "canonical";
    case DesignKind::sum_of_squares: return "sum_of_squares";
    case DesignKind::cartesian_lift: return "cartesian_lift";
    }
    throw std::logic_error("to_string: unknown design kind");
}

DesignKind design_kind_from_string(const std::string& text) {
    if (text == "canonical") return DesignKind::canonical;
    if (text == "sum_of_squares") return DesignKind::sum_of_squares;
    if (text == "cartesian_lift") return DesignKind::cartesian_lift;
    throw std::invalid_argument("design_kind_from_string: unknown kind '" + text + "'");
}

UniformDesign design_canonical(const std::vector<Int>& primes, int n, int k, int shared_index,
                               const std::vector<std::vector<int>>& level_indices,
                               const Caps& caps) {
    if (primes.empty()) throw std::invalid_argument("design_canonical: no primes");
    if (k < 1) throw std::invalid_argument("design_canonical: rank must be at least 1");
    if (k >= n) throw std::invalid_argument("design_canonical: rank must be less than the length");
    if (shared_index < 1 || shared_index > n)
        throw std::invalid_argument("design_canonical: shared index out of range");

    const int r = static_cast<int>(primes.size());
    std::vector<std::vector<int>> indices(r);
    if (level_indices.empty()) {
        std::vector<int> defaults{shared_index};
        for (int i = 1; static_cast<int>(defaults.size()) < k; ++i)
            if (i != shared_index) defaults.push_back(i);
        std::sort(defaults.begin(), defaults.end());
        indices.assign(r, defaults);
    } else {
        if (static_cast<int>(level_indices.size()) != r)
            throw std::invalid_argument("design_canonical: one index set per level required");
        for (int j = 0; j < r; ++j) {
            std::vector<int> set = level_indices[j];
            std::sort(set.begin(), set.end());
            if (static_cast<int>(set.size()) != k ||
                std::adjacent_find(set.begin(), set.end()) != set.end())
                throw std::invalid_argument("design_canonical: each level needs k distinct indices");
            if (set.front() < 1 || set.back() > n)
                throw std::invalid_argument("design_canonical: canonical index out of range");
            if (!std::binary_search(set.begin(), set.end(), shared_index))
                throw std::invalid_argument(
                    "design_canonical: every level must contain the shared index");
            indices[j] = std::move(set);
        }
    }

    std::vector<Mat> generators(r);
    for (int j = 0; j < r; ++j)
        for (int i : indices[j]) {
            Vec row(n, 0);
            row[i - 1] = 1;
            generators[j].push_back(std::move(row));
        }

    UniformDesign design;
    design.kind = DesignKind::canonical;
    design.predicted_gain_db = db_per_bit(static_cast<double>(n) / k);
    design.code = make_crt_index_code(primes, generators, n, caps);
    confirm_gain(design.code, design.predicted_gain_db, caps, "design_canonical");
    return design;
}

SosDesignResult design_sos(const std::vector<Int>& primes, int n_squares, const Caps& caps) {
    if (primes.size() < 2) throw std::invalid_argument("design_sos: at least two primes required");
    if (n_squares < 1 || n_squares > 8)
        throw std::invalid_argument("design_sos: square count must be in [1, 8]");
    const PrimeSet ps = make_prime_set(primes);
    const int r = ps.size();
    const double predicted = db_per_bit(n_squares / 2.0);

    SosDesignResult result;
    for (const SquareDecomposition& dec : sum_of_squares(ps.q, n_squares, caps)) {
        std::vector<CollinearityWitness> witnesses;
        std::vector<Mat> generators;
        int failing = 0;
        for (int j = 0; j < r; ++j) {
            const auto sols = scalar_collinear(dec.coordinates, ps.primes[j], caps);
            if (sols.empty()) {
                failing = j + 1;
                break;
            }
            witnesses.push_back({ps.primes[j], {j + 1}, sols.front().lambda, sols.front().witness});
            generators.push_back({reduce_mod(sols.front().witness, ps.primes[j])});
        }
        if (failing != 0) {
            result.rejections.push_back({dec.coordinates, failing, ps.primes[failing - 1],
                                         "no scalar-collinear witness modulo " +
                                             std::to_string(ps.primes[failing - 1])});
            continue;
        }

        UniformDesign design;
        design.kind = DesignKind::sum_of_squares;
        design.predicted_gain_db = predicted;
        design.decomposition = dec.coordinates;
        design.level_witnesses = std::move(witnesses);
        design.code = make_crt_index_code(primes, generators, n_squares, caps);

        bool levels_ok = true;
        for (int j = 0; j < r; ++j)
            levels_ok = levels_ok &&
                        level_lattice_min_sq(design.code.level_books[j], ps.primes[j]) ==
                            ps.primes[j];
        if (!levels_ok || design.code.d0_sq != ps.q ||
            !gain_confirms(design.code, predicted, caps)) {
            result.rejections.push_back(
                {dec.coordinates, 0, 0, "measured gain is not uniform at the predicted value"});
            continue;
        }
        result.designs.push_back(std::move(design));
    }
    return result;
}

CollinearityCertificate certify_collinearity(const std::vector<Int>& primes,
                                             const Vec& decomposition, const Caps& caps) {
    const PrimeSet ps = make_prime_set(primes);
    Int nsq = 0;
    for (Int x : decomposition) nsq += checked_mul(x, x);
    if (nsq != ps.q)
        throw std::invalid_argument(
            "certify_collinearity: squared norm must equal the prime product");

    CollinearityCertificate cert;
    cert.primes = ps.primes;
    cert.decomposition = decomposition;
    cert.predicted_gain_db = db_per_bit(static_cast<double>(decomposition.size()) / 2.0);

    std::vector<SubsetMask> masks = proper_subsets(ps.size());
    masks.push_back((SubsetMask(1) << ps.size()) - 1);
    for (SubsetMask mask : masks) {
        const std::vector<int> levels = mask_to_levels(mask, ps.size());
        Int product = 1;
        for (int j : levels) product = checked_mul(product, ps.primes[j - 1]);
        const auto sols = scalar_collinear(decomposition, product, caps);
        if (sols.empty())
            cert.failures.push_back(mask);
        else
            cert.witnesses.push_back({product, levels, sols.front().lambda, sols.front().witness});
    }
    cert.pass = cert.failures.empty();
    return cert;
}

UniformDesign lift_cartesian(const UniformDesign& design, int copies, const Caps& caps) {
    if (copies < 1) throw std::invalid_argument("lift_cartesian: copies must be at least 1");
    if (design.kind != DesignKind::sum_of_squares || design.copies != 1)
        throw std::invalid_argument("lift_cartesian: expects an unlifted sum-of-squares design");
    if (copies == 1) return design;

    std::vector<Mat> generators;
    for (const LinearCode& level : design.code.level_codes)
        generators.push_back(cartesian_power(level, copies).generators);

    UniformDesign lifted;
    lifted.kind = DesignKind::cartesian_lift;
    lifted.predicted_gain_db = design.predicted_gain_db;
    lifted.copies = copies;
    lifted.decomposition = design.decomposition;
    lifted.level_witnesses = design.level_witnesses;
    lifted.certificate = design.certificate;
    lifted.code = make_crt_index_code(design.code.primes.primes, generators,
                                      design.code.length * copies, caps);
    confirm_gain(lifted.code, lifted.predicted_gain_db, caps, "lift_cartesian");
    return lifted;
}

GaussianEquivalence gaussian_equivalence(Int p1, std::array<Int, 2> ab1, Int p2,
                                         std::array<Int, 2> ab2, const Caps& caps) {
    const PrimeSet ps = make_prime_set({p1, p2});
    if (ab1[0] * ab1[0] + ab1[1] * ab1[1] != p1)
        throw std::invalid_argument("gaussian_equivalence: first pair is not a two-square form");
    if (ab2[0] * ab2[0] + ab2[1] * ab2[1] != p2)
        throw std::invalid_argument("gaussian_equivalence: second pair is not a two-square form");

    GaussianEquivalence rec;
    rec.p1 = p1;
    rec.p2 = p2;
    rec.unit1 = ab1;
    rec.unit2 = ab2;
    rec.product = {ab1[0] * ab2[0] - ab1[1] * ab2[1], ab2[0] * ab1[1] + ab1[0] * ab2[1]};
    rec.q = rec.product[0] * rec.product[0] + rec.product[1] * rec.product[1];
    if (rec.q != ps.q) throw std::logic_error("gaussian_equivalence: norm is not multiplicative");

    const std::vector<Mat> generators{{{mod_floor(ab1[0], p1), mod_floor(ab1[1], p1)}},
                                      {{mod_floor(ab2[0], p2), mod_floor(ab2[1], p2)}}};
    const CrtIndexCode code = make_crt_index_code({p1, p2}, generators, 2, caps);
    rec.crt_basis = code.lattice.basis;
    rec.rotation_basis =
        basis_from_generators({{rec.product[0], rec.product[1]}, {-rec.product[1], rec.product[0]}},
                              2)
            .basis;
    rec.equal = rec.crt_basis == rec.rotation_basis;
    return rec;
}

} // namespace lidx
