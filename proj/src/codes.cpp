#include <lidx/codes.hpp>
#include <lidx/ring_arith.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace lidx {

LinearCode make_linear_code(Int q, int length, Mat generators) {
    if (q < 2) throw std::invalid_argument("make_linear_code: modulus must be >= 2");
    if (length < 1) throw std::invalid_argument("make_linear_code: length must be >= 1");
    for (const Vec& g : generators) {
        if (static_cast<int>(g.size()) != length)
            throw std::invalid_argument("make_linear_code: generator length mismatch");
        for (Int c : g)
            if (c < 0 || c >= q)
                throw std::invalid_argument("make_linear_code: generator entry outside [0, q)");
    }
    return {q, length, std::move(generators)};
}

LinearCode zero_code(Int q, int length) {
    return make_linear_code(q, length, {});
}

bool Codebook::contains(const Vec& w) const {
    return std::binary_search(words.begin(), words.end(), w);
}

long long Codebook::index_of(const Vec& w) const {
    auto it = std::lower_bound(words.begin(), words.end(), w);
    if (it == words.end() || *it != w) return -1;
    return it - words.begin();
}

Int additive_order(const Vec& row, Int q) {
    Int g = q;
    for (Int c : row) g = gcd_nonneg(g, c);
    return q / g;
}

namespace {

// Walks the odometer over [0, ord_1) x ... x [0, ord_g). Because
// ord_i * g_i == 0 (mod q), a wrapping digit needs no correction: each step
// adds exactly one generator to the running word.
void stream_words(const LinearCode& code, const std::function<void(const Vec&)>& fn,
                  const Caps& caps) {
    const Int q = code.q;
    std::vector<Int> orders;
    __int128 work = 1;
    for (const Vec& g : code.generators) {
        Int o = additive_order(g, q);
        if (o > 1) {
            orders.push_back(o);
            work *= o;
            if (work > caps.codebook_max_words)
                throw resource_error("codebook enumeration exceeds cap");
        }
    }
    Mat gens;
    for (const Vec& g : code.generators)
        if (additive_order(g, q) > 1) gens.push_back(g);

    Vec word(code.length, 0);
    fn(word);
    if (gens.empty()) return;

    std::vector<Int> digit(gens.size(), 0);
    for (;;) {
        std::size_t i = 0;
        for (;;) {
            for (int k = 0; k < code.length; ++k) {
                word[k] += gens[i][k];
                if (word[k] >= q) word[k] -= q;
            }
            if (++digit[i] < orders[i]) break;
            digit[i] = 0;
            if (++i == gens.size()) return;
        }
        fn(word);
    }
}

} // namespace

Codebook enumerate(const LinearCode& code, const Caps& caps) {
    Mat words;
    stream_words(code, [&](const Vec& w) { words.push_back(w); }, caps);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return {code, std::move(words)};
}

void for_each_codeword(const LinearCode& code, const std::function<void(const Vec&)>& fn,
                       const Caps& caps) {
    stream_words(code, fn, caps);
}

Int centered(Int r, Int q) {
    if (r < 0 || r >= q) throw std::invalid_argument("centered: input outside [0, q)");
    return 2 * r > q ? r - q : r;
}

Vec centered(const Vec& v, Int q) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = centered(v[i], q);
    return out;
}

Vec reduce_mod(const Vec& v, Int p) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = mod_floor(v[i], p);
    return out;
}

namespace {

Int centered_norm_sq(const Vec& w, Int q) {
    Int acc = 0;
    for (Int r : w) {
        Int c = 2 * r > q ? r - q : r;
        acc += c * c;
    }
    return acc;
}

// keeps n * (q/2)^2 clear of 64-bit overflow for any sane length
void check_distance_scale(Int q) {
    if (q > 100000000)
        throw std::invalid_argument("distance scan: modulus too large for exact arithmetic");
}

} // namespace

MinDistance min_euclidean_distance(const Codebook& book) {
    check_distance_scale(book.code.q);
    Int best = kUnboundedSq;
    for (const Vec& w : book.words) {
        Int nsq = centered_norm_sq(w, book.code.q);
        if (nsq != 0 && nsq < best) best = nsq;
    }
    return {best, best == kUnboundedSq ? std::numeric_limits<double>::infinity()
                                       : std::sqrt(static_cast<double>(best))};
}

MinDistance min_distance_streamed(const LinearCode& code, const Caps& caps) {
    check_distance_scale(code.q);
    Int best = kUnboundedSq;
    for_each_codeword(code, [&](const Vec& w) {
        Int nsq = centered_norm_sq(w, code.q);
        if (nsq != 0 && nsq < best) best = nsq;
    }, caps);
    return {best, best == kUnboundedSq ? std::numeric_limits<double>::infinity()
                                       : std::sqrt(static_cast<double>(best))};
}

int rank_over_prime_field(const LinearCode& code) {
    if (!is_prime(code.q))
        throw std::invalid_argument("rank_over_prime_field: modulus is not prime");
    const Int p = code.q;
    Mat m = code.generators;
    int rank = 0;
    for (int col = 0; col < code.length && rank < static_cast<int>(m.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(m.size()); ++r)
            if (m[r][col] % p != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        const Int inv = mod_inverse(m[rank][col], p);
        for (int c = col; c < code.length; ++c)
            m[rank][c] = mod_floor(checked_mul(m[rank][c], inv), p);
        for (int r = 0; r < static_cast<int>(m.size()); ++r) {
            if (r == rank || m[r][col] % p == 0) continue;
            const Int f = mod_floor(m[r][col], p);
            for (int c = col; c < code.length; ++c)
                m[r][c] = mod_floor(m[r][c] - checked_mul(f, m[rank][c]), p);
        }
        ++rank;
    }
    return rank;
}

LinearCode cartesian_power(const LinearCode& code, int m) {
    if (m < 1) throw std::invalid_argument("cartesian_power: factor must be >= 1");
    const int n = code.length;
    Mat gens;
    for (int block = 0; block < m; ++block)
        for (const Vec& g : code.generators) {
            Vec row(static_cast<std::size_t>(m) * n, 0);
            std::copy(g.begin(), g.end(), row.begin() + static_cast<std::size_t>(block) * n);
            gens.push_back(std::move(row));
        }
    return make_linear_code(code.q, m * n, std::move(gens));
}

} // namespace lidx
