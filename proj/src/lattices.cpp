#include <lidx/lattices.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

namespace lidx {

Int IntegerLattice::volume() const {
    Int v = 1;
    for (int i = 0; i < dim; ++i) v = checked_mul(v, basis[i][i]);
    return v;
}

IntegerLattice basis_from_generators(const std::vector<Vec>& generators, int dim) {
    if (dim < 1) throw std::invalid_argument("basis_from_generators: dimension must be >= 1");
    std::vector<Vec> cols;
    for (const Vec& g : generators) {
        if (static_cast<int>(g.size()) != dim)
            throw std::invalid_argument("basis_from_generators: generator length mismatch");
        if (std::any_of(g.begin(), g.end(), [](Int c) { return c != 0; })) cols.push_back(g);
    }

    // Pivot rows from the bottom up so the finished basis is upper triangular.
    std::vector<Vec> pivot(dim);
    for (int row = dim - 1; row >= 0; --row) {
        for (;;) {
            int nonzero = -1, count = 0;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (cols[c][row] == 0) continue;
                ++count;
                if (nonzero < 0 || std::llabs(cols[c][row]) < std::llabs(cols[nonzero][row]))
                    nonzero = static_cast<int>(c);
            }
            if (count == 0)
                throw std::invalid_argument("basis_from_generators: generators do not span full rank");
            if (count == 1) {
                Vec p = cols[nonzero];
                cols.erase(cols.begin() + nonzero);
                if (p[row] < 0)
                    for (Int& x : p) x = -x;
                pivot[row] = std::move(p);
                break;
            }
            const Vec& m = cols[nonzero];
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (static_cast<int>(c) == nonzero || cols[c][row] == 0) continue;
                const Int qt = cols[c][row] / m[row];
                if (qt == 0) continue;
                for (int k = 0; k < dim; ++k)
                    cols[c][k] -= checked_mul(qt, m[k]);
            }
        }
    }

    // Reduce entries right of the diagonal into [0, diagonal).
    Mat h(dim, Vec(dim, 0));
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i <= j; ++i) h[i][j] = pivot[j][i];
    for (int j = 0; j < dim; ++j)
        for (int i = j - 1; i >= 0; --i) {
            const Int t = floor_div(h[i][j], h[i][i]);
            if (t == 0) continue;
            for (int k = 0; k <= i; ++k)
                h[k][j] -= checked_mul(t, h[k][i]);
        }

    IntegerLattice lat;
    lat.dim = dim;
    lat.basis = std::move(h);
    return lat;
}

bool lattice_contains(const IntegerLattice& lat, const Vec& v) {
    if (static_cast<int>(v.size()) != lat.dim)
        throw std::invalid_argument("lattice_contains: dimension mismatch");
    Vec z(lat.dim, 0);
    for (int i = lat.dim - 1; i >= 0; --i) {
        Int rem = v[i];
        for (int j = i + 1; j < lat.dim; ++j) rem -= checked_mul(lat.basis[i][j], z[j]);
        if (rem % lat.basis[i][i] != 0) return false;
        z[i] = rem / lat.basis[i][i];
    }
    return true;
}

namespace {

std::vector<Vec> with_scaled_units(const Mat& rows, Int q, int n) {
    std::vector<Vec> gens = rows;
    for (int i = 0; i < n; ++i) {
        Vec unit(n, 0);
        unit[i] = q;
        gens.push_back(std::move(unit));
    }
    return gens;
}

} // namespace

IntegerLattice construction_a(const LinearCode& code, const Caps& caps) {
    auto book = std::make_shared<Codebook>(enumerate(code, caps));
    IntegerLattice lat = basis_from_generators(with_scaled_units(code.generators, code.q, code.length),
                                               code.length);
    const Int qn = checked_pow(code.q, code.length);
    if (checked_mul(lat.volume(), book->cardinality()) != qn)
        throw std::runtime_error("construction_a: volume does not match q^n / |C|");
    lat.lift = CodeProvenance{code, std::move(book)};
    return lat;
}

std::pair<LinearCode, IntegerLattice> construction_pia(const PrimeSet& ps, const CrtBasis& crt,
                                                       const std::vector<LinearCode>& levels,
                                                       const Caps& caps) {
    if (levels.size() != ps.primes.size())
        throw std::invalid_argument("construction_pia: one level code per prime required");
    if (levels.empty()) throw std::invalid_argument("construction_pia: no levels");
    const int n = levels[0].length;
    const Int q = ps.q;

    Int cardinality = 1;
    Mat rows;
    for (std::size_t j = 0; j < levels.size(); ++j) {
        if (levels[j].length != n)
            throw std::invalid_argument("construction_pia: level lengths differ");
        if (levels[j].q != ps.primes[j])
            throw std::invalid_argument("construction_pia: level modulus is not its prime");
        cardinality = checked_mul(cardinality, enumerate(levels[j], caps).cardinality());
        const Int e = crt.idempotents[j];
        for (const Vec& g : levels[j].generators) {
            Vec row(n);
            for (int k = 0; k < n; ++k) row[k] = mod_floor(checked_mul(e, g[k]), q);
            rows.push_back(std::move(row));
        }
    }

    LinearCode combined = make_linear_code(q, n, rows);
    IntegerLattice lat = basis_from_generators(with_scaled_units(rows, q, n), n);
    if (checked_mul(lat.volume(), cardinality) != checked_pow(q, n))
        throw std::runtime_error("construction_pia: volume does not match q^n / |C|");

    CodeProvenance prov{combined, nullptr};
    if (cardinality <= caps.codebook_materialize_limit)
        prov.book = std::make_shared<Codebook>(enumerate(combined, caps));
    lat.lift = std::move(prov);
    return {combined, lat};
}

// ---------------------------------------------------------------------------
// Bounded enumeration over an arbitrary basis (floating-point Gram-Schmidt
// with slack, exact integer recheck of every candidate).

namespace {

struct Enumerator {
    int n;
    const Mat& basis; // columns generate
    std::vector<std::vector<double>> r; // upper-triangular QR factor
    std::vector<std::vector<double>> qt; // orthonormal columns, transposed
    long long budget;

    explicit Enumerator(const IntegerLattice& lat, const Caps& caps)
        : n(lat.dim), basis(lat.basis), budget(caps.search_max_nodes) {
        std::vector<std::vector<double>> cols(n, std::vector<double>(n));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) cols[j][i] = static_cast<double>(basis[i][j]);
        r.assign(n, std::vector<double>(n, 0.0));
        qt.assign(n, std::vector<double>(n, 0.0));
        for (int j = 0; j < n; ++j) {
            std::vector<double> v = cols[j];
            for (int i = 0; i < j; ++i) {
                double dot = 0;
                for (int k = 0; k < n; ++k) dot += qt[i][k] * cols[j][k];
                r[i][j] = dot;
                for (int k = 0; k < n; ++k) v[k] -= dot * qt[i][k];
            }
            double nrm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
            if (nrm <= 0)
                throw std::runtime_error("lattice search: basis numerically singular");
            r[j][j] = nrm;
            for (int k = 0; k < n; ++k) qt[j][k] = v[k] / nrm;
        }
    }

    Vec point_of(const Vec& z) const {
        Vec p(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p[i] += checked_mul(basis[i][j], z[j]);
        return p;
    }

    // Visits every z with |Bz - target| <= sqrt(radius_sq) (plus slack).
    void run(const std::vector<double>& target, double radius_sq,
             const std::function<void(const Vec&)>& visit) {
        std::vector<double> tp(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) tp[i] += qt[i][k] * target[k];
        Vec z(n, 0);
        const double bound = radius_sq * (1.0 + 1e-9) + 1e-9;
        rec(n - 1, bound, tp, z, visit);
    }

  private:
    void rec(int level, double remaining, const std::vector<double>& tp, Vec& z,
             const std::function<void(const Vec&)>& visit) {
        if (--budget < 0) throw resource_error("lattice search: node budget exceeded");
        double c = tp[level];
        for (int j = level + 1; j < n; ++j) c -= r[level][j] * z[j];
        c /= r[level][level];
        const double half = std::sqrt(std::max(remaining, 0.0)) / r[level][level];
        const Int lo = static_cast<Int>(std::ceil(c - half - 1e-9));
        const Int hi = static_cast<Int>(std::floor(c + half + 1e-9));
        for (Int zi = lo; zi <= hi; ++zi) {
            const double d = (static_cast<double>(zi) - c) * r[level][level];
            const double used = d * d;
            if (used > remaining + 1e-9) continue;
            z[level] = zi;
            if (level == 0)
                visit(z);
            else
                rec(level - 1, remaining - used, tp, z, visit);
        }
        z[level] = 0;
    }
};

struct ShortestResult {
    Int best_sq = kUnboundedSq;
    Int count = 0;
};

ShortestResult shortest_vectors(const IntegerLattice& lat, const Caps& caps) {
    Enumerator en(lat, caps);
    Int seed_sq = kUnboundedSq;
    for (int j = 0; j < lat.dim; ++j) {
        Vec col(lat.dim);
        for (int i = 0; i < lat.dim; ++i) col[i] = lat.basis[i][j];
        seed_sq = std::min(seed_sq, norm_sq(col));
    }
    const double radius = static_cast<double>(seed_sq);
    ShortestResult res;
    std::vector<double> origin(lat.dim, 0.0);
    en.run(origin, radius, [&](const Vec& z) {
        if (std::all_of(z.begin(), z.end(), [](Int v) { return v == 0; })) return;
        const Int nsq = norm_sq(en.point_of(z));
        if (nsq < res.best_sq) {
            res.best_sq = nsq;
            res.count = 1;
        } else if (nsq == res.best_sq) {
            ++res.count;
        }
    });
    if (res.best_sq == kUnboundedSq)
        throw std::runtime_error("lattice search: no nonzero vector found");
    return res;
}

// ---------------------------------------------------------------------------
// Coset routines for code-lifted lattices. A coset w + q*Z^n decomposes per
// coordinate, so its nearest point to a target in [0, q)^n uses shifts from
// {-q, 0, +q} only.

const Codebook& materialized_book(const IntegerLattice& lat, const Caps& caps,
                                  std::shared_ptr<const Codebook>& holder) {
    if (lat.lift->book) return *lat.lift->book;
    holder = std::make_shared<Codebook>(enumerate(lat.lift->code, caps));
    return *holder;
}

Int coset_min_sq(const IntegerLattice& lat, const Caps& caps) {
    const LinearCode& code = lat.lift->code;
    const Int qsq = checked_mul(code.q, code.q);
    const Int code_sq = lat.lift->book ? min_euclidean_distance(*lat.lift->book).sq
                                       : min_distance_streamed(code, caps).sq;
    return std::min(code_sq, qsq);
}

// Counts points of w + q*Z^n with norm exactly d_sq; d_sq <= q^2 keeps the
// per-coordinate candidates within one period.
void count_at_distance(const Vec& w, Int q, Int d_sq, int idx, Int partial, Int& count) {
    if (partial > d_sq) return;
    if (idx == static_cast<int>(w.size())) {
        if (partial == d_sq) ++count;
        return;
    }
    const Int v = w[idx];
    for (Int cand : {v - q, v, v + q}) {
        const Int t = partial + cand * cand;
        if (t <= d_sq) count_at_distance(w, q, d_sq, idx + 1, t, count);
    }
}

Int coset_kissing(const IntegerLattice& lat, Int d_sq, const Caps& caps) {
    if (d_sq <= 0) throw std::logic_error("coset_kissing: nonpositive distance");
    std::shared_ptr<const Codebook> holder;
    const Codebook& book = materialized_book(lat, caps, holder);
    const Int q = lat.lift->code.q;
    Int count = 0;
    for (const Vec& w : book.words) count_at_distance(w, q, d_sq, 0, 0, count);
    return count;
}

} // namespace

Vec nearest_coset_point(const Mat& words, Int q, const std::vector<double>& target) {
    if (words.empty()) throw std::invalid_argument("nearest_coset_point: empty representative set");
    const int n = static_cast<int>(target.size());
    const double qd = static_cast<double>(q);
    double best_d = std::numeric_limits<double>::infinity();
    Vec best;
    Vec cand(n);
    for (const Vec& w : words) {
        double dist = 0;
        for (int i = 0; i < n; ++i) {
            const double v = static_cast<double>(w[i]);
            double bc = v, bd = std::abs(target[i] - v);
            for (double c : {v - qd, v + qd}) {
                const double d = std::abs(target[i] - c);
                if (d < bd || (d == bd && c < bc)) {
                    bd = d;
                    bc = c;
                }
            }
            dist += bd * bd;
            cand[i] = static_cast<Int>(std::llround(bc));
        }
        if (dist < best_d || (dist == best_d && cand < best)) {
            best_d = dist;
            best = cand;
        }
    }
    return best;
}

MinDistance min_distance(const IntegerLattice& lat, const Caps& caps) {
    Int sq;
    if (lat.lift)
        sq = coset_min_sq(lat, caps);
    else
        sq = shortest_vectors(lat, caps).best_sq;
    return {sq, std::sqrt(static_cast<double>(sq))};
}

Int kissing_number(const IntegerLattice& lat, const Caps& caps) {
    if (lat.lift) return coset_kissing(lat, coset_min_sq(lat, caps), caps);
    ShortestResult res = shortest_vectors(lat, caps);
    return res.count;
}

double centre_density(const IntegerLattice& lat, const Caps& caps) {
    const MinDistance d = min_distance(lat, caps);
    return std::pow(d.value / 2.0, lat.dim) / static_cast<double>(lat.volume());
}

Vec quantize(const IntegerLattice& lat, const std::vector<double>& y, const Caps& caps) {
    if (static_cast<int>(y.size()) != lat.dim)
        throw std::invalid_argument("quantize: dimension mismatch");
    if (lat.lift) {
        const Int q = lat.lift->code.q;
        const double qd = static_cast<double>(q);
        Vec offset(lat.dim);
        std::vector<double> u(lat.dim);
        for (int i = 0; i < lat.dim; ++i) {
            const double f = std::floor(y[i] / qd);
            offset[i] = checked_mul(static_cast<Int>(f), q);
            u[i] = y[i] - f * qd;
        }
        std::shared_ptr<const Codebook> holder;
        const Codebook& book = materialized_book(lat, caps, holder);
        Vec z = nearest_coset_point(book.words, q, u);
        for (int i = 0; i < lat.dim; ++i) z[i] += offset[i];
        return z;
    }

    Enumerator en(lat, caps);
    // Babai rounding seeds the search radius.
    std::vector<double> tp(lat.dim, 0.0);
    for (int i = 0; i < lat.dim; ++i)
        for (int k = 0; k < lat.dim; ++k) tp[i] += en.qt[i][k] * y[k];
    Vec zb(lat.dim, 0);
    for (int i = lat.dim - 1; i >= 0; --i) {
        double c = tp[i];
        for (int j = i + 1; j < lat.dim; ++j) c -= en.r[i][j] * zb[j];
        zb[i] = static_cast<Int>(std::llround(c / en.r[i][i]));
    }
    const Vec seed = en.point_of(zb);
    double radius = 0;
    for (int i = 0; i < lat.dim; ++i) {
        const double d = y[i] - static_cast<double>(seed[i]);
        radius += d * d;
    }

    double best_d = std::numeric_limits<double>::infinity();
    Vec best;
    en.run(y, radius, [&](const Vec& z) {
        const Vec p = en.point_of(z);
        double dist = 0;
        for (int i = 0; i < lat.dim; ++i) {
            const double d = y[i] - static_cast<double>(p[i]);
            dist += d * d;
        }
        if (dist < best_d || (dist == best_d && p < best)) {
            best_d = dist;
            best = p;
        }
    });
    if (best.empty()) throw std::runtime_error("quantize: search returned no candidate");
    return best;
}

} // namespace lidx
