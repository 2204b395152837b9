#include <lidx/ring_arith.hpp>

#include <algorithm>
#include <string>

namespace lidx {

bool is_prime(Int p) {
    if (p >= (Int(1) << 31))
        throw std::invalid_argument("is_prime: input exceeds the 2^31 trial-division cap");
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (Int d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

PrimeSet make_prime_set(const std::vector<Int>& primes) {
    if (primes.empty()) throw std::invalid_argument("make_prime_set: empty prime list");
    PrimeSet ps;
    ps.primes = primes;
    for (Int p : primes) {
        if (!is_prime(p))
            throw std::invalid_argument("make_prime_set: " + std::to_string(p) + " is not prime");
        ps.q = checked_mul(ps.q, p);
    }
    std::vector<Int> sorted = primes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("make_prime_set: primes must be pairwise distinct");
    for (Int p : primes) ps.cofactors.push_back(ps.q / p);
    return ps;
}

ExtendedGcd extended_gcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_u = 1, u = 0;
    Int old_v = 0, v = 1;
    while (r != 0) {
        Int qt = old_r / r;
        Int t = old_r - qt * r; old_r = r; r = t;
        t = old_u - qt * u; old_u = u; u = t;
        t = old_v - qt * v; old_v = v; v = t;
    }
    if (old_r < 0) { old_r = -old_r; old_u = -old_u; old_v = -old_v; }
    return {old_r, old_u, old_v};
}

Int mod_inverse(Int a, Int m) {
    if (m < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
    ExtendedGcd e = extended_gcd(mod_floor(a, m), m);
    if (e.g != 1)
        throw std::invalid_argument("mod_inverse: argument not coprime to modulus");
    return mod_floor(e.u, m);
}

CrtBasis crt_basis(const PrimeSet& ps) {
    CrtBasis basis;
    const Int q = ps.q;
    for (int j = 0; j < ps.size(); ++j) {
        const Int p = ps.primes[j];
        const Int m = ps.cofactors[j];
        const Int x = mod_inverse(m, p);
        basis.bezout.push_back(x);
        basis.idempotents.push_back(mod_floor(checked_mul(x, m), q));
    }
    Int sum = 0;
    for (int j = 0; j < ps.size(); ++j) {
        const Int e = basis.idempotents[j];
        if (mod_floor(e, ps.primes[j]) != 1)
            throw std::runtime_error("crt_basis: idempotent not 1 at its own level");
        for (int i = 0; i < ps.size(); ++i)
            if (i != j && mod_floor(e, ps.primes[i]) != 0)
                throw std::runtime_error("crt_basis: idempotent not 0 at another level");
        if (mod_floor(checked_mul(e, e), q) != e)
            throw std::runtime_error("crt_basis: idempotent not idempotent");
        sum = mod_floor(sum + e, q);
    }
    if (sum != mod_floor(1, q))
        throw std::runtime_error("crt_basis: idempotents do not sum to 1");
    return basis;
}

namespace {

void sum_of_squares_rec(Int remaining, int slots, Int min_coord, Vec& partial,
                        std::vector<SquareDecomposition>& out, Int target) {
    if (slots == 1) {
        Int s = isqrt(remaining);
        if (s >= min_coord && s * s == remaining) {
            partial.push_back(s);
            out.push_back({target, partial});
            partial.pop_back();
        }
        return;
    }
    // coordinates are nondecreasing, so v^2 * slots <= remaining bounds v
    for (Int v = min_coord; v * v * slots <= remaining; ++v) {
        partial.push_back(v);
        sum_of_squares_rec(remaining - v * v, slots - 1, v, partial, out, target);
        partial.pop_back();
    }
}

} // namespace

std::vector<SquareDecomposition> sum_of_squares(Int target, int n_squares, const Caps& caps) {
    if (target < 1) throw std::invalid_argument("sum_of_squares: target must be >= 1");
    if (n_squares < 1 || n_squares > 8)
        throw std::invalid_argument("sum_of_squares: coordinate count must be in [1, 8]");
    if (target > caps.sum_of_squares_max_target)
        throw resource_error("sum_of_squares: target exceeds cap");
    std::vector<SquareDecomposition> out;
    Vec partial;
    sum_of_squares_rec(target, n_squares, 0, partial, out, target);
    return out;
}

std::vector<CollinearSolution> scalar_collinear(const Vec& x, Int modulus, const Caps& caps) {
    if (modulus < 2) throw std::invalid_argument("scalar_collinear: modulus must be >= 2");
    if (modulus > caps.scalar_collinear_max_modulus)
        throw resource_error("scalar_collinear: modulus exceeds cap");
    if (x.empty()) throw std::invalid_argument("scalar_collinear: empty vector");

    const Int P = modulus;
    Vec xm(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xm[i] = mod_floor(x[i], P);

    std::vector<CollinearSolution> out;
    for (Int mu = 1; mu < P; ++mu) {
        if (gcd_nonneg(mu, P) != 1) continue;
        Vec b(x.size());
        Int nsq = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            Int r = mod_floor(checked_mul(mu, xm[i]), P);
            if (2 * r > P) r -= P;
            b[i] = r;
            nsq += r * r;
        }
        if (nsq == P) out.push_back({mod_inverse(mu, P), std::move(b)});
    }
    std::sort(out.begin(), out.end(),
              [](const CollinearSolution& a, const CollinearSolution& b) { return a.lambda < b.lambda; });
    return out;
}

} // namespace lidx
