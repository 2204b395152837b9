#include <lidx/common.hpp>

#include <cmath>
#include <limits>

namespace lidx {

const Caps& default_caps() {
    static const Caps caps{};
    return caps;
}

Int mod_floor(Int a, Int q) {
    if (q <= 0) throw std::invalid_argument("mod_floor: modulus must be positive");
    Int r = a % q;
    return r < 0 ? r + q : r;
}

Int floor_div(Int a, Int b) {
    if (b == 0) throw std::invalid_argument("floor_div: division by zero");
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Int checked_mul(Int a, Int b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > std::numeric_limits<Int>::max() || p < std::numeric_limits<Int>::min())
        throw std::overflow_error("checked_mul: 64-bit overflow");
    return static_cast<Int>(p);
}

Int checked_pow(Int base, int exponent) {
    if (exponent < 0) throw std::invalid_argument("checked_pow: negative exponent");
    Int r = 1;
    for (int i = 0; i < exponent; ++i) r = checked_mul(r, base);
    return r;
}

Int isqrt(Int v) {
    if (v < 0) throw std::invalid_argument("isqrt: negative input");
    if (v < 2) return v;
    Int s = static_cast<Int>(std::sqrt(static_cast<double>(v)));
    while (s > 0 && s * s > v) --s;
    while ((s + 1) * (s + 1) <= v) ++s;
    return s;
}

Int gcd_nonneg(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int norm_sq(const Vec& v) {
    Int acc = 0;
    for (Int c : v) acc += checked_mul(c, c);
    return acc;
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace lidx
