#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace foxlie {

using Int = boost::multiprecision::cpp_int;

// Coefficient ring: the integers (modulus == 0) or the integers mod a prime p.
// Composite moduli are handled separately by the congruence-group code, which
// works with plain integer matrices reduced on demand.
struct Ring {
    unsigned modulus = 0;

    bool is_integers() const { return modulus == 0; }
    bool is_modular() const { return modulus != 0; }

    bool operator==(const Ring& o) const { return modulus == o.modulus; }
    bool operator!=(const Ring& o) const { return modulus != o.modulus; }

    // Canonical representative in [0, modulus); identity over the integers.
    Int normalize(Int c) const {
        if (modulus == 0) return c;
        c %= modulus;
        if (c < 0) c += modulus;
        return c;
    }

    std::string str() const {
        return modulus == 0 ? "Z" : "F" + std::to_string(modulus);
    }
};

inline Ring integers() { return Ring{0}; }

inline Ring mod_p(unsigned p) {
    if (p < 2) throw std::invalid_argument("mod_p: modulus must be at least 2");
    return Ring{p};
}

inline bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// g = gcd(a, b) >= 0 together with s, t such that s*a + t*b = g.
inline Int xgcd(const Int& a, const Int& b, Int& s, Int& t) {
    Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1; r0 = r1; r1 = r2;
        Int s2 = s0 - q * s1; s0 = s1; s1 = s2;
        Int t2 = t0 - q * t1; t0 = t1; t1 = t2;
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    s = s0; t = t0;
    return r0;
}

inline Int gcd_int(const Int& a, const Int& b) {
    Int x = a < 0 ? Int(-a) : a, y = b < 0 ? Int(-b) : b;
    while (y != 0) { Int r = x % y; x = y; y = r; }
    return x;
}

// Floor division (round toward minus infinity), used to keep reduced
// Hermite-form entries in [0, pivot).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Deterministic 64-bit generator (splitmix64).  The standard distributions
// are implementation-defined, so bounded sampling is done by hand to keep
// fixed-seed runs byte-identical everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform-ish in [0, bound); bias is irrelevant for test sampling.
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    long long range(long long lo, long long hi) {  // inclusive bounds
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return next() & 1; }

private:
    std::uint64_t state_;
};

}  // namespace foxlie
