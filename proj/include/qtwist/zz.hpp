#pragma once
// Arbitrary-precision integer/rational helpers on top of GMP.

#include <gmpxx.h>
#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtwist {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// exact division, aborts in debug if not exact
inline Int divexact(const Int& a, const Int& b) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int isqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& a) {
    if (sgn(a) < 0) return false;
    return mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline bool is_probab_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline Int next_prime(const Int& n) {
    Int p;
    mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
    return p;
}

inline Int pow_int(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& a, long e) {
    if (e == 0) return Rat(1);
    Rat base = e > 0 ? a : Rat(1) / a;
    unsigned long n = e > 0 ? (unsigned long)e : (unsigned long)(-e);
    Rat r(1);
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

inline Int num(const Rat& q) { return Int(q.get_num()); }
inline Int den(const Rat& q) { return Int(q.get_den()); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Exact square root of a nonnegative rational, if it exists.
inline std::optional<Rat> rat_sqrt(const Rat& q) {
    if (sgn(q) < 0) return std::nullopt;
    Int n = num(q), d = den(q);
    if (!is_perfect_square(n) || !is_perfect_square(d)) return std::nullopt;
    return Rat(isqrt(n)) / Rat(isqrt(d));
}

// ---- small deterministic xorshift rng (for seeded randomized subroutines) ----
struct xorshift64 {
    uint64_t s;
    explicit xorshift64(uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

// ---- factorization-lite: squarefree part via trial division + Brent rho ----

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((unsigned __int128)a * b % m);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic Miller-Rabin base set for 64-bit inputs
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a % n, d, n);
        if (x <= 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

inline uint64_t brent_rho_u64(uint64_t n, xorshift64& rng) {
    if ((n & 1) == 0) return 2;
    while (true) {
        uint64_t y = rng.next() % (n - 2) + 1, c = rng.next() % (n - 1) + 1;
        uint64_t x = y, d = 1, q = 1, ys = y;
        const uint64_t m = 128;
        uint64_t r = 1;
        while (d == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
            for (uint64_t k = 0; k < r && d == 1; k += m) {
                ys = y;
                uint64_t lim = std::min(m, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                d = gcd_u64(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            d = 1;
            while (d == 1) {
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                d = gcd_u64(x > ys ? x - ys : ys - x, n);
            }
        }
        if (d != n) return d;
    }
}

inline void factor_u64(uint64_t n, std::vector<uint64_t>& out, xorshift64& rng) {
    if (n == 1) return;
    if (is_prime_u64(n)) { out.push_back(n); return; }
    uint64_t d = brent_rho_u64(n, rng);
    factor_u64(d, out, rng);
    factor_u64(n / d, out, rng);
}

} // namespace detail

// Squarefree part with sign: n = s * m^2 with s squarefree, sign(s) = sign(n).
// Trial division up to 10^5, then 64-bit Brent rho; larger leftover cofactors
// are handled only if they are perfect squares, prime, or fit in 64 bits
// (inputs here are quartic discriminants, far inside that range after trial
// division in every realistic case).
inline Int squarefree_part(Int n) {
    if (n == 0) return 0;
    int sign = sgn(n) < 0 ? -1 : 1;
    n = abs(n);
    Int sf = 1;
    for (uint64_t p = 2; p < 100000; p = (p == 2 ? 3 : p + 2)) {
        Int pp((unsigned long)p);
        if (n % pp != 0) continue;
        int e = 0;
        while (n % pp == 0) { n = divexact(n, pp); ++e; }
        if (e & 1) sf *= pp;
    }
    if (n != 1) {
        if (is_perfect_square(n)) {
            // contributes nothing
        } else if (is_probab_prime(n)) {
            sf *= n;
        } else if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
            xorshift64 rng(0x5eedULL);
            uint64_t v = mpz_get_ui(n.get_mpz_t());
            std::vector<uint64_t> fs;
            detail::factor_u64(v, fs, rng);
            std::vector<std::pair<uint64_t, int>> pe;
            for (uint64_t f : fs) {
                bool found = false;
                for (auto& [p, e] : pe)
                    if (p == f) { ++e; found = true; }
                if (!found) pe.emplace_back(f, 1);
            }
            for (auto& [p, e] : pe)
                if (e & 1) sf *= Int((unsigned long)p);
        } else {
            throw std::runtime_error("squarefree_part: cofactor too large to factor");
        }
    }
    return sign < 0 ? -sf : sf;
}

// ---- CRT and rational reconstruction ----

// x = r1 mod m1, x = r2 mod m2 (m1, m2 coprime); result mod m1*m2 in [0, m1*m2)
inline Int crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
    Int inv;
    if (!mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()))
        throw std::runtime_error("crt_pair: moduli not coprime");
    Int t = ((r2 - r1) * inv) % m2;
    if (sgn(t) < 0) t += m2;
    return r1 + m1 * t;
}

// Rational reconstruction: find p/q with x = p/q mod m, |p| <= nb, 0 < q <= db,
// gcd(q, m) = 1. Classic half-extended Euclid. Returns nullopt on failure.
inline std::optional<Rat> rat_reconstruct(Int x, const Int& m, const Int& nb, const Int& db) {
    x %= m;
    if (sgn(x) < 0) x += m;
    Int r0 = m, r1x = x, s0 = 0, s1 = 1;
    while (r1x > nb) {
        Int q = r0 / r1x;
        Int r2 = r0 - q * r1x;
        Int s2 = s0 - q * s1;
        r0 = r1x; r1x = r2;
        s0 = s1; s1 = s2;
    }
    Int p = r1x, q = s1;
    if (sgn(q) < 0) { p = -p; q = -q; }
    if (q == 0 || q > db) return std::nullopt;
    if (gcd(q, m) != 1) return std::nullopt;
    Rat res(p, q);
    res.canonicalize();
    return res;
}

// balanced default bounds: |p|, q <= sqrt(m/2)
inline std::optional<Rat> rat_reconstruct(const Int& x, const Int& m) {
    Int b = isqrt(m / 2);
    return rat_reconstruct(x, m, b, b);
}

// Deterministic sequence of ~62-bit primes for CRT work.
struct prime_source {
    Int cur;
    prime_source() : cur(Int(1) << 62) {}
    explicit prime_source(const Int& start) : cur(start) {}
    uint64_t next() {
        cur = next_prime(cur);
        return mpz_get_ui(cur.get_mpz_t());
    }
};

} // namespace qtwist
