#pragma once
// Dense univariate polynomials over an exact ring, lowest degree first.
// Resultants/gcds over integral domains use the subresultant PRS, so they
// stay fraction-free over Z and over Z[x] (nested polynomials).

#include "qtwist/zz.hpp"

#include <functional>
#include <vector>

namespace qtwist {

template <class R>
struct UniPoly {
    std::vector<R> c; // c[i] = coefficient of x^i

    UniPoly() = default;
    UniPoly(int v) { c.push_back(R(v)); trim(); } // ring-literal constant
    explicit UniPoly(std::vector<R> cs) : c(std::move(cs)) { trim(); }
    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(const R& v) {
        UniPoly f;
        f.c.push_back(v);
        f.trim();
        return f;
    }
    static UniPoly x() { return UniPoly(std::vector<R>{R(0), R(1)}); }

    void trim() {
        while (!c.empty() && c.back() == R(0)) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; } // -1 for the zero polynomial
    const R& lc() const { return c.back(); }
    R coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : R(0); }

    bool operator==(const UniPoly& o) const { return c == o.c; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly operator+(const UniPoly& o) const {
        UniPoly r;
        r.c.resize(std::max(c.size(), o.c.size()), R(0));
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
        r.trim();
        return r;
    }
    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }
    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly();
        UniPoly r;
        r.c.assign(c.size() + o.c.size() - 1, R(0));
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == R(0)) continue;
            for (size_t j = 0; j < o.c.size(); ++j)
                r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
        }
        r.trim();
        return r;
    }
    UniPoly operator*(const R& s) const {
        UniPoly r = *this;
        for (auto& v : r.c) v = v * s;
        r.trim();
        return r;
    }

    UniPoly derivative() const {
        UniPoly r;
        for (size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * R((long)i));
        r.trim();
        return r;
    }

    // substitute x -> x^m
    UniPoly compose_power(int m) const {
        UniPoly r;
        if (is_zero()) return r;
        r.c.assign((size_t)(degree() * m + 1), R(0));
        for (size_t i = 0; i < c.size(); ++i) r.c[i * m] = c[i];
        r.trim();
        return r;
    }

    // Horner evaluation in any ring with T = T*T, T = T + T, and T(R) conversion
    template <class T>
    T eval(const T& x) const {
        T r(R(0));
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + T(*it);
        return r;
    }
};

using ZPoly = UniPoly<Int>;
using QPoly = UniPoly<Rat>;

inline ZPoly zpoly(std::initializer_list<long> lowest_first) {
    std::vector<Int> v;
    for (long x : lowest_first) v.emplace_back(x);
    return ZPoly(std::move(v));
}

inline Int content(const ZPoly& f) {
    Int g = 0;
    for (const auto& v : f.c) g = gcd(g, v);
    return g;
}

inline ZPoly primitive_part(const ZPoly& f) {
    Int g = content(f);
    if (g == 0 || g == 1) return f;
    ZPoly r = f;
    for (auto& v : r.c) v = divexact(v, g);
    return r;
}

inline ZPoly q_clear_denominators(const QPoly& f, Int* den_out = nullptr) {
    Int d = 1;
    for (const auto& v : f.c) d = lcm(d, den(v));
    ZPoly r;
    for (const auto& v : f.c) r.c.push_back(num(v) * divexact(d, den(v)));
    r.trim();
    if (den_out) *den_out = d;
    return r;
}

inline QPoly to_qpoly(const ZPoly& f) {
    QPoly r;
    for (const auto& v : f.c) r.c.emplace_back(v);
    r.trim();
    return r;
}

// ---- generic integral-domain helpers for the subresultant PRS ----

template <class R>
R ring_pow(R base, int e) {
    R r = R(1);
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// exact division hooks (Int and nested UniPoly<Int>)
inline Int exact_div(const Int& a, const Int& b) { return divexact(a, b); }

template <class R>
UniPoly<R> exact_div(const UniPoly<R>& a, const UniPoly<R>& b);

// pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r, deg r < deg b
template <class R>
UniPoly<R> pseudo_rem(UniPoly<R> a, const UniPoly<R>& b) {
    if (b.is_zero()) throw std::runtime_error("pseudo_rem: division by zero");
    int d = a.degree() - b.degree() + 1;
    if (d < 0) return a;
    const R lb = b.lc();
    int count = 0;
    while (!a.is_zero() && a.degree() >= b.degree()) {
        int k = a.degree() - b.degree();
        R la = a.lc();
        UniPoly<R> shifted;
        shifted.c.assign((size_t)k, R(0));
        for (const auto& v : b.c) shifted.c.push_back(v);
        a = a * lb - shifted * la;
        ++count;
    }
    // pad multiplier so exactly lb^d is applied overall
    for (; count < d; ++count) a = a * lb;
    return a;
}

// exact polynomial division over a domain (throws if not exact)
template <class R>
UniPoly<R> exact_div(const UniPoly<R>& a, const UniPoly<R>& b) {
    if (b.is_zero()) throw std::runtime_error("exact_div: division by zero");
    UniPoly<R> rem = a, quo;
    if (a.is_zero()) return quo;
    quo.c.assign((size_t)std::max(0, a.degree() - b.degree() + 1), R(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        R q = exact_div(rem.lc(), b.lc());
        int k = rem.degree() - b.degree();
        quo.c[(size_t)k] = q;
        UniPoly<R> shifted;
        shifted.c.assign((size_t)k, R(0));
        for (const auto& v : b.c) shifted.c.push_back(v);
        rem = rem - shifted * q;
        if (!rem.is_zero() && rem.degree() >= b.degree() + k)
            throw std::runtime_error("exact_div: not exact");
    }
    if (!rem.is_zero()) throw std::runtime_error("exact_div: nonzero remainder");
    quo.trim();
    return quo;
}

// Resultant via the subresultant PRS over an integral domain.
// Convention: Res(p, q) = lc(p)^deg(q) lc(q)^deg(p) prod(alpha_i - beta_j),
// the Sylvester-determinant value; e.g. Res(x-3, x-5) = 3 - 5 = -2, and
// Res(p, q) = (-1)^(deg p * deg q) Res(q, p).
template <class R>
R resultant(UniPoly<R> a, UniPoly<R> b) {
    if (a.is_zero() || b.is_zero())
        throw std::runtime_error("resultant: zero polynomial");
    bool negate = false;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
        std::swap(a, b);
    }
    if (b.degree() == 0) {
        R r = ring_pow(b.lc(), a.degree());
        return negate ? -r : r;
    }
    R g = R(1), h = R(1);
    while (true) {
        int da = a.degree(), db = b.degree();
        int delta = da - db;
        if ((da & 1) && (db & 1)) negate = !negate;
        UniPoly<R> r = pseudo_rem(a, b);
        a = b;
        if (r.is_zero()) return R(0); // common factor (a nonconstant here)
        R denom = g * ring_pow(h, delta);
        for (auto& v : r.c) v = exact_div(v, denom);
        r.trim();
        b = r;
        g = a.lc();
        if (delta == 1)
            h = g;
        else if (delta > 1)
            h = exact_div(ring_pow(g, delta), ring_pow(h, delta - 1));
        if (b.degree() <= 0) break;
    }
    int dA = a.degree();
    R res = ring_pow(b.lc(), dA);
    if (dA > 1) res = exact_div(res, ring_pow(h, dA - 1));
    return negate ? -res : res;
}

// integer-poly gcd via primitive PRS (adequate sizes here)
inline ZPoly zpoly_gcd(ZPoly a, ZPoly b) {
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        ZPoly r = primitive_part(pseudo_rem(a, b));
        a = b;
        b = r;
    }
    if (!a.is_zero() && sgn(a.lc()) < 0) a = a * Int(-1);
    return a;
}

// Certificate that an integer polynomial is squarefree: gcd(f, f') has degree 0
// modulo a prime not dividing lc; deg gcd_p >= deg gcd_Q, so degree 0 mod one
// prime is a proof. Tries a fixed prime list, returns false only if the gcd is
// genuinely nontrivial (checked exactly as a fallback).
bool is_squarefree(const ZPoly& f);

// Complete list of rational roots of a nonzero integer polynomial, without
// integer factorization: roots mod three 62-bit primes + CRT + rational
// reconstruction + exact verification. Completeness holds for roots p/q with
// |p|, q below ~10^27 (far beyond anything arising here); every returned root
// is verified exactly.
std::vector<Rat> rational_roots(const ZPoly& f);

inline std::vector<Int> integer_roots(const ZPoly& f) {
    std::vector<Int> out;
    for (const auto& r : rational_roots(f))
        if (is_integer(r)) out.push_back(num(r));
    return out;
}

} // namespace qtwist
