#pragma once
// Arithmetic mod word-size primes: polynomials, matrices, root finding.
// Used for CRT-accelerated kernels, squarefreeness certificates and
// factorization-free rational root extraction.

#include "qtwist/zz.hpp"

#include <vector>

namespace qtwist::modp {

using u64 = uint64_t;

inline u64 add(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mul(u64 a, u64 b, u64 p) { return detail::mulmod_u64(a, b, p); }
inline u64 pw(u64 a, u64 e, u64 p) { return detail::powmod_u64(a, e, p); }
inline u64 inv(u64 a, u64 p) { return pw(a % p, p - 2, p); }
inline u64 neg(u64 a, u64 p) { return a ? p - a : 0; }

inline u64 to_u64(const Int& a, u64 p) {
    Int r = a % Int(p);
    if (sgn(r) < 0) r += Int(p);
    return mpz_get_ui(r.get_mpz_t());
}

inline u64 rat_to_u64(const Rat& q, u64 p) {
    u64 d = to_u64(den(q), p);
    if (d == 0) throw std::runtime_error("rat_to_u64: denominator divisible by p");
    return mul(to_u64(num(q), p), inv(d, p), p);
}

// ---- dense polynomials over F_p, lowest degree first ----
using PolyP = std::vector<u64>;

inline void trim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const PolyP& f) { return (int)f.size() - 1; }

inline PolyP mul_poly(const PolyP& a, const PolyP& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    PolyP c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = add(c[i + j], mul(a[i], b[j], p), p);
    }
    trim(c);
    return c;
}

inline PolyP rem_poly(PolyP a, const PolyP& b, u64 p) {
    trim(a);
    if (b.empty()) throw std::runtime_error("rem_poly: division by zero");
    u64 binv = inv(b.back(), p);
    while ((int)a.size() >= (int)b.size()) {
        u64 c = mul(a.back(), binv, p);
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[off + i] = sub(a[off + i], mul(c, b[i], p), p);
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline PolyP gcd_poly(PolyP a, PolyP b, u64 p) {
    trim(a); trim(b);
    while (!b.empty()) {
        PolyP r = rem_poly(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 c = inv(a.back(), p);
        for (auto& x : a) x = mul(x, c, p);
    }
    return a;
}

// x^e mod f
inline PolyP xpow_mod(const Int& e, const PolyP& f, u64 p) {
    PolyP r{1}, x{0, 1};
    x = rem_poly(x, f, p);
    Int ee = e;
    std::vector<int> bits;
    while (ee > 0) {
        bits.push_back(mpz_tstbit(ee.get_mpz_t(), 0));
        ee >>= 1;
    }
    for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
        r = rem_poly(mul_poly(r, r, p), f, p);
        if (*it) r = rem_poly(mul_poly(r, x, p), f, p);
    }
    return r;
}

inline u64 eval_poly(const PolyP& f, u64 x, u64 p) {
    u64 r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = add(mul(r, x, p), *it, p);
    return r;
}

// All roots in F_p of f (each once, multiplicity ignored), via gcd with x^p - x
// and deterministic-seeded equal-degree splitting.
inline std::vector<u64> roots_mod_p(const PolyP& f_in, u64 p) {
    PolyP f = f_in;
    trim(f);
    std::vector<u64> out;
    if (f.empty()) throw std::runtime_error("roots_mod_p: zero polynomial");
    if (deg(f) == 0) return out;
    PolyP xp = xpow_mod(Int((unsigned long)p), f, p);              // x^p mod f
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = sub(xp[1], 1, p);                                      // x^p - x
    PolyP g = gcd_poly(f, xp, p);                                  // product of (x - root)
    if (g.empty() || deg(g) == 0) return out;
    if (eval_poly(g, 0, p) == 0) {
        out.push_back(0);
        // divide off x
        PolyP q(g.begin() + 1, g.end());
        g = q;
    }
    // split g (distinct nonzero roots) recursively
    xorshift64 rng(0xABCDEF12345ULL ^ p);
    std::vector<PolyP> stack{g};
    while (!stack.empty()) {
        PolyP h = stack.back();
        stack.pop_back();
        trim(h);
        if (h.empty() || deg(h) == 0) continue;
        if (deg(h) == 1) {
            // monic after gcd; root = -c0/c1
            u64 r = mul(neg(h[0], p), inv(h[1], p), p);
            out.push_back(r);
            continue;
        }
        // random a: gcd((x+a)^((p-1)/2) - 1, h)
        u64 a = rng.below(p);
        PolyP xa{a, 1};
        u64 e = (p - 1) / 2;
        PolyP acc{1};
        PolyP base = rem_poly(xa, h, p);
        while (e) {
            if (e & 1) acc = rem_poly(mul_poly(acc, base, p), h, p);
            base = rem_poly(mul_poly(base, base, p), h, p);
            e >>= 1;
        }
        if (!acc.empty()) acc[0] = sub(acc[0], 1, p);
        PolyP d1 = gcd_poly(h, acc, p);
        if (d1.empty() || deg(d1) == 0 || deg(d1) == deg(h)) {
            stack.push_back(h); // retry with another a
            continue;
        }
        // h / d1
        PolyP q;
        {
            PolyP quo(deg(h) - deg(d1) + 1, 0);
            PolyP rem = h;
            u64 linv = inv(d1.back(), p);
            while ((int)rem.size() >= (int)d1.size() && !rem.empty()) {
                u64 c = mul(rem.back(), linv, p);
                size_t off = rem.size() - d1.size();
                quo[off] = c;
                for (size_t i = 0; i < d1.size(); ++i)
                    rem[off + i] = sub(rem[off + i], mul(c, d1[i], p), p);
                trim(rem);
            }
            q = quo;
        }
        stack.push_back(d1);
        stack.push_back(q);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- dense matrices over F_p ----
struct MatP {
    int rows = 0, cols = 0;
    std::vector<u64> a;
    MatP() = default;
    MatP(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}
    u64& at(int i, int j) { return a[(size_t)i * cols + j]; }
    u64 at(int i, int j) const { return a[(size_t)i * cols + j]; }
};

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> rref(MatP& m, u64 p) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        u64 d = inv(m.at(r, c), p);
        for (int j = c; j < m.cols; ++j) m.at(r, j) = mul(m.at(r, j), d, p);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || !m.at(i, c)) continue;
            u64 f = m.at(i, c);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = sub(m.at(i, j), mul(f, m.at(r, j), p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Kernel basis in the canonical free-column parameterization: one vector per
// free column j, with v[j] = 1 and v[pivot_i] = -rref[i][j].
inline std::vector<std::vector<u64>> kernel_mod_p(MatP m, u64 p, std::vector<int>* pivots_out = nullptr) {
    auto pivots = rref(m, p);
    if (pivots_out) *pivots_out = pivots;
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<u64>> basis;
    for (int j = 0; j < m.cols; ++j) {
        if (is_pivot[j]) continue;
        std::vector<u64> v(m.cols, 0);
        v[j] = 1;
        for (size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = neg(m.at((int)i, j), p);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace qtwist::modp
