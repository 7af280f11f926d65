#include "qtwist/unipoly.hpp"
#include "qtwist/modp.hpp"

namespace qtwist {

namespace {

// fixed deterministic 62-bit primes for certificates
std::vector<uint64_t> cert_primes(size_t n, const ZPoly& avoid_lc) {
    prime_source src;
    std::vector<uint64_t> ps;
    while (ps.size() < n) {
        uint64_t p = src.next();
        if (modp::to_u64(avoid_lc.lc(), p) == 0) continue;
        ps.push_back(p);
    }
    return ps;
}

modp::PolyP reduce_mod(const ZPoly& f, uint64_t p) {
    modp::PolyP r;
    r.reserve(f.c.size());
    for (const auto& v : f.c) r.push_back(modp::to_u64(v, p));
    modp::trim(r);
    return r;
}

} // namespace

bool is_squarefree(const ZPoly& f) {
    if (f.is_zero()) return false;
    if (f.degree() <= 1) return true;
    ZPoly fp = f.derivative();
    for (uint64_t p : cert_primes(5, f)) {
        auto a = reduce_mod(f, p), b = reduce_mod(fp, p);
        if (b.empty()) continue;
        auto g = modp::gcd_poly(a, b, p);
        if (modp::deg(g) == 0) return true; // certificate
    }
    // all tried primes were unlucky (or f genuinely has a repeated factor)
    return zpoly_gcd(f, fp).degree() == 0;
}

// All rational roots, found by Hensel-lifting the roots of the squarefree part
// modulo a good prime and reconstructing p/q against the rational-root-theorem
// bound |p| <= |c0|, |q| <= |lc|. Complete for arbitrary coefficient sizes.
std::vector<Rat> rational_roots(const ZPoly& f_in) {
    if (f_in.is_zero()) throw std::runtime_error("rational_roots: zero polynomial");
    ZPoly f = f_in;
    std::vector<Rat> out;
    // strip powers of x
    size_t shift = 0;
    while (shift < f.c.size() && f.c[shift] == 0) ++shift;
    if (shift > 0) {
        out.emplace_back(0);
        f.c.erase(f.c.begin(), f.c.begin() + (long)shift);
    }
    if (f.degree() <= 0) return out;
    if (f.degree() == 1) {
        Rat r(-f.c[0], f.c[1]);
        r.canonicalize();
        out.push_back(r);
        std::sort(out.begin(), out.end());
        return out;
    }

    ZPoly g = primitive_part(f);
    {   // squarefree part: g / gcd(g, g') (exact over Z by Gauss's lemma)
        ZPoly d = zpoly_gcd(g, g.derivative());
        if (d.degree() > 0) g = exact_div(g, d);
    }
    ZPoly gp = g.derivative();

    // prime with g squarefree mod p (deg preserved); exists since disc(g) != 0
    prime_source src;
    uint64_t p = 0;
    modp::PolyP gm;
    for (int tries = 0; tries < 64; ++tries) {
        uint64_t q = src.next();
        if (modp::to_u64(g.lc(), q) == 0) continue;
        gm = reduce_mod(g, q);
        auto gmd = reduce_mod(gp, q);
        if (gmd.empty()) continue;
        if (modp::deg(modp::gcd_poly(gm, gmd, q)) == 0) {
            p = q;
            break;
        }
    }
    if (p == 0) throw std::runtime_error("rational_roots: no good prime found");

    // every rational root r/s (lowest terms) has s | lc and r | c0, so lc*(r/s)
    // is an integer of absolute value <= |c0|*|lc|; a balanced residue mod
    // m > 2*|c0|*|lc| recovers it exactly
    const Int bound = 2 * abs(g.c[0]) * abs(g.lc()) + 1;

    auto eval_mod = [](const ZPoly& h, const Int& x, const Int& m) {
        Int acc = 0;
        for (auto it = h.c.rbegin(); it != h.c.rend(); ++it) {
            acc = acc * x + *it;
            mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
        }
        return acc;
    };
    auto inv_mod = [](const Int& a, const Int& m) {
        Int r;
        if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
            throw std::runtime_error("rational_roots: lift lost invertibility");
        return r;
    };

    auto verify = [&](const Rat& cand) {
        Rat acc(0);
        for (auto it = g.c.rbegin(); it != g.c.rend(); ++it) acc = acc * cand + Rat(*it);
        return acc == 0;
    };

    for (uint64_t r0 : modp::roots_mod_p(gm, p)) {
        Int m(p), z(r0);
        while (m < bound) {  // Newton step doubles the modulus
            Int m2 = m * m;
            Int fz = eval_mod(g, z, m2);
            Int dz = eval_mod(gp, z, m2);
            z = z - fz * inv_mod(dz, m2);
            mpz_fdiv_r(z.get_mpz_t(), z.get_mpz_t(), m2.get_mpz_t());
            m = m2;
        }
        Int w = (g.lc() * z) % m;
        if (w < 0) w += m;
        if (2 * w > m) w -= m;  // balanced lift of lc*root
        Rat cand(w, g.lc());
        cand.canonicalize();
        if (verify(cand)) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace qtwist
