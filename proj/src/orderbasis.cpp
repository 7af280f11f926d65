#include "qtwist/orderbasis.hpp"
#include "qtwist/modp.hpp"
#include "qtwist/error.hpp"

#include <algorithm>

namespace qtwist {

namespace {

// lattice rows (over denominator D) -> full OrderBasis with transform matrices
OrderBasis basis_from_lattice(const NumberField* L, const IntMat& H, const Int& D) {
    const int d = L->deg;
    if (H.rows != d) fail_internal("OrderRankLoss", "order lattice lost full rank");
    OrderBasis b;
    b.to_power = QMat(d, d);
    for (int j = 0; j < d; ++j) {
        std::vector<Int> num((size_t)d);
        for (int i = 0; i < d; ++i) {
            num[(size_t)i] = H.at(j, i);
            Rat q(H.at(j, i), D);
            q.canonicalize();
            b.to_power.at(i, j) = q;
        }
        b.elements.push_back(NFElem::from_coords(L, std::move(num), D));
    }
    b.from_power = linalg::inverse(b.to_power);
    return b;
}

std::pair<IntMat, Int> lattice_of_elements(const std::vector<NFElem>& els) {
    const int d = (int)els.size();
    Int D = 1;
    for (const auto& e : els) D = lcm(D, e.den);
    IntMat M(d, d);
    for (int j = 0; j < d; ++j) {
        const Int s = divexact(D, els[(size_t)j].den);
        for (int i = 0; i < d; ++i) M.at(j, i) = els[(size_t)j].num[(size_t)i] * s;
    }
    IntMat H = linalg::hnf_rows(M);
    // strip common content shared with D
    Int g = D;
    for (int i = 0; i < H.rows && g > 1; ++i)
        for (int j = 0; j < H.cols && g > 1; ++j) g = gcd(g, H.at(i, j));
    if (g > 1) {
        for (int i = 0; i < H.rows; ++i)
            for (int j = 0; j < H.cols; ++j) H.at(i, j) = divexact(H.at(i, j), g);
        D = divexact(D, g);
    }
    return {std::move(H), std::move(D)};
}

Int hnf_det(const IntMat& H) {
    Int det = 1;
    for (int i = 0; i < H.rows; ++i) det *= H.at(i, i);
    return det;
}

// structure constants in the given basis; rational input coords must be integral
std::vector<std::vector<std::vector<Int>>> mult_table(const OrderBasis& b) {
    const int d = (int)b.elements.size();
    std::vector<std::vector<std::vector<Int>>> T(
        (size_t)d, std::vector<std::vector<Int>>((size_t)d));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            NFElem prod = b.elements[(size_t)i] * b.elements[(size_t)j];
            auto v = b.coords_of(prod);
            std::vector<Int> vi((size_t)d);
            for (int k = 0; k < d; ++k) {
                if (!is_integer(v[(size_t)k]))
                    fail_internal("OrderNotClosed",
                                  "order basis not multiplicatively closed");
                vi[(size_t)k] = num(v[(size_t)k]);
            }
            T[(size_t)i][(size_t)j] = vi;
            T[(size_t)j][(size_t)i] = std::move(vi);
        }
    return T;
}

using MultT = std::vector<std::vector<std::vector<Int>>>;

std::vector<uint64_t> alg_mul_mod(const std::vector<uint64_t>& x,
                                  const std::vector<uint64_t>& y, const MultT& T,
                                  uint64_t p) {
    const int d = (int)x.size();
    std::vector<uint64_t> r((size_t)d, 0);
    for (int i = 0; i < d; ++i) {
        if (x[(size_t)i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (y[(size_t)j] == 0) continue;
            uint64_t s = modp::mul(x[(size_t)i], y[(size_t)j], p);
            const auto& t = T[(size_t)i][(size_t)j];
            for (int k = 0; k < d; ++k) {
                uint64_t c = modp::to_u64(t[(size_t)k], p);
                if (c) r[(size_t)k] = modp::add(r[(size_t)k], modp::mul(s, c, p), p);
            }
        }
    }
    return r;
}

std::vector<uint64_t> alg_pow_mod(std::vector<uint64_t> x, long e, const MultT& T,
                                  const OrderBasis& b, uint64_t p) {
    // identity = coords of 1 in the basis
    auto one_q = b.coords_of(NFElem(b.elements[0].F, Rat(1)));
    std::vector<uint64_t> acc(one_q.size());
    for (size_t i = 0; i < one_q.size(); ++i) acc[i] = modp::rat_to_u64(one_q[i], p);
    while (e > 0) {
        if (e & 1) acc = alg_mul_mod(acc, x, T, p);
        e >>= 1;
        if (e) x = alg_mul_mod(x, x, T, p);
    }
    return acc;
}

} // namespace

NFElem OrderBasis::elem_from(const std::vector<Rat>& v) const {
    auto x = to_power.apply(v);
    Int den = 1;
    for (const auto& q : x) den = lcm(den, Int(q.get_den()));
    std::vector<Int> numv(x.size());
    for (size_t i = 0; i < x.size(); ++i)
        numv[i] = Int(x[i].get_num()) * divexact(den, Int(x[i].get_den()));
    return NFElem::from_coords(elements[0].F, std::move(numv), den);
}

std::pair<IntMat, Int> OrderBasis::lattice_key() const { return lattice_of_elements(elements); }

OrderBasis power_order(const NumberField* L) {
    const int d = L->deg;
    OrderBasis b;
    b.to_power = QMat::identity(d);
    b.from_power = QMat::identity(d);
    for (int j = 0; j < d; ++j) {
        std::vector<Int> v((size_t)d, Int(0));
        v[(size_t)j] = 1;
        b.elements.push_back(NFElem::from_coords(L, std::move(v)));
    }
    Int res = resultant(L->minpoly, L->minpoly.derivative());
    long dd = d;
    b.discriminant = ((dd * (dd - 1) / 2) % 2 == 0) ? res : -res;
    return b;
}

OrderBasis p_maximal_refine(const NumberField* L, const OrderBasis& basis, long p) {
    const int d = L->deg;
    const uint64_t up = (uint64_t)p;
    long k = 1;
    {
        Int pk(p);
        while (pk < d) {
            pk *= p;
            ++k;
        }
    }

    auto [H, D] = basis.lattice_key();
    Int lat_det = hnf_det(H);
    Int disc = basis.discriminant;

    while (true) {
        OrderBasis cur = basis_from_lattice(L, H, D);
        MultT T = mult_table(cur);

        // radical of O/pO = kernel of x -> x^(p^k), p^k >= dim
        modp::MatP F(d, d);
        for (int j = 0; j < d; ++j) {
            std::vector<uint64_t> e((size_t)d, 0);
            e[(size_t)j] = 1;
            auto ppow = alg_pow_mod(e, p, T, cur, up);
            for (int i = 0; i < d; ++i) F.at(i, j) = ppow[(size_t)i];
        }
        // F^k (composition of Frobenius)
        modp::MatP Fk = F;
        for (long s = 1; s < k; ++s) {
            modp::MatP N(d, d);
            for (int i = 0; i < d; ++i)
                for (int l = 0; l < d; ++l) {
                    uint64_t acc = 0;
                    for (int j = 0; j < d; ++j)
                        acc = modp::add(acc, modp::mul(F.at(i, j), Fk.at(j, l), up), up);
                    N.at(i, l) = acc;
                }
            Fk = std::move(N);
        }
        auto rad = modp::kernel_mod_p(Fk, up);

        // ideal I = pO + radical lifts, as HNF lattice in basis coords
        IntMat IM((int)rad.size() + d, d);
        for (int i = 0; i < d; ++i) IM.at(i, i) = p;
        for (size_t r = 0; r < rad.size(); ++r)
            for (int j = 0; j < d; ++j) IM.at(d + (int)r, j) = Int(rad[r][(size_t)j]);
        IntMat G = linalg::hnf_rows(IM);
        if (G.rows != d) fail_internal("OrderRankLoss", "radical ideal lattice degenerate");

        // multiplier test: y in O with y*I <= p*I  (coords of y*g_m in I-basis
        // are integral; require them ≡ 0 mod p)
        modp::MatP M(d * d, d);
        for (int m = 0; m < d; ++m) {
            for (int i = 0; i < d; ++i) {
                std::vector<Int> w((size_t)d, Int(0));
                for (int j = 0; j < d; ++j) {
                    const Int& gm = G.at(m, j);
                    if (gm == 0) continue;
                    const auto& t = T[(size_t)i][(size_t)j];
                    for (int l = 0; l < d; ++l) w[(size_t)l] += gm * t[(size_t)l];
                }
                // forward-substitute G^T u = w (G upper triangular)
                std::vector<Int> u((size_t)d);
                for (int l = 0; l < d; ++l) {
                    Int acc = w[(size_t)l];
                    for (int s = 0; s < l; ++s) acc -= G.at(s, l) * u[(size_t)s];
                    if (acc % G.at(l, l) != 0)
                        fail_internal("OrderIdealSolve", "ideal coordinates not integral");
                    u[(size_t)l] = divexact(acc, G.at(l, l));
                }
                for (int l = 0; l < d; ++l)
                    M.at(m * d + l, i) = modp::to_u64(u[(size_t)l], up);
            }
        }
        auto mult = modp::kernel_mod_p(M, up);
        if (mult.empty()) break;  // p-maximal

        // join: new lattice = old + (1/p) * multiplier lifts
        IntMat J(d + (int)mult.size(), d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) J.at(i, j) = p * H.at(i, j);
        for (size_t r = 0; r < mult.size(); ++r)
            for (int j = 0; j < d; ++j) {
                Int acc = 0;
                for (int i = 0; i < d; ++i) acc += Int(mult[r][(size_t)i]) * H.at(i, j);
                J.at(d + (int)r, j) = acc;
            }
        IntMat H2 = linalg::hnf_rows(J);
        Int D2 = D * p;
        Int g = D2;
        for (int i = 0; i < H2.rows && g > 1; ++i)
            for (int j = 0; j < H2.cols && g > 1; ++j) g = gcd(g, H2.at(i, j));
        if (g > 1) {
            for (int i = 0; i < H2.rows; ++i)
                for (int j = 0; j < H2.cols; ++j) H2.at(i, j) = divexact(H2.at(i, j), g);
            D2 = divexact(D2, g);
        }
        // index gain: (det_old / det_new) with det = det(H)/D^d
        Int det2 = hnf_det(H2);
        Rat covol_old(lat_det, pow_int(D, (unsigned long)d));
        Rat covol_new(det2, pow_int(D2, (unsigned long)d));
        covol_old.canonicalize();
        covol_new.canonicalize();
        Rat gain = covol_old / covol_new;
        if (gain == 1) break;  // no strict growth (shouldn't happen with mult nonempty)
        if (gain < 1) fail_internal("OrderShrank", "refinement shrank the lattice");
        if (!is_integer(gain)) fail_internal("OrderIndex", "non-integral index gain");
        disc = divexact(disc, num(gain) * num(gain));
        H = std::move(H2);
        D = std::move(D2);
        lat_det = std::move(det2);
    }

    OrderBasis out = basis_from_lattice(L, H, D);
    out.discriminant = disc;
    out.is_maximal_attempted = basis.is_maximal_attempted;
    out.maximality_prime_bound = basis.maximality_prime_bound;
    out.refined_primes = basis.refined_primes;
    if (std::find(out.refined_primes.begin(), out.refined_primes.end(), p) ==
        out.refined_primes.end())
        out.refined_primes.push_back(p);
    return out;
}

OrderBasis refined_order(const NumberField* L, long prime_bound) {
    OrderBasis b = power_order(L);
    b.is_maximal_attempted = true;
    b.maximality_prime_bound = prime_bound;
    for (long p = 2; p <= prime_bound; ++p) {
        bool isp = true;
        for (long q = 2; q * q <= p; ++q)
            if (p % q == 0) { isp = false; break; }
        if (!isp) continue;
        Int p2 = Int(p) * p;
        if (b.discriminant % p2 == 0) b = p_maximal_refine(L, b, p);
    }
    return b;
}

Int order_discriminant_tracform(const NumberField* L, const std::vector<NFElem>& elements) {
    const int d = (int)elements.size();
    QMat M(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Rat t = (elements[(size_t)i] * elements[(size_t)j]).trace();
            M.at(i, j) = t;
            M.at(j, i) = t;
        }
    Rat det = linalg::det(M);
    if (!is_integer(det)) fail_internal("OrderDisc", "trace form determinant not integral");
    (void)L;
    return num(det);
}

} // namespace qtwist
