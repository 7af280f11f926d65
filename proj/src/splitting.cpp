#include "qtwist/splitting.hpp"

#include <algorithm>

namespace qtwist {

const char* quartic_error_code(quartic_error e) {
    switch (e) {
        case quartic_error::ok: return "OK";
        case quartic_error::not_monic: return "NotMonic";
        case quartic_error::not_quartic: return "NotQuartic";
        case quartic_error::not_irreducible: return "NotIrreducible";
        case quartic_error::not_s4: return "NotS4";
        case quartic_error::cyclotomic_determinant: return "CyclotomicDeterminant";
    }
    return "Unknown";
}

ZPoly resolvent_cubic(const ZPoly& f) {
    const Int &a0 = f.c[0], &a1 = f.c[1], &a2 = f.c[2], &a3 = f.c[3];
    ZPoly g;
    g.c = {-(a1 * a1 + a0 * a3 * a3 - 4 * a0 * a2), a1 * a3 - 4 * a0, -a2, Int(1)};
    return g;
}

QuarticCheck check_quartic(const ZPoly& f_in) {
    QuarticCheck r;
    ZPoly f = f_in;
    f.trim();
    if (f.degree() != 4) {
        r.err = quartic_error::not_quartic;
        r.message = "input must be a degree-4 polynomial";
        return r;
    }
    if (f.lc() != 1) {
        r.err = quartic_error::not_monic;
        r.message = "input quartic must be monic";
        return r;
    }
    if (!integer_roots(f).empty()) {
        r.err = quartic_error::not_irreducible;
        r.message = "quartic has a rational root";
        return r;
    }
    r.disc = resultant(f, f.derivative());
    if (r.disc == 0) {
        r.err = quartic_error::not_irreducible;
        r.message = "quartic has a repeated root";
        return r;
    }
    // S4 test: resolvent cubic irreducible over Q and disc not a square.
    // A rational root of the (monic, integer) resolvent is an integer.  Any
    // monic-quadratic factorization f = (x^2+ax+b)(x^2+cx+d) makes y0 = b+d a
    // resolvent root, so distinguishing reducible from "not S4" only needs a
    // consistency check at each root.
    auto res_roots = integer_roots(resolvent_cubic(f));
    if (!res_roots.empty()) {
        const Int &a0 = f.c[0], &a1 = f.c[1], &a2 = f.c[2], &a3 = f.c[3];
        for (const Int& y0 : res_roots) {
            // b + d = y0, b*d = a0; a + c = a3, a*c = a2 - y0
            Int db = y0 * y0 - 4 * a0;
            Int da = a3 * a3 - 4 * (a2 - y0);
            if (db < 0 || da < 0) continue;
            Int sb = isqrt(db), sa = isqrt(da);
            if (sb * sb != db || sa * sa != da) continue;
            if ((y0 + sb) % 2 != 0 || (a3 + sa) % 2 != 0) continue;
            Int b = divexact(y0 + sb, Int(2)), d = divexact(y0 - sb, Int(2));
            Int a = divexact(a3 + sa, Int(2)), c = divexact(a3 - sa, Int(2));
            // remaining coefficient: a*d + b*c = a1, either pairing
            if (a * d + b * c == a1 || a * b + c * d == a1) {
                r.err = quartic_error::not_irreducible;
                r.message = "quartic factors into two rational quadratics";
                return r;
            }
        }
        r.err = quartic_error::not_s4;
        r.message = "resolvent cubic has a rational root; Galois group is not S4";
        return r;
    }
    if (is_perfect_square(r.disc)) {
        r.err = quartic_error::not_s4;
        r.message = "discriminant is a square; Galois group is contained in A4";
        return r;
    }
    try {
        r.disc_squarefree = squarefree_part(r.disc);
    } catch (const std::exception&) {
        fail_resource("FactorLimit",
                      "could not compute the squarefree part of the discriminant");
    }
    if (r.disc_squarefree == -3) {
        r.err = quartic_error::cyclotomic_determinant;
        r.message = "sqrt(-3) lies in the splitting field (disc = -3 mod squares)";
        return r;
    }
    // squarefree part of -3*d for squarefree d: only the factor 3 can repeat
    r.k_radicand = (r.disc_squarefree % 3 == 0) ? Int(-divexact(r.disc_squarefree, Int(3)))
                                                : Int(-3 * r.disc_squarefree);
    return r;
}

int perm_rank(const std::array<int, 4>& p) {
    int rank = 0;
    static const int fac[4] = {6, 2, 1, 1};
    for (int i = 0; i < 4; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < 4; ++j)
            if (p[(size_t)j] < p[(size_t)i]) ++smaller;
        rank += smaller * fac[i];
    }
    return rank;
}

std::array<int, 4> perm_unrank(int r) {
    static const int fac[4] = {6, 2, 1, 1};
    std::array<int, 4> p{};
    std::vector<int> avail = {0, 1, 2, 3};
    for (int i = 0; i < 4; ++i) {
        int d = r / fac[i];
        r %= fac[i];
        p[(size_t)i] = avail[(size_t)d];
        avail.erase(avail.begin() + d);
    }
    return p;
}

std::array<int, 4> perm_compose(const std::array<int, 4>& a, const std::array<int, 4>& b) {
    std::array<int, 4> r{};
    for (int i = 0; i < 4; ++i) r[(size_t)i] = a[(size_t)b[(size_t)i]];
    return r;
}

namespace {

// power sums of the roots of a monic integer polynomial, indices 0..n
std::vector<Int> root_power_sums(const ZPoly& f, int n) {
    const int d = f.degree();
    std::vector<Int> p((size_t)n + 1);
    p[0] = d;
    for (int k = 1; k <= n; ++k) {
        Int s = 0;
        for (int i = 1; i < k && i <= d; ++i) s += f.c[(size_t)(d - i)] * p[(size_t)(k - i)];
        if (k <= d) s += Int(k) * f.c[(size_t)(d - k)];
        p[(size_t)k] = -s;
    }
    return p;
}

struct SymTables {
    std::vector<Int> p;     // power sums of the quartic's roots
    std::vector<Int> fact;  // factorials
    std::array<std::vector<Int>, 3> cpow;

    // sum of x_i^a x_j^b x_k^c over pairwise-distinct index triples
    Int mdist(int a, int b, int c) const {
        return p[(size_t)a] * p[(size_t)b] * p[(size_t)c] -
               p[(size_t)(a + b)] * p[(size_t)c] - p[(size_t)(a + c)] * p[(size_t)b] -
               p[(size_t)(b + c)] * p[(size_t)a] + 2 * p[(size_t)(a + b + c)];
    }
    Int multinom(int k, int a, int b, int c) const {
        return divexact(fact[(size_t)k],
                        fact[(size_t)a] * fact[(size_t)b] * fact[(size_t)c]);
    }
    // sum over the 24 injective slot assignments of
    // theta^k, with the slot-s exponent bumped by `bump` (s = -1: no bump)
    Int theta_sum(int k, int s) const {
        Int acc = 0;
        for (int a = 0; a <= k; ++a)
            for (int b = 0; a + b <= k; ++b) {
                int c = k - a - b;
                Int term = multinom(k, a, b, c) * cpow[0][(size_t)a] *
                           cpow[1][(size_t)b] * cpow[2][(size_t)c];
                term *= mdist(a + (s == 0 ? 1 : 0), b + (s == 1 ? 1 : 0),
                              c + (s == 2 ? 1 : 0));
                acc += term;
            }
        return acc;
    }
};

ZPoly minpoly_from_power_sums(const std::vector<Int>& q, int n) {
    // Newton: k e_k = sum_{i=1..k} (-1)^(i-1) q_i e_{k-i}
    std::vector<Int> e((size_t)n + 1);
    e[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Int s = 0;
        for (int i = 1; i <= k; ++i) {
            Int t = q[(size_t)i] * e[(size_t)(k - i)];
            s += (i % 2 == 1) ? t : -t;
        }
        if (s % k != 0)
            fail_internal("NewtonIdentity", "non-integral elementary symmetric function");
        e[(size_t)k] = divexact(s, Int(k));
    }
    ZPoly h;
    h.c.assign((size_t)n + 1, Int(0));
    for (int k = 0; k <= n; ++k)
        h.c[(size_t)(n - k)] = (k % 2 == 0) ? e[(size_t)k] : -e[(size_t)k];
    return h;
}

bool rat_vec_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
}

} // namespace

SplittingContext splitting_field(const ZPoly& f_in, long prime_bound) {
    ZPoly f = f_in;
    f.trim();
    QuarticCheck chk = check_quartic(f);
    if (chk.err != quartic_error::ok) fail_input(quartic_error_code(chk.err), chk.message);

    static const std::array<std::array<long, 3>, 12> candidates = {{{1, 2, 3},
                                                                    {1, 3, 9},
                                                                    {2, 3, 5},
                                                                    {1, 4, 9},
                                                                    {3, 5, 7},
                                                                    {1, 5, 11},
                                                                    {2, 5, 9},
                                                                    {1, 6, 13},
                                                                    {1, 7, 15},
                                                                    {2, 7, 11},
                                                                    {3, 7, 13},
                                                                    {1, 8, 17}}};

    SymTables st;
    st.p = root_power_sums(f, 26);
    st.fact.resize(27);
    st.fact[0] = 1;
    for (int i = 1; i <= 26; ++i) st.fact[(size_t)i] = st.fact[(size_t)(i - 1)] * i;

    ZPoly h;
    std::array<long, 3> cvec{};
    bool found = false;
    for (const auto& c : candidates) {
        for (int s = 0; s < 3; ++s) {
            st.cpow[(size_t)s].assign(26, Int(0));
            st.cpow[(size_t)s][0] = 1;
            for (int i = 1; i <= 25; ++i)
                st.cpow[(size_t)s][(size_t)i] = st.cpow[(size_t)s][(size_t)(i - 1)] * c[(size_t)s];
        }
        std::vector<Int> q(25);
        for (int k = 1; k <= 24; ++k) q[(size_t)k] = st.theta_sum(k, -1);
        h = minpoly_from_power_sums(q, 24);
        if (is_squarefree(h)) {
            cvec = c;
            found = true;
            break;
        }
    }
    if (!found)
        fail_resource("PrimitiveElement",
                      "no squarefree primitive-element polynomial in candidate list");

    SplittingContext ctx;
    ctx.f = f;
    ctx.disc = chk.disc;
    ctx.disc_squarefree = chk.disc_squarefree;
    ctx.k_radicand = chk.k_radicand;
    ctx.cvec = cvec;
    ctx.L = std::make_unique<NumberField>(h);
    const NumberField* L = ctx.L.get();

    // roots of f inside L: slot-s root is A_s(theta)/h'(theta), where
    // A_s(x) = sum_sigma alpha_{sigma(s)} h(x)/(x - theta_sigma) has integer
    // coefficients A_s[i] = sum_{j >= i+1} h_j * R_s[j-i-1] built from the
    // exponent-bumped symmetric sums R_s[m].
    NFElem theta = NFElem::gen(L);
    NFElem hp_theta = nf_eval(h.derivative(), theta);
    NFElem hp_inv = hp_theta.inverse();

    std::vector<NFElem> slot_roots;
    for (int s = 0; s < 3; ++s) {
        std::vector<Int> R(24);
        for (int m = 0; m <= 23; ++m) R[(size_t)m] = st.theta_sum(m, s);
        ZPoly A;
        A.c.assign(24, Int(0));
        for (int i = 0; i <= 23; ++i) {
            Int acc = 0;
            for (int j = i + 1; j <= 24; ++j) acc += h.c[(size_t)j] * R[(size_t)(j - i - 1)];
            A.c[(size_t)i] = acc;
        }
        slot_roots.push_back(nf_eval(A, theta) * hp_inv);
    }
    {
        NFElem r3(L, Rat(-f.c[3]));
        for (const auto& r : slot_roots) r3 = r3 - r;
        slot_roots.push_back(r3);
    }

    // exact sanity: f(root) = 0, theta recombines, roots distinct, product check
    for (const auto& r : slot_roots)
        if (!nf_eval(f, r).is_zero())
            fail_internal("RootExtraction", "computed root does not satisfy f");
    {
        NFElem comb(L);
        for (int s = 0; s < 3; ++s) comb = comb + slot_roots[(size_t)s] * Rat(cvec[(size_t)s]);
        if (!(comb == theta))
            fail_internal("RootExtraction", "primitive element does not recombine");
    }
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = i + 1; j < 4; ++j)
            if (slot_roots[i] == slot_roots[j])
                fail_internal("RootExtraction", "roots not distinct");
    {
        // expand prod (X - r_i) and compare with f
        std::vector<NFElem> poly;
        poly.push_back(NFElem(L, Rat(1)));
        for (const auto& r : slot_roots) {
            std::vector<NFElem> nxt((size_t)poly.size() + 1, NFElem(L));
            for (size_t j = 0; j < poly.size(); ++j) {
                nxt[j + 1] = nxt[j + 1] + poly[j];
                nxt[j] = nxt[j] - poly[j] * r;
            }
            poly = std::move(nxt);
        }
        for (int i = 0; i <= 4; ++i) {
            NFElem want(L, Rat(f.c[(size_t)i]));
            if (!(poly[(size_t)i] == want))
                fail_internal("RootExtraction", "product of roots does not expand to f");
        }
    }

    // deterministic root order: sort by power-basis coordinates
    std::array<int, 4> order = {0, 1, 2, 3};
    std::array<std::vector<Rat>, 4> keys;
    for (int i = 0; i < 4; ++i) keys[(size_t)i] = slot_roots[(size_t)i].coords_q();
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return rat_vec_less(keys[(size_t)a], keys[(size_t)b]); });
    std::array<int, 4> newlabel{};  // slot s now carries label newlabel[s]
    for (int pos = 0; pos < 4; ++pos) newlabel[(size_t)order[(size_t)pos]] = pos;
    for (int pos = 0; pos < 4; ++pos) ctx.roots.push_back(slot_roots[(size_t)order[(size_t)pos]]);

    // the 24 automorphisms, indexed by lex rank of their root permutation
    for (int rank = 0; rank < 24; ++rank) {
        auto pi = perm_unrank(rank);
        NFElem img(L);
        for (int s = 0; s < 3; ++s)
            img = img + ctx.roots[(size_t)pi[(size_t)newlabel[(size_t)s]]] * Rat(cvec[(size_t)s]);
        if (!nf_eval(h, img).is_zero())
            fail_internal("Automorphism", "theta image is not a root of the minimal polynomial");
        AutRec rec;
        rec.perm = pi;
        rec.theta_image = img;
        rec.map = nf_hom_from_image(img);
        for (int i = 0; i < 4; ++i)
            if (!(rec.map.apply(ctx.roots[(size_t)i]) == ctx.roots[(size_t)pi[(size_t)i]]))
                fail_internal("Automorphism", "automorphism does not permute roots as labeled");
        ctx.autos.push_back(std::move(rec));
    }
    ctx.identity_index = perm_rank({0, 1, 2, 3});
    ctx.sigma1 = perm_rank({1, 2, 0, 3});  // (1,2,3)
    ctx.sigma2 = perm_rank({1, 0, 3, 2});  // (1,2)(3,4)
    ctx.sigma3 = perm_rank({1, 0, 2, 3});  // (1,2)

    ctx.basis = refined_order(L, prime_bound);
    return ctx;
}

QMat automorphism_matrix(const SplittingContext& ctx, int sigma) {
    const auto& map = ctx.autos.at((size_t)sigma).map;
    const int d = ctx.L->deg;
    QMat M(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            Rat q(map.col[(size_t)j][(size_t)i], map.den);
            q.canonicalize();
            M.at(i, j) = q;
        }
    return ctx.basis.from_power * M * ctx.basis.to_power;
}

} // namespace qtwist
