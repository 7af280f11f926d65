#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qtwist/splitting.hpp"
#include "qtwist/quadext.hpp"
#include "qtwist/orderbasis.hpp"
#include "qtwist/error.hpp"

#include <map>
#include <set>

using namespace qtwist;

TEST_CASE("number field arithmetic in Q(sqrt 2)") {
    NumberField F(zpoly({-2, 0, 1}));
    NFElem g = NFElem::gen(&F);
    CHECK(g * g == NFElem(&F, Rat(2)));
    NFElem one(&F, Rat(1));
    CHECK((one + g).inverse() == g - one);
    CHECK(g.trace() == 0);
    CHECK(one.trace() == 2);
    CHECK(g.pow(5) == g * Rat(4));
    CHECK(nf_eval(zpoly({-2, 0, 1}), g).is_zero());
    // halves
    NFElem h = NFElem::from_coords(&F, {Int(1), Int(1)}, Int(2));  // (1+sqrt2)/2
    CHECK(h + h == one + g);
    CHECK((h * h) * Rat(4) == NFElem(&F, Rat(3)) + g * Rat(2));
}

TEST_CASE("number field inverse round trip in a cubic field") {
    NumberField F(zpoly({-2, 0, 0, 1}));  // x^3 - 2
    xorshift64 rng{5150ULL};
    NFElem one(&F, Rat(1));
    for (int t = 0; t < 50; ++t) {
        NFElem e(&F);
        for (auto& c : e.num) c = (long)rng.below(21) - 10;
        e.den = 1 + (long)rng.below(6);
        e.canonicalize();
        if (e.is_zero()) continue;
        CHECK(e * e.inverse() == one);
    }
    // distributivity spot check
    NFElem a = NFElem::gen(&F), b = a * a - one, c = a + one;
    CHECK(a * (b + c) == a * b + a * c);
}

TEST_CASE("ring hom from generator image") {
    NumberField F(zpoly({-2, 0, 1}));
    NFElem g = NFElem::gen(&F);
    NFLinearMap m = nf_hom_from_image(-g);
    NFElem e = NFElem(&F, Rat(3)) + g * Rat(5);
    CHECK(m.apply(e) == NFElem(&F, Rat(3)) - g * Rat(5));
    xorshift64 rng{99ULL};
    for (int t = 0; t < 20; ++t) {
        NFElem a(&F), b(&F);
        for (auto& c : a.num) c = (long)rng.below(9) - 4;
        for (auto& c : b.num) c = (long)rng.below(9) - 4;
        a.canonicalize();
        b.canonicalize();
        CHECK(m.apply(a * b) == m.apply(a) * m.apply(b));
        CHECK(m.apply(a + b) == m.apply(a) + m.apply(b));
    }
}

TEST_CASE("quadratic extension by sqrt(-3)") {
    NumberField F(zpoly({-2, 0, 0, 1}));
    KElem s = KElem::sqrt_m3(&F);
    CHECK(s * s == KElem(&F, Rat(-3), Rat(0)));
    CHECK(s.inverse() == KElem(&F, Rat(0), Rat(-1, 3)));
    KElem one(&F, Rat(1), Rat(0));
    xorshift64 rng{31415ULL};
    for (int t = 0; t < 50; ++t) {
        NFElem a(&F), b(&F);
        for (auto& c : a.num) c = (long)rng.below(11) - 5;
        for (auto& c : b.num) c = (long)rng.below(11) - 5;
        a.canonicalize();
        b.canonicalize();
        KElem x(a, b);
        if (x.norm_to_L().is_zero()) continue;
        CHECK(x * x.inverse() == one);
        // conjugation is a ring hom and norm is multiplicative
        KElem y(b, a + b);
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK((x * y).norm_to_L() == x.norm_to_L() * y.norm_to_L());
    }
}

TEST_CASE("quartic validation: shape errors") {
    CHECK(check_quartic(zpoly({1, 2, 3})).err == quartic_error::not_quartic);
    CHECK(check_quartic(zpoly({1, 0, 0, 0, 2})).err == quartic_error::not_monic);
    CHECK(check_quartic(zpoly({0, 0, -2, 0, 1})).err == quartic_error::not_irreducible);
    CHECK(check_quartic(zpoly({-4, 0, 0, 0, 1})).err == quartic_error::not_irreducible);
    // x^4 + 1: irreducible but Galois group is the Klein four group
    CHECK(check_quartic(zpoly({1, 0, 0, 0, 1})).err == quartic_error::not_s4);
    // x^4 + x^3 + x^2 + x + 1: cyclic of degree 4
    CHECK(check_quartic(zpoly({1, 1, 1, 1, 1})).err == quartic_error::not_s4);
    // (x^2-2)(x^2-3) = x^4 - 5x^2 + 6: reducible without rational roots
    CHECK(check_quartic(zpoly({6, 0, -5, 0, 1})).err == quartic_error::not_irreducible);
    CHECK(std::string(quartic_error_code(quartic_error::not_s4)) == "NotS4");
}

TEST_CASE("quartic validation: example input") {
    auto r = check_quartic(zpoly({3, 2, -3, 0, 1}));
    CHECK(r.err == quartic_error::ok);
    CHECK(r.disc_squarefree == -33);
    CHECK(r.k_radicand == 11);
}

TEST_CASE("quartic validation: sqrt(-3) obstruction occurs and is flagged") {
    int found = 0;
    for (long a3 = -2; a3 <= 2 && found < 2; ++a3)
        for (long a2 = -5; a2 <= 5 && found < 2; ++a2)
            for (long a1 = -5; a1 <= 5 && found < 2; ++a1)
                for (long a0 = -5; a0 <= 5 && found < 2; ++a0) {
                    auto r = check_quartic(zpoly({a0, a1, a2, a3, 1}));
                    if (r.err != quartic_error::cyclotomic_determinant) continue;
                    ++found;
                    CHECK(r.disc_squarefree == -3);
                    CHECK(squarefree_part(r.disc) == -3);
                }
    CHECK(found >= 1);
}

TEST_CASE("round-2 refinement: quadratic examples") {
    {
        NumberField F(zpoly({-5, 0, 1}));  // x^2 - 5
        OrderBasis pw = power_order(&F);
        CHECK(pw.discriminant == 20);
        OrderBasis r = p_maximal_refine(&F, pw, 2);
        CHECK(r.discriminant == 5);
        // (1 + sqrt5)/2 is in the refined order
        NFElem half = NFElem::from_coords(&F, {Int(1), Int(1)}, Int(2));
        auto coords = r.coords_of(half);
        for (auto& c : coords) CHECK(c.get_den() == 1);
        // and the lattice is closed under multiplication: phi^2 = phi + 1
        auto c2 = r.coords_of(half * half);
        for (auto& c : c2) CHECK(c.get_den() == 1);
    }
    {
        NumberField F(zpoly({3, 0, 1}));  // x^2 + 3
        OrderBasis r = refined_order(&F, 100);
        CHECK(r.discriminant == -3);
        NFElem zeta = NFElem::from_coords(&F, {Int(1), Int(1)}, Int(2));
        auto coords = r.coords_of(zeta);
        for (auto& c : coords) CHECK(c.get_den() == 1);
    }
    {
        // already maximal: x^2 - x - 1, disc 5
        NumberField F(zpoly({-1, -1, 1}));
        OrderBasis r = refined_order(&F, 100);
        CHECK(r.discriminant == 5);
        CHECK(r.refined_primes.empty());
    }
}

TEST_CASE("round-2 refinement: idempotent and consistent with trace form") {
    NumberField F(zpoly({-5, 0, 1}));
    OrderBasis r1 = refined_order(&F, 100);
    OrderBasis r2 = p_maximal_refine(&F, r1, 2);
    CHECK(r1.discriminant == r2.discriminant);
    CHECK(r1.lattice_key() == r2.lattice_key());
    CHECK(order_discriminant_tracform(&F, r1.elements) == r1.discriminant);
}

// brute-force oracle: all multiplication-closed superlattices of the power
// order with index <= 6, found by enumerating Hermite forms
namespace {

struct SuperScan {
    long best_index = 1;
};

SuperScan scan_superorders(const NumberField* F) {
    SuperScan out;
    const int d = 3;
    NFElem theta = NFElem::gen(F);
    for (long m = 2; m <= 6; ++m) {
        Int m2 = m * m;
        // upper-triangular row HNFs of determinant m^2
        for (long a = 1; a <= m2; ++a) {
            if (m2 % a != 0) continue;
            Int rest = m2 / a;
            for (long dd = 1; dd <= rest; ++dd) {
                if (rest % dd != 0) continue;
                long f = (long)mpz_get_si(Int(rest / dd).get_mpz_t());
                for (long b = 0; b < dd; ++b)
                    for (long c = 0; c < f; ++c)
                        for (long e = 0; e < f; ++e) {
                            // rows of S: (a,b,c),(0,dd,e),(0,0,f); need m*Z^3 in S
                            // and M = S/m closed under multiplication
                            QMat B(d, d);  // columns = basis of M in power coords
                            long rows[3][3] = {{a, b, c}, {0, dd, e}, {0, 0, f}};
                            for (int i = 0; i < d; ++i)
                                for (int j = 0; j < d; ++j) {
                                    B.at(j, i) = Rat(rows[i][j], m);
                                    B.at(j, i).canonicalize();
                                }
                            // membership of m*e_i: triangular solve integrality
                            bool contains = true;
                            // m*e_i in S  <=>  coords divisible down the triangle
                            // (solve x * H = m*e_i over Z)
                            for (int i = 0; i < d && contains; ++i) {
                                long target[3] = {0, 0, 0};
                                target[i] = m;
                                if (target[0] % a != 0) { contains = false; break; }
                                long x0 = target[0] / a;
                                long x1num = target[1] - x0 * b;
                                if (x1num % dd != 0) { contains = false; break; }
                                long x1 = x1num / dd;
                                long x2num = target[2] - x0 * c - x1 * e;
                                if (x2num % f != 0) { contains = false; break; }
                            }
                            if (!contains) continue;
                            QMat Binv;
                            try {
                                Binv = linalg::inverse(B);
                            } catch (...) {
                                continue;
                            }
                            // basis elements as field elements
                            std::vector<NFElem> bas;
                            for (int i = 0; i < d; ++i) {
                                std::vector<Int> num(3);
                                for (int j = 0; j < d; ++j) num[(size_t)j] = rows[i][j];
                                bas.push_back(NFElem::from_coords(F, num, Int(m)));
                            }
                            bool closed = true;
                            for (int i = 0; i < d && closed; ++i)
                                for (int j = i; j < d && closed; ++j) {
                                    auto pc = Binv.apply((bas[(size_t)i] * bas[(size_t)j]).coords_q());
                                    for (auto& q : pc)
                                        if (q.get_den() != 1) { closed = false; break; }
                                }
                            if (!closed) continue;
                            // genuine index-m superorder
                            if (m > out.best_index) out.best_index = m;
                        }
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("round-2 refinement vs brute-force superorder scan on random cubics") {
    xorshift64 rng{777000111ULL};
    int tested = 0;
    while (tested < 12) {
        ZPoly h;
        h.c = {Int((long)rng.below(19) - 9), Int((long)rng.below(19) - 9),
               Int((long)rng.below(19) - 9), Int(1)};
        if (!is_squarefree(h)) continue;
        if (!rational_roots(h).empty()) continue;  // keep it a field
        NumberField F(h);
        OrderBasis pw = power_order(&F);
        OrderBasis r = refined_order(&F, 100);
        // index^2 = disc ratio
        Rat ratio(pw.discriminant, r.discriminant);
        ratio.canonicalize();
        REQUIRE(ratio.get_den() == 1);
        Int idx2 = ratio.get_num();
        REQUIRE(idx2 > 0);
        Int idx = isqrt(idx2);
        REQUIRE(idx * idx == idx2);
        auto scan = scan_superorders(&F);
        if (idx <= 6) {
            CHECK(idx == scan.best_index);
        } else {
            CHECK(Int(scan.best_index) <= idx);
        }
        CHECK(order_discriminant_tracform(&F, r.elements) == r.discriminant);
        ++tested;
    }
}

TEST_CASE("splitting field of the example quartic") {
    ZPoly f = zpoly({3, 2, -3, 0, 1});  // X^4 - 3X^2 + 2X + 3
    SplittingContext ctx = splitting_field(f);

    CHECK(ctx.L->deg == 24);
    CHECK(ctx.disc_squarefree == -33);
    CHECK(ctx.k_radicand == 11);
    REQUIRE(ctx.roots.size() == 4);
    REQUIRE(ctx.autos.size() == 24);

    // each root satisfies f, all distinct, product of (X - r_i) recovers f
    for (const auto& r : ctx.roots) CHECK(nf_eval(f, r).is_zero());
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) CHECK_FALSE(ctx.roots[(size_t)i] == ctx.roots[(size_t)j]);
    {
        // elementary symmetric functions must match the coefficients
        NFElem e1(ctx.L.get()), e2(ctx.L.get()), e3(ctx.L.get()), e4(ctx.L.get(), Rat(1));
        for (int i = 0; i < 4; ++i) e1 = e1 + ctx.roots[(size_t)i];
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) e2 = e2 + ctx.roots[(size_t)i] * ctx.roots[(size_t)j];
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int k = j + 1; k < 4; ++k)
                    e3 = e3 + ctx.roots[(size_t)i] * ctx.roots[(size_t)j] * ctx.roots[(size_t)k];
        for (int i = 0; i < 4; ++i) e4 = e4 * ctx.roots[(size_t)i];
        CHECK(e1.as_rat() == Rat(0));    // -a3
        CHECK(e2.as_rat() == Rat(-3));   // a2
        CHECK(e3.as_rat() == Rat(-2));   // -a1
        CHECK(e4.as_rat() == Rat(3));    // a0
    }

    // automorphism permutations biject with S4 and compose correctly
    std::set<std::array<int, 4>> perms;
    for (const auto& a : ctx.autos) perms.insert(a.perm);
    CHECK(perms.size() == 24);
    CHECK(ctx.autos[(size_t)ctx.identity_index].perm == std::array<int, 4>{0, 1, 2, 3});
    CHECK(ctx.autos[(size_t)ctx.sigma1].perm == std::array<int, 4>{1, 2, 0, 3});
    CHECK(ctx.autos[(size_t)ctx.sigma2].perm == std::array<int, 4>{1, 0, 3, 2});
    CHECK(ctx.autos[(size_t)ctx.sigma3].perm == std::array<int, 4>{1, 0, 2, 3});

    // the indexed automorphisms act on roots as their permutations say
    for (int s : {ctx.sigma1, ctx.sigma2, ctx.sigma3}) {
        const auto& a = ctx.autos[(size_t)s];
        for (int i = 0; i < 4; ++i)
            CHECK(a.map.apply(ctx.roots[(size_t)i]) == ctx.roots[(size_t)a.perm[(size_t)i]]);
    }

    // group law: theta-image of a composite equals composite action on theta
    {
        const auto& s1 = ctx.autos[(size_t)ctx.sigma1];
        const auto& s2 = ctx.autos[(size_t)ctx.sigma2];
        auto comp = perm_compose(s1.perm, s2.perm);
        int idx = perm_rank(comp);
        CHECK(s1.map.apply(s2.theta_image) == ctx.autos[(size_t)idx].theta_image);
    }
}

TEST_CASE("automorphism matrices in the refined order basis") {
    ZPoly f = zpoly({3, 2, -3, 0, 1});
    SplittingContext ctx = splitting_field(f);

    QMat id24 = QMat::identity(24);
    CHECK(automorphism_matrix(ctx, ctx.identity_index) == id24);

    QMat m1 = automorphism_matrix(ctx, ctx.sigma1);
    QMat m2 = automorphism_matrix(ctx, ctx.sigma2);
    QMat m3 = automorphism_matrix(ctx, ctx.sigma3);
    CHECK(m1 * m1 * m1 == id24);
    CHECK(m2 * m2 == id24);
    CHECK(m3 * m3 == id24);

    // homomorphism property against the permutation composition
    auto comp = perm_compose(ctx.autos[(size_t)ctx.sigma1].perm, ctx.autos[(size_t)ctx.sigma3].perm);
    QMat mc = automorphism_matrix(ctx, perm_rank(comp));
    CHECK(m1 * m3 == mc);
}
