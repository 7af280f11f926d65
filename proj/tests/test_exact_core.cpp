#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qtwist/unipoly.hpp"
#include "qtwist/qmat.hpp"
#include "qtwist/series.hpp"
#include "qtwist/qd3.hpp"
#include "qtwist/modp.hpp"

using namespace qtwist;

static QMat qmat_from(std::initializer_list<std::initializer_list<long>> rows) {
    QMat m((int)rows.size(), (int)rows.begin()->size());
    int i = 0;
    for (const auto& r : rows) {
        int j = 0;
        for (long v : r) m.at(i, j++) = Rat(v);
        ++i;
    }
    return m;
}

TEST_CASE("resultant: fixed sign convention and shared-root detection") {
    // convention: Res(x-a, x-b) = b - a (Sylvester with rows of the first on top)
    CHECK(resultant(zpoly({-3, 1}), zpoly({-5, 1})) == Int(-2));
    CHECK(resultant(zpoly({-2, 0, 1}), zpoly({-3, 0, 1})) == Int(1));
    CHECK(resultant(zpoly({1, 0, 1}), zpoly({1, 0, 1})) == Int(0));
}

TEST_CASE("resultant: swap antisymmetry") {
    xorshift64 rng{20240817ULL};
    for (int t = 0; t < 50; ++t) {
        int dp = 1 + (int)rng.below(4), dq = 1 + (int)rng.below(4);
        ZPoly p, q;
        p.c.resize((size_t)dp + 1);
        q.c.resize((size_t)dq + 1);
        for (auto& v : p.c) v = (long)rng.below(11) - 5;
        for (auto& v : q.c) v = (long)rng.below(11) - 5;
        if (p.c.back() == 0) p.c.back() = 1;
        if (q.c.back() == 0) q.c.back() = 1;
        Int lhs = resultant(p, q);
        Int rhs = resultant(q, p);
        if (((dp * dq) % 2) == 1) rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("kernel_basis: trivial kernels") {
    CHECK(linalg::kernel_basis(QMat::identity(2)).empty());
    auto z = QMat(2, 2);
    auto b = linalg::kernel_basis(z);
    REQUIRE(b.size() == 2);
    CHECK(b[0][0] == 1);
    CHECK(b[0][1] == 0);
    CHECK(b[1][0] == 0);
    CHECK(b[1][1] == 1);
}

TEST_CASE("kernel_basis: rank-1 3-column matrix") {
    auto m = qmat_from({{1, 2, 3}, {2, 4, 6}});
    auto b = linalg::kernel_basis(m);
    REQUIRE(b.size() == 2);
    // exact kernel membership
    for (const auto& v : b)
        for (int i = 0; i < m.rows; ++i) {
            Rat acc(0);
            for (int j = 0; j < m.cols; ++j) acc += m.at(i, j) * v[(size_t)j];
            CHECK(acc == 0);
        }
    // brute-force small-integer kernel scan: every small integer solution must
    // be an integer combination of the basis (here: check containment of the
    // canonical spanning vectors)
    auto in_span = [&](long x, long y, long zc) {
        // basis is in free-column canonical form: coefficients are (y, zc)
        Rat c1(y), c2(zc);
        for (int j = 0; j < 3; ++j) {
            Rat lhs = c1 * b[0][(size_t)j] + c2 * b[1][(size_t)j];
            Rat want = (j == 0) ? Rat(x) : (j == 1 ? Rat(y) : Rat(zc));
            if (lhs != want) return false;
        }
        return true;
    };
    int solutions = 0;
    for (long x = -6; x <= 6; ++x)
        for (long y = -6; y <= 6; ++y)
            for (long zc = -6; zc <= 6; ++zc) {
                if (x + 2 * y + 3 * zc != 0) continue;
                ++solutions;
                CHECK(in_span(x, y, zc));
            }
    CHECK(solutions > 20);
    // the span contains the two displayed generators
    CHECK(in_span(-2, 1, 0));
    CHECK(in_span(-3, 0, 1));
}

TEST_CASE("kernel_basis: exactness and rank-nullity on random matrices") {
    xorshift64 rng{987654321ULL};
    for (int t = 0; t < 40; ++t) {
        int r = 2 + (int)rng.below(5), c = 2 + (int)rng.below(5);
        QMat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = Rat((long)rng.below(7) - 3);
        auto b = linalg::kernel_basis(m);
        QMat mr = m;
        auto pivots = linalg::rref(mr);
        CHECK((int)(pivots.size() + b.size()) == c);
        for (const auto& v : b)
            for (int i = 0; i < r; ++i) {
                Rat acc(0);
                for (int j = 0; j < c; ++j) acc += m.at(i, j) * v[(size_t)j];
                CHECK(acc == 0);
            }
    }
}

TEST_CASE("fraction-free elimination matches rational gaussian row space") {
    xorshift64 rng{13572468ULL};
    for (int t = 0; t < 100; ++t) {
        QMat m(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) m.at(i, j) = Rat((long)rng.below(19) - 9);
        // row space comparison via RREF uniqueness: reduce a copy with the
        // fraction-free path and a naive gaussian path; canonical RREFs agree
        QMat a = m;
        auto piv_a = linalg::rref(a);
        // naive gaussian elimination to RREF
        QMat g = m;
        int rr = 0;
        std::vector<int> piv_g;
        for (int c = 0; c < 8 && rr < 8; ++c) {
            int p = -1;
            for (int i = rr; i < 8; ++i)
                if (g.at(i, c) != 0) { p = i; break; }
            if (p < 0) continue;
            for (int j = 0; j < 8; ++j) std::swap(g.at(p, j), g.at(rr, j));
            Rat d = g.at(rr, c);
            for (int j = 0; j < 8; ++j) g.at(rr, j) /= d;
            for (int i = 0; i < 8; ++i) {
                if (i == rr || g.at(i, c) == 0) continue;
                Rat f = g.at(i, c);
                for (int j = 0; j < 8; ++j) g.at(i, j) -= f * g.at(rr, j);
            }
            piv_g.push_back(c);
            ++rr;
        }
        REQUIRE(piv_a == piv_g);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) CHECK(a.at(i, j) == g.at(i, j));
    }
}

TEST_CASE("series: inverse monomial times monomial tracks precision") {
    SeriesQ q = SeriesQ::monomial(Rat(1), 1, 10);  // q + O(q^10)
    SeriesQ invq = q.inverse();
    CHECK(invq.val == -1);
    CHECK(invq.coeff(-1) == 1);
    SeriesQ prod = invq * q;
    CHECK(prod.coeff(0) == 1);
    for (long e = 1; e < prod.prec; ++e) CHECK(prod.coeff(e) == 0);
    CHECK(prod.prec == 9);  // relative precision of both factors is 9
}

TEST_CASE("series: quotient of two truncated series matches long division") {
    // (q - q^2 - q^3 - q^4 + q^5 + O(q^6)) / (q + q^2 - q^4 - q^5 + O(q^6))
    SeriesQ n(1, 6), d(1, 6);
    n.c = {Rat(1), Rat(-1), Rat(-1), Rat(-1), Rat(1)};
    d.c = {Rat(1), Rat(1), Rat(0), Rat(-1), Rat(-1)};
    SeriesQ quot = n / d;
    CHECK(quot.coeff(0) == 1);
    CHECK(quot.coeff(1) == -2);
    CHECK(quot.coeff(2) == 1);
    CHECK(quot.coeff(3) == -1);
}

TEST_CASE("series: compose-power substitutes q -> q^m") {
    SeriesQ s(0, 4);
    s.c = {Rat(7), Rat(1), Rat(2), Rat(3)};  // 7 + q + 2q^2 + 3q^3
    SeriesQ t = s.compose_power(3);
    CHECK(t.prec == 12);
    CHECK(t.coeff(0) == 7);
    CHECK(t.coeff(3) == 1);
    CHECK(t.coeff(6) == 2);
    CHECK(t.coeff(9) == 3);
    CHECK(t.coeff(1) == 0);
    CHECK(t.coeff(5) == 0);
}

TEST_CASE("series: random unit series inverse round trip") {
    xorshift64 rng{777123ULL};
    for (int t = 0; t < 25; ++t) {
        SeriesQ s(0, 12);
        s.c[0] = Rat(1 + (long)rng.below(5));
        for (size_t i = 1; i < s.c.size(); ++i) s.c[i] = Rat((long)rng.below(9) - 4);
        SeriesQ prod = s * s.inverse();
        CHECK(prod.coeff(0) == 1);
        for (long e = 1; e < prod.prec; ++e) CHECK(prod.coeff(e) == 0);
    }
}

TEST_CASE("series over Q(sqrt(-3)) coefficients") {
    TruncSeries<QD3> s(0, 5);
    s.c[0] = QD3(Rat(1), Rat(0));
    s.c[1] = QD3::zeta3();
    auto sq = s * s;
    CHECK(sq.coeff(0) == QD3(Rat(1), Rat(0)));
    // 2*zeta3 at q^1
    CHECK(sq.coeff(1) == QD3(Rat(-1), Rat(1)));
    // zeta3^2 at q^2
    CHECK(sq.coeff(2) == QD3::zeta3() * QD3::zeta3());
    auto inv = s.inverse();
    auto prod = s * inv;
    CHECK(prod.coeff(0) == QD3(Rat(1), Rat(0)));
    for (long e = 1; e < prod.prec; ++e) CHECK(prod.coeff(e).is_zero());
}

TEST_CASE("rational root finding: exact, sorted, height-robust") {
    // (2x - 3)(x + 5)(3x + 1)
    ZPoly f = zpoly({1}) ;
    f = zpoly({-3, 2}) * zpoly({5, 1}) * zpoly({1, 3});
    auto r = rational_roots(f);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == Rat(-5));
    CHECK(r[1] == Rat(-1, 3));
    CHECK(r[2] == Rat(3, 2));

    // double root and an x factor
    ZPoly g = zpoly({0, 1}) * zpoly({-1, 1}) * zpoly({-1, 1});
    auto rg = rational_roots(g);
    REQUIRE(rg.size() == 2);
    CHECK(rg[0] == Rat(0));
    CHECK(rg[1] == Rat(1));

    // huge-height root: x - 10^40 times a small irreducible factor
    Int big = pow_int(Int(10), 40);
    ZPoly h;
    h.c = {-big, Int(1)};
    ZPoly hh = h * zpoly({1, 1, 1});
    auto rh = rational_roots(hh);
    REQUIRE(rh.size() == 1);
    CHECK(rh[0] == Rat(big));

    CHECK(rational_roots(zpoly({1, 0, 1})).empty());
}

TEST_CASE("squarefree detection") {
    CHECK(is_squarefree(zpoly({-2, 0, 1})));
    CHECK_FALSE(is_squarefree(zpoly({1, 2, 1})));
    CHECK(is_squarefree(zpoly({6, 11, 6, 1})));  // (x+1)(x+2)(x+3)
    CHECK_FALSE(is_squarefree(zpoly({0, 0, 1})));
}

TEST_CASE("squarefree part of integers") {
    CHECK(squarefree_part(Int(12)) == 3);
    CHECK(squarefree_part(Int(-33)) == -33);
    CHECK(squarefree_part(Int(99)) == 11);
    CHECK(squarefree_part(Int(-50)) == -2);
    CHECK(squarefree_part(Int(1)) == 1);
}

TEST_CASE("rational reconstruction round trip") {
    xorshift64 rng{424242ULL};
    Int m = pow_int(Int(2), 200) + 235;  // odd-ish large modulus
    for (int t = 0; t < 30; ++t) {
        Int nu = Int((long)rng.below(100000)) - 50000;
        Int de = Int(1 + (long)rng.below(50000));
        Int g = gcd(nu, de);
        if (g != 0) { nu = divexact(nu, g); de = divexact(de, g); }
        if (de == 0) continue;
        if (gcd(de, m) != 1) continue;
        // x = nu * de^{-1} mod m
        Int dinv;
        if (mpz_invert(dinv.get_mpz_t(), de.get_mpz_t(), m.get_mpz_t()) == 0) continue;
        Int x = ((nu % m) * dinv) % m;
        if (x < 0) x += m;
        auto rec = rat_reconstruct(x, m);
        REQUIRE(rec.has_value());
        CHECK(rec->get_num() == nu);
        CHECK(rec->get_den() == de);
    }
}

TEST_CASE("row hermite form basics") {
    IntMat m(3, 2);
    m.at(0, 0) = 2;
    m.at(0, 1) = 0;
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;
    m.at(2, 0) = 0;
    m.at(2, 1) = 4;
    auto h = linalg::hnf_rows(m);
    REQUIRE(h.rows == 2);
    CHECK(h.at(0, 0) == 1);
    CHECK(h.at(0, 1) == 1);
    CHECK(h.at(1, 0) == 0);
    CHECK(h.at(1, 1) == 2);
}

TEST_CASE("mod-p roots") {
    // x^2 - 1 mod 7 -> {1, 6}
    modp::PolyP f = {6, 0, 1};
    auto r = modp::roots_mod_p(f, 7);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == 1);
    CHECK(r[1] == 6);
}
