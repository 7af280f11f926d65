#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qtwist/modular_data.hpp"
#include "qtwist/qexp.hpp"
#include "qtwist/error.hpp"

#include <vector>

using namespace qtwist;

namespace {

template <class M>
std::vector<M> group_closure(const std::vector<M>& gens, const M& id, size_t cap) {
    std::vector<M> elems{id};
    auto known = [&](const M& m) {
        for (const auto& e : elems)
            if (e == m) return true;
        return false;
    };
    std::vector<M> frontier{id};
    while (!frontier.empty()) {
        std::vector<M> next;
        for (const auto& f : frontier)
            for (const auto& g : gens) {
                M p = f * g;
                if (!known(p)) {
                    elems.push_back(p);
                    next.push_back(p);
                    REQUIRE(elems.size() <= cap);
                }
            }
        frontier = std::move(next);
    }
    return elems;
}

Rat zpoly_at(const ZPoly& f, const Rat& t) {
    Rat acc(0);
    for (size_t i = f.c.size(); i-- > 0;) acc = acc * t + Rat(f.c[i]);
    return acc;
}

} // namespace

TEST_CASE("differential-action matrices satisfy the automorphism relations") {
    const ModularData& md = default_modular_data();
    Mat3K id = Mat3K::identity();

    CHECK(md.w5 * md.w5 == id);
    CHECK(md.w9 * md.w9 == id);
    CHECK(md.w5 * md.w9 == md.w9 * md.w5);
    CHECK(md.S * md.S * md.S == id);
    CHECK(!(md.S == id));

    // conjugating sqrt(-3) inverts S
    CHECK(md.S.conj() == md.S * md.S);

    auto g = group_closure<Mat3K>({md.w5, md.w9, md.S}, id, 64);
    CHECK(g.size() == 24);
}

TEST_CASE("six-dimensional twisted action: orders, commutation, closure") {
    const ModularData& md = default_modular_data();
    QMat id = QMat::identity(6);

    CHECK(md.s1 * md.s1 * md.s1 == id);
    CHECK(!(md.s1 == id));
    CHECK(md.s2 * md.s2 == id);
    CHECK(md.s3 * md.s3 == id);
    CHECK(md.s4 * md.s4 == id);
    CHECK(md.s4 * md.s1 == md.s1 * md.s4);
    CHECK(md.s4 * md.s2 == md.s2 * md.s4);
    CHECK(md.s4 * md.s3 == md.s3 * md.s4);

    auto g = group_closure<QMat>({md.s1, md.s2, md.s3, md.s4}, id, 128);
    CHECK(g.size() == 48);
}

TEST_CASE("stored quartic: homogeneity, flat vector, Euler identity, display") {
    const ModularData& md = default_modular_data();

    CHECK(md.x045_homog.is_homogeneous(4));
    CHECK(md.x045_homog == md.x045_affine.homogenized(4));

    std::array<Int, 15> expect = {Int(1), Int(0),   Int(0), Int(-2), Int(0),
                                  Int(-2), Int(0),  Int(0), Int(-16), Int(0),
                                  Int(81), Int(0),  Int(-18), Int(0), Int(1)};
    CHECK(quartic_to_vector(md.x045_homog) == expect);
    CHECK(quartic_from_vector(expect) == md.x045_homog);

    // 4F = X F_X + Y F_Y + Z F_Z for a homogeneous quartic
    MultiPoly euler = MultiPoly::term(1, 0, 0, Rat(1)) * md.x045_homog.partial(0) +
                      MultiPoly::term(0, 1, 0, Rat(1)) * md.x045_homog.partial(1) +
                      MultiPoly::term(0, 0, 1, Rat(1)) * md.x045_homog.partial(2);
    CHECK(euler == md.x045_homog.scaled(Rat(4)));

    CHECK(multipoly_to_string(md.x045_affine, {"x", "y", "z"}) ==
          "x^4 - 2*x^2*y^2 - 2*x^2 - 16*x*y + 81*y^4 - 18*y^2 + 1");

    try {
        quartic_to_vector(md.x045_affine);  // not homogeneous
        FAIL("expected QuarticShape");
    } catch (const qt_error& e) {
        CHECK(e.code == "QuarticShape");
        CHECK(e.exit_status == 2);
    }
}

TEST_CASE("curve relation matches the Weierstrass quintuple") {
    const ModularData& md = default_modular_data();
    const Int &a1 = md.x015_coeffs[0], &a2 = md.x015_coeffs[1], &a3 = md.x015_coeffs[2],
              &a4 = md.x015_coeffs[3], &a6 = md.x015_coeffs[4];
    MultiPoly w;
    w.add({0, 2, 0}, Rat(1));
    w.add({1, 1, 0}, Rat(a1));
    w.add({0, 1, 0}, Rat(a3));
    w.add({3, 0, 0}, Rat(-1));
    w.add({2, 0, 0}, Rat(-a2));
    w.add({1, 0, 0}, Rat(-a4));
    w.add({0, 0, 0}, Rat(-a6));
    CHECK(w == md.x015_relation);
}

TEST_CASE("covering chain at rational points") {
    const ModularData& md = default_modular_data();
    const Rat one(1);

    auto [U, V] = uv_from_xy(md, Rat(1), Rat(0), one);
    CHECK(U == Rat(-2));
    CHECK(V == Rat(9));

    try {
        uv_from_xy(md, Rat(0), Rat(1), one);
        FAIL("expected ZeroDenominator");
    } catch (const qt_error& e) {
        CHECK(e.code == "ZeroDenominator");
        CHECK(e.exit_status == 1);
    }

    // (U, V) = (-2, 9) is the degenerate fiber of the next stage
    try {
        downstairs_chain(md, Rat(-2), Rat(9), one);
        FAIL("expected ZeroDenominator");
    } catch (const qt_error& e) {
        CHECK(e.code == "ZeroDenominator");
        CHECK(std::string(e.what()).find("stage u") != std::string::npos);
    }

    // a plain point: U = 0, V = 0
    auto r = downstairs_chain(md, Rat(0), Rat(0), one);
    CHECK(r.u == Rat(-13, 2));
    CHECK(r.v == Rat(9, 2));
    CHECK(md.g3_num.eval2(r.u, r.v, one) == r.g3 * md.g3_den.eval2(r.u, r.v, one));
    CHECK(md.t_num.eval2(r.u, r.v, one) == r.t * md.t_den.eval2(r.u, r.v, one));

    JPair jp = j_from_t(md, r.t);
    // the two roots of j^2 - A j + B^3 are a +- b sqrt(D)
    Rat A = zpoly_at(md.jt_A, r.t), B = zpoly_at(md.jt_B, r.t);
    CHECK(jp.a * 2 == A);
    CHECK(jp.a * jp.a - jp.b * jp.b * Rat(jp.D) == B * B * B);
}

TEST_CASE("quadratic j-pairs over assorted t-values") {
    const ModularData& md = default_modular_data();
    for (const Rat& t : {Rat(3, 2), Rat(-7), Rat(22, 5), Rat(0), Rat(1, 3)}) {
        JPair jp = j_from_t(md, t);
        Rat A = zpoly_at(md.jt_A, t), B = zpoly_at(md.jt_B, t);
        CHECK(jp.a * 2 == A);
        CHECK(jp.a * jp.a - jp.b * jp.b * Rat(jp.D) == B * B * B);
        if (jp.D != 1) CHECK(squarefree_part(jp.D) == jp.D);
    }
}

TEST_CASE("euler product and eta quotients reproduce published expansions") {
    SeriesQ e = euler_series(16);
    std::vector<long> ec = {1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1};
    for (size_t i = 0; i < ec.size(); ++i) CHECK(e.coeff((long)i) == Rat(ec[i]));

    SeriesQ d24 = euler_series(6).pow(24);
    CHECK(d24.coeff(0) == Rat(1));
    CHECK(d24.coeff(1) == Rat(-24));
    CHECK(d24.coeff(2) == Rat(252));
    CHECK(d24.coeff(3) == Rat(-1472));

    const ModularData& md = default_modular_data();
    SeriesQ G = eta_quotient_series(md.G_eta, 10);
    CHECK(G.val == -1);
    for (size_t i = 0; i < md.G_prefix.size(); ++i)
        CHECK(G.coeff(-1 + (long)i) == Rat(md.G_prefix[i]));

    SeriesQ H = eta_quotient_series(md.H_eta, 10);
    CHECK(H.val == -2);
    for (size_t i = 0; i < md.H_prefix.size(); ++i)
        CHECK(H.coeff(-2 + (long)i) == Rat(md.H_prefix[i]));

    SeriesQ t = G + G.inverse() * Rat(125);
    for (size_t i = 0; i < md.t_prefix.size(); ++i)
        CHECK(t.coeff(-1 + (long)i) == Rat(md.t_prefix[i]));

    try {
        eta_quotient_series({{1, 1}}, 10);  // 1 not divisible by 24
        FAIL("expected EtaSpec");
    } catch (const qt_error& e) {
        CHECK(e.code == "EtaSpec");
    }
}

TEST_CASE("point counts on the level-15 curve") {
    const ModularData& md = default_modular_data();
    CHECK(ap_by_counting(md.x015_coeffs, 2) == -1);
    CHECK(ap_by_counting(md.x015_coeffs, 7) == 0);
    CHECK(ap_by_counting(md.x015_coeffs, 11) == -4);
    CHECK_THROWS_AS(ap_by_counting(md.x015_coeffs, 3), qt_error);  // bad reduction
    CHECK_THROWS_AS(ap_by_counting(md.x015_coeffs, 5), qt_error);
}

TEST_CASE("newforms rebuild the stored prefixes") {
    const ModularData& md = default_modular_data();
    NewformSeries f1 = newform_f1(md, 30);
    NewformSeries f2 = newform_f2(md, 30);
    CHECK(f1.level == 15);
    CHECK(f2.level == 45);
    REQUIRE(md.f1_prefix.size() == 17);
    REQUIRE(md.f2_prefix.size() == 17);
    for (size_t n = 1; n <= 17; ++n) {
        CHECK(f1.a[n] == md.f1_prefix[n - 1]);
        CHECK(f2.a[n] == md.f2_prefix[n - 1]);
    }
    // Hecke consistency spot checks
    CHECK(f1.a[4] == f1.a[2] * f1.a[2] - 2);
    CHECK(f1.a[6] == f1.a[2] * f1.a[3]);
    CHECK(f1.a[9] == f1.a[3] * f1.a[3]);  // a_3 multiplicative at the bad prime
    CHECK(f1.a[25] == f1.a[5] * f1.a[5]);
}

TEST_CASE("hauptmodul pair from the differential recursion") {
    const ModularData& md = default_modular_data();
    auto [u, v] = uv_series(md, 12);
    CHECK(u.val == -2);
    CHECK(v.val == -3);
    for (size_t i = 0; i < md.u_prefix.size(); ++i)
        CHECK(u.coeff(-2 + (long)i) == Rat(md.u_prefix[i]));
    for (size_t i = 0; i < md.v_prefix.size(); ++i)
        CHECK(v.coeff(-3 + (long)i) == Rat(md.v_prefix[i]));
    // integrality of everything computed
    for (const Rat& c : u.c) CHECK(c.get_den() == 1);
    for (const Rat& c : v.c) CHECK(c.get_den() == 1);
}

TEST_CASE("j-function expansion") {
    SeriesQ j = j_series(8);
    CHECK(j.val == -1);
    CHECK(j.coeff(-1) == Rat(1));
    CHECK(j.coeff(0) == Rat(744));
    CHECK(j.coeff(1) == Rat(196884));
    CHECK(j.coeff(2) == Rat(21493760));
}

TEST_CASE("all oracle identities pass at N = 40 and N = 60") {
    const ModularData& md = default_modular_data();
    for (long N : {40L, 60L}) {
        for (const auto& r : verify_all(md, N)) {
            INFO(r.name << " at N=" << N << ": " << r.detail);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("oracle rejects corrupted constants") {
    auto fails = [](const ModularData& md, const std::string& name) {
        IdentityReport r = verify_identity(md, name, 40);
        INFO(name << ": " << r.detail);
        CHECK(!r.pass);
    };

    SUBCASE("quartic coefficient 81 -> 80") {
        ModularData md = make_default_modular_data();
        md.x045_affine.terms[{0, 4, 0}] = Rat(80);
        fails(md, "eq1");
    }
    SUBCASE("automorphism matrix entry sign flip") {
        ModularData md = make_default_modular_data();
        md.S.at(0, 0) = QD3(Rat(1, 2), Rat(0));
        fails(md, "s_column");
    }
    SUBCASE("j-t trace polynomial constant off by one") {
        ModularData md = make_default_modular_data();
        md.jt_A.c[0] += 1;
        fails(md, "jt_relation");
    }
    SUBCASE("covering numerator off by one") {
        ModularData md = make_default_modular_data();
        md.Q_poly.terms[{0, 0, 0}] += Rat(1);
        fails(md, "qr_u");
    }
    SUBCASE("degree-5 map numerator corrupted") {
        ModularData md = make_default_modular_data();
        md.t_num.terms[{0, 0, 0}] += Rat(1);
        fails(md, "t_eq3");
    }
    SUBCASE("wrong eta quotient for the degree-2 function") {
        ModularData md = make_default_modular_data();
        md.H_eta = md.G_eta;
        fails(md, "h_is_u_plus_1");
    }
    SUBCASE("Weierstrass coefficient corrupted") {
        ModularData md = make_default_modular_data();
        md.x015_coeffs[4] = Int(-11);
        fails(md, "uv_on_curve");
    }
}

TEST_CASE("oracle interface errors") {
    const ModularData& md = default_modular_data();
    try {
        verify_identity(md, "no_such_identity", 40);
        FAIL("expected UnknownIdentity");
    } catch (const qt_error& e) {
        CHECK(e.code == "UnknownIdentity");
        CHECK(e.exit_status == 1);
    }
    CHECK_THROWS_AS(verify_identity(md, "eq1", 10), qt_error);  // N < 20
    CHECK(oracle_identity_names().size() == 9);
}
