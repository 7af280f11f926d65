#pragma once
// The fixed modular geometry: the genus-3 plane quartic (level 45), its
// automorphism matrices, the level-15 elliptic curve below it, and the exact
// covering formulas down to the degree-5 modular t-line and j.
// Everything here is constant data plus pure evaluation helpers; the
// q-expansion oracle re-derives all of it independently in tests.

#include "qtwist/multipoly.hpp"
#include "qtwist/qd3.hpp"
#include "qtwist/qmat.hpp"
#include "qtwist/unipoly.hpp"
#include "qtwist/error.hpp"

#include <array>
#include <vector>

namespace qtwist {

// 3x3 matrix over Q(sqrt(-3)); column j = image of the j-th differential
struct Mat3K {
    std::array<std::array<QD3, 3>, 3> a{};

    QD3& at(int i, int j) { return a[(size_t)i][(size_t)j]; }
    const QD3& at(int i, int j) const { return a[(size_t)i][(size_t)j]; }

    Mat3K operator*(const Mat3K& o) const {
        Mat3K r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                QD3 s(Rat(0), Rat(0));
                for (int k = 0; k < 3; ++k) s = s + at(i, k) * o.at(k, j);
                r.at(i, j) = s;
            }
        return r;
    }
    bool operator==(const Mat3K& o) const { return a == o.a; }
    Mat3K conj() const {  // sqrt(-3) -> -sqrt(-3) entrywise
        Mat3K r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.at(i, j) = at(i, j).conj();
        return r;
    }
    static Mat3K identity() {
        Mat3K r;
        for (int i = 0; i < 3; ++i) r.at(i, i) = QD3(Rat(1), Rat(0));
        return r;
    }
};

// multiplicand/exponent pairs of a Dedekind eta quotient, e.g. {{1,6},{5,-6}}
// for (eta(tau)/eta(5 tau))^6
using EtaQuotientSpec = std::vector<std::pair<long, long>>;

struct ModularData {
    // plane quartic of the level-45 modular curve, affine (x,y) and homogeneous
    MultiPoly x045_affine;
    MultiPoly x045_homog;

    // level-15 curve v^2 + uv + v = u^3 + u^2 - 10u - 10, as [a1,a2,a3,a4,a6]
    std::array<Int, 5> x015_coeffs;
    MultiPoly x015_relation;  // vanishing polynomial in (u, v)

    // automorphisms of the level-45 curve on the differential basis
    Mat3K w5, w9, S;

    // 6x6 twisted Galois action on {w1, w2, w3, s3*w1, s3*w2, s3*w3}
    QMat s1, s2, s3, s4;

    // covering formulas: U, V as rational functions of (x, y)
    MultiPoly U_num, U_den, V_num, V_den;
    // u = Q(U,V) / (2 d^2), v = R(U,V) / (2 d^3), d = 10 + 2U + 3U^2 - 2V
    MultiPoly Q_poly, R_poly, d_poly;
    // G3 = (uv - u^2 - 9u - 8)/(u + 1); t = t_num/t_den in (u, v)
    MultiPoly g3_num, g3_den, t_num, t_den;
    // j^2 - A(t) j + B(t)^3 = 0
    ZPoly jt_A, jt_B;

    // eta-quotient builds of the hauptmoduls
    EtaQuotientSpec G_eta;  // 1/q - 6 + 9q + ...
    EtaQuotientSpec H_eta;  // 1/q^2 + 1/q + 2 + ...: equals u + 1

    // published q-expansion prefixes (leading coefficient first)
    std::vector<Int> f1_prefix;  // val 1, 17 coefficients
    std::vector<Int> f2_prefix;  // val 1, 17 coefficients
    std::vector<Int> u_prefix;   // val -2
    std::vector<Int> v_prefix;   // val -3
    std::vector<Int> G_prefix;   // val -1
    std::vector<Int> t_prefix;   // val -1
    std::vector<Int> H_prefix;   // val -2
};

const ModularData& default_modular_data();
ModularData make_default_modular_data();

// the two j-values over t: j = a + b sqrt(D), D squarefree (D = 1: rational)
struct JPair {
    Int D;
    Rat a, b;
};
JPair j_from_t(const ModularData& md, const Rat& t);

// ---- generic covering-chain evaluation (Q, number fields, series) ----

template <class S>
std::pair<S, S> uv_from_xy(const ModularData& md, const S& x, const S& y, const S& one) {
    S dU = md.U_den.eval2(x, y, one);
    if (ring_zero(dU)) fail_input("ZeroDenominator", "stage uv: x = 0 (cusp or exceptional point)");
    S U = md.U_num.eval2(x, y, one) / dU;
    S V = md.V_num.eval2(x, y, one) / md.V_den.eval2(x, y, one);
    return {std::move(U), std::move(V)};
}

template <class S>
struct DownstairsValues {
    S u, v, g3, t;
};

template <class S>
DownstairsValues<S> downstairs_chain(const ModularData& md, const S& U, const S& V,
                                     const S& one) {
    S d = md.d_poly.eval2(U, V, one);
    if (ring_zero(d)) fail_input("ZeroDenominator", "stage u: 10 + 2U + 3U^2 - 2V = 0 (cusp)");
    S d2 = (d * d) * Rat(2);
    S d3 = (d * d * d) * Rat(2);
    DownstairsValues<S> r{md.Q_poly.eval2(U, V, one) / d2, md.R_poly.eval2(U, V, one) / d3,
                          one, one};
    S hden = md.g3_den.eval2(r.u, r.v, one);
    if (ring_zero(hden)) fail_input("ZeroDenominator", "stage g3: u + 1 = 0 (cusp)");
    S gnum = md.g3_num.eval2(r.u, r.v, one);
    r.g3 = gnum / hden;
    S tden = md.t_den.eval2(r.u, r.v, one);
    if (ring_zero(tden)) fail_input("ZeroDenominator", "stage t: G3 numerator = 0 (cusp)");
    r.t = md.t_num.eval2(r.u, r.v, one) / tden;
    return r;
}

} // namespace qtwist
