#include "qtwist/modular_data.hpp"

namespace qtwist {

namespace {

MultiPoly poly2(std::initializer_list<std::array<long, 3>> terms) {
    // {a, b, coeff} with exponents (a, b, 0)
    MultiPoly p;
    for (const auto& t : terms) p.add({(int)t[0], (int)t[1], 0}, Rat(t[2]));
    return p;
}

QMat qmat6(const std::array<std::array<Rat, 6>, 6>& rows) {
    QMat m(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m.at(i, j) = rows[(size_t)i][(size_t)j];
    return m;
}

} // namespace

ModularData make_default_modular_data() {
    ModularData md;

    // genus-3 plane quartic: x^4 - 2x^2y^2 + 81y^4 - 2x^2 - 16xy - 18y^2 + 1
    md.x045_affine = poly2({{4, 0, 1},
                            {2, 2, -2},
                            {0, 4, 81},
                            {2, 0, -2},
                            {1, 1, -16},
                            {0, 2, -18},
                            {0, 0, 1}});
    md.x045_homog = md.x045_affine.homogenized(4);

    // level-15 curve v^2 + uv + v = u^3 + u^2 - 10u - 10
    md.x015_coeffs = {Int(1), Int(1), Int(1), Int(-10), Int(-10)};
    md.x015_relation = poly2(
        {{0, 2, 1}, {1, 1, 1}, {0, 1, 1}, {3, 0, -1}, {2, 0, -1}, {1, 0, 10}, {0, 0, 10}});

    // automorphisms on the differential basis (column j = image of w_{j+1})
    const QD3 zero(Rat(0), Rat(0)), one(Rat(1), Rat(0));
    const QD3 half_s(Rat(0), Rat(1, 2));  // sqrt(-3)/2
    md.w5 = Mat3K::identity();
    md.w5.at(0, 0) = QD3(Rat(-1), Rat(0));
    md.w5.at(1, 1) = QD3(Rat(-1), Rat(0));
    md.w9 = Mat3K{};
    md.w9.at(1, 0) = QD3(Rat(3), Rat(0));
    md.w9.at(0, 1) = QD3(Rat(1, 3), Rat(0));
    md.w9.at(2, 2) = QD3(Rat(-1), Rat(0));
    md.S = Mat3K{};
    md.S.at(0, 0) = QD3(Rat(-1, 2), Rat(0));
    md.S.at(1, 0) = QD3(Rat(-3, 2), Rat(0));
    md.S.at(2, 0) = half_s;
    md.S.at(1, 1) = one;
    md.S.at(0, 2) = half_s;
    md.S.at(1, 2) = half_s;
    md.S.at(2, 2) = QD3(Rat(-1, 2), Rat(0));

    // twisted 6x6 action
    md.s1 = qmat6({{{Rat(-1, 2), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-3, 2)},
                    {Rat(-3, 2), Rat(1), Rat(0), Rat(0), Rat(0), Rat(-3, 2)},
                    {Rat(0), Rat(0), Rat(-1, 2), Rat(-3, 2), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(1, 2), Rat(-1, 2), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(1, 2), Rat(-3, 2), Rat(1), Rat(0)},
                    {Rat(1, 2), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1, 2)}}});
    md.s2 = qmat6({{{Rat(0), Rat(1, 3), Rat(0), Rat(0), Rat(0), Rat(0)},
                    {Rat(3), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(-1), Rat(0), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(0), Rat(0), Rat(1, 3), Rat(0)},
                    {Rat(0), Rat(0), Rat(0), Rat(3), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1)}}});
    md.s3 = QMat::identity(6);
    md.s3.at(0, 0) = Rat(-1);
    md.s3.at(1, 1) = Rat(-1);
    md.s3.at(3, 3) = Rat(-1);
    md.s3.at(4, 4) = Rat(-1);
    md.s4 = QMat::identity(6);
    md.s4.at(0, 0) = Rat(-1);
    md.s4.at(1, 1) = Rat(-1);
    md.s4.at(5, 5) = Rat(-1);

    // U = ((x+9y)^2 - 9) / 4x^2,  V = 9(3 + (x+9y)^2) / 4x^3
    md.U_num = poly2({{2, 0, 1}, {1, 1, 18}, {0, 2, 81}, {0, 0, -9}});
    md.U_den = poly2({{2, 0, 4}});
    md.V_num = poly2({{0, 0, 27}, {2, 0, 9}, {1, 1, 162}, {0, 2, 729}});
    md.V_den = poly2({{3, 0, 4}});

    // u = Q(U,V)/(2 d^2), v = R(U,V)/(2 d^3)
    md.Q_poly = poly2({{0, 0, -1300},
                       {1, 0, -520},
                       {2, 0, -477},
                       {3, 0, 19},
                       {4, 0, -17},
                       {0, 1, 260},
                       {1, 1, 52},
                       {2, 1, 33}});
    md.R_poly = poly2({{0, 0, 9000},
                       {1, 0, -17100},
                       {2, 0, -5670},
                       {3, 0, -11133},
                       {4, 0, -351},
                       {5, 0, -1089},
                       {6, 0, 18},
                       {0, 1, -1800},
                       {1, 1, 3780},
                       {2, 1, 738},
                       {3, 1, 1179},
                       {4, 1, 18}});
    md.d_poly = poly2({{0, 0, 10}, {1, 0, 2}, {2, 0, 3}, {0, 1, -2}});

    // G3 = (uv - u^2 - 9u - 8)/(u + 1)
    md.g3_num = poly2({{1, 1, 1}, {2, 0, -1}, {1, 0, -9}, {0, 0, -8}});
    md.g3_den = poly2({{1, 0, 1}, {0, 0, 1}});
    // t = (189 + 205u + 7u^2 + u^3 + u^4 - 16uv - 3u^2 v)/(uv - u^2 - 9u - 8)
    md.t_num = poly2({{0, 0, 189},
                      {1, 0, 205},
                      {2, 0, 7},
                      {3, 0, 1},
                      {4, 0, 1},
                      {1, 1, -16},
                      {2, 1, -3}});
    md.t_den = md.g3_num;

    // j^2 - A(t) j + B(t)^3 = 0
    md.jt_A = zpoly({614000, -38424, -13700, -310, 30, 1});
    md.jt_B = zpoly({5380, 260, 1});

    // hauptmodul eta quotients
    md.G_eta = {{1, 6}, {5, -6}};
    md.H_eta = {{3, 1}, {5, 5}, {1, -1}, {15, -5}};

    // published expansion prefixes
    md.f1_prefix = {Int(1),  Int(-1), Int(-1), Int(-1), Int(1), Int(1),
                    Int(0),  Int(3),  Int(1),  Int(-1), Int(-4), Int(1),
                    Int(-2), Int(0),  Int(-1), Int(-1), Int(2)};
    md.f2_prefix = {Int(1),  Int(1), Int(0), Int(-1), Int(-1), Int(0),
                    Int(0),  Int(-3), Int(0), Int(-1), Int(4),  Int(0),
                    Int(-2), Int(0),  Int(0), Int(-1), Int(-2)};
    md.u_prefix = {Int(1), Int(1), Int(1), Int(2), Int(4)};
    md.v_prefix = {Int(1), Int(1), Int(2), Int(3), Int(2), Int(5)};
    md.G_prefix = {Int(1), Int(-6), Int(9), Int(10)};
    md.t_prefix = {Int(1), Int(-6), Int(134), Int(760)};
    md.H_prefix = {Int(1), Int(1), Int(2), Int(2), Int(4)};

    (void)zero;
    return md;
}

const ModularData& default_modular_data() {
    static const ModularData md = make_default_modular_data();
    return md;
}

namespace {
Rat eval_z_at_q(const ZPoly& p, const Rat& x) {
    Rat acc(0);
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}
} // namespace

JPair j_from_t(const ModularData& md, const Rat& t) {
    Rat A = eval_z_at_q(md.jt_A, t);
    Rat B = eval_z_at_q(md.jt_B, t);
    Rat disc = A * A - B * B * B * Rat(4);
    JPair r;
    r.a = A / 2;
    if (disc == 0) {
        r.D = 1;
        r.b = Rat(0);
        return r;
    }
    Int nd = Int(disc.get_num()) * Int(disc.get_den());
    try {
        r.D = squarefree_part(nd);
    } catch (const std::exception&) {
        fail_resource("FactorLimit", "squarefree part of the j-discriminant is out of reach");
    }
    Rat rem = disc / Rat(r.D);
    auto s = rat_sqrt(rem);
    if (!s) fail_internal("JSplit", "discriminant over its squarefree part is not a square");
    r.b = *s / 2;
    return r;
}

} // namespace qtwist
