// Rational points of a model and their moduli data: bounded point search, the
// chain from a point through Theta and the covering formulas to (t, j), and
// exact fibers of t.
//
// Fibers go through an identity t = T1/T2 where T1, T2 are low-degree forms
// in the model coordinates.  The coordinate functions pull back to explicit
// K-combinations of f1(q), f1(q^3), f2(q), so candidate identities are linear
// conditions on finitely many q-coefficients, and a candidate that holds on a
// window longer than the degree of the divisor it would cut is exactly zero
// on the curve.  The fiber t = t0 is then cut by the rational form
// T1 - t0 T2 and resolved by resultants over Z.

#include "qtwist/moduli.hpp"

#include "qtwist/error.hpp"
#include "qtwist/qexp.hpp"
#include "qtwist/qmat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace qtwist {

namespace {

Int eval_quartic_int(const std::array<Int, 15>& co, const Int& x, const Int& y, const Int& z) {
    std::array<Int, 5> px, py, pz;
    px[0] = 1;
    py[0] = 1;
    pz[0] = 1;
    for (int i = 1; i <= 4; ++i) {
        px[(size_t)i] = px[(size_t)(i - 1)] * x;
        py[(size_t)i] = py[(size_t)(i - 1)] * y;
        pz[(size_t)i] = pz[(size_t)(i - 1)] * z;
    }
    const auto& mons = quartic_monomials();
    Int s = 0;
    for (int i = 0; i < 15; ++i) {
        if (co[(size_t)i] == 0) continue;
        s += co[(size_t)i] * px[(size_t)mons[(size_t)i][0]] * py[(size_t)mons[(size_t)i][1]] *
             pz[(size_t)mons[(size_t)i][2]];
    }
    return s;
}

} // namespace

ProjPoint proj_point(const Int& x, const Int& y, const Int& z) {
    std::array<Int, 3> c{x, y, z};
    Int g = gcd(gcd(c[0], c[1]), c[2]);
    if (g == 0) fail_internal("ZeroPoint", "projective point needs a nonzero coordinate");
    for (auto& v : c) v /= g;
    for (const auto& v : c) {
        if (v == 0) continue;
        if (v < 0)
            for (auto& w : c) w = -w;
        break;
    }
    return ProjPoint{c};
}

std::string ProjPoint::display() const {
    std::ostringstream os;
    os << "[" << coords[0].get_str() << " : " << coords[1].get_str() << " : "
       << coords[2].get_str() << "]";
    return os.str();
}

std::vector<ProjPoint> search_points(const PlaneQuartic& F, long height) {
    if (height < 0) fail_input("BadHeight", "point search needs a nonnegative height");
    const unsigned long m = 2ul * 3 * 5 * 7 * 11;  // presieve modulus
    const auto& mons = quartic_monomials();
    std::vector<ProjPoint> out;
    std::array<Int, 5> cz;
    std::array<unsigned long, 5> czm;
    // fixed (a, b): collapse F to a polynomial in the last coordinate, then
    // Horner mod m before confirming candidates exactly
    auto scan = [&](long a, long b, auto&& coprime) {
        for (auto& v : cz) v = 0;
        std::array<Int, 5> pa, pb;
        pa[0] = 1;
        pb[0] = 1;
        for (int i = 1; i <= 4; ++i) {
            pa[(size_t)i] = pa[(size_t)(i - 1)] * a;
            pb[(size_t)i] = pb[(size_t)(i - 1)] * b;
        }
        for (int i = 0; i < 15; ++i) {
            if (F.coeffs[(size_t)i] == 0) continue;
            cz[(size_t)mons[(size_t)i][2]] +=
                F.coeffs[(size_t)i] * pa[(size_t)mons[(size_t)i][0]] * pb[(size_t)mons[(size_t)i][1]];
        }
        for (int k = 0; k <= 4; ++k) czm[(size_t)k] = mpz_fdiv_ui(cz[(size_t)k].get_mpz_t(), m);
        for (long c = -height; c <= height; ++c) {
            if (!coprime(c)) continue;
            unsigned long cm = (unsigned long)(((c % (long)m) + (long)m) % (long)m);
            unsigned long acc = czm[4];
            for (int k = 3; k >= 0; --k) acc = (acc * cm + czm[(size_t)k]) % m;
            if (acc != 0) continue;
            Int v = cz[4];
            for (int k = 3; k >= 0; --k) v = v * c + cz[(size_t)k];
            if (v == 0) out.push_back(ProjPoint{{Int(a), Int(b), Int(c)}});
        }
    };
    if (height >= 1 && F.coeffs[14] == 0) out.push_back(ProjPoint{{Int(0), Int(0), Int(1)}});
    for (long b = 1; b <= height; ++b)
        scan(0, b, [&](long c) { return std::gcd(b, c) == 1; });
    for (long a = 1; a <= height; ++a)
        for (long b = -height; b <= height; ++b) {
            long gab = std::gcd(a, b);
            scan(a, b, [&](long c) { return std::gcd(gab, c) == 1; });
        }
    std::sort(out.begin(), out.end());
    return out;
}

ModuliPoint moduli_point(const ProjPoint& P, const ThetaMatrix& theta,
                         const SplittingContext& ctx, const ModularData& md) {
    const NumberField* L = ctx.L.get();
    KElem one(L, Rat(1), Rat(0));
    std::array<KElem, 3> w{KElem(L), KElem(L), KElem(L)};
    for (int j = 0; j < 3; ++j) {
        KElem s(L);
        for (int i = 0; i < 3; ++i) s = s + theta.at(i, j) * Rat(P.coords[(size_t)i]);
        w[(size_t)j] = s;
    }
    ModuliPoint out;
    try {
        if (w[2].is_zero())
            fail_input("ZeroDenominator", "stage xy: w3 = 0 (cusp or exceptional point)");
        KElem x = w[0] / w[2];
        KElem y = w[1] / w[2];
        auto [U, V] = uv_from_xy(md, x, y, one);
        auto down = downstairs_chain(md, U, V, one);
        if (!down.t.b.is_zero() || !down.t.a.is_rational())
            fail_internal("TNotRational", "chain value of a rational point left the rationals");
        out.t = down.t.a.as_rat();
        out.j = j_from_t(md, out.t);
        out.classification = PointClass::ordinary;
    } catch (const qt_error& e) {
        if (e.code == "ZeroDenominator") {
            out.classification = PointClass::cusp_or_exceptional;
            return out;
        }
        throw;
    }
    return out;
}

std::vector<Rat> t_candidates_from_jpair(const ModularData& md, const JPair& j) {
    // sum of the pair: A(t) = 2a, cleared to an integer polynomial
    Rat two_a = j.a * 2;
    Int den = two_a.get_den(), num = two_a.get_num();
    std::vector<Int> cs(md.jt_A.c.size(), Int(0));
    for (size_t i = 0; i < cs.size(); ++i) cs[i] = md.jt_A.c[i] * den;
    if (cs.empty()) cs.push_back(Int(0));
    cs[0] -= num;
    ZPoly p{std::move(cs)};
    if (p.is_zero()) fail_internal("JTData", "trace relation collapsed to zero");
    Rat nrm = j.a * j.a - Rat(j.D) * j.b * j.b;  // product of the pair
    std::vector<Rat> out;
    for (const auto& t : rational_roots(p)) {
        Rat B = md.jt_B.eval(t);
        if (B * B * B == nrm) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- the covering maps u, v as ratios of forms on the model ----

namespace {

std::vector<std::array<int, 3>> degree_monomials(int d) {
    std::vector<std::array<int, 3>> v;
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b) v.push_back({a, b, d - a - b});
    return v;
}

std::vector<Rat> k_components(const KElem& k) {
    std::vector<Rat> out = k.a.coords_q();
    std::vector<Rat> bc = k.b.coords_q();
    out.insert(out.end(), bc.begin(), bc.end());
    return out;
}

} // namespace

ChainForms chain_forms_on_model(const PlaneQuartic& F, const ThetaMatrix& theta,
                                const SplittingContext& ctx, const ModularData& md) {
    const NumberField* L = ctx.L.get();
    KElem kone(L, Rat(1), Rat(0));
    ThetaMatrix MK = theta_inverse(theta, ctx);  // coordinates in the (w1,w2,w3) frame

    const long N = 48;
    SeriesQ f1 = newform_f1(md, N).to_series(N);
    SeriesQ f13 = f1.compose_power(3).truncated(N);
    SeriesQ f2 = newform_f2(md, N).to_series(N);
    auto [us, vs] = uv_series(md, N);

    auto pow_table = [&](const SeriesQ& s) {
        std::vector<SeriesQ> p;
        p.push_back(SeriesQ::one(N));
        for (int i = 1; i <= 4; ++i) p.push_back((p.back() * s).truncated(N));
        return p;
    };
    auto p1 = pow_table(f1), p2 = pow_table(f13), p3 = pow_table(f2);
    auto wpow = [&](const std::array<int, 3>& b) {
        return (p1[(size_t)b[0]] * p2[(size_t)b[1]]).truncated(N) * p3[(size_t)b[2]];
    };

    // the model must pull back to the zero series; a nonzero quartic section
    // vanishes at the cusp to order at most 16, so the window [4, 26) decides
    {
        TriPoly<KElem> EF = substitute_linear<KElem>(F.poly(), MK.e, kone);
        const long lo = 4, hi = 26;
        std::vector<KElem> acc((size_t)(hi - lo), KElem(L));
        for (const auto& [e, c] : EF.terms) {
            SeriesQ wb = wpow(e);
            for (long r = lo; r < hi; ++r) acc[(size_t)(r - lo)] = acc[(size_t)(r - lo)] + c * wb.coeff(r);
        }
        for (const auto& a : acc)
            if (!a.is_zero())
                fail_internal("SeriesModelMismatch",
                              "model coordinates fail their q-expansion identity");
    }

    const long ncomp = 2 * (long)L->deg;

    // phi is a function with a pole of order pole_inf at the cusp and polar
    // degree pole_total on the model.  A pair of degree-d forms (T1, T2) with
    // T1 - phi T2 nonzero on the curve gives a section of degree 4d +
    // pole_total whose series valuation is at most 5d + pole_total - pole_inf,
    // so matching the series on a window past that bound certifies any kernel
    // vector as an exact identity.  Degrees stop at 3, below the quartic, so
    // multiples of F itself cannot appear in the kernel.
    auto find_ratio = [&](const SeriesQ& phi, long pole_inf, long pole_total,
                          std::pair<MultiPoly, MultiPoly>& out) -> int {
        for (int d = 1; d <= 3; ++d) {
            auto mons = degree_monomials(d);
            const int nmon = (int)mons.size();
            const long lo = d - pole_inf, hi = 5 * d + pole_total - pole_inf + 7;
            const long nr = hi - lo;
            std::vector<std::vector<KElem>> A((size_t)nmon), B((size_t)nmon);
            for (int i = 0; i < nmon; ++i) {
                MultiPoly mono = MultiPoly::term(mons[(size_t)i][0], mons[(size_t)i][1],
                                                 mons[(size_t)i][2], Rat(1));
                TriPoly<KElem> E = substitute_linear<KElem>(mono, MK.e, kone);
                std::vector<KElem> ai((size_t)nr, KElem(L)), bi((size_t)nr, KElem(L));
                for (const auto& [e, c] : E.terms) {
                    SeriesQ wb = wpow(e);
                    SeriesQ pwb = phi * wb;
                    for (long r = lo; r < hi; ++r) {
                        ai[(size_t)(r - lo)] = ai[(size_t)(r - lo)] + c * wb.coeff(r);
                        bi[(size_t)(r - lo)] = bi[(size_t)(r - lo)] + c * pwb.coeff(r);
                    }
                }
                A[(size_t)i] = std::move(ai);
                B[(size_t)i] = std::move(bi);
            }
            QMat C((int)(nr * ncomp), 2 * nmon);
            for (long r = 0; r < nr; ++r)
                for (int i = 0; i < nmon; ++i) {
                    std::vector<Rat> ca = k_components(A[(size_t)i][(size_t)r]);
                    std::vector<Rat> cb = k_components(B[(size_t)i][(size_t)r]);
                    for (long k = 0; k < ncomp; ++k) {
                        C.at((int)(r * ncomp + k), i) = ca[(size_t)k];
                        C.at((int)(r * ncomp + k), nmon + i) = -cb[(size_t)k];
                    }
                }
            for (const auto& v : linalg::kernel_basis(C)) {
                MultiPoly num, den;
                for (int i = 0; i < nmon; ++i) {
                    num.add(mons[(size_t)i], v[(size_t)i]);
                    den.add(mons[(size_t)i], v[(size_t)(nmon + i)]);
                }
                if (den.is_zero()) continue;
                out = {std::move(num), std::move(den)};
                return d;
            }
        }
        fail_internal("FiberRepresentation",
                      "no low-degree form ratio expresses the covering maps on the model");
    };

    // u pulls back from a degree-2 function with all poles above the cusp,
    // through a covering of degree 3: polar degree 6, cusp pole order 2.
    // v is integral over the subring generated by u away from u's poles, so
    // its polar degree is 9 with cusp pole order 3.
    ChainForms cf;
    std::pair<MultiPoly, MultiPoly> rep;
    cf.u_degree = find_ratio(us, 2, 6, rep);
    cf.u_num = std::move(rep.first);
    cf.u_den = std::move(rep.second);
    cf.v_degree = find_ratio(vs, 3, 9, rep);
    cf.v_num = std::move(rep.first);
    cf.v_den = std::move(rep.second);
    return cf;
}

// ---- fibers ----

namespace {

MultiPoly permute_vars(const MultiPoly& P, const std::array<int, 3>& sg) {
    MultiPoly r;
    for (const auto& [e, c] : P.terms)
        r.add({e[(size_t)sg[0]], e[(size_t)sg[1]], e[(size_t)sg[2]]}, c);
    return r;
}

std::map<std::array<int, 3>, Int> int_terms(const MultiPoly& P) {
    Int m = 1;
    for (const auto& [e, c] : P.terms) m = lcm(m, Int(c.get_den()));
    std::map<std::array<int, 3>, Int> r;
    for (const auto& [e, c] : P.terms) {
        Int v = Int(c.get_num()) * (m / Int(c.get_den()));
        if (v != 0) r[e] = v;
    }
    return r;
}

// restriction to the chart y = 1 as a polynomial in z with Z[x] coefficients
UniPoly<ZPoly> z_chart(const std::map<std::array<int, 3>, Int>& T) {
    std::map<int, std::map<int, Int>> by;  // z-deg -> x-deg -> coeff
    int zmax = -1;
    for (const auto& [e, c] : T) {
        by[e[2]][e[0]] += c;
        zmax = std::max(zmax, e[2]);
    }
    UniPoly<ZPoly> f;
    if (zmax < 0) return f;
    f.c.assign((size_t)zmax + 1, ZPoly());
    for (const auto& [zd, row] : by) {
        int xmax = -1;
        for (const auto& [xd, c] : row) xmax = std::max(xmax, xd);
        std::vector<Int> cs((size_t)xmax + 1, Int(0));
        for (const auto& [xd, c] : row) cs[(size_t)xd] = c;
        f.c[(size_t)zd] = ZPoly{std::move(cs)};
    }
    f.trim();
    return f;
}

// restriction to the line y = 0, x = 1 as a polynomial in z
ZPoly line_chart(const std::map<std::array<int, 3>, Int>& T) {
    int zmax = -1;
    for (const auto& [e, c] : T)
        if (e[1] == 0) zmax = std::max(zmax, e[2]);
    if (zmax < 0) return ZPoly();
    std::vector<Int> cs((size_t)zmax + 1, Int(0));
    for (const auto& [e, c] : T)
        if (e[1] == 0) cs[(size_t)e[2]] += c;
    ZPoly f{std::move(cs)};
    return f;
}

QPoly specialize_x(const UniPoly<ZPoly>& f, const Rat& x0) {
    QPoly r;
    for (const auto& zc : f.c) r.c.push_back(zc.eval(x0));
    r.trim();
    return r;
}

ZPoly clear_qpoly(const QPoly& f) {
    Int m = 1;
    for (const auto& c : f.c) m = lcm(m, Int(c.get_den()));
    std::vector<Int> cs;
    for (const auto& c : f.c) cs.push_back(Int(c.get_num()) * (m / Int(c.get_den())));
    return ZPoly{std::move(cs)};
}

// common rational roots of two univariate restrictions; the model-side
// restriction must be nonzero (a zero restriction means a line on the model)
std::vector<Rat> common_z(const QPoly& fz, const QPoly& gz) {
    ZPoly fc = clear_qpoly(fz);
    if (fc.is_zero())
        fail_internal("DegenerateElimination", "a line of the fiber lies on the model");
    std::vector<Rat> out;
    for (const auto& z : rational_roots(fc))
        if (gz.eval(z) == 0) out.push_back(z);
    return out;
}

std::optional<std::vector<ProjPoint>> attempt_fiber(const MultiPoly& Fp, const MultiPoly& Gp,
                                                    const std::array<int, 3>& sg) {
    MultiPoly Fq = permute_vars(Fp, sg), Gq = permute_vars(Gp, sg);
    auto FT = int_terms(Fq), GT = int_terms(Gq);
    UniPoly<ZPoly> fch = z_chart(FT), gch = z_chart(GT);
    if (fch.is_zero() || gch.is_zero()) return std::nullopt;
    if (fch.degree() < 1 && gch.degree() < 1) return std::nullopt;
    ZPoly R = resultant(fch, gch);
    if (R.is_zero()) return std::nullopt;
    std::vector<ProjPoint> found;
    auto push = [&](const Rat& x0, const Rat& y0, const Rat& z0) {
        Int m = lcm(lcm(Int(x0.get_den()), Int(y0.get_den())), Int(z0.get_den()));
        std::array<Int, 3> v{Int(x0.get_num()) * (m / Int(x0.get_den())),
                             Int(y0.get_num()) * (m / Int(y0.get_den())),
                             Int(z0.get_num()) * (m / Int(z0.get_den()))};
        std::array<Int, 3> w;
        for (int i = 0; i < 3; ++i) w[(size_t)sg[(size_t)i]] = v[(size_t)i];
        found.push_back(proj_point(w[0], w[1], w[2]));
    };
    // chart y = 1
    for (const auto& x0 : rational_roots(R)) {
        QPoly fz = specialize_x(fch, x0), gz = specialize_x(gch, x0);
        for (const auto& z0 : common_z(fz, gz)) push(x0, Rat(1), z0);
    }
    // line y = 0, x = 1
    ZPoly f0 = line_chart(FT), g0 = line_chart(GT);
    if (f0.is_zero())
        fail_internal("DegenerateElimination", "a line of the fiber lies on the model");
    QPoly f0q, g0q;
    for (const auto& c : f0.c) f0q.c.push_back(Rat(c));
    for (const auto& c : g0.c) g0q.c.push_back(Rat(c));
    for (const auto& z0 : common_z(f0q, g0q)) push(Rat(1), Rat(0), z0);
    // remaining point (0 : 0 : 1)
    auto coef = [](const std::map<std::array<int, 3>, Int>& T, int d) {
        auto it = T.find({0, 0, d});
        return it == T.end() ? Int(0) : it->second;
    };
    int dG = Gq.total_degree();
    if (coef(FT, 4) == 0 && (dG < 0 || coef(GT, dG) == 0)) push(Rat(0), Rat(0), Rat(1));
    return found;
}

} // namespace

std::vector<ProjPoint> fiber_over_t(const PlaneQuartic& F, const ChainForms& forms,
                                    const ThetaMatrix& theta, const SplittingContext& ctx,
                                    const ModularData& md, const Rat& t0) {
    // substitute u = A/B, v = C/D into t_num(u,v) - t0 t_den(u,v) and clear
    // denominators with the top powers of B and D.  On the curve A = u B and
    // C = v D identically, and u, v have no poles at ordinary points, so
    // wherever B or D vanishes the matching numerator vanishes too; the
    // cleared form therefore still vanishes on the whole fiber.  Spurious
    // zeros are removed by the exact re-check at the end.
    int au = 0, bv = 0;
    for (const auto& [e, c] : md.t_num.terms) {
        au = std::max(au, e[0]);
        bv = std::max(bv, e[1]);
    }
    for (const auto& [e, c] : md.t_den.terms) {
        au = std::max(au, e[0]);
        bv = std::max(bv, e[1]);
    }
    auto pows = [](const MultiPoly& P, int n) {
        std::vector<MultiPoly> p;
        p.push_back(MultiPoly::term(0, 0, 0, Rat(1)));
        for (int i = 1; i <= n; ++i) p.push_back(p.back() * P);
        return p;
    };
    auto pA = pows(forms.u_num, au), pB = pows(forms.u_den, au);
    auto pC = pows(forms.v_num, bv), pD = pows(forms.v_den, bv);
    MultiPoly G;
    auto accum = [&](const MultiPoly& T, const Rat& scale) {
        for (const auto& [e, c] : T.terms) {
            MultiPoly m = pA[(size_t)e[0]] * pB[(size_t)(au - e[0])];
            m = m * pC[(size_t)e[1]];
            m = m * pD[(size_t)(bv - e[1])];
            G = G + m.scaled(c * scale);
        }
    };
    accum(md.t_num, Rat(1));
    accum(md.t_den, -t0);
    if (G.is_zero())
        fail_internal("DegenerateElimination", "fiber form vanished identically");
    MultiPoly Fp = F.poly();
    static const std::array<std::array<int, 3>, 3> orders = {{{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}};
    std::optional<std::vector<ProjPoint>> cand;
    for (const auto& sg : orders) {
        cand = attempt_fiber(Fp, G, sg);
        if (cand) break;
    }
    if (!cand)
        fail_internal("DegenerateElimination", "resultant vanished in every coordinate order");
    std::set<ProjPoint> keep;
    for (const auto& P : *cand) {
        ModuliPoint mp = moduli_point(P, theta, ctx, md);
        if (mp.classification == PointClass::ordinary && mp.t == t0) keep.insert(P);
    }
    return {keep.begin(), keep.end()};
}

std::vector<ProjPoint> fiber_over_t(const PlaneQuartic& F, const ThetaMatrix& theta,
                                    const SplittingContext& ctx, const ModularData& md,
                                    const Rat& t0) {
    ChainForms forms = chain_forms_on_model(F, theta, ctx, md);
    return fiber_over_t(F, forms, theta, ctx, md, t0);
}

} // namespace qtwist
