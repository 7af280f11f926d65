#include "qtwist/twist.hpp"

#include "qtwist/error.hpp"
#include "qtwist/modp.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace qtwist {

namespace {

// clear denominators and divide by the content; zero rows come back as zeros
std::vector<Int> rat_row_to_primitive(const std::vector<Rat>& v) {
    Int l(1);
    for (const Rat& x : v) l = lcm(l, den(x));
    std::vector<Int> r(v.size());
    Int g(0);
    for (size_t j = 0; j < v.size(); ++j) {
        Rat t = v[j] * Rat(l);
        r[j] = num(t);
        g = gcd(g, r[j]);
    }
    if (g != 0)
        for (Int& x : r) x = divexact(x, g);
    return r;
}

// stacked primitive-integer rows of all (W_i - Id); same kernel as the family
IntMat fixed_space_stack(const std::array<QMat, 4>& W) {
    const int n = W[0].cols;
    std::vector<std::vector<Int>> rows;
    for (const QMat& Wi : W) {
        if (Wi.rows != n || Wi.cols != n)
            fail_internal("ShapeMismatch", "twist matrices must be square of a common size");
        QMat M = Wi - QMat::identity(n);
        for (int i = 0; i < n; ++i) {
            std::vector<Rat> row((size_t)n);
            bool nz = false;
            for (int j = 0; j < n; ++j) {
                row[(size_t)j] = M.at(i, j);
                nz = nz || row[(size_t)j] != 0;
            }
            if (nz) rows.push_back(rat_row_to_primitive(row));
        }
    }
    if (rows.empty())
        fail_internal("DimensionMismatch", "fixed space is the whole coordinate space");
    IntMat S((int)rows.size(), n);
    for (int i = 0; i < S.rows; ++i)
        for (int j = 0; j < n; ++j) S.at(i, j) = rows[(size_t)i][(size_t)j];
    return S;
}

struct PrimeKernel {
    modp::u64 p = 0;
    std::vector<int> pivots;
    std::vector<std::vector<modp::u64>> vecs;  // canonical free-column form
};

PrimeKernel kernel_one_prime(const IntMat& S, modp::u64 p) {
    modp::MatP A(S.rows, S.cols);
    for (int i = 0; i < S.rows; ++i)
        for (int j = 0; j < S.cols; ++j) A.at(i, j) = modp::to_u64(S.at(i, j), p);
    PrimeKernel K;
    K.p = p;
    K.vecs = modp::kernel_mod_p(A, p, &K.pivots);
    return K;
}

// reduction mod p can only lose rank, so the true rational structure has the
// smallest kernel dimension and, at that dimension, the earliest pivot columns
bool structure_better(const PrimeKernel& a, const PrimeKernel& b) {
    if (a.vecs.size() != b.vecs.size()) return a.vecs.size() < b.vecs.size();
    return a.pivots < b.pivots;
}

bool exact_kernel_check(const IntMat& S, const std::vector<std::vector<Rat>>& vecs) {
    for (const auto& v : vecs)
        for (int i = 0; i < S.rows; ++i) {
            Rat acc(0);
            for (int j = 0; j < S.cols; ++j)
                if (S.at(i, j) != 0) acc += Rat(S.at(i, j)) * v[(size_t)j];
            if (acc != 0) return false;
        }
    return true;
}

// basis (rows) of {z in Z^k : z . v = 0} for a nonzero integer vector v,
// built from a running extended-gcd Bezout vector; k-1 independent rows
std::vector<std::vector<Int>> kernel_of_row(const std::vector<Int>& v) {
    const size_t k = v.size();
    std::vector<std::vector<Int>> out;
    std::vector<Int> b;  // partial Bezout vector: b . v = g over the seen prefix
    Int g(0);
    size_t lead = k;
    for (size_t i = 0; i < k; ++i) {
        if (v[i] == 0) {
            std::vector<Int> e(k, Int(0));
            e[i] = 1;
            out.push_back(std::move(e));
            continue;
        }
        if (lead == k) {
            lead = i;
            b.assign(k, Int(0));
            if (v[i] > 0) { g = v[i]; b[i] = 1; }
            else { g = -v[i]; b[i] = -1; }
            continue;
        }
        Int gn, x, y;
        mpz_gcdext(gn.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), g.get_mpz_t(),
                   v[i].get_mpz_t());
        std::vector<Int> w(k, Int(0));
        Int f1 = divexact(v[i], gn), f2 = divexact(g, gn);
        for (size_t j = 0; j < k; ++j) w[j] = f1 * b[j];
        w[i] -= f2;
        out.push_back(std::move(w));
        for (size_t j = 0; j < k; ++j) b[j] = x * b[j];
        b[i] += y;
        g = gn;
    }
    if (lead == k) fail_internal("SaturationInvariant", "kernel of a zero row requested");
    return out;
}

// exact saturation: replace the rows by a basis of rowspan_Q(rows) cap Z^n.
// The space is parameterized by its RREF pivot coordinates; integrality of
// each non-pivot coordinate is one congruence on the pivot tuple, imposed as
// an extended-gcd kernel, so no factoring of the lattice index is ever needed.
void saturate_rows(std::vector<std::vector<Int>>& rows) {
    const int m = (int)rows.size(), n = (int)rows[0].size();
    QMat R(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) R.at(i, j) = Rat(rows[(size_t)i][(size_t)j]);
    auto pivots = linalg::rref(R);
    if ((int)pivots.size() != m)
        fail_internal("DimensionMismatch", "fixed-space rows are dependent");
    std::vector<bool> is_pivot((size_t)n, false);
    for (int c : pivots) is_pivot[(size_t)c] = true;

    // rows of G = basis of the current candidate lattice of pivot tuples
    std::vector<std::vector<Int>> G((size_t)m, std::vector<Int>((size_t)m, Int(0)));
    for (int i = 0; i < m; ++i) G[(size_t)i][(size_t)i] = 1;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[(size_t)c]) continue;
        std::vector<Rat> t((size_t)m, Rat(0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) t[(size_t)i] += Rat(G[(size_t)i][(size_t)j]) * R.at(j, c);
        Int md(1);
        for (const Rat& x : t) md = lcm(md, den(x));
        if (md == 1) continue;
        std::vector<Int> v((size_t)m + 1);
        for (int i = 0; i < m; ++i) {
            Rat s = t[(size_t)i] * Rat(md);
            v[(size_t)i] = num(s);
        }
        v[(size_t)m] = -md;
        auto K = kernel_of_row(v);
        std::vector<std::vector<Int>> NG((size_t)m, std::vector<Int>((size_t)m, Int(0)));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Int s(0);
                for (int l = 0; l < m; ++l) s += K[(size_t)i][(size_t)l] * G[(size_t)l][(size_t)j];
                NG[(size_t)i][(size_t)j] = s;
            }
        IntMat H((int)NG.size(), m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) H.at(i, j) = NG[(size_t)i][(size_t)j];
        H = linalg::hnf_rows(H);
        if (H.rows != m)
            fail_internal("SaturationInvariant", "congruence lattice lost rank");
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) G[(size_t)i][(size_t)j] = H.at(i, j);
    }
    std::vector<std::vector<Int>> out((size_t)m, std::vector<Int>((size_t)n));
    for (int i = 0; i < m; ++i) {
        for (int c = 0; c < n; ++c) {
            Rat s(0);
            for (int j = 0; j < m; ++j) s += Rat(G[(size_t)i][(size_t)j]) * R.at(j, c);
            if (den(s) != 1)
                fail_internal("SaturationInvariant", "saturated row is not integral");
            out[(size_t)i][(size_t)c] = num(s);
        }
        Int gc(0);
        for (const Int& x : out[(size_t)i]) gc = gcd(gc, x);
        if (gc == 0) fail_internal("SaturationInvariant", "saturated row vanished");
        for (Int& x : out[(size_t)i]) x = divexact(x, gc);
    }
    rows = std::move(out);
}

Int round_nearest(const Rat& q) {
    Rat t = q + Rat(1, 2);
    Int nu = num(t), de = den(t), r;
    mpz_fdiv_q(r.get_mpz_t(), nu.get_mpz_t(), de.get_mpz_t());
    return r;
}

// ---- 3x3 arithmetic over K ----

using K3 = std::array<std::array<KElem, 3>, 3>;

K3 k3_identity(const NumberField* F) {
    K3 I;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            I[(size_t)i][(size_t)j] = KElem(F, Rat(i == j ? 1 : 0), Rat(0));
    return I;
}

K3 k3_mul(const K3& A, const K3& B) {
    K3 R;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            KElem s = A[(size_t)i][0] * B[0][(size_t)j];
            for (int k = 1; k < 3; ++k) s = s + A[(size_t)i][(size_t)k] * B[(size_t)k][(size_t)j];
            R[(size_t)i][(size_t)j] = s;
        }
    return R;
}

K3 k3_inverse(K3 A, const NumberField* F) {
    K3 I = k3_identity(F);
    for (int c = 0; c < 3; ++c) {
        int piv = -1;
        for (int r = c; r < 3; ++r)
            if (!A[(size_t)r][(size_t)c].is_zero()) { piv = r; break; }
        if (piv < 0)
            fail_internal("SingularTheta", "coefficient matrix of the fixed basis is singular over K");
        std::swap(A[(size_t)piv], A[(size_t)c]);
        std::swap(I[(size_t)piv], I[(size_t)c]);
        KElem d = A[(size_t)c][(size_t)c].inverse();
        for (int j = 0; j < 3; ++j) {
            A[(size_t)c][(size_t)j] = A[(size_t)c][(size_t)j] * d;
            I[(size_t)c][(size_t)j] = I[(size_t)c][(size_t)j] * d;
        }
        for (int r = 0; r < 3; ++r) {
            if (r == c || A[(size_t)r][(size_t)c].is_zero()) continue;
            KElem f = A[(size_t)r][(size_t)c];
            for (int j = 0; j < 3; ++j) {
                A[(size_t)r][(size_t)j] = A[(size_t)r][(size_t)j] - f * A[(size_t)c][(size_t)j];
                I[(size_t)r][(size_t)j] = I[(size_t)r][(size_t)j] - f * I[(size_t)c][(size_t)j];
            }
        }
    }
    return I;
}

// ---- smoothness certificate helpers ----

// restriction to the affine chart Z = 1 as a polynomial in y over Z[x]
UniPoly<ZPoly> chart_bivariate(const MultiPoly& P) {
    std::map<int, std::map<int, Int>> by_y;
    for (const auto& [e, c] : P.terms) by_y[e[1]][e[0]] += num(c);
    UniPoly<ZPoly> f;
    if (by_y.empty()) return f;
    f.c.assign((size_t)by_y.rbegin()->first + 1, ZPoly());
    for (const auto& [yd, m] : by_y) {
        ZPoly g;
        g.c.assign((size_t)m.rbegin()->first + 1, Int(0));
        for (const auto& [xd, v] : m) g.c[(size_t)xd] = v;
        g.trim();
        f.c[(size_t)yd] = g;
    }
    f.trim();
    return f;
}

enum class ChartStatus { clean, retry };

// no common complex zero of the three partials in the chart Z = 1: anchored
// resultants in y, then an exact gcd over Z[x]. A common zero forces both
// resultants to vanish at its x-coordinate (this holds whether or not leading
// y-coefficients drop there), so a constant gcd certifies the chart; any
// degenerate configuration punts to the next coordinate system.
ChartStatus chart_z1_status(const MultiPoly& FX, const MultiPoly& FY, const MultiPoly& FZ) {
    UniPoly<ZPoly> A = chart_bivariate(FX), B = chart_bivariate(FY), C = chart_bivariate(FZ);
    std::vector<const UniPoly<ZPoly>*> nz;
    for (const auto* P : {&A, &B, &C})
        if (!P->is_zero()) nz.push_back(P);
    if (nz.empty()) return ChartStatus::retry;
    bool all_yfree = true;
    for (const auto* P : nz) all_yfree = all_yfree && P->degree() == 0;
    if (all_yfree) {
        ZPoly g = nz[0]->c[0];
        for (size_t i = 1; i < nz.size(); ++i) g = zpoly_gcd(g, nz[i]->c[0]);
        return g.degree() == 0 ? ChartStatus::clean : ChartStatus::retry;
    }
    const UniPoly<ZPoly>* anchor = nullptr;
    for (const auto* P : nz)
        if (P->degree() >= 1) { anchor = P; break; }
    std::vector<ZPoly> rs;
    for (const auto* P : nz) {
        if (P == anchor) continue;
        ZPoly R = resultant(*anchor, *P);
        if (R.is_zero()) return ChartStatus::retry;
        rs.push_back(R);
    }
    if (rs.empty()) return ChartStatus::retry;
    ZPoly g = rs[0];
    for (size_t i = 1; i < rs.size(); ++i) g = zpoly_gcd(g, rs[i]);
    return g.degree() == 0 ? ChartStatus::clean : ChartStatus::retry;
}

// the line Z = 0 away from (1:0:0): set Y = 1 and intersect the root sets of
// the restricted partials exactly
ChartStatus line_chart_status(const MultiPoly& FX, const MultiPoly& FY, const MultiPoly& FZ) {
    auto restrict_line = [](const MultiPoly& P) {
        std::map<int, Int> cs;
        for (const auto& [e, c] : P.terms)
            if (e[2] == 0) cs[e[0]] += num(c);
        ZPoly g;
        if (!cs.empty()) {
            g.c.assign((size_t)cs.rbegin()->first + 1, Int(0));
            for (const auto& [d, v] : cs) g.c[(size_t)d] = v;
            g.trim();
        }
        return g;
    };
    ZPoly g;
    bool first = true;
    for (const MultiPoly* P : {&FX, &FY, &FZ}) {
        ZPoly R = restrict_line(*P);
        if (R.is_zero()) continue;
        g = first ? R : zpoly_gcd(g, R);
        first = false;
    }
    if (first) return ChartStatus::retry;
    return g.degree() == 0 ? ChartStatus::clean : ChartStatus::retry;
}

bool corner_regular(const MultiPoly& FX, const MultiPoly& FY, const MultiPoly& FZ) {
    Rat one(1), zero(0);
    return FX.eval(one, zero, zero, one) != 0 || FY.eval(one, zero, zero, one) != 0 ||
           FZ.eval(one, zero, zero, one) != 0;
}

} // namespace

bool certify_smooth_quartic(const std::array<Int, 15>& coeffs, int* transform_used) {
    MultiPoly F0 = quartic_from_vector(coeffs);
    if (F0.is_zero()) return false;
    // unimodular coordinate changes tried in order; smoothness is invariant
    // under each, so certifying any one of them certifies the model
    static const std::array<std::array<std::array<long, 3>, 3>, 6> transforms = {{
        {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
        {{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}},
        {{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}}},
        {{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}},
        {{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}},
        {{{1, 1, 1}, {0, 1, 1}, {0, 0, 1}}},
    }};
    for (size_t t = 0; t < transforms.size(); ++t) {
        std::array<std::array<Rat, 3>, 3> M;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                M[(size_t)i][(size_t)j] = Rat(transforms[t][(size_t)i][(size_t)j]);
        MultiPoly G = substitute_linear<Rat>(F0, M, Rat(1));
        MultiPoly GX = G.partial(0), GY = G.partial(1), GZ = G.partial(2);
        if (chart_z1_status(GX, GY, GZ) != ChartStatus::clean) continue;
        if (line_chart_status(GX, GY, GZ) != ChartStatus::clean) continue;
        if (!corner_regular(GX, GY, GZ)) continue;
        if (transform_used) *transform_used = (int)t;
        return true;
    }
    return false;
}

std::array<QMat, 4> build_W(const SplittingContext& ctx, const ModularData& md,
                            bool corrupt_sigma1) {
    const int deg = ctx.L->deg;
    QMat sig1 = corrupt_sigma1 ? QMat::identity(deg) : automorphism_matrix(ctx, ctx.sigma1);
    QMat sig2 = automorphism_matrix(ctx, ctx.sigma2);
    QMat sig3 = automorphism_matrix(ctx, ctx.sigma3);
    QMat sig4 = QMat::identity(deg);
    return {kron(md.s1, sig1), kron(md.s2, sig2), kron(md.s3, sig3), kron(md.s4, sig4)};
}

void lll_reduce_rows(std::vector<std::vector<Int>>& b) {
    const int m = (int)b.size();
    if (m <= 1) return;
    auto dot = [](const std::vector<Int>& x, const std::vector<Int>& y) {
        Int s(0);
        for (size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0 && y[i] != 0) s += x[i] * y[i];
        return s;
    };
    std::vector<std::vector<Rat>> mu((size_t)m, std::vector<Rat>((size_t)m, Rat(0)));
    std::vector<Rat> Bs((size_t)m, Rat(0));
    auto gs = [&](int upto) {
        for (int i = 0; i <= upto; ++i) {
            for (int j = 0; j < i; ++j) {
                Rat t = Rat(dot(b[(size_t)i], b[(size_t)j]));
                for (int l = 0; l < j; ++l)
                    t -= mu[(size_t)i][(size_t)l] * mu[(size_t)j][(size_t)l] * Bs[(size_t)l];
                if (Bs[(size_t)j] == 0)
                    fail_internal("DimensionMismatch", "LLL input rows are dependent");
                mu[(size_t)i][(size_t)j] = t / Bs[(size_t)j];
            }
            Rat nb = Rat(dot(b[(size_t)i], b[(size_t)i]));
            for (int l = 0; l < i; ++l)
                nb -= mu[(size_t)i][(size_t)l] * mu[(size_t)i][(size_t)l] * Bs[(size_t)l];
            Bs[(size_t)i] = nb;
        }
    };
    int k = 1;
    while (k < m) {
        gs(k);
        for (int j = k - 1; j >= 0; --j) {
            Int r = round_nearest(mu[(size_t)k][(size_t)j]);
            if (r != 0) {
                for (size_t i = 0; i < b[(size_t)k].size(); ++i)
                    b[(size_t)k][i] -= r * b[(size_t)j][i];
                gs(k);
            }
        }
        Rat bound = (Rat(3, 4) - mu[(size_t)k][(size_t)k - 1] * mu[(size_t)k][(size_t)k - 1]) *
                    Bs[(size_t)k - 1];
        if (Bs[(size_t)k] >= bound) {
            ++k;
        } else {
            std::swap(b[(size_t)k], b[(size_t)k - 1]);
            k = std::max(1, k - 1);
        }
    }
    for (auto& row : b)
        for (const Int& x : row) {
            if (x == 0) continue;
            if (x < 0)
                for (Int& y : row) y = -y;
            break;
        }
}

TwistBasis fixed_space(const std::array<QMat, 4>& W) {
    const int n = W[0].cols;
    IntMat S = fixed_space_stack(W);
    prime_source ps;

    PrimeKernel anchor;
    bool have_anchor = false;
    std::vector<Int> residue;
    Int modulus(1);
    int agreeing = 0, target = 2, tried = 0;

    while (true) {
        if (++tried > 300)
            fail_internal("KernelReconstruction",
                          "rational reconstruction of the fixed space did not stabilize");
        modp::u64 p = ps.next();
        PrimeKernel K = kernel_one_prime(S, p);
        // dimension mod p only ever exceeds the rational dimension, so a small
        // kernel at any single prime already rules the input out
        if (K.vecs.size() < 3)
            fail_internal("DimensionMismatch", "fixed space has dimension " +
                                                   std::to_string(K.vecs.size()) +
                                                   "; expected 3");
        if (!have_anchor || structure_better(K, anchor)) {
            anchor = K;
            have_anchor = true;
            residue.assign(K.vecs.size() * (size_t)n, Int(0));
            modulus = 1;
            agreeing = 0;
        } else if (K.vecs.size() != anchor.vecs.size() || K.pivots != anchor.pivots) {
            continue;  // transient bad prime
        }
        const size_t d = anchor.vecs.size();
        for (size_t i = 0; i < d; ++i)
            for (int j = 0; j < n; ++j) {
                Int& r = residue[i * (size_t)n + (size_t)j];
                r = crt_pair(r, modulus, Int((unsigned long)K.vecs[i][(size_t)j]),
                             Int((unsigned long)p));
            }
        modulus *= Int((unsigned long)p);
        ++agreeing;
        if (agreeing < target) continue;

        std::vector<std::vector<Rat>> vecs(d, std::vector<Rat>((size_t)n, Rat(0)));
        bool ok = true;
        for (size_t i = 0; ok && i < d; ++i)
            for (int j = 0; j < n; ++j) {
                auto rec = rat_reconstruct(residue[i * (size_t)n + (size_t)j], modulus);
                if (!rec) { ok = false; break; }
                vecs[i][(size_t)j] = *rec;
            }
        // exact check S v = 0 turns the mod-p dimension bound into a proof
        if (ok) ok = exact_kernel_check(S, vecs);
        if (!ok) {
            target *= 2;
            continue;
        }
        if (d != 3)
            fail_internal("DimensionMismatch",
                          "fixed space has dimension " + std::to_string(d) + "; expected 3");

        std::vector<std::vector<Int>> rows;
        rows.reserve(3);
        for (const auto& v : vecs) rows.push_back(rat_row_to_primitive(v));
        saturate_rows(rows);
        lll_reduce_rows(rows);
        TwistBasis basis;
        basis.vectors = std::move(rows);
        basis.reduced = true;
        return basis;
    }
}

ThetaMatrix compute_theta(const TwistBasis& basis, const SplittingContext& ctx) {
    if (basis.vectors.size() != 3)
        fail_internal("DimensionMismatch", "twist basis must have exactly 3 vectors");
    const NumberField* F = ctx.L.get();
    const OrderBasis& ob = ctx.basis;
    const int deg = F->deg;
    K3 M;
    for (int i = 0; i < 3; ++i) {
        const auto& v = basis.vectors[(size_t)i];
        if ((int)v.size() != 6 * deg)
            fail_internal("ShapeMismatch", "twist basis vectors have the wrong length");
        for (int j = 0; j < 3; ++j) {
            std::vector<Rat> ca((size_t)deg), cb((size_t)deg);
            for (int t = 0; t < deg; ++t) {
                ca[(size_t)t] = Rat(v[(size_t)(j * deg + t)]);
                cb[(size_t)t] = Rat(v[(size_t)((j + 3) * deg + t)]);
            }
            // basis vector i = sum_j (slot j + sqrt(-3) slot j+3) w_j
            M[(size_t)j][(size_t)i] = KElem(ob.elem_from(ca), ob.elem_from(cb));
        }
    }
    ThetaMatrix th;
    th.e = k3_inverse(M, F);
    K3 I = k3_identity(F);
    if (!(k3_mul(th.e, M) == I) || !(k3_mul(M, th.e) == I))
        fail_internal("ThetaInvariant", "inverse verification failed");
    const NFLinearMap& s3 = ctx.autos[(size_t)ctx.sigma3].map;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const KElem& e = th.at(i, j);
            if (!(e.apply(s3, true) == e))
                fail_internal("ThetaInvariant", "Theta entry moved by the marked involution");
        }
    return th;
}

ThetaMatrix theta_inverse(const ThetaMatrix& th, const SplittingContext& ctx) {
    ThetaMatrix r;
    r.e = k3_inverse(th.e, ctx.L.get());
    return r;
}

PlaneQuartic twisted_model(const ThetaMatrix& theta, const SplittingContext& ctx,
                           const ModularData& md) {
    const NumberField* F = ctx.L.get();
    KElem kone(F, Rat(1), Rat(0));
    TriPoly<KElem> sub = substitute_linear<KElem>(md.x045_homog, theta.e, kone);
    const auto& mons = quartic_monomials();
    std::array<KElem, 15> kc;
    kc.fill(KElem(F));
    for (const auto& [e, c] : sub.terms) {
        int idx = -1;
        for (int i = 0; i < 15; ++i)
            if (mons[(size_t)i] == e) { idx = i; break; }
        if (idx < 0) fail_internal("TwistInconsistent", "substituted form is not a quartic");
        kc[(size_t)idx] = c;
    }
    int i0 = -1;
    for (int i = 0; i < 15; ++i)
        if (!kc[(size_t)i].is_zero()) { i0 = i; break; }
    if (i0 < 0) fail_internal("TwistInconsistent", "substituted form vanished");
    KElem c0inv = kc[(size_t)i0].inverse();
    std::array<Rat, 15> q{};
    for (int i = 0; i < 15; ++i) {
        if (kc[(size_t)i].is_zero()) continue;
        KElem r = kc[(size_t)i] * c0inv;
        if (!r.b.is_zero() || !r.a.is_rational())
            fail_internal("TwistInconsistent",
                          "coefficient ratios of the substituted form are not rational");
        q[(size_t)i] = r.a.as_rat();
    }
    Int D(1);
    for (const Rat& x : q) D = lcm(D, den(x));
    std::array<Int, 15> vi{};
    Int g(0);
    for (int i = 0; i < 15; ++i) {
        Rat t = q[(size_t)i] * Rat(D);
        vi[(size_t)i] = num(t);
        g = gcd(g, vi[(size_t)i]);
    }
    for (Int& x : vi) x = divexact(x, g);
    // leading ratio is 1, so the first nonzero entry D/g is already positive
    Rat s = Rat(g) / Rat(D);
    KElem lambda = kc[(size_t)i0] * s;
    for (int i = 0; i < 15; ++i)
        if (!(kc[(size_t)i] == lambda * Rat(vi[(size_t)i])))
            fail_internal("TwistInconsistent", "rational rescaling identity failed");
    if (!certify_smooth_quartic(vi, nullptr))
        fail_internal("SingularModel", "twisted quartic has a singular point");
    PlaneQuartic out;
    out.coeffs = vi;
    return out;
}

TwistResult twist_model(const ZPoly& f, const ModularData& md, long prime_bound,
                        bool debug_corrupt_sigma) {
    SplittingContext ctx = splitting_field(f, prime_bound);
    auto W = build_W(ctx, md, debug_corrupt_sigma);
    TwistBasis basis = fixed_space(W);
    ThetaMatrix theta = compute_theta(basis, ctx);
    PlaneQuartic model = twisted_model(theta, ctx, md);
    return TwistResult{std::move(ctx), std::move(basis), std::move(theta), std::move(model)};
}

} // namespace qtwist
