#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qtwist/error.hpp"
#include "qtwist/twist.hpp"

using namespace qtwist;

namespace {

const ModularData& md() {
    static ModularData m = default_modular_data();
    return m;
}

// shared pipeline state for the reference quartic x^4 - 3x^2 + 2x + 3
const SplittingContext& ref_ctx() {
    static SplittingContext c = splitting_field(zpoly({3, 2, -3, 0, 1}), 100);
    return c;
}
const std::array<QMat, 4>& ref_W() {
    static std::array<QMat, 4> W = build_W(ref_ctx(), md());
    return W;
}
const TwistBasis& ref_basis() {
    static TwistBasis b = fixed_space(ref_W());
    return b;
}
const ThetaMatrix& ref_theta() {
    static ThetaMatrix t = compute_theta(ref_basis(), ref_ctx());
    return t;
}
const PlaneQuartic& ref_model() {
    static PlaneQuartic m = twisted_model(ref_theta(), ref_ctx(), md());
    return m;
}

using K3 = std::array<std::array<KElem, 3>, 3>;

K3 mul3(const K3& A, const K3& B) {
    K3 R;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            KElem s = A[(size_t)i][0] * B[0][(size_t)j];
            for (int k = 1; k < 3; ++k)
                s = s + A[(size_t)i][(size_t)k] * B[(size_t)k][(size_t)j];
            R[(size_t)i][(size_t)j] = s;
        }
    return R;
}

K3 lift_rational(const QMat& q, const NumberField* F) {
    K3 R;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) R[(size_t)i][(size_t)j] = KElem(F, q.at(i, j), Rat(0));
    return R;
}

std::array<Int, 15> norm15(std::array<Int, 15> v) {
    Int g(0);
    for (const Int& x : v) g = gcd(g, x);
    REQUIRE(g != 0);
    for (Int& x : v) x = divexact(x, g);
    for (const Int& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (Int& y : v) y = -y;
        break;
    }
    return v;
}

} // namespace

TEST_CASE("kronecker product is multiplicative") {
    xorshift64 rng(20240517);
    auto rnd = [&](int r, int c) {
        QMat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                m.at(i, j) = Rat((long)(rng.below(19)) - 9, (long)(rng.below(4)) + 1);
        for (auto& x : m.a) x.canonicalize();
        return m;
    };
    QMat A = rnd(2, 2), C = rnd(2, 2), B = rnd(3, 3), D = rnd(3, 3);
    CHECK(kron(A, B) * kron(C, D) == kron(A * C, B * D));
    CHECK(kron(QMat::identity(2), QMat::identity(3)) == QMat::identity(6));
}

TEST_CASE("group relations of the coordinate actions") {
    const auto& W = ref_W();
    QMat id = QMat::identity(144);
    CHECK(W[0] * W[0] * W[0] == id);  // order-3 slot action x order-3 Galois
    CHECK(W[1] * W[1] == id);
    CHECK(W[2] * W[2] == id);
    CHECK(W[3] * W[3] == id);
    CHECK(!(W[0] == id));
    CHECK(!(W[3] == id));
}

TEST_CASE("fixed space of the reference quartic") {
    const auto& b = ref_basis();
    REQUIRE(b.vectors.size() == 3);
    CHECK(b.reduced);
    for (const auto& v : b.vectors) {
        REQUIRE(v.size() == 144);
        Int g(0);
        bool nz = false;
        for (const Int& x : v) {
            g = gcd(g, x);
            nz = nz || x != 0;
        }
        CHECK(nz);
        CHECK(g == 1);
        // genuinely fixed by all four actions, checked exactly
        std::vector<Rat> vq(144);
        for (size_t i = 0; i < 144; ++i) vq[i] = Rat(v[i]);
        for (const QMat& Wi : ref_W()) {
            auto img = Wi.apply(vq);
            CHECK(img == vq);
        }
    }
    // basis rows are independent
    IntMat M(3, 144);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 144; ++j) M.at(i, j) = b.vectors[(size_t)i][(size_t)j];
    CHECK(linalg::bareiss(M).size() == 3);
}

TEST_CASE("degenerate slot action collapses the fixed space") {
    auto Wbad = build_W(ref_ctx(), md(), true);
    bool threw = false;
    try {
        fixed_space(Wbad);
    } catch (const qt_error& e) {
        threw = true;
        CHECK(e.code == "DimensionMismatch");
        CHECK(e.exit_status == 2);
    }
    CHECK(threw);
}

TEST_CASE("theta entries are fixed by the marked involution") {
    const auto& th = ref_theta();
    const auto& ctx = ref_ctx();
    const NFLinearMap& s3 = ctx.autos[(size_t)ctx.sigma3].map;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const KElem& e = th.at(i, j);
            CHECK(e.apply(s3, true) == e);
        }
}

TEST_CASE("unimodular basis change acts contragradiently on theta") {
    const auto& ctx = ref_ctx();
    const NumberField* F = ctx.L.get();
    auto change = [&](const std::array<std::array<long, 3>, 3>& Mz) {
        TwistBasis nb;
        nb.vectors.assign(3, std::vector<Int>(144, Int(0)));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (Mz[(size_t)i][(size_t)j] == 0) continue;
                Int f(Mz[(size_t)i][(size_t)j]);
                for (int t = 0; t < 144; ++t)
                    nb.vectors[(size_t)i][(size_t)t] += f * ref_basis().vectors[(size_t)j][(size_t)t];
            }
        QMat Mt(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) Mt.at(i, j) = Rat(Mz[(size_t)j][(size_t)i]);
        return std::pair{std::move(nb), Mt};
    };
    for (const auto& Mz : {std::array<std::array<long, 3>, 3>{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}},
                           std::array<std::array<long, 3>, 3>{{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}}}) {
        auto [nb, Mt] = change(Mz);
        ThetaMatrix th2 = compute_theta(nb, ctx);
        K3 expect = mul3(lift_rational(linalg::inverse(Mt), F), ref_theta().e);
        CHECK(th2.e == expect);

        // the two models agree after undoing the coordinate change
        PlaneQuartic m2 = twisted_model(th2, ctx, md());
        std::array<std::array<Rat, 3>, 3> sub;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) sub[(size_t)i][(size_t)j] = Mt.at(i, j);
        MultiPoly back = substitute_linear<Rat>(m2.poly(), sub, Rat(1));
        CHECK(norm15(quartic_to_vector(back)) == ref_model().coeffs);
    }
}

TEST_CASE("identity theta reproduces the base curve") {
    const auto& ctx = ref_ctx();
    const NumberField* F = ctx.L.get();
    ThetaMatrix th;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) th.at(i, j) = KElem(F, Rat(i == j ? 1 : 0), Rat(0));
    PlaneQuartic m = twisted_model(th, ctx, md());
    CHECK(m.coeffs == quartic_to_vector(md().x045_homog));
}

TEST_CASE("reference model is primitive, sign-normalized and smooth") {
    const auto& m = ref_model();
    Int g(0);
    for (const Int& x : m.coeffs) g = gcd(g, x);
    CHECK(g == 1);
    for (const Int& x : m.coeffs) {
        if (x == 0) continue;
        CHECK(x > 0);
        break;
    }
    CHECK(certify_smooth_quartic(m.coeffs));
    CHECK(m.poly().is_homogeneous(4));
}

TEST_CASE("full pipeline on a second quartic with small coefficients") {
    // x^4 + x + 1: irreducible with full symmetric Galois action
    TwistResult r = twist_model(zpoly({1, 1, 0, 0, 1}), md());
    CHECK(r.basis.vectors.size() == 3);
    CHECK(r.ctx.disc_squarefree == 229);
    CHECK(certify_smooth_quartic(r.model.coeffs));
    Int g(0);
    for (const Int& x : r.model.coeffs) g = gcd(g, x);
    CHECK(g == 1);
}

TEST_CASE("smoothness certificate") {
    auto vec = [](std::initializer_list<std::pair<int, long>> entries) {
        std::array<Int, 15> v{};
        for (auto [i, c] : entries) v[(size_t)i] = c;
        return v;
    };
    // canonical coordinates: indices into the descending-lex quartic monomials
    CHECK(certify_smooth_quartic(vec({{0, 1}, {10, 1}, {14, 1}})));       // Fermat
    CHECK(certify_smooth_quartic(vec({{1, 1}, {11, 1}, {9, 1}})));        // Klein
    CHECK(!certify_smooth_quartic(vec({{0, 1}, {10, 1}})));               // X^4 + Y^4
    CHECK(!certify_smooth_quartic(vec({{10, 1}, {14, 1}})));              // Y^4 + Z^4
    CHECK(!certify_smooth_quartic(vec({{3, 1}, {10, 1}, {14, 1}})));      // X^2Y^2 + Y^4 + Z^4
    CHECK(!certify_smooth_quartic(vec({{0, 1}})));                        // X^4
    // the published twisted example model
    std::array<Int, 15> disp{0,   -162, 54,  -225, 558, 81,  -72, 594,
                             -312, -282, 0,   135,  -249, -21, 191};
    CHECK(certify_smooth_quartic(disp));
}

TEST_CASE("lattice reduction is deterministic and shrinks entries") {
    std::vector<std::vector<Int>> rows{{Int(1), Int(0), Int(0), Int(1000000007)},
                                       {Int(0), Int(1), Int(0), Int(2000000014)},
                                       {Int(0), Int(0), Int(1), Int(3000000021)}};
    auto a = rows, b = rows;
    lll_reduce_rows(a);
    lll_reduce_rows(b);
    CHECK(a == b);
    Int biggest(0);
    for (const auto& r : a)
        for (const Int& x : r) {
            Int ax = abs(x);
            if (ax > biggest) biggest = ax;
        }
    // the all-but-one-coordinate structure admits small vectors
    CHECK(biggest <= 1000000007);
    // reduction preserves the lattice: equal Hermite forms
    auto hnf_of = [](const std::vector<std::vector<Int>>& rs) {
        IntMat m((int)rs.size(), (int)rs[0].size());
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = rs[(size_t)i][(size_t)j];
        return linalg::hnf_rows(m);
    };
    CHECK(hnf_of(a) == hnf_of(rows));
}
