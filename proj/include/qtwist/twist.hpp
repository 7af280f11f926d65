#pragma once
// The twisting engine: Galois action on the 144-dimensional differential
// coordinate space, its 3-dimensional rational fixed subspace, the matrix
// Theta over K = L(sqrt(-3)), and the substitution that produces the primitive
// integer plane quartic of the twisted curve.

#include "qtwist/modular_data.hpp"
#include "qtwist/quadext.hpp"
#include "qtwist/splitting.hpp"

namespace qtwist {

struct TwistBasis {
    std::vector<std::vector<Int>> vectors;  // 3 x 144, primitive integer rows
    bool reduced = false;
};

struct ThetaMatrix {
    std::array<std::array<KElem, 3>, 3> e;
    KElem& at(int i, int j) { return e[(size_t)i][(size_t)j]; }
    const KElem& at(int i, int j) const { return e[(size_t)i][(size_t)j]; }
};

struct PlaneQuartic {
    std::array<Int, 15> coeffs{};  // canonical quartic monomial order
    MultiPoly poly() const { return quartic_from_vector(coeffs); }
    std::string display() const { return multipoly_to_string(poly()); }
    bool operator==(const PlaneQuartic& o) const { return coeffs == o.coeffs; }
};

// W_i = s_i (x) Sigma_i on the flat index (slot, order-coord) -> slot*24+coord;
// Sigma_1..3 = matrices of the three marked Galois automorphisms in ctx.basis,
// Sigma_4 = Id. corrupt_sigma1 deliberately replaces Sigma_1 by Id (debug hook
// for the failure path).
std::array<QMat, 4> build_W(const SplittingContext& ctx, const ModularData& md,
                            bool corrupt_sigma1 = false);

// common fixed space of the four W-matrices; must have dimension exactly 3
// (DimensionMismatch otherwise); rows are integer-scaled, partially saturated
// and LLL-reduced, all deterministically
TwistBasis fixed_space(const std::array<QMat, 4>& W);

// 3x3 matrix over K with (w1, w2, w3) = (X_rho, Y_rho, Z_rho) * Theta; entries
// are checked to be fixed by (conjugation of sqrt(-3)) composed with sigma3
ThetaMatrix compute_theta(const TwistBasis& basis, const SplittingContext& ctx);

// substitute (w1, w2, w3) = (X, Y, Z) * M into P (used with K entries for the
// twist and rational entries for coordinate changes); `one` = 1 of the ring
template <class R>
TriPoly<R> substitute_linear(const MultiPoly& P, const std::array<std::array<R, 3>, 3>& M,
                             const R& one) {
    std::array<TriPoly<R>, 3> lin;
    for (int j = 0; j < 3; ++j) {
        lin[(size_t)j].add({1, 0, 0}, M[0][(size_t)j]);
        lin[(size_t)j].add({0, 1, 0}, M[1][(size_t)j]);
        lin[(size_t)j].add({0, 0, 1}, M[2][(size_t)j]);
    }
    int dmax = 0;
    for (const auto& [e, c] : P.terms) dmax = std::max(dmax, std::max(e[0], std::max(e[1], e[2])));
    auto powers = [&](const TriPoly<R>& b) {
        std::vector<TriPoly<R>> p;
        p.push_back(TriPoly<R>::term(0, 0, 0, one));
        for (int i = 1; i <= dmax; ++i) p.push_back(p.back() * b);
        return p;
    };
    auto p1 = powers(lin[0]), p2 = powers(lin[1]), p3 = powers(lin[2]);
    TriPoly<R> acc;
    for (const auto& [e, c] : P.terms)
        acc = acc + (p1[(size_t)e[0]] * p2[(size_t)e[1]] * p3[(size_t)e[2]]).scaled(c);
    return acc;
}

// exact smoothness certificate for an integer plane quartic: no common
// projective zero of the three partial derivatives, established by resultants
// and gcds over Z in a deterministic list of coordinate systems; on success
// optionally reports which coordinate change certified
bool certify_smooth_quartic(const std::array<Int, 15>& coeffs, int* transform_used = nullptr);

// inverse of Theta over K by Gauss-Jordan (SingularTheta if degenerate); its
// columns express the twisted coordinates in the untwisted differential basis
ThetaMatrix theta_inverse(const ThetaMatrix& th, const SplittingContext& ctx);

// substitution + rationalization + primitive normalization + smoothness;
// throws TwistInconsistent / SingularModel
PlaneQuartic twisted_model(const ThetaMatrix& theta, const SplittingContext& ctx,
                           const ModularData& md);

struct TwistResult {
    SplittingContext ctx;
    TwistBasis basis;
    ThetaMatrix theta;
    PlaneQuartic model;
};

// full pipeline: validation + splitting field + W + fixed space + Theta + model
TwistResult twist_model(const ZPoly& f, const ModularData& md, long prime_bound = 100,
                        bool debug_corrupt_sigma = false);

// deterministic exact LLL (delta = 3/4) on full-rank integer rows, standard
// inner product; exposed for tests
void lll_reduce_rows(std::vector<std::vector<Int>>& rows);

} // namespace qtwist
