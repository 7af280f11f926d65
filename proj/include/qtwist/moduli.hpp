#pragma once
// Rational points of a twisted model and their moduli interpretation: point
// search by bounded enumeration, the covering chain through Theta down to the
// hauptmodul t and the j-invariant pair, and fibers of t computed through an
// exact low-degree rational expression of t in the model coordinates.

#include "qtwist/twist.hpp"

#include <vector>

namespace qtwist {

// primitive integer homogeneous coordinates, first nonzero coordinate positive
struct ProjPoint {
    std::array<Int, 3> coords{};
    bool operator==(const ProjPoint& o) const { return coords == o.coords; }
    bool operator<(const ProjPoint& o) const {
        for (int i = 0; i < 3; ++i) {
            if (coords[(size_t)i] < o.coords[(size_t)i]) return true;
            if (o.coords[(size_t)i] < coords[(size_t)i]) return false;
        }
        return false;
    }
    std::string display() const;
};

// gcd/sign normalization; rejects (0, 0, 0)
ProjPoint proj_point(const Int& x, const Int& y, const Int& z);

enum class PointClass { ordinary, cusp_or_exceptional };

struct ModuliPoint {
    PointClass classification = PointClass::cusp_or_exceptional;
    Rat t;     // meaningful only when ordinary
    JPair j;   // the two j-invariants a +- b sqrt(D) attached to t
};

// all rational points of F = 0 with max |coordinate| <= height, normalized,
// in increasing lexicographic order; exhaustive (the mod-m presieve only
// discards non-roots)
std::vector<ProjPoint> search_points(const PlaneQuartic& F, long height);

// transport a rational point by Theta into the (w1, w2, w3) chart over K and
// run the covering chain; a vanishing chain denominator marks the point as a
// cusp or exceptional point, everything else must give a rational t
ModuliPoint moduli_point(const ProjPoint& P, const ThetaMatrix& theta,
                         const SplittingContext& ctx, const ModularData& md);

// exact check that substituting the K-linear coordinate series of the model
// into its quartic gives the zero series; ties the model to the modular
// parameterization (SeriesModelMismatch on failure)
void verify_model_series(const PlaneQuartic& F, const ThetaMatrix& theta,
                         const SplittingContext& ctx, const ModularData& md);

// t expressed as a ratio of homogeneous forms on the base model, in the
// coordinates whose q-expansions are f1(q), f1(q^3), f2(q).  Found by exact
// q-expansion linear algebra; a vanishing-order bound against the divisor
// degree certifies every kernel vector, and candidates that are multiples of
// the base quartic are rejected by exact reduction.  t has degree 24 on the
// curve, so a representation exists in degree at most 8.
struct BaseTForm {
    MultiPoly num_form, den_form;  // t = num_form/den_form on the base model
    int degree = 0;
};
BaseTForm base_t_form(const ModularData& md);

// all rational points of F = 0 with t = t0.  The base-model cut
// num - t0 den, rewritten through theta in the model coordinates, is a form
// with coefficients in K fixed by nu sigma_3; a rational point must kill
// every rational component, so any nondegenerate component can be eliminated
// against F by resultants.  Rational roots are recovered exactly and every
// candidate is re-checked through moduli_point; complete in every height.
std::vector<ProjPoint> fiber_over_t(const PlaneQuartic& F, const BaseTForm& rep,
                                    const ThetaMatrix& theta, const SplittingContext& ctx,
                                    const ModularData& md, const Rat& t0);
std::vector<ProjPoint> fiber_over_t(const PlaneQuartic& F, const ThetaMatrix& theta,
                                    const SplittingContext& ctx, const ModularData& md,
                                    const Rat& t0);

// rational t whose j-pair is {a + b sqrt(D), a - b sqrt(D)}: rational roots
// of A(t) = 2a filtered by a^2 - D b^2 = B(t)^3
std::vector<Rat> t_candidates_from_jpair(const ModularData& md, const JPair& j);

} // namespace qtwist
