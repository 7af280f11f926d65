#pragma once
// Z-order in a number field, given by a basis over the power basis of the
// generator. Default is the power basis itself; round-2 refinement at chosen
// small primes can enlarge it toward the p-maximal order.

#include "qtwist/nf.hpp"

namespace qtwist {

struct OrderBasis {
    std::vector<NFElem> elements;  // basis of the order, ring containing 1
    QMat to_power;                 // column j = power-basis coords of elements[j]
    QMat from_power;               // inverse
    Int discriminant = 0;
    bool is_maximal_attempted = false;
    long maximality_prime_bound = 0;
    std::vector<long> refined_primes;

    std::vector<Rat> coords_of(const NFElem& e) const { return from_power.apply(e.coords_q()); }
    NFElem elem_from(const std::vector<Rat>& v) const;

    // canonical lattice key: integer HNF rows + common denominator
    std::pair<IntMat, Int> lattice_key() const;
};

OrderBasis power_order(const NumberField* L);
OrderBasis p_maximal_refine(const NumberField* L, const OrderBasis& basis, long p);
// power order refined at every p <= bound with p^2 | disc (trial division only)
OrderBasis refined_order(const NumberField* L, long prime_bound);

// trace-form determinant det(Tr(b_i b_j)); independent cross-check of the
// incrementally tracked discriminant
Int order_discriminant_tracform(const NumberField* L, const std::vector<NFElem>& elements);

} // namespace qtwist
