#pragma once
// Validation of the input quartic (monic, irreducible, Galois group S4,
// non-cyclotomic determinant) and construction of its degree-24 splitting
// field with explicit roots and Galois automorphisms.

#include "qtwist/orderbasis.hpp"
#include "qtwist/error.hpp"

#include <array>
#include <memory>

namespace qtwist {

enum class quartic_error {
    ok,
    not_monic,
    not_quartic,
    not_irreducible,
    not_s4,
    cyclotomic_determinant,
};

const char* quartic_error_code(quartic_error e);  // spec'd machine-readable name

struct QuarticCheck {
    quartic_error err = quartic_error::ok;
    std::string message;
    Int disc = 0;
    Int disc_squarefree = 0;  // squarefree part of disc (sign kept)
    Int k_radicand = 0;       // squarefree part of -3 * disc_squarefree
};

// pure validation; never throws on bad input (reports via err)
QuarticCheck check_quartic(const ZPoly& f);

ZPoly resolvent_cubic(const ZPoly& f);

struct AutRec {
    std::array<int, 4> perm;  // sigma(root[i]) = root[perm[i]]
    NFElem theta_image;
    NFLinearMap map;
};

struct SplittingContext {
    ZPoly f;
    Int disc, disc_squarefree, k_radicand;
    std::array<long, 3> cvec;  // primitive element theta = c1 r + c2 r' + c3 r''
    std::unique_ptr<NumberField> L;
    std::vector<NFElem> roots;  // 4 roots, deterministic order
    std::vector<AutRec> autos;  // 24, indexed by lex rank of the permutation
    int identity_index = -1;
    int sigma1 = -1;  // (1,2,3)
    int sigma2 = -1;  // (1,2)(3,4)
    int sigma3 = -1;  // (1,2)

    OrderBasis basis;

    SplittingContext() = default;
    SplittingContext(const SplittingContext&) = delete;
    SplittingContext& operator=(const SplittingContext&) = delete;
    SplittingContext(SplittingContext&&) = default;
    SplittingContext& operator=(SplittingContext&&) = default;
};

// throws qt_error (exit status 1) when validation fails
SplittingContext splitting_field(const ZPoly& f, long prime_bound = 100);

// matrix of automorphism `sigma` (index into ctx.autos) written in ctx.basis
QMat automorphism_matrix(const SplittingContext& ctx, int sigma);

// lex rank of a permutation of {0,1,2,3}; inverse of the autos indexing
int perm_rank(const std::array<int, 4>& p);
std::array<int, 4> perm_unrank(int r);
std::array<int, 4> perm_compose(const std::array<int, 4>& a, const std::array<int, 4>& b);

} // namespace qtwist
