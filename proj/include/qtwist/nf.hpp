#pragma once
// Number field L = Q[x]/(h) for a monic integer polynomial h, with elements
// stored as integer coordinate vectors over a common positive denominator.

#include "qtwist/unipoly.hpp"
#include "qtwist/qmat.hpp"

#include <memory>
#include <vector>

namespace qtwist {

struct NumberField {
    ZPoly minpoly;  // monic, integer coefficients
    int deg;
    // xpow_red[j] = coordinates of x^(deg+j) mod minpoly, j = 0 .. deg-2
    std::vector<std::vector<Int>> xpow_red;
    // trace_pow[k] = Tr(theta^k), k = 0 .. deg-1 (Newton recurrence)
    std::vector<Int> trace_pow;

    explicit NumberField(ZPoly h);
};

struct NFElem {
    const NumberField* F = nullptr;
    std::vector<Int> num;  // length F->deg
    Int den = 1;           // > 0, gcd(content(num), den) = 1

    NFElem() = default;
    explicit NFElem(const NumberField* f) : F(f), num((size_t)f->deg, Int(0)) {}
    NFElem(const NumberField* f, const Rat& r) : NFElem(f) {
        num[0] = r.get_num();
        den = r.get_den();
    }

    static NFElem gen(const NumberField* f) {  // the class of x
        NFElem e(f);
        e.num[1] = 1;
        return e;
    }
    static NFElem from_coords(const NumberField* f, std::vector<Int> v, Int d = 1);

    void canonicalize();

    bool is_zero() const;
    bool is_rational() const;
    Rat as_rat() const;  // requires is_rational()

    NFElem operator+(const NFElem& o) const;
    NFElem operator-(const NFElem& o) const;
    NFElem operator-() const;
    NFElem operator*(const NFElem& o) const;
    NFElem operator*(const Rat& s) const;
    NFElem inverse() const;
    NFElem operator/(const NFElem& o) const { return *this * o.inverse(); }
    NFElem pow(long e) const;
    bool operator==(const NFElem& o) const;

    Rat trace() const;

    // coordinates as rationals (power basis)
    std::vector<Rat> coords_q() const;
};

// Horner evaluation of an integer/rational polynomial at an NFElem.
NFElem nf_eval(const ZPoly& p, const NFElem& x);
NFElem nf_eval(const QPoly& p, const NFElem& x);

// 24x24 (deg x deg) integer matrix + denominator giving a Q-linear map on L in
// the power basis; columns are images of theta^j.
struct NFLinearMap {
    const NumberField* F = nullptr;
    std::vector<std::vector<Int>> col;  // col[j] = image of theta^j, integer coords
    Int den = 1;

    NFElem apply(const NFElem& e) const;
};

// map sending theta to `image` (extended multiplicatively); used for the
// Galois automorphisms of the splitting field
NFLinearMap nf_hom_from_image(const NFElem& image);

} // namespace qtwist
