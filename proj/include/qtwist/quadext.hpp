#pragma once
// K = L(sqrt(-3)) on top of a number field L; elements a + b*sqrt(-3).

#include "qtwist/nf.hpp"

namespace qtwist {

struct KElem {
    NFElem a, b;  // a + b*sqrt(-3)

    KElem() = default;
    KElem(NFElem x, NFElem y) : a(std::move(x)), b(std::move(y)) {}
    explicit KElem(const NumberField* F) : a(F), b(F) {}
    KElem(const NumberField* F, const Rat& ra, const Rat& rb) : a(F, ra), b(F, rb) {}

    static KElem sqrt_m3(const NumberField* F) { return KElem(F, Rat(0), Rat(1)); }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool operator==(const KElem& o) const { return a == o.a && b == o.b; }

    KElem operator+(const KElem& o) const { return {a + o.a, b + o.b}; }
    KElem operator-(const KElem& o) const { return {a - o.a, b - o.b}; }
    KElem operator-() const { return {-a, -b}; }
    KElem operator*(const KElem& o) const {
        return {a * o.a - b * o.b * Rat(3), a * o.b + b * o.a};
    }
    KElem operator*(const Rat& s) const { return {a * s, b * s}; }

    KElem conj() const { return {a, -b}; }          // sqrt(-3) -> -sqrt(-3)
    NFElem norm_to_L() const { return a * a + b * b * Rat(3); }

    KElem inverse() const {
        NFElem n = norm_to_L();
        if (n.is_zero()) throw std::runtime_error("KElem: inverse of zero");
        NFElem ninv = n.inverse();
        return {a * ninv, -(b * ninv)};
    }
    KElem operator/(const KElem& o) const { return *this * o.inverse(); }

    KElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        KElem acc(a.F, Rat(1), Rat(0));
        KElem base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    // extend an automorphism of L (acting trivially on sqrt(-3)), optionally
    // composed with conjugation of sqrt(-3)
    KElem apply(const NFLinearMap& sigma, bool conjugate_sqrt) const {
        NFElem na = sigma.apply(a), nb = sigma.apply(b);
        if (conjugate_sqrt) nb = -nb;
        return {std::move(na), std::move(nb)};
    }
};

} // namespace qtwist
