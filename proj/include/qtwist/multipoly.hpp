#pragma once
// Sparse polynomials in three variables over an exact coefficient ring.
// Used for the plane quartic models (X, Y, Z) and, with the third exponent
// zero, for the bivariate covering formulas.

#include "qtwist/zz.hpp"

#include <array>
#include <map>
#include <string>

namespace qtwist {

template <class R>
bool ring_zero(const R& x) {
    if constexpr (requires { x.is_zero(); })
        return x.is_zero();
    else
        return x == 0;
}

template <class R>
struct TriPoly {
    using Expo = std::array<int, 3>;
    std::map<Expo, R> terms;  // exponent -> nonzero coefficient

    TriPoly() = default;

    static TriPoly term(int a, int b, int c, R coeff) {
        TriPoly p;
        p.add({a, b, c}, coeff);
        return p;
    }

    void add(const Expo& e, const R& c) {
        if (ring_zero(c)) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (ring_zero(it->second)) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    TriPoly operator+(const TriPoly& o) const {
        TriPoly r = *this;
        for (const auto& [e, c] : o.terms) r.add(e, c);
        return r;
    }
    TriPoly operator-() const {
        TriPoly r;
        for (const auto& [e, c] : terms) r.terms.emplace(e, -c);
        return r;
    }
    TriPoly operator-(const TriPoly& o) const { return *this + (-o); }
    TriPoly operator*(const TriPoly& o) const {
        TriPoly r;
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms)
                r.add({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
        return r;
    }
    template <class S>
    TriPoly scaled(const S& s) const {
        TriPoly r;
        for (const auto& [e, c] : terms) {
            R v = c * s;
            if (!ring_zero(v)) r.terms.emplace(e, v);
        }
        return r;
    }
    bool operator==(const TriPoly& o) const { return terms == o.terms; }

    int total_degree() const {  // -1 for the zero polynomial
        int d = -1;
        for (const auto& [e, c] : terms) d = std::max(d, e[0] + e[1] + e[2]);
        return d;
    }
    bool is_homogeneous(int d) const {
        for (const auto& [e, c] : terms)
            if (e[0] + e[1] + e[2] != d) return false;
        return true;
    }

    TriPoly partial(int var) const {
        TriPoly r;
        for (const auto& [e, c] : terms) {
            if (e[(size_t)var] == 0) continue;
            Expo e2 = e;
            e2[(size_t)var] -= 1;
            r.add(e2, c * R(e[(size_t)var]));
        }
        return r;
    }

    // affine (x, y) polynomial -> homogeneous degree-d polynomial in (X, Y, Z)
    TriPoly homogenized(int d) const {
        TriPoly r;
        for (const auto& [e, c] : terms) r.add({e[0], e[1], d - e[0] - e[1]}, c);
        return r;
    }

    // substitute ring elements for the variables; `one` supplies the
    // multiplicative identity of S (e.g. a series with chosen precision)
    template <class S>
    S eval(const S& x, const S& y, const S& z, const S& one) const {
        // power tables
        int dx = 0, dy = 0, dz = 0;
        for (const auto& [e, c] : terms) {
            dx = std::max(dx, e[0]);
            dy = std::max(dy, e[1]);
            dz = std::max(dz, e[2]);
        }
        auto powers = [&](const S& v, int n) {
            std::vector<S> p;
            p.push_back(one);
            for (int i = 1; i <= n; ++i) p.push_back(p.back() * v);
            return p;
        };
        auto px = powers(x, dx), py = powers(y, dy), pz = powers(z, dz);
        S acc = one;
        bool first = true;
        for (const auto& [e, c] : terms) {
            S t = px[(size_t)e[0]] * py[(size_t)e[1]] * pz[(size_t)e[2]] * c;
            if (first) {
                acc = t;
                first = false;
            } else {
                acc = acc + t;
            }
        }
        if (first) acc = one * R(0);  // zero polynomial
        return acc;
    }
    template <class S>
    S eval2(const S& x, const S& y, const S& one) const {
        return eval(x, y, one, one);
    }
};

using MultiPoly = TriPoly<Rat>;

// canonical monomial order for storing homogeneous quartics as flat vectors:
// degree-4 exponents sorted descending lexicographically
inline const std::array<std::array<int, 3>, 15>& quartic_monomials() {
    static const std::array<std::array<int, 3>, 15> m = {{{4, 0, 0},
                                                          {3, 1, 0},
                                                          {3, 0, 1},
                                                          {2, 2, 0},
                                                          {2, 1, 1},
                                                          {2, 0, 2},
                                                          {1, 3, 0},
                                                          {1, 2, 1},
                                                          {1, 1, 2},
                                                          {1, 0, 3},
                                                          {0, 4, 0},
                                                          {0, 3, 1},
                                                          {0, 2, 2},
                                                          {0, 1, 3},
                                                          {0, 0, 4}}};
    return m;
}

std::array<Int, 15> quartic_to_vector(const MultiPoly& p);
MultiPoly quartic_from_vector(const std::array<Int, 15>& v);

// display form, e.g. "X^4 - 2*X^2*Y^2 + 191*Z^4"
std::string multipoly_to_string(const MultiPoly& p,
                                const std::array<std::string, 3>& vars = {"X", "Y", "Z"});

} // namespace qtwist
