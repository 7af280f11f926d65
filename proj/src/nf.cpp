#include "qtwist/nf.hpp"

namespace qtwist {

NumberField::NumberField(ZPoly h) : minpoly(std::move(h)) {
    minpoly.trim();
    deg = minpoly.degree();
    if (deg < 1 || minpoly.lc() != 1)
        throw std::runtime_error("NumberField: minpoly must be monic of degree >= 1");
    const int d = deg;

    // x^d = -(h_0 + h_1 x + ... + h_{d-1} x^{d-1}); then shift-and-reduce
    if (d >= 2) {
        xpow_red.resize((size_t)(d - 1));
        std::vector<Int> row((size_t)d);
        for (int i = 0; i < d; ++i) row[(size_t)i] = -minpoly.c[(size_t)i];
        xpow_red[0] = row;
        for (int j = 1; j <= d - 2; ++j) {
            std::vector<Int> nxt((size_t)d, Int(0));
            const auto& prv = xpow_red[(size_t)(j - 1)];
            for (int i = 0; i + 1 < d; ++i) nxt[(size_t)(i + 1)] = prv[(size_t)i];
            const Int& carry = prv[(size_t)(d - 1)];
            if (carry != 0)
                for (int i = 0; i < d; ++i) nxt[(size_t)i] += carry * xpow_red[0][(size_t)i];
            xpow_red[(size_t)j] = std::move(nxt);
        }
    }

    // Newton power sums of the roots of minpoly
    trace_pow.resize((size_t)d);
    trace_pow[0] = d;
    for (int k = 1; k < d; ++k) {
        Int s = 0;
        for (int i = 1; i < k; ++i) s += minpoly.c[(size_t)(d - i)] * trace_pow[(size_t)(k - i)];
        s += Int(k) * minpoly.c[(size_t)(d - k)];
        trace_pow[(size_t)k] = -s;
    }
}

NFElem NFElem::from_coords(const NumberField* f, std::vector<Int> v, Int d) {
    NFElem e(f);
    if ((int)v.size() != f->deg) throw std::runtime_error("NFElem: bad coordinate length");
    e.num = std::move(v);
    e.den = std::move(d);
    e.canonicalize();
    return e;
}

void NFElem::canonicalize() {
    if (den == 0) throw std::runtime_error("NFElem: zero denominator");
    if (den < 0) {
        den = -den;
        for (auto& v : num) v = -v;
    }
    Int g = den;
    for (const auto& v : num) {
        g = gcd(g, v);
        if (g == 1) return;
    }
    if (g > 1) {
        den = divexact(den, g);
        for (auto& v : num) v = divexact(v, g);
    }
}

bool NFElem::is_zero() const {
    for (const auto& v : num)
        if (v != 0) return false;
    return true;
}

bool NFElem::is_rational() const {
    for (size_t i = 1; i < num.size(); ++i)
        if (num[i] != 0) return false;
    return true;
}

Rat NFElem::as_rat() const {
    if (!is_rational()) throw std::runtime_error("NFElem: not rational");
    Rat r(num[0], den);
    r.canonicalize();
    return r;
}

NFElem NFElem::operator+(const NFElem& o) const {
    NFElem r(F);
    for (int i = 0; i < F->deg; ++i) r.num[(size_t)i] = num[(size_t)i] * o.den + o.num[(size_t)i] * den;
    r.den = den * o.den;
    r.canonicalize();
    return r;
}

NFElem NFElem::operator-() const {
    NFElem r = *this;
    for (auto& v : r.num) v = -v;
    return r;
}

NFElem NFElem::operator-(const NFElem& o) const { return *this + (-o); }

NFElem NFElem::operator*(const NFElem& o) const {
    const int d = F->deg;
    std::vector<Int> conv((size_t)(2 * d - 1), Int(0));
    for (int i = 0; i < d; ++i) {
        if (num[(size_t)i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (o.num[(size_t)j] == 0) continue;
            conv[(size_t)(i + j)] += num[(size_t)i] * o.num[(size_t)j];
        }
    }
    NFElem r(F);
    for (int i = 0; i < d; ++i) r.num[(size_t)i] = conv[(size_t)i];
    for (int j = 0; j <= d - 2; ++j) {
        const Int& carry = conv[(size_t)(d + j)];
        if (carry == 0) continue;
        const auto& red = F->xpow_red[(size_t)j];
        for (int i = 0; i < d; ++i) r.num[(size_t)i] += carry * red[(size_t)i];
    }
    r.den = den * o.den;
    r.canonicalize();
    return r;
}

NFElem NFElem::operator*(const Rat& s) const {
    NFElem r = *this;
    for (auto& v : r.num) v *= s.get_num();
    r.den *= s.get_den();
    r.canonicalize();
    return r;
}

NFElem NFElem::inverse() const {
    if (is_zero()) throw std::runtime_error("NFElem: inverse of zero");
    const int d = F->deg;
    // multiplication-by-num matrix in the power basis (columns = num * theta^j)
    QMat M(d, d);
    std::vector<Int> v = num;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) M.at(i, j) = Rat(v[(size_t)i]);
        if (j + 1 < d) {
            std::vector<Int> nxt((size_t)d, Int(0));
            for (int i = 0; i + 1 < d; ++i) nxt[(size_t)(i + 1)] = v[(size_t)i];
            const Int carry = v[(size_t)(d - 1)];
            if (carry != 0)
                for (int i = 0; i < d; ++i) nxt[(size_t)i] += carry * F->xpow_red[0][(size_t)i];
            v = std::move(nxt);
        }
    }
    std::vector<Rat> e0((size_t)d, Rat(0));
    e0[0] = 1;
    std::vector<Rat> x = linalg::solve(M, e0);  // num^{-1} in power basis
    NFElem r(F);
    Int common = 1;
    for (const auto& q : x) common = lcm(common, Int(q.get_den()));
    for (int i = 0; i < d; ++i) r.num[(size_t)i] = Int(x[(size_t)i].get_num()) * divexact(common, Int(x[(size_t)i].get_den()));
    r.den = common;
    // (num/den)^{-1} = den * num^{-1}
    for (auto& c : r.num) c *= den;
    r.canonicalize();
    return r;
}

NFElem NFElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    NFElem acc(F, Rat(1));
    NFElem base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

bool NFElem::operator==(const NFElem& o) const {
    return F == o.F && den == o.den && num == o.num;
}

Rat NFElem::trace() const {
    Int s = 0;
    for (int i = 0; i < F->deg; ++i) s += num[(size_t)i] * F->trace_pow[(size_t)i];
    Rat r(s, den);
    r.canonicalize();
    return r;
}

std::vector<Rat> NFElem::coords_q() const {
    std::vector<Rat> r((size_t)F->deg);
    for (int i = 0; i < F->deg; ++i) {
        r[(size_t)i] = Rat(num[(size_t)i], den);
        r[(size_t)i].canonicalize();
    }
    return r;
}

NFElem nf_eval(const ZPoly& p, const NFElem& x) {
    NFElem acc(x.F);
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * x;
        acc.num[0] += acc.den * p.c[(size_t)i];
        acc.canonicalize();
    }
    return acc;
}

NFElem nf_eval(const QPoly& p, const NFElem& x) {
    NFElem acc(x.F);
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * x + NFElem(x.F, p.c[(size_t)i]);
    }
    return acc;
}

NFElem NFLinearMap::apply(const NFElem& e) const {
    const int d = F->deg;
    NFElem r(F);
    for (int j = 0; j < d; ++j) {
        const Int& s = e.num[(size_t)j];
        if (s == 0) continue;
        const auto& cj = col[(size_t)j];
        for (int i = 0; i < d; ++i) r.num[(size_t)i] += s * cj[(size_t)i];
    }
    r.den = e.den * den;
    r.canonicalize();
    return r;
}

NFLinearMap nf_hom_from_image(const NFElem& image) {
    const NumberField* F = image.F;
    const int d = F->deg;
    NFLinearMap m;
    m.F = F;
    m.col.resize((size_t)d);
    // powers of the image share one denominator image.den^(d-1)
    std::vector<NFElem> pw((size_t)d);
    pw[0] = NFElem(F, Rat(1));
    for (int j = 1; j < d; ++j) pw[(size_t)j] = pw[(size_t)(j - 1)] * image;
    Int common = 1;
    for (const auto& p : pw) common = lcm(common, p.den);
    m.den = common;
    for (int j = 0; j < d; ++j) {
        const Int scale = divexact(common, pw[(size_t)j].den);
        m.col[(size_t)j].resize((size_t)d);
        for (int i = 0; i < d; ++i) m.col[(size_t)j][(size_t)i] = pw[(size_t)j].num[(size_t)i] * scale;
    }
    return m;
}

} // namespace qtwist
