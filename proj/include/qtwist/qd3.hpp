#pragma once
// Elements a + b*sqrt(-3) of Q(sqrt(-3)), used as series coefficients for the
// automorphism checks and as entries of the 3x3 differential-action matrices.

#include "qtwist/zz.hpp"

namespace qtwist {

struct QD3 {
    Rat a, b; // a + b*sqrt(-3)

    QD3() : a(0), b(0) {}
    QD3(long v) : a(v), b(0) {}
    QD3(const Rat& x) : a(x), b(0) {}
    QD3(Rat x, Rat y) : a(std::move(x)), b(std::move(y)) {}

    static QD3 sqrt_m3() { return QD3(Rat(0), Rat(1)); }
    static QD3 zeta3() { return QD3(Rat(-1, 2), Rat(1, 2)); } // primitive cube root of unity

    bool operator==(const QD3& o) const { return a == o.a && b == o.b; }
    bool operator!=(const QD3& o) const { return !(*this == o); }

    QD3 operator+(const QD3& o) const { return QD3(a + o.a, b + o.b); }
    QD3 operator-(const QD3& o) const { return QD3(a - o.a, b - o.b); }
    QD3 operator-() const { return QD3(-a, -b); }
    QD3 operator*(const QD3& o) const {
        return QD3(a * o.a - 3 * b * o.b, a * o.b + b * o.a);
    }
    QD3 conj() const { return QD3(a, -b); }
    Rat norm() const { return a * a + 3 * b * b; }
    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    QD3 inv() const {
        Rat n = norm();
        if (n == 0) throw std::runtime_error("QD3: division by zero");
        return QD3(a / n, -b / n);
    }
    QD3 operator/(const QD3& o) const { return *this * o.inv(); }
};

inline QD3 zeta3_pow(long n) {
    long r = n % 3;
    if (r < 0) r += 3;
    if (r == 0) return QD3(1);
    QD3 z = QD3::zeta3();
    return r == 1 ? z : z * z;
}

} // namespace qtwist
