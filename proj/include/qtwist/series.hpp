#pragma once
// Truncated Laurent series over an exact coefficient ring R (R needs 0/1
// literals, +, -, *, ==, and inv() or / for division). Precision is tracked
// explicitly: a series knows its coefficients on [val, prec).

#include "qtwist/zz.hpp"

#include <vector>

namespace qtwist {

template <class R>
struct TruncSeries {
    long val = 0;          // exponent of the first stored coefficient
    long prec = 0;         // series known modulo q^prec
    std::vector<R> c;      // c[i] = coefficient of q^(val + i); size = prec - val

    TruncSeries() = default;
    TruncSeries(long v, long p) : val(v), prec(p), c((size_t)(p - v), R(0)) {
        if (p < v) throw std::runtime_error("series: prec < val");
    }

    static TruncSeries zero(long p) { return TruncSeries(p, p); }
    static TruncSeries one(long p) { return monomial(R(1), 0, p); }
    static TruncSeries monomial(const R& coef, long e, long p) {
        TruncSeries s(e, p);
        if (e < p) s.c[0] = coef;
        return s;
    }

    R coeff(long e) const {
        if (e >= prec)
            throw std::runtime_error("series: coefficient beyond tracked precision");
        if (e < val) return R(0);
        return c[(size_t)(e - val)];
    }

    bool known_zero() const {
        for (const auto& v : c)
            if (!(v == R(0))) return false;
        return true;
    }
    bool is_zero() const { return known_zero(); }

    // smallest exponent with nonzero stored coefficient (or prec if none)
    long order() const {
        for (size_t i = 0; i < c.size(); ++i)
            if (!(c[i] == R(0))) return val + (long)i;
        return prec;
    }

    TruncSeries truncated(long new_prec) const {
        if (new_prec > prec) throw std::runtime_error("series: cannot raise precision");
        TruncSeries r(std::min(val, new_prec), new_prec);
        for (long e = r.val; e < new_prec; ++e) r.c[(size_t)(e - r.val)] = coeff(e);
        return r;
    }

    // drop leading stored zeros (precision unchanged)
    TruncSeries normalized() const {
        long o = order();
        if (o == val) return *this;
        TruncSeries r(std::min(o, prec), prec);
        for (long e = r.val; e < prec; ++e) r.c[(size_t)(e - r.val)] = coeff(e);
        return r;
    }

    TruncSeries operator+(const TruncSeries& o) const {
        long p = std::min(prec, o.prec);
        TruncSeries r(std::min(std::min(val, o.val), p), p);
        for (long e = r.val; e < p; ++e)
            r.c[(size_t)(e - r.val)] = coeff_clamped(e) + o.coeff_clamped(e);
        return r;
    }
    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }
    TruncSeries operator-(const TruncSeries& o) const { return *this + (-o); }

    TruncSeries operator*(const TruncSeries& o) const {
        // known windows [val, prec), [o.val, o.prec): product window
        long rv = val + o.val;
        long rp = std::min(prec + o.val, o.prec + val);
        TruncSeries r(rv, rp);
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == R(0)) continue;
            long e1 = val + (long)i;
            for (size_t j = 0; j < o.c.size(); ++j) {
                long e = e1 + o.val + (long)j;
                if (e >= rp) break;
                r.c[(size_t)(e - rv)] = r.c[(size_t)(e - rv)] + c[i] * o.c[j];
            }
        }
        return r;
    }

    TruncSeries operator*(const R& s) const {
        TruncSeries r = *this;
        for (auto& v : r.c) v = v * s;
        return r;
    }

    // multiplicative inverse; leading coefficient must be a unit
    TruncSeries inverse() const {
        TruncSeries s = normalized();
        if (s.c.empty() || s.c[0] == R(0))
            throw std::runtime_error("series: inverse of zero (to precision)");
        long n = (long)s.c.size();
        std::vector<R> inv((size_t)n, R(0));
        R lead_inv = ring_inv(s.c[0]);
        inv[0] = lead_inv;
        for (long k = 1; k < n; ++k) {
            R acc = R(0);
            for (long j = 1; j <= k; ++j) acc = acc + s.c[(size_t)j] * inv[(size_t)(k - j)];
            inv[(size_t)k] = -(lead_inv * acc);
        }
        TruncSeries r(-s.val, -s.val + n);
        r.c = std::move(inv);
        return r;
    }

    TruncSeries operator/(const TruncSeries& o) const { return *this * o.inverse(); }

    TruncSeries pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        if (e == 0) return TruncSeries::one(prec - val);
        TruncSeries base = *this;
        TruncSeries acc;
        bool any = false;
        long ee = e;
        while (ee > 0) {
            if (ee & 1) {
                acc = any ? acc * base : base;
                any = true;
            }
            ee >>= 1;
            if (ee) base = base * base;
        }
        return acc;
    }

    // substitute q -> q^m (m >= 1)
    TruncSeries compose_power(int m) const {
        if (m < 1) throw std::runtime_error("series: compose_power needs m >= 1");
        TruncSeries r(val * m, prec * m);
        for (size_t i = 0; i < c.size(); ++i) r.c[(size_t)i * m] = c[i];
        return r;
    }

    TruncSeries shifted(long k) const { // multiply by q^k
        TruncSeries r = *this;
        r.val += k;
        r.prec += k;
        return r;
    }

private:
    R coeff_clamped(long e) const {
        if (e < val || e >= prec) return R(0);
        return c[(size_t)(e - val)];
    }
    static R ring_inv(const R& v) {
        if constexpr (requires(const R& x) { x.inv(); })
            return v.inv();
        else
            return R(1) / v;
    }
};

using SeriesQ = TruncSeries<Rat>;

} // namespace qtwist
