#include "qtwist/qmat.hpp"

namespace qtwist::linalg {

namespace {

// clear denominators row by row -> integer matrix (row scaling preserves row
// space and kernel)
IntMat to_int_rows(const QMat& m) {
    IntMat r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i) {
        Int d(1);
        for (int j = 0; j < m.cols; ++j) d = lcm(d, den(m.at(i, j)));
        for (int j = 0; j < m.cols; ++j) {
            const Rat& v = m.at(i, j);
            r.at(i, j) = num(v) * divexact(d, den(v));
        }
    }
    return r;
}

} // namespace

std::vector<int> rref(QMat& m) {
    IntMat im = to_int_rows(m);
    auto pivots = bareiss(im);
    // back-substitute the Bareiss triangular form into RREF over Q
    int nr = (int)pivots.size();
    QMat out(m.rows, m.cols);
    for (int i = nr - 1; i >= 0; --i) {
        std::vector<Rat> row((size_t)m.cols, Rat(0));
        for (int j = 0; j < m.cols; ++j) row[(size_t)j] = Rat(im.at(i, j));
        for (int k = i + 1; k < nr; ++k) {
            Rat f = row[(size_t)pivots[k]];
            if (f == 0) continue;
            for (int j = pivots[k]; j < m.cols; ++j)
                row[(size_t)j] -= f * out.at(k, j);
        }
        Rat d = row[(size_t)pivots[i]];
        for (int j = 0; j < m.cols; ++j) {
            row[(size_t)j] /= d;
            row[(size_t)j].canonicalize();
            out.at(i, j) = row[(size_t)j];
        }
    }
    m = out;
    return pivots;
}

std::vector<std::vector<Rat>> kernel_basis(const QMat& m_in) {
    QMat m = m_in;
    auto pivots = rref(m);
    std::vector<bool> is_pivot((size_t)m.cols, false);
    for (int c : pivots) is_pivot[(size_t)c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int j = 0; j < m.cols; ++j) {
        if (is_pivot[(size_t)j]) continue;
        std::vector<Rat> v((size_t)m.cols, Rat(0));
        v[(size_t)j] = 1;
        for (size_t i = 0; i < pivots.size(); ++i)
            v[(size_t)pivots[i]] = -m.at((int)i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

Rat det(const QMat& m) {
    if (m.rows != m.cols) throw std::runtime_error("det: not square");
    if (m.rows == 0) return Rat(1);
    // track row scalings
    Rat scale(1);
    IntMat im(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i) {
        Int d(1);
        for (int j = 0; j < m.cols; ++j) d = lcm(d, den(m.at(i, j)));
        scale /= Rat(d);
        for (int j = 0; j < m.cols; ++j)
            im.at(i, j) = num(m.at(i, j)) * divexact(d, den(m.at(i, j)));
    }
    // Bareiss with sign tracking; det = last pivot (if full rank)
    int sign = 1;
    Int prev(1);
    int r = 0;
    for (int c = 0; c < im.cols && r < im.rows; ++c) {
        int piv = -1;
        for (int i = r; i < im.rows; ++i)
            if (im.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) return Rat(0);
        if (piv != r) {
            sign = -sign;
            for (int j = 0; j < im.cols; ++j) swap(im.at(piv, j), im.at(r, j));
        }
        const Int d = im.at(r, c);
        for (int i = r + 1; i < im.rows; ++i) {
            const Int mic = im.at(i, c);
            for (int j = c; j < im.cols; ++j)
                im.at(i, j) = divexact(im.at(i, j) * d - mic * im.at(r, j), prev);
        }
        prev = d;
        ++r;
    }
    Rat result = Rat(prev) * scale;
    if (sign < 0) result = -result;
    result.canonicalize();
    return result;
}

QMat inverse(const QMat& m_in) {
    if (m_in.rows != m_in.cols) throw std::runtime_error("inverse: not square");
    int n = m_in.rows;
    QMat m = m_in, inv = QMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) throw std::runtime_error("inverse: singular matrix");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(c, j));
                std::swap(inv.at(piv, j), inv.at(c, j));
            }
        Rat d = m.at(c, c);
        for (int j = 0; j < n; ++j) {
            m.at(c, j) /= d;
            inv.at(c, j) /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c) continue;
            Rat f = m.at(i, c);
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(c, j);
                inv.at(i, j) -= f * inv.at(c, j);
            }
        }
    }
    for (auto& v : inv.a) v.canonicalize();
    return inv;
}

std::vector<Rat> solve(const QMat& A, const std::vector<Rat>& b) {
    if (A.rows != A.cols || (int)b.size() != A.rows)
        throw std::runtime_error("solve: shape mismatch");
    QMat aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[(size_t)i];
    }
    auto pivots = rref(aug);
    if ((int)pivots.size() != A.rows || (!pivots.empty() && pivots.back() == A.cols))
        throw std::runtime_error("solve: singular matrix");
    std::vector<Rat> x((size_t)A.cols, Rat(0));
    for (int i = 0; i < A.rows; ++i) x[(size_t)pivots[i]] = aug.at(i, A.cols);
    return x;
}

IntMat hnf_rows(const IntMat& m_in) {
    // classic row HNF by integer row operations
    IntMat m = m_in;
    int r = 0;
    std::vector<int> pivot_cols;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        // gcd-reduce column c below row r
        while (true) {
            int nz = -1;
            for (int i = r + 1; i < m.rows; ++i)
                if (m.at(i, c) != 0) { nz = i; break; }
            if (m.at(r, c) == 0 && nz >= 0) {
                for (int j = 0; j < m.cols; ++j) swap(m.at(r, j), m.at(nz, j));
                continue;
            }
            if (nz < 0) break;
            // reduce row nz by row r (floor division keeps remainder in [0, pivot))
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m.at(nz, c).get_mpz_t(), m.at(r, c).get_mpz_t());
            if (q != 0)
                for (int j = 0; j < m.cols; ++j) m.at(nz, j) -= q * m.at(r, j);
            if (m.at(nz, c) != 0)
                for (int j = 0; j < m.cols; ++j) swap(m.at(r, j), m.at(nz, j));
        }
        if (m.at(r, c) == 0) continue;
        if (sgn(m.at(r, c)) < 0)
            for (int j = 0; j < m.cols; ++j) m.at(r, j) = -m.at(r, j);
        pivot_cols.push_back(c);
        ++r;
    }
    int nrows = r;
    // reduce entries above pivots
    for (int i = nrows - 1; i >= 0; --i) {
        int c = pivot_cols[(size_t)i];
        for (int k = 0; k < i; ++k) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m.at(k, c).get_mpz_t(), m.at(i, c).get_mpz_t());
            if (q != 0)
                for (int j = 0; j < m.cols; ++j) m.at(k, j) -= q * m.at(i, j);
        }
    }
    IntMat out(nrows, m.cols);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
    return out;
}

} // namespace qtwist::linalg
