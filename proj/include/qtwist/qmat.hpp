#pragma once
// Dense matrices over Q and Z. Kernel bases use fraction-free Bareiss
// elimination with a fixed pivot rule (first nonzero column, smallest row
// index), so outputs are deterministic and reproducible.

#include "qtwist/zz.hpp"

#include <vector>

namespace qtwist {

struct QMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;
    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a((size_t)r * c, Rat(0)) {}
    Rat& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const Rat& at(int i, int j) const { return a[(size_t)i * cols + j]; }

    static QMat identity(int n) {
        QMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    QMat operator*(const QMat& o) const {
        QMat r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const Rat& v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols; ++j)
                    r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }
    QMat operator-(const QMat& o) const {
        QMat r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
        return r;
    }
    QMat operator+(const QMat& o) const {
        QMat r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
        return r;
    }
    bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    QMat transpose() const {
        QMat r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        std::vector<Rat> r((size_t)rows, Rat(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (a[(size_t)i * cols + j] != 0) r[(size_t)i] += at(i, j) * v[(size_t)j];
        return r;
    }
};

inline QMat kron(const QMat& A, const QMat& B) {
    QMat r(A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            const Rat& v = A.at(i, j);
            if (v == 0) continue;
            for (int k = 0; k < B.rows; ++k)
                for (int l = 0; l < B.cols; ++l)
                    r.at(i * B.rows + k, j * B.cols + l) = v * B.at(k, l);
        }
    return r;
}

struct IntMat {
    int rows = 0, cols = 0;
    std::vector<Int> a;
    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a((size_t)r * c, Int(0)) {}
    Int& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const Int& at(int i, int j) const { return a[(size_t)i * cols + j]; }
    bool operator==(const IntMat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

namespace linalg {

// Fraction-free Bareiss elimination of an integer matrix (in place).
// Pivot rule: sweep columns left to right; pivot = smallest-index row (among
// the not-yet-used rows) with a nonzero entry in that column. Returns the list
// of pivot columns; after the call, row i of m (i < #pivots) is the i-th
// eliminated row of the upper-triangular fraction-free form.
inline std::vector<int> bareiss(IntMat& m) {
    std::vector<int> pivots;
    Int prev(1);
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) swap(m.at(piv, j), m.at(r, j));
        const Int d = m.at(r, c);
        for (int i = r + 1; i < m.rows; ++i) {
            const Int mic = m.at(i, c);
            for (int j = c; j < m.cols; ++j) {
                Int t = m.at(i, j) * d - mic * m.at(r, j);
                m.at(i, j) = divexact(t, prev);
            }
        }
        prev = d;
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Reduced row echelon form over Q from the Bareiss form (exact).
// Returns pivot columns; m is replaced by its RREF.
std::vector<int> rref(QMat& m);

// Right kernel basis of M over Q: one vector per free column in the canonical
// parameterization v[free] = 1, v[pivot_i] = -rref[i][free]. Deterministic.
std::vector<std::vector<Rat>> kernel_basis(const QMat& m);

// Determinant (square) via Bareiss after clearing denominators.
Rat det(const QMat& m);

// Inverse of a small square rational matrix (Gauss-Jordan); throws if singular.
QMat inverse(const QMat& m);

// Exact solve A x = b for square A; throws if singular.
std::vector<Rat> solve(const QMat& A, const std::vector<Rat>& b);

// Row-style Hermite normal form of an integer matrix: returns a new matrix
// whose rows are the HNF basis of the row lattice (zero rows dropped).
// Pivots positive, entries above pivots reduced to [0, pivot).
IntMat hnf_rows(const IntMat& m);

} // namespace linalg

} // namespace qtwist
