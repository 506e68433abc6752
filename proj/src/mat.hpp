#pragma once

#include "ints.hpp"

#include <vector>

namespace enrlat {

// Dense exact-integer matrix, row major. Vectors are integer row vectors
// throughout; a pairing is (x, y) = x * G * y^T.
class IMat {
public:
    IMat() = default;
    IMat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {}

    static IMat identity(int n);
    static IMat zero(int rows, int cols) { return IMat(rows, cols); }
    static IMat block_diag(const IMat& a, const IMat& b);

    int rows() const { return r_; }
    int cols() const { return c_; }

    Int& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const Int& at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    bool operator==(const IMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const IMat& o) const { return !(*this == o); }

    IMat operator*(const IMat& o) const;
    IMat operator+(const IMat& o) const;
    IMat operator-(const IMat& o) const;
    IMat transposed() const;
    IMat scaled(const Int& s) const;

    bool is_symmetric() const;
    bool is_zero() const;
    bool is_identity() const;

    std::vector<Int> row(int i) const;
    void set_row(int i, const std::vector<Int>& v);

    // Lexicographic compare of the flattened entries (row determinism).
    int compare(const IMat& o) const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

// Exact rational matrix; only what the dual/embedding plumbing needs.
class QMat {
public:
    QMat() = default;
    QMat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {}
    explicit QMat(const IMat& m);

    static QMat identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rat& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    bool operator==(const QMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    QMat operator*(const QMat& o) const;
    QMat transposed() const;
    QMat scaled(const Rat& s) const;

    bool is_integral() const;
    IMat to_imat() const;  // requires is_integral()
    bool is_symmetric() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

std::vector<Int> mul_row(const std::vector<Int>& v, const IMat& m);  // v * m
Int dot(const std::vector<Int>& a, const std::vector<Int>& b);
Int pairing(const std::vector<Int>& x, const IMat& gram, const std::vector<Int>& y);
Int gcd_all(const std::vector<Int>& v);

// Determinant by fraction-free Bareiss elimination.
Int det(const IMat& m);

// Exact inverse over the rationals; fails on singular input.
QMat inverse(const IMat& m);
QMat inverse(const QMat& m);

// Characteristic polynomial coefficients of a square matrix,
// p(x) = x^n + c[n-1] x^(n-1) + ... + c[0], by Faddeev-LeVerrier.
std::vector<Int> charpoly(const IMat& m);

// Signature (n_plus, n_minus) of a symmetric matrix via Descartes' rule on
// the characteristic polynomial (valid: symmetric => all roots real).
// Fails if the matrix is singular.
struct Signature {
    int pos = 0;
    int neg = 0;
};
Signature signature(const IMat& sym);

// Row Hermite normal form. Returns H (same shape, echelon, pivots > 0,
// entries above a pivot reduced into [0, pivot)); if transform != nullptr it
// receives unimodular U with U * m = H.
IMat hnf(const IMat& m, IMat* transform = nullptr);

// Basis of the left kernel {x : x * m = 0} as rows, saturated (primitive).
IMat left_kernel(const IMat& m);

// Smith normal form: returns diagonal D and unimodular U, V with U*m*V = D,
// divisibility d1 | d2 | ..., nonnegative diagonal.
struct SmithResult {
    IMat d, u, v;
};
SmithResult smith(const IMat& m);

// Solve x * b = v for square invertible b; exact rational result.
std::vector<Rat> solve_left(const IMat& b, const std::vector<Int>& v);

}  // namespace enrlat
