#include "mat.hpp"

#include <algorithm>

namespace enrlat {

IMat IMat::identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IMat IMat::block_diag(const IMat& a, const IMat& b) {
    IMat m(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

IMat IMat::operator*(const IMat& o) const {
    require(c_ == o.r_, ErrCode::invalid_argument, "matrix product shape mismatch");
    IMat m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.c_; ++j) m.at(i, j) += v * o.at(k, j);
        }
    return m;
}

IMat IMat::operator+(const IMat& o) const {
    require(r_ == o.r_ && c_ == o.c_, ErrCode::invalid_argument, "matrix sum shape mismatch");
    IMat m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
}

IMat IMat::operator-(const IMat& o) const {
    require(r_ == o.r_ && c_ == o.c_, ErrCode::invalid_argument, "matrix diff shape mismatch");
    IMat m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
}

IMat IMat::transposed() const {
    IMat m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

IMat IMat::scaled(const Int& s) const {
    IMat m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
    return m;
}

bool IMat::is_symmetric() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = i + 1; j < c_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool IMat::is_zero() const {
    for (const Int& v : a_)
        if (v != 0) return false;
    return true;
}

bool IMat::is_identity() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

std::vector<Int> IMat::row(int i) const {
    std::vector<Int> v(c_);
    for (int j = 0; j < c_; ++j) v[j] = at(i, j);
    return v;
}

void IMat::set_row(int i, const std::vector<Int>& v) {
    require(int(v.size()) == c_, ErrCode::invalid_argument, "set_row length mismatch");
    for (int j = 0; j < c_; ++j) at(i, j) = v[j];
}

int IMat::compare(const IMat& o) const {
    if (r_ != o.r_) return r_ < o.r_ ? -1 : 1;
    if (c_ != o.c_) return c_ < o.c_ ? -1 : 1;
    for (size_t i = 0; i < a_.size(); ++i) {
        if (a_[i] != o.a_[i]) return a_[i] < o.a_[i] ? -1 : 1;
    }
    return 0;
}

QMat::QMat(const IMat& m) : r_(m.rows()), c_(m.cols()), a_(size_t(m.rows()) * m.cols()) {
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) at(i, j) = Rat(m.at(i, j));
}

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::operator*(const QMat& o) const {
    require(c_ == o.r_, ErrCode::invalid_argument, "matrix product shape mismatch");
    QMat m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Rat& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.c_; ++j) m.at(i, j) += v * o.at(k, j);
        }
    return m;
}

QMat QMat::transposed() const {
    QMat m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

QMat QMat::scaled(const Rat& s) const {
    QMat m(r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(i, j) = at(i, j) * s;
    return m;
}

bool QMat::is_integral() const {
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if (denominator(at(i, j)) != 1) return false;
    return true;
}

IMat QMat::to_imat() const {
    require(is_integral(), ErrCode::invariant, "matrix is not integral");
    IMat m(r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(i, j) = numerator(at(i, j));
    return m;
}

bool QMat::is_symmetric() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = i + 1; j < c_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

std::vector<Int> mul_row(const std::vector<Int>& v, const IMat& m) {
    require(int(v.size()) == m.rows(), ErrCode::invalid_argument, "row*matrix shape mismatch");
    std::vector<Int> out(m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < m.cols(); ++j) out[j] += v[i] * m.at(i, j);
    }
    return out;
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    require(a.size() == b.size(), ErrCode::invalid_argument, "dot length mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int pairing(const std::vector<Int>& x, const IMat& gram, const std::vector<Int>& y) {
    return dot(mul_row(x, gram), y);
}

Int gcd_all(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

Int det(const IMat& m) {
    require(m.rows() == m.cols(), ErrCode::invalid_argument, "det of non-square matrix");
    int n = m.rows();
    if (n == 0) return 1;
    IMat a = m;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = num / prev;  // Bareiss: exact division
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

QMat inverse(const IMat& m) { return inverse(QMat(m)); }

QMat inverse(const QMat& m) {
    require(m.rows() == m.cols(), ErrCode::invalid_argument, "inverse of non-square matrix");
    int n = m.rows();
    QMat a = m, inv = QMat::identity(n);
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (a.at(i, k) != 0) { p = i; break; }
        require(p >= 0, ErrCode::invalid_argument, "inverse of singular matrix");
        if (p != k)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(k, j), a.at(p, j));
                std::swap(inv.at(k, j), inv.at(p, j));
            }
        Rat piv = a.at(k, k);
        for (int j = 0; j < n; ++j) {
            a.at(k, j) /= piv;
            inv.at(k, j) /= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || a.at(i, k) == 0) continue;
            Rat f = a.at(i, k);
            for (int j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

std::vector<Int> charpoly(const IMat& m) {
    require(m.rows() == m.cols(), ErrCode::invalid_argument, "charpoly of non-square matrix");
    int n = m.rows();
    std::vector<Int> c(n + 1);
    c[n] = 1;
    IMat mk = IMat::identity(n);
    for (int k = 1; k <= n; ++k) {
        mk = m * mk;
        Int tr = 0;
        for (int i = 0; i < n; ++i) tr += mk.at(i, i);
        Int ck = -tr;  // divisions below are exact
        ck /= k;
        c[n - k] = ck;
        for (int i = 0; i < n; ++i) mk.at(i, i) += ck;
    }
    return c;
}

Signature signature(const IMat& sym) {
    require(sym.is_symmetric(), ErrCode::invalid_argument, "signature of non-symmetric matrix");
    std::vector<Int> c = charpoly(sym);
    require(c[0] != 0, ErrCode::invalid_argument, "signature of degenerate form");
    // All roots real: Descartes' rule is exact. p(x) has coefficient c[k] at x^k.
    auto variations = [](const std::vector<Int>& v) {
        int count = 0, last = 0;
        for (const Int& x : v) {
            if (x == 0) continue;
            int s = x > 0 ? 1 : -1;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    };
    Signature sig;
    sig.pos = variations(c);
    std::vector<Int> cneg = c;
    for (size_t k = 1; k < cneg.size(); k += 2) cneg[k] = -cneg[k];
    sig.neg = variations(cneg);
    require(sig.pos + sig.neg == sym.rows(), ErrCode::internal, "signature count mismatch");
    return sig;
}

IMat hnf(const IMat& m, IMat* transform) {
    IMat h = m;
    IMat u = IMat::identity(m.rows());
    int rows = h.rows(), cols = h.cols();
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        // Clear the column below row r by Euclidean row operations.
        while (true) {
            int p = -1;
            for (int i = r; i < rows; ++i)
                if (h.at(i, col) != 0 && (p < 0 || abs(h.at(i, col)) < abs(h.at(p, col)))) p = i;
            if (p < 0) break;
            if (p != r)
                for (int j = 0; j < cols; ++j) std::swap(h.at(r, j), h.at(p, j));
            if (p != r)
                for (int j = 0; j < rows; ++j) std::swap(u.at(r, j), u.at(p, j));
            bool done = true;
            for (int i = r + 1; i < rows; ++i) {
                if (h.at(i, col) == 0) continue;
                // truncating quotient leaves |remainder| < |pivot|
                Int q = h.at(i, col) / h.at(r, col);
                for (int j = 0; j < cols; ++j) h.at(i, j) -= q * h.at(r, j);
                for (int j = 0; j < rows; ++j) u.at(i, j) -= q * u.at(r, j);
                if (h.at(i, col) != 0) done = false;
            }
            if (done) break;
        }
        if (h.at(r, col) == 0) continue;
        if (h.at(r, col) < 0) {
            for (int j = 0; j < cols; ++j) h.at(r, j) = -h.at(r, j);
            for (int j = 0; j < rows; ++j) u.at(r, j) = -u.at(r, j);
        }
        // Reduce entries above the pivot into [0, pivot).
        for (int i = 0; i < r; ++i) {
            Int q = h.at(i, col) / h.at(r, col);
            if (h.at(i, col) - q * h.at(r, col) < 0) q -= 1;
            if (q == 0) continue;
            for (int j = 0; j < cols; ++j) h.at(i, j) -= q * h.at(r, j);
            for (int j = 0; j < rows; ++j) u.at(i, j) -= q * u.at(r, j);
        }
        ++r;
    }
    if (transform) *transform = u;
    return h;
}

IMat left_kernel(const IMat& m) {
    IMat u;
    IMat h = hnf(m, &u);
    int nz = 0;
    for (int i = 0; i < h.rows(); ++i) {
        bool zero = true;
        for (int j = 0; j < h.cols(); ++j)
            if (h.at(i, j) != 0) { zero = false; break; }
        if (zero) ++nz;
    }
    IMat k(nz, m.rows());
    int out = 0;
    for (int i = 0; i < h.rows(); ++i) {
        bool zero = true;
        for (int j = 0; j < h.cols(); ++j)
            if (h.at(i, j) != 0) { zero = false; break; }
        if (!zero) continue;
        for (int j = 0; j < m.rows(); ++j) k.at(out, j) = u.at(i, j);
        ++out;
    }
    return k;
}

SmithResult smith(const IMat& m) {
    SmithResult res;
    res.d = m;
    res.u = IMat::identity(m.rows());
    res.v = IMat::identity(m.cols());
    IMat& d = res.d;
    IMat& u = res.u;
    IMat& v = res.v;
    int rows = d.rows(), cols = d.cols();
    int n = std::min(rows, cols);

    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols; ++j) std::swap(d.at(a, j), d.at(b, j));
        for (int j = 0; j < rows; ++j) std::swap(u.at(a, j), u.at(b, j));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows; ++i) std::swap(d.at(i, a), d.at(i, b));
        for (int i = 0; i < cols; ++i) std::swap(v.at(i, a), v.at(i, b));
    };
    auto addmul_row = [&](int dst, int src, const Int& f) {
        for (int j = 0; j < cols; ++j) d.at(dst, j) += f * d.at(src, j);
        for (int j = 0; j < rows; ++j) u.at(dst, j) += f * u.at(src, j);
    };
    auto addmul_col = [&](int dst, int src, const Int& f) {
        for (int i = 0; i < rows; ++i) d.at(i, dst) += f * d.at(i, src);
        for (int i = 0; i < cols; ++i) v.at(i, dst) += f * v.at(i, src);
    };

    for (int t = 0; t < n; ++t) {
        // Find a nonzero pivot of minimal absolute value in the trailing block.
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (d.at(i, j) != 0 &&
                    (pi < 0 || abs(d.at(i, j)) < abs(d.at(pi, pj)))) { pi = i; pj = j; }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool again = true;
        while (again) {
            again = false;
            for (int i = t + 1; i < rows; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t);
                addmul_row(i, t, -q);
                if (d.at(i, t) != 0) { swap_rows(t, i); again = true; }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                addmul_col(j, t, -q);
                if (d.at(t, j) != 0) { swap_cols(t, j); again = true; }
            }
        }
        // Enforce divisibility d[t,t] | d[i,j] for the trailing block.
        for (int i = t + 1; i < rows; ++i) {
            bool divides_row = true;
            for (int j = t + 1; j < cols; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) { divides_row = false; break; }
            if (!divides_row) {
                addmul_row(t, i, 1);
                // redo this pivot
                --t;
                again = true;
                break;
            }
        }
        if (again) continue;
        if (d.at(t, t) < 0) {
            for (int j = 0; j < cols; ++j) d.at(t, j) = -d.at(t, j);
            for (int j = 0; j < rows; ++j) u.at(t, j) = -u.at(t, j);
        }
    }
    return res;
}

std::vector<Rat> solve_left(const IMat& b, const std::vector<Int>& v) {
    require(b.rows() == b.cols(), ErrCode::invalid_argument, "solve_left needs square matrix");
    require(int(v.size()) == b.cols(), ErrCode::invalid_argument, "solve_left shape mismatch");
    QMat binv = inverse(b);
    std::vector<Rat> out(b.rows());
    for (int j = 0; j < b.rows(); ++j) {
        Rat s = 0;
        for (int i = 0; i < b.rows(); ++i) s += Rat(v[i]) * binv.at(i, j);
        out[j] = s;
    }
    return out;
}

}  // namespace enrlat
