#include "lll.hpp"

#include <vector>

namespace enrlat {

namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a - q * b != 0 && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

// Nearest integer to a/b for b > 0, ties toward even not required here.
Int round_div(const Int& a, const Int& b) { return floor_div(2 * a + b, 2 * b); }

struct LllState {
    int n;
    IMat g;                         // working Gram, congruence-updated
    IMat t;                        // transform rows
    std::vector<std::vector<Int>> lam;  // lam[i][j], j < i (1-based shifted to 0-based)
    std::vector<Int> d;             // d[0] = 1, d[i] = Gram-Schmidt minor, 1-based

    explicit LllState(const IMat& gram)
        : n(gram.rows()), g(gram), t(IMat::identity(gram.rows())),
          lam(gram.rows() + 1, std::vector<Int>(gram.rows() + 1)), d(gram.rows() + 1) {
        d[0] = 1;
    }

    // Incremental integral Gram-Schmidt for row k (1-based).
    void gso_row(int k) {
        for (int j = 1; j <= k; ++j) {
            Int u = g.at(k - 1, j - 1);
            for (int i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
            if (j < k)
                lam[k][j] = u;
            else {
                require(u > 0, ErrCode::invalid_argument, "lll_gram: matrix is not positive definite");
                d[k] = u;
            }
        }
    }

    // Size-reduce b_k against b_l (b_k <- b_k - q b_l); b*_j are unchanged.
    void redi(int k, int l) {
        if (2 * abs(lam[k][l]) <= d[l]) return;
        Int q = round_div(lam[k][l], d[l]);
        Int gkk = g.at(k - 1, k - 1) - 2 * q * g.at(k - 1, l - 1) + q * q * g.at(l - 1, l - 1);
        for (int j = 0; j < n; ++j) {
            if (j == k - 1) continue;
            g.at(k - 1, j) -= q * g.at(l - 1, j);
            g.at(j, k - 1) = g.at(k - 1, j);
        }
        g.at(k - 1, k - 1) = gkk;
        for (int j = 0; j < n; ++j) t.at(k - 1, j) -= q * t.at(l - 1, j);
        for (int i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
        lam[k][l] -= q * d[l];
    }

    void swapi(int k) {
        for (int j = 0; j < n; ++j) std::swap(g.at(k - 1, j), g.at(k - 2, j));
        for (int j = 0; j < n; ++j) std::swap(g.at(j, k - 1), g.at(j, k - 2));
        for (int j = 0; j < n; ++j) std::swap(t.at(k - 1, j), t.at(k - 2, j));
        for (int j = 1; j <= k - 2; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        Int lamv = lam[k][k - 1];
        Int b = (d[k - 2] * d[k] + lamv * lamv) / d[k - 1];
        for (int i = k + 1; i <= n; ++i) {
            Int ti = lam[i][k];
            lam[i][k] = (d[k] * lam[i][k - 1] - lamv * ti) / d[k - 1];
            lam[i][k - 1] = (b * ti + lamv * lam[i][k]) / d[k];
        }
        d[k - 1] = b;
    }
};

}  // namespace

IMat lll_gram(const IMat& gram, IMat* transform) {
    require(gram.is_symmetric(), ErrCode::invalid_argument, "lll_gram: non-symmetric input");
    int n = gram.rows();
    if (n == 0) {
        if (transform) *transform = IMat::identity(0);
        return gram;
    }
    LllState st(gram);
    st.gso_row(1);
    int k = 2, kmax = 1;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            st.gso_row(k);
        }
        st.redi(k, k - 1);
        // Lovasz with delta = 99/100: swap iff 100(d_k d_{k-2} + lam^2) < 99 d_{k-1}^2.
        Int lamv = st.lam[k][k - 1];
        if (100 * (st.d[k] * st.d[k - 2] + lamv * lamv) < 99 * st.d[k - 1] * st.d[k - 1]) {
            st.swapi(k);
            k = std::max(2, k - 1);
        } else {
            for (int l = k - 2; l >= 1; --l) st.redi(k, l);
            ++k;
        }
    }
    if (transform) *transform = st.t;
    return st.g;
}

IMat lll_reduce_definite(const IMat& gram, IMat* transform) {
    if (gram.rows() == 0) return lll_gram(gram, transform);
    // Definite Grams have nonzero diagonal; lll_gram rejects indefinite input
    // via its positivity check on the Gram-Schmidt minors.
    require(gram.at(0, 0) != 0, ErrCode::invalid_argument, "lll_reduce_definite: indefinite input");
    if (gram.at(0, 0) > 0) return lll_gram(gram, transform);
    IMat red = lll_gram(gram.scaled(-1), transform);
    return red.scaled(-1);
}

}  // namespace enrlat
