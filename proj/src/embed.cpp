#include "embed.hpp"

#include "fqf.hpp"

namespace enrlat {

HyperbolicExtension hyperbolic_extension(const Lattice& l, const Int& d) {
    require(d >= 1, ErrCode::invalid_argument, "need d >= 1");
    require(l.rank() >= 1 && l.is_even(), ErrCode::invalid_argument, "need an even lattice");
    Int m = 2 * d;
    FiniteQuadraticForm f = FiniteQuadraticForm::from_lattice(l);
    require(f.is_cyclic() && f.order() == m, ErrCode::invalid_argument,
            "hyperbolic extension needs a cyclic discriminant group of order 2d");

    int n = l.rank();
    Lattice a = direct_sum(make_rank1(m), l);  // basis: h = f, then L

    // Need gamma generating D_L with q(gamma) = -1/(2d) mod 2Z, so the glue
    // (f/2d, gamma) is isotropic and the extension is even unimodular.
    Rat want(2 * m - 1, m);  // -1/(2d) mod 2Z
    Int tfound = -1;
    if (f.is_trivial()) {
        require(m == 1, ErrCode::internal, "trivial form with m > 1");
    } else {
        for (Int t = 1; t < m; ++t) {
            if (gcd(t, m) != 1) continue;
            if (f.q({t}) == want) { tfound = t; break; }
        }
        require(tfound >= 1, ErrCode::invariant,
                "no generator with q = -1/2d; lattice is not in the expected genus");
    }

    // Glue vector x = f/(2d) + lift(gamma), gamma = tfound * (SNF generator).
    std::vector<Rat> gamma_coords(n, Rat(0));
    if (!f.is_trivial()) {
        std::vector<Int> adual = f.generator_dual_coords(0);
        for (Int& x : adual) x *= tfound;
        QMat ginv = inverse(l.gram());
        for (int i = 0; i < n; ++i) {
            Rat s = 0;
            for (int j = 0; j < n; ++j) s += Rat(adual[j]) * ginv.at(j, i);
            gamma_coords[i] = s;
        }
    }

    // Integer model of m * Lambda: rows m*e_0..m*e_n and m*x.
    IMat stack(n + 2, n + 1);
    for (int i = 0; i <= n; ++i) stack.at(i, i) = m;
    stack.at(n + 1, 0) = 1;  // m * (f / m)
    for (int i = 0; i < n; ++i) {
        Rat scaled = Rat(m) * gamma_coords[i];
        require(denominator(scaled) == 1, ErrCode::internal, "glue lift not m-integral");
        stack.at(n + 1, 1 + i) = numerator(scaled);
    }
    IMat h = hnf(stack);
    IMat c(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) c.at(i, j) = h.at(i, j);
    IMat scaled_gram = c * a.gram() * c.transposed();
    IMat over_gram(n + 1, n + 1);
    Int mm = m * m;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            require(scaled_gram.at(i, j) % mm == 0, ErrCode::internal, "overlattice not integral");
            over_gram.at(i, j) = scaled_gram.at(i, j) / mm;
        }

    HyperbolicExtension ext;
    ext.over = Lattice(over_gram);
    require(abs(ext.over.det()) == 1, ErrCode::invariant, "extension is not unimodular");
    require(ext.over.is_even(), ErrCode::invariant, "extension is not even");

    // Express h = f and the L basis in the overlattice basis: y * C = m * e_i.
    QMat cinv = inverse(c);
    auto in_over = [&](int ai) {
        std::vector<Int> row(n + 1);
        for (int j = 0; j <= n; ++j) {
            Rat s = Rat(m) * cinv.at(ai, j);
            require(denominator(s) == 1, ErrCode::internal, "basis not integral in overlattice");
            row[j] = numerator(s);
        }
        return row;
    };
    ext.h = in_over(0);
    ext.sub_basis = IMat(n, n + 1);
    for (int i = 0; i < n; ++i) ext.sub_basis.set_row(i, in_over(1 + i));

    require(vector_norm(ext.h, ext.over) == m, ErrCode::invariant, "h norm mismatch");
    require(is_primitive(ext.h), ErrCode::invariant, "h is not primitive");
    IMat sub_gram = ext.sub_basis * over_gram * ext.sub_basis.transposed();
    require(sub_gram == l.gram(), ErrCode::invariant, "embedded copy has wrong Gram");
    std::vector<Int> gh = mul_row(ext.h, over_gram);
    for (int i = 0; i < n; ++i) require(dot(ext.sub_basis.row(i), gh) == 0, ErrCode::invariant,
                                        "embedded copy not orthogonal to h");
    return ext;
}

}  // namespace enrlat
