#include "f2grp.hpp"

#include <algorithm>

namespace enrlat {

F2Mat F2Mat::identity(int dim) {
    F2Mat m(dim);
    for (int i = 0; i < dim; ++i) m.rows[i] = 1u << i;
    return m;
}

uint32_t F2Mat::apply(uint32_t v) const {
    uint32_t out = 0;
    uint32_t rest = v;
    while (rest) {
        int i = __builtin_ctz(rest);
        out ^= rows[i];
        rest &= rest - 1;
    }
    return out;
}

F2Mat F2Mat::operator*(const F2Mat& o) const {
    require(k == o.k, ErrCode::internal, "F2 dimension mismatch");
    F2Mat m(k);
    for (int i = 0; i < k; ++i) m.rows[i] = o.apply(rows[i]);
    return m;
}

F2Mat F2Mat::inverse() const {
    F2Mat a = *this, inv = identity(k);
    for (int col = 0; col < k; ++col) {
        int p = -1;
        for (int i = col; i < k; ++i)
            if (a.rows[i] >> col & 1) { p = i; break; }
        require(p >= 0, ErrCode::invalid_argument, "singular F2 matrix");
        std::swap(a.rows[col], a.rows[p]);
        std::swap(inv.rows[col], inv.rows[p]);
        for (int i = 0; i < k; ++i) {
            if (i == col || !(a.rows[i] >> col & 1)) continue;
            a.rows[i] ^= a.rows[col];
            inv.rows[i] ^= inv.rows[col];
        }
    }
    return inv;
}

bool F2Mat::is_identity() const {
    for (int i = 0; i < k; ++i)
        if (rows[i] != (1u << i)) return false;
    return true;
}

F2QuadSpace F2QuadSpace::from_fqf(const FiniteQuadraticForm& f) {
    require(f.even_type(), ErrCode::invalid_argument,
            "F2 quadratic space needs an even-type 2-elementary form");
    F2QuadSpace s;
    s.k = f.gens();
    require(s.k <= 12, ErrCode::budget, "F2 space dimension exceeds the 2^12 point budget");
    std::vector<Int> ci(s.k, 0), cj(s.k, 0);
    std::vector<uint8_t> qdiag(s.k);
    s.bmat.assign(s.k, 0);
    for (int i = 0; i < s.k; ++i) {
        ci[i] = 1;
        Rat qi = f.q(ci);
        qdiag[i] = uint8_t(to_i64(mod_pos(numerator(qi), 2)));
        for (int j = 0; j < s.k; ++j) {
            if (j == i) continue;
            cj[j] = 1;
            Rat bij = f.b(ci, cj);  // in {0, 1/2}
            if (bij != 0) s.bmat[i] |= 1u << j;
            cj[j] = 0;
        }
        ci[i] = 0;
    }
    // q over all vectors: q(v + e_i) = q(v) + q(e_i) + b(e_i, v).
    s.qtab.assign(size_t(1) << s.k, 0);
    for (uint32_t v = 1; v < (1u << s.k); ++v) {
        int i = __builtin_ctz(v);
        uint32_t w = v & (v - 1);
        s.qtab[v] = uint8_t((s.qtab[w] + qdiag[i] + __builtin_parity(s.bmat[i] & w)) & 1);
    }
    return s;
}

int F2QuadSpace::b(uint32_t x, uint32_t y) const {
    int acc = 0;
    uint32_t rest = x;
    while (rest) {
        int i = __builtin_ctz(rest);
        acc ^= __builtin_parity(bmat[i] & y);
        rest &= rest - 1;
    }
    return acc;
}

std::vector<uint32_t> F2QuadSpace::nonisotropic() const {
    std::vector<uint32_t> out;
    for (uint32_t v = 1; v < (1u << k); ++v)
        if (qtab[v]) out.push_back(v);
    return out;
}

F2Mat F2QuadSpace::transvection(uint32_t a) const {
    require(a != 0 && q(a) == 1, ErrCode::invalid_argument,
            "transvection needs a nonisotropic vector");
    F2Mat m(k);
    for (int i = 0; i < k; ++i) {
        uint32_t img = 1u << i;
        if (b(1u << i, a)) img ^= a;
        m.rows[i] = img;
    }
    return m;
}

bool F2QuadSpace::preserves_q(const F2Mat& g) const {
    if (g.k != k) return false;
    for (uint32_t v = 0; v < (1u << k); ++v)
        if (qtab[g.apply(v)] != qtab[v]) return false;
    return true;
}

namespace {

// Basis of {z in span(basis) : b(z, x) = 0 for all x in constraints}.
std::vector<uint32_t> constrained_subbasis(const F2QuadSpace& s, const std::vector<uint32_t>& basis,
                                           const std::vector<uint32_t>& constraints) {
    int dim = int(basis.size());
    int nc = int(constraints.size());
    // Rows: coefficient vectors over the sub-basis; columns: constraints.
    std::vector<uint32_t> rows(dim), rhs(dim);
    for (int i = 0; i < dim; ++i) {
        rows[i] = 1u << i;
        uint32_t mask = 0;
        for (int c = 0; c < nc; ++c)
            if (s.b(basis[i], constraints[c])) mask |= 1u << c;
        rhs[i] = mask;
    }
    // Eliminate: combine rows to zero out rhs.
    std::vector<uint32_t> out;
    for (int c = 0; c < nc; ++c) {
        int p = -1;
        for (int i = 0; i < dim; ++i)
            if (rows[i] && (rhs[i] >> c & 1)) { p = i; break; }
        if (p < 0) continue;
        for (int i = 0; i < dim; ++i) {
            if (i == p || rows[i] == 0 || !(rhs[i] >> c & 1)) continue;
            rows[i] ^= rows[p];
            rhs[i] ^= rhs[p];
        }
        rows[p] = 0;
    }
    for (int i = 0; i < dim; ++i) {
        if (rows[i] == 0) continue;
        uint32_t v = 0, coef = rows[i];
        while (coef) {
            int j = __builtin_ctz(coef);
            v ^= basis[j];
            coef &= coef - 1;
        }
        out.push_back(v);
    }
    return out;
}

struct WittBasis {
    std::vector<std::pair<uint32_t, uint32_t>> pairs;  // hyperbolic (x, y)
    std::vector<uint32_t> tail;                        // anisotropic remainder basis
};

WittBasis witt_decompose(const F2QuadSpace& s) {
    WittBasis w;
    std::vector<uint32_t> basis;
    for (int i = 0; i < s.k; ++i) basis.push_back(1u << i);
    while (!basis.empty()) {
        int dim = int(basis.size());
        // Search for a nonzero isotropic vector in the span.
        uint32_t x = 0;
        for (uint32_t mask = 1; mask < (1u << dim); ++mask) {
            uint32_t v = 0;
            uint32_t rest = mask;
            while (rest) {
                int j = __builtin_ctz(rest);
                v ^= basis[j];
                rest &= rest - 1;
            }
            if (v != 0 && s.q(v) == 0) { x = v; break; }
        }
        if (x == 0) {
            w.tail = basis;  // anisotropic
            break;
        }
        uint32_t y = 0;
        for (uint32_t bv : basis)
            if (s.b(x, bv)) { y = bv; break; }
        require(y != 0, ErrCode::internal, "witt: degenerate pairing");
        if (s.q(y)) y ^= x;  // q(y + x) = q(y) + b(x, y) = q(y) + 1
        w.pairs.emplace_back(x, y);
        basis = constrained_subbasis(s, basis, {x, y});
        require(int(basis.size()) == dim - 2, ErrCode::internal, "witt: complement dimension");
    }
    return w;
}

F2Mat basis_matrix(int k, const WittBasis& w) {
    F2Mat m(k);
    int r = 0;
    for (auto& [x, y] : w.pairs) {
        m.rows[r++] = x;
        m.rows[r++] = y;
    }
    for (uint32_t t : w.tail) m.rows[r++] = t;
    require(r == k, ErrCode::internal, "witt basis size mismatch");
    return m;
}

}  // namespace

F2Mat witt_isometry(const F2QuadSpace& a, const F2QuadSpace& b) {
    require(a.k == b.k, ErrCode::invalid_argument, "witt_isometry dimension mismatch");
    WittBasis wa = witt_decompose(a);
    WittBasis wb = witt_decompose(b);
    require(wa.pairs.size() == wb.pairs.size(), ErrCode::invalid_argument,
            "spaces are not isometric (different Witt index)");
    if (!wa.tail.empty()) {
        // Even-type anisotropic tails have dimension 2 and a unique shape;
        // align a b(x,y)=1 pair on both sides.
        require(wa.tail.size() == 2 && wb.tail.size() == 2, ErrCode::internal,
                "unexpected anisotropic tail");
    }
    F2Mat ba = basis_matrix(a.k, wa);
    F2Mat bb = basis_matrix(b.k, wb);
    F2Mat phi = ba.inverse() * bb;
    // Certify.
    for (uint32_t v = 0; v < (1u << a.k); ++v)
        require(b.q(phi.apply(v)) == a.q(v), ErrCode::internal, "witt isometry check failed");
    return phi;
}

F2StabChain::F2StabChain(int k) : k_(k), npoints_(1 << k) {
    require(k >= 0 && k <= 12, ErrCode::budget, "stabilizer chain point budget is 2^12");
}

std::vector<F2Mat> F2StabChain::strong_gens_from(int level) const {
    std::vector<F2Mat> out;
    for (size_t l = level; l < levels_.size(); ++l)
        for (const F2Mat& g : levels_[l].gens) out.push_back(g);
    return out;
}

void F2StabChain::rebuild_orbit(int level) {
    std::vector<F2Mat> gens = strong_gens_from(level);
    Level& lv = levels_[level];
    lv.where.assign(npoints_, -1);
    lv.orbit.clear();
    lv.trans.clear();
    lv.trans_inv.clear();
    lv.orbit.push_back(lv.base);
    lv.where[lv.base] = 0;
    lv.trans.push_back(F2Mat::identity(k_));
    lv.trans_inv.push_back(F2Mat::identity(k_));
    for (size_t i = 0; i < lv.orbit.size(); ++i) {
        for (const F2Mat& g : gens) {
            uint32_t img = g.apply(lv.orbit[i]);
            if (lv.where[img] >= 0) continue;
            lv.where[img] = int32_t(lv.orbit.size());
            lv.orbit.push_back(img);
            F2Mat t = lv.trans[i] * g;
            lv.trans_inv.push_back(t.inverse());
            lv.trans.push_back(std::move(t));
        }
    }
}

std::pair<int, F2Mat> F2StabChain::strip(F2Mat g, int from) const {
    for (size_t l = from; l < levels_.size(); ++l) {
        uint32_t img = g.apply(levels_[l].base);
        int32_t idx = levels_[l].where.empty() ? -1 : levels_[l].where[img];
        if (idx < 0) return {int(l), g};
        g = g * levels_[l].trans_inv[idx];
    }
    return {int(levels_.size()), g};
}

void F2StabChain::place(const F2Mat& g, int level) {
    if (level == int(levels_.size())) {
        Level lv;
        uint32_t base = 0;
        for (uint32_t v = 1; v < uint32_t(npoints_); ++v)
            if (g.apply(v) != v) { base = v; break; }
        require(base != 0, ErrCode::internal, "identity cannot start a level");
        lv.base = base;
        levels_.push_back(std::move(lv));
    }
    levels_[level].gens.push_back(g);
    rebuild_orbit(level);
}

void F2StabChain::complete_level(int level) {
    rebuild_orbit(level);
    // Index-based access throughout: place() may reallocate levels_.
    // This level's generators and orbit stay fixed; only deeper levels grow.
    std::vector<F2Mat> gens = strong_gens_from(level);
    for (size_t i = 0; i < levels_[level].orbit.size(); ++i) {
        for (const F2Mat& g : gens) {
            uint32_t img = g.apply(levels_[level].orbit[i]);
            int32_t idx = levels_[level].where[img];
            require(idx >= 0, ErrCode::internal, "orbit not closed");
            F2Mat schreier = levels_[level].trans[i] * g * levels_[level].trans_inv[idx];
            auto [j, residue] = strip(std::move(schreier), level + 1);
            if (residue.is_identity()) continue;
            place(residue, j);
            for (int t = j; t > level; --t) complete_level(t);
        }
    }
}

void F2StabChain::insert(const F2Mat& g) {
    require(g.k == k_, ErrCode::invalid_argument, "generator dimension mismatch");
    auto [j, residue] = strip(g, 0);
    if (residue.is_identity()) return;
    place(residue, j);
    closed_ = false;
}

void F2StabChain::insert_all(const std::vector<F2Mat>& gens) {
    for (const F2Mat& g : gens) insert(g);
}

Int F2StabChain::order() {
    if (!closed_) {
        for (int l = int(levels_.size()) - 1; l >= 0; --l) complete_level(l);
        closed_ = true;
    }
    Int o = 1;
    for (const Level& lv : levels_) o *= Int(lv.orbit.size());
    return o;
}

bool F2StabChain::contains(const F2Mat& g) {
    order();  // force completion
    auto [j, residue] = strip(g, 0);
    (void)j;
    return residue.is_identity();
}

Int group_order_on_disc(const F2QuadSpace& space, const std::vector<F2Mat>& gens) {
    for (const F2Mat& g : gens)
        require(space.preserves_q(g), ErrCode::invariant, "generator does not preserve q");
    F2StabChain chain(space.k);
    chain.insert_all(gens);
    return chain.order();
}

}  // namespace enrlat
