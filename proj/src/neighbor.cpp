#include "neighbor.hpp"

#include <algorithm>
#include <numeric>

namespace enrlat {

IMat kneser_neighbor(const IMat& gram, int64_t p, const std::vector<Int>& v) {
    int n = gram.rows();
    require(int(v.size()) == n, ErrCode::invalid_argument, "neighbor vector length mismatch");
    Int pp(p);
    std::vector<Int> w = mul_row(v, gram);
    bool v_nonzero_mod_p = false;
    for (const Int& c : v)
        if (mod_pos(c, pp) != 0) { v_nonzero_mod_p = true; break; }
    require(v_nonzero_mod_p, ErrCode::invalid_argument, "neighbor vector is divisible by p");
    int pivot = -1;
    for (int i = 0; i < n; ++i)
        if (mod_pos(w[i], pp) != 0) { pivot = i; break; }
    require(pivot >= 0, ErrCode::invalid_argument, "neighbor vector pairs to 0 mod p");
    Int norm = dot(w, v);
    require(mod_pos(norm, 2 * pp * pp) == 0, ErrCode::invalid_argument,
            "neighbor vector norm is not 0 mod 2p^2");

    // Rows of p*L' = p*K + Z v, K = {x : (x, v) = 0 mod p}.
    IMat stack(n + 1, n);
    Int winv = inv_mod(w[pivot], pp);
    for (int i = 0; i < n; ++i) {
        if (i == pivot) {
            stack.at(i, i) = pp * pp;  // p * (p e_pivot)
        } else {
            stack.at(i, i) = pp;
            stack.at(i, pivot) = -pp * mod_pos(w[i] * winv, pp);
        }
    }
    for (int j = 0; j < n; ++j) stack.at(n, j) = v[j];
    IMat h = hnf(stack);
    IMat c(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c.at(i, j) = h.at(i, j);
    IMat scaled = c * gram * c.transposed();
    IMat out(n, n);
    Int p2 = pp * pp;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            require(scaled.at(i, j) % p2 == 0, ErrCode::internal, "neighbor Gram not integral");
            out.at(i, j) = scaled.at(i, j) / p2;
        }
    for (int i = 0; i < n; ++i)
        require(out.at(i, i) % 2 == 0, ErrCode::invariant, "neighbor lattice is not even");
    require(det(out) == det(gram), ErrCode::invariant, "neighbor changed the determinant");
    return out;
}

namespace {

struct Lcg {
    uint64_t s;
    explicit Lcg(uint64_t seed) : s(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 11;
    }
};

}  // namespace

void scan_neighbors(const IMat& gram, int64_t p, uint64_t seed,
                    const std::function<void(const IMat&, const std::vector<Int>&)>& f) {
    int n = gram.rows();
    require(p == 2 || (p > 2 && p % 2 == 1), ErrCode::invalid_argument, "prime must be 2 or odd");
    std::vector<int64_t> g64(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g64[size_t(i) * n + j] = to_i64(gram.at(i, j));

    // Canonical line representatives: first nonzero coordinate = 1 (odd p),
    // all nonzero vectors for p = 2.
    std::vector<std::vector<int64_t>> lines;
    std::vector<int64_t> cur(n, 0);
    std::function<void(int, bool)> gen = [&](int i, bool leading) {
        if (i == n) {
            if (!leading) lines.push_back(cur);
            return;
        }
        int64_t lo = 0, hi = p - 1;
        for (int64_t x = lo; x <= hi; ++x) {
            if (leading && x != 0 && p != 2 && x != 1) continue;  // canonical leading 1
            cur[i] = x;
            gen(i + 1, leading && x == 0);
        }
        cur[i] = 0;
    };
    gen(0, true);

    std::vector<size_t> order(lines.size());
    std::iota(order.begin(), order.end(), size_t(0));
    if (seed != 0) {
        Lcg rng(seed);
        for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.next() % i]);
    }

    for (size_t oi : order) {
        const std::vector<int64_t>& line = lines[oi];
        // Quick mod-p tests in machine words.
        int64_t norm = 0;
        std::vector<int64_t> w(n, 0);
        for (int i = 0; i < n; ++i) {
            if (line[i] == 0) continue;
            for (int j = 0; j < n; ++j) w[j] += line[i] * g64[size_t(i) * n + j];
        }
        for (int i = 0; i < n; ++i) norm += w[i] * line[i];
        int pivot = -1;
        for (int i = 0; i < n; ++i)
            if (mod_pos_i64(w[i], p) != 0) { pivot = i; break; }
        if (pivot < 0) continue;  // line pairs to 0 mod p (radical direction)
        if (p == 2) {
            if (mod_pos_i64(norm, 4) != 0) continue;
        } else {
            if (mod_pos_i64(norm, p) != 0) continue;
        }
        // Lift to v with v^2 = 0 mod 2p^2.
        std::vector<Int> v(n);
        for (int i = 0; i < n; ++i) v[i] = line[i];
        Int pp(p);
        Int vn(norm);
        if (p == 2) {
            if (mod_pos(vn, Int(8)) != 0) {
                // v^2 = 4 mod 8; v += 2 e_j with (v, e_j) odd shifts it by 4.
                v[pivot] += 2;
            }
        } else {
            // v^2 = 2 p a; solve (v, s e_j) = -a mod p.
            Int a = Int(norm) / (2 * pp);
            Int s = mod_pos(-a * inv_mod(Int(w[pivot]), pp), pp);
            v[pivot] += pp * s;
        }
        IMat neighbor = kneser_neighbor(gram, p, v);
        f(neighbor, v);
    }
}

}  // namespace enrlat
