#pragma once

#include "fqf.hpp"
#include "ints.hpp"

#include <vector>

namespace enrlat {

// Invertible matrix over F_2 acting on row vectors (points are bitmasks,
// bit i = coordinate i, image = XOR of rows at set bits).
struct F2Mat {
    int k = 0;
    std::vector<uint32_t> rows;

    F2Mat() = default;
    explicit F2Mat(int dim) : k(dim), rows(dim, 0) {}
    static F2Mat identity(int dim);

    uint32_t apply(uint32_t v) const;
    F2Mat operator*(const F2Mat& o) const;  // apply *this first, then o
    F2Mat inverse() const;
    bool is_identity() const;
    bool operator==(const F2Mat& o) const { return k == o.k && rows == o.rows; }
};

// Nondegenerate quadratic space (F_2^k, q) with polarization b; built from
// an even-type 2-elementary discriminant form.
struct F2QuadSpace {
    int k = 0;
    std::vector<uint8_t> qtab;   // q value of every vector, size 2^k
    std::vector<uint32_t> bmat;  // b(e_i, .) as row bitmasks

    static F2QuadSpace from_fqf(const FiniteQuadraticForm& f);

    int q(uint32_t v) const { return qtab[v]; }
    int b(uint32_t x, uint32_t y) const;

    std::vector<uint32_t> nonisotropic() const;
    // Transvection x -> x + b(x, a) a for a nonisotropic a.
    F2Mat transvection(uint32_t a) const;
    bool preserves_q(const F2Mat& g) const;
};

// Constructive isometry between two even-type spaces of equal dimension
// (Witt decomposition into hyperbolic pairs plus anisotropic tail).
// Row convention: image of v is v * result. Fails if the types differ.
F2Mat witt_isometry(const F2QuadSpace& a, const F2QuadSpace& b);

// Deterministic Schreier-Sims stabilizer chain over the point action on
// F_2^k (at most 2^12 points). Certifies group order as the product of
// orbit sizes along the chain.
class F2StabChain {
public:
    explicit F2StabChain(int k);

    void insert(const F2Mat& g);
    void insert_all(const std::vector<F2Mat>& gens);
    // Completes the chain (deferred Schreier closure) on first use.
    Int order();
    bool contains(const F2Mat& g);
    int base_length() const { return int(levels_.size()); }

private:
    struct Level {
        uint32_t base = 0;
        std::vector<int32_t> where;       // point -> orbit index or -1
        std::vector<uint32_t> orbit;
        std::vector<F2Mat> trans;         // base * trans[i] = orbit[i]
        std::vector<F2Mat> trans_inv;
        std::vector<F2Mat> gens;
    };

    std::pair<int, F2Mat> strip(F2Mat g, int from) const;
    void place(const F2Mat& g, int level);
    void rebuild_orbit(int level);
    void complete_level(int level);
    std::vector<F2Mat> strong_gens_from(int level) const;

    int k_;
    int npoints_;
    std::vector<Level> levels_;
    bool closed_ = true;
};

// Order of the subgroup of O(q) generated by the given matrices; validates
// that every generator preserves q.
Int group_order_on_disc(const F2QuadSpace& space, const std::vector<F2Mat>& gens);

}  // namespace enrlat
