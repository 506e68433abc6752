#pragma once

#include "mat.hpp"

#include <functional>
#include <map>
#include <vector>

namespace enrlat {

// Short-vector enumeration on a definite lattice by Fincke-Pohst over the
// exact integral Gram-Schmidt data (fraction-free LDL). The recursion is
// all-integer: remainders are kept scaled by per-level lcm denominators, so
// no tolerance enters anywhere. Runs on checked 128-bit arithmetic and
// falls back to arbitrary precision if a bound check trips.
class ShortVectorEngine {
public:
    explicit ShortVectorEngine(const IMat& gram);

    int rank() const { return n_; }
    bool positive() const { return positive_; }

    // Visits one vector of each pair {v, -v} with 0 < |Q(v)| <= bound.
    // Deterministic order. The callback receives coordinates and |Q(v)|.
    void scan_half(const Int& bound,
                   const std::function<void(const std::vector<Int>&, const Int&)>& f) const;

    // Number of vectors of the given norm (norm sign must match the
    // lattice's definiteness sign). half = one per +-pair.
    Int count_norm(const Int& norm, bool half) const;

    std::vector<std::vector<Int>> list_norm(const Int& norm, bool half) const;

    // Full vector counts at |norm| = 2, 4, ..., max_abs (even slots).
    std::vector<Int> theta_prefix(const Int& max_abs) const;

    // |Q| of a shortest nonzero vector.
    Int min_norm_abs() const;

private:
    Int check_norm_arg(const Int& norm) const;

    int n_ = 0;
    bool positive_ = true;
    IMat pos_gram_;                       // gram or -gram, positive definite
    std::vector<Int> delta_;              // delta_[k], k = 0..n, delta_[0] = 1
    std::vector<std::vector<Int>> lam_;   // lam_[j][k], k < j (1-based)
    std::vector<Int> den_;                // den_[k] = delta_[k-1]*delta_[k]
    std::vector<Int> lcm_;                // lcm_[k] = lcm(den_[j] : j >= k), lcm_[n+1] = 1
    std::vector<Int> cmul_;               // lcm_[k] / lcm_[k+1]
    std::vector<Int> emul_;               // lcm_[k] / den_[k]
};

// Negative-definite root counting: half the number of v with Q(v) = -2.
Int root_halfcount(const IMat& neg_def_gram);

}  // namespace enrlat
