#pragma once

#include "mat.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace enrlat {

// A definite lattice prepared for backtracking searches: LLL-reduced Gram,
// the full list of vectors at the basis norms, and per-vector invariant
// fingerprints. Build once per lattice and reuse across searches.
class PreparedLattice {
public:
    explicit PreparedLattice(const IMat& gram);

    int n() const { return n_; }
    bool negative() const { return negative_; }
    const IMat& original() const { return original_; }
    const IMat& reduced() const { return reduced_; }          // sign as input
    const IMat& reduced_pos() const { return pos_; }          // positized
    const IMat& transform() const { return t_; }              // pos_ = t * (+-G) * t^T
    const Int& min_norm() const { return min_norm_; }

    // Ensures the vector list covers the given norms (positive values).
    void ensure_norms(const std::vector<int64_t>& norms) const;

    struct System {
        std::vector<int64_t> norm_bounds;          // covered norms, sorted
        std::vector<std::vector<int64_t>> vecs;    // all +-v at covered norms
        std::vector<std::vector<int64_t>> gv;      // pos Gram * v
        std::vector<int64_t> norms;
        std::vector<uint64_t> fps;                 // invariant fingerprints
        std::map<int64_t, int64_t> norm_count;
        std::map<std::vector<int64_t>, int> index;
    };
    const System& system() const { return *sys_; }

private:
    void build(const std::vector<int64_t>& norms) const;

    int n_ = 0;
    bool negative_ = false;
    IMat original_, reduced_, pos_, t_;
    Int min_norm_;
    mutable std::shared_ptr<System> sys_;
};

struct AutGroup {
    Int order = 1;
    std::vector<IMat> gens;  // isometries g with g * G * g^T = G of the original Gram
};

// Isometry witness w with w * gram_src * w^T = gram_tgt, if any. Both inputs
// must be definite of the same sign; fast invariant filters (rank, det,
// per-norm vector counts) run before the backtracking search.
std::optional<IMat> find_isometry(const PreparedLattice& src, const PreparedLattice& tgt);
std::optional<IMat> find_isometry(const IMat& gram_src, const IMat& gram_tgt);

// Same contract, but skips building a vector system on the source side
// (candidates are pruned by norms and partial products only). Intended for
// the genus traversal where most tests succeed against a cached target.
std::optional<IMat> find_isometry_light(const IMat& gram_src, const PreparedLattice& tgt);

// Full automorphism group order, certified by orbit-stabilizer products
// along the chain of basis stabilizers, with the found generators.
AutGroup aut_group(const PreparedLattice& l);
AutGroup aut_group(const IMat& gram);
Int aut_order(const IMat& gram);

bool is_isometry_witness(const IMat& w, const IMat& gram_src, const IMat& gram_tgt);

}  // namespace enrlat
