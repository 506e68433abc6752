#pragma once

#include "lattice.hpp"
#include "mat.hpp"

#include <functional>
#include <vector>

namespace enrlat {

// Discriminant form D_L = L^v / L of an even nondegenerate lattice, in Smith
// normal form coordinates. q takes values in Q/2Z normalized to [0, 2),
// the bilinear form b in Q/Z normalized to [0, 1).
class FiniteQuadraticForm {
public:
    static FiniteQuadraticForm from_lattice(const Lattice& l);

    const std::vector<Int>& divisors() const { return divisors_; }
    int gens() const { return int(divisors_.size()); }
    const Int& order() const { return order_; }

    Rat q(const std::vector<Int>& c) const;
    Rat b(const std::vector<Int>& c1, const std::vector<Int>& c2) const;

    bool is_trivial() const { return divisors_.empty(); }
    bool is_two_elementary() const;
    bool is_cyclic() const { return divisors_.size() <= 1; }
    // 2-elementary with integer q values ("even type").
    bool even_type() const;

    // Enumerates all elements, zero included; order capped at 2^20.
    void for_each(const std::function<void(const std::vector<Int>&)>& f) const;

    // (#nonzero isotropic, #nonisotropic), by exhaustive evaluation.
    std::pair<Int, Int> count_isotropy() const;

    // Signature mod 8 from the exact Gauss sum (Milgram).
    int milgram_sigma_mod8() const;

    // Action induced on SNF coordinates by an isometry of the source
    // lattice (rows convention, g * G * g^T = G). Entries of row i are
    // reduced mod divisors[i].
    IMat induced(const IMat& g) const;
    bool is_identity_action(const IMat& action) const;

    // SNF coordinates of the class of a dual-coordinate row vector
    // (a_i are the integers (x, e_i) for x in L^v).
    std::vector<Int> element_from_dual_coords(const std::vector<Int>& a) const;

    // Dual-coordinate lift of the k-th SNF generator.
    std::vector<Int> generator_dual_coords(int k) const;

    // Rational Gram of the chosen generator lifts (pairings in L x Q).
    const QMat& gen_pairings() const { return gen_gram_; }

private:
    std::vector<Int> divisors_;
    Int order_ = 1;
    int n_ = 0;          // rank of the source lattice
    IMat uinv_;          // columns = SNF generator lifts in dual coordinates
    IMat u_;             // SNF row transform
    std::vector<int> keep_;
    QMat gen_gram_;
    IMat source_gram_;
};

// Isomorphism test for the supported shapes: trivial, cyclic (generator
// matching), and 2-elementary (rank, parity, signature mod 8). Anything
// else raises ErrCode::unsupported.
bool same_disc_form(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

// The glue isomorphism D_M -> D_N induced by the fixed embeddings into LK3:
// a 10x10 F2 matrix in SNF coordinates of both sides (row convention,
// image = c * matrix). Cached after first computation.
const IMat& natural_glue_iso_dm_dn();

}  // namespace enrlat
