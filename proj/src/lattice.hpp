#pragma once

#include "mat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace enrlat {

// An integral lattice given by an exact symmetric Gram matrix. Immutable
// after construction; rank, determinant and signature are computed eagerly
// so instances are safe to share across threads.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(IMat gram, std::string name = "");

    int rank() const { return gram_.rows(); }
    const IMat& gram() const { return gram_; }
    const std::string& name() const { return name_; }
    const Int& det() const { return det_; }
    Signature sig() const { return sig_; }
    bool is_even() const { return even_; }
    bool is_definite() const { return sig_.pos == 0 || sig_.neg == 0; }
    bool is_negative_definite() const { return sig_.pos == 0 && rank() > 0; }

    Lattice renamed(std::string name) const;

private:
    IMat gram_;
    std::string name_;
    Int det_ = 1;
    Signature sig_;
    bool even_ = true;
};

// Lattice with exact rational Gram (duals live here).
struct RationalLattice {
    QMat gram;
    std::string name;
    int rank() const { return gram.rows(); }
    bool is_integral() const { return gram.is_integral(); }
    Lattice to_lattice(std::string name = "") const;
};

// Named constructors. Conventions: U = [[0,1],[1,0]]; root lattices carry
// the standard Cartan Grams (D_k realized inside Z^k, E7/E8 Bourbaki);
// <k> is the rank-1 lattice [k]; M = U(2)+E8(-2); N = U+U(2)+E8(-2);
// LK3 = 3U + 2E8(-1).
Lattice make_U(Int scale = 1);
Lattice make_A(int k, Int scale = 1);
Lattice make_D(int k, Int scale = 1);
Lattice make_E7(Int scale = 1);
Lattice make_E8(Int scale = 1);
Lattice make_rank1(Int k);
Lattice make_M();
Lattice make_N();
Lattice make_LK3();

// Parses "U", "U(2)", "E8(-1)", "A2(-1)+E7(-1)", "3U+2E8(-1)", "<-4>", "M",
// "N", "LK3". Throws ErrCode::parse on malformed input.
Lattice parse_lattice_name(const std::string& spec);

Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice rescale(const Lattice& l, const Int& n);
RationalLattice rescale(const RationalLattice& l, const Int& n);
RationalLattice dual(const Lattice& l);
RationalLattice dual(const RationalLattice& l);

Int vector_norm(const std::vector<Int>& v, const Lattice& l);
bool is_primitive(const std::vector<Int>& v);

// Positive generator of the pairing ideal {(v, x) : x in L}.
Int divisor(const std::vector<Int>& v, const Lattice& l);

// Orthogonal complement of a primitive non-isotropic vector, on an
// HNF-reduced kernel basis. Isometry-class statements about the result are
// certified elsewhere; the basis here is just one representative.
Lattice orth_complement(const std::vector<Int>& h, const Lattice& l);

// The fixed primitive embeddings M -> LK3, (x,u) |-> (x,0,x,u,u), and
// N -> LK3, (y,z,v) |-> (z,y,-z,v,-v), together with the involution
// rho(x,y,z,u,v) = (z,-y,x,v,u). M and N are the +1/-1 eigenlattices.
struct EnriquesEmbeddings {
    Lattice m, n, k3;
    IMat m_to_k3;  // 10 x 22, rows = images of the M basis
    IMat n_to_k3;  // 12 x 22
    IMat rho;      // 22 x 22 involution
};
EnriquesEmbeddings enriques_embeddings();

}  // namespace enrlat
