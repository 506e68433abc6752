#pragma once

#include "lattice.hpp"

namespace enrlat {

// Primitive embedding of a negative definite even lattice L of rank 9 with
// cyclic discriminant group of order 2d as the orthogonal complement of a
// vector h of norm 2d in an even unimodular lattice of signature (1, 9):
// glue <2d> + L along a generator with q = -1/(2d) in D_L.
struct HyperbolicExtension {
    Lattice over;            // even, unimodular, signature (1, 9)
    std::vector<Int> h;      // primitive, h^2 = 2d
    IMat sub_basis;          // 9 x 10 rows: the L basis inside `over`, orthogonal to h
};

HyperbolicExtension hyperbolic_extension(const Lattice& l, const Int& d);

}  // namespace enrlat
