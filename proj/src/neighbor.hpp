#pragma once

#include "mat.hpp"

#include <functional>
#include <vector>

namespace enrlat {

// One Kneser p-neighbor of an even lattice: L' = {x : (x,v) = 0 mod p} + Z v/p
// for a vector v with v != 0 mod p, (v, L) != 0 mod p and v^2 = 0 mod 2p^2.
// Evenness and determinant preservation are asserted on every call.
IMat kneser_neighbor(const IMat& gram, int64_t p, const std::vector<Int>& v);

// Enumerates every valid neighbor line of L/pL (canonical representatives,
// norm condition checked and lifted) and hands the *unreduced* neighbor Gram
// plus the adjusted vector to the callback. seed != 0 shuffles the scan
// order only; the set of visited lines is always the same.
void scan_neighbors(const IMat& gram, int64_t p, uint64_t seed,
                    const std::function<void(const IMat&, const std::vector<Int>&)>& f);

}  // namespace enrlat
