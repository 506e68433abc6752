#pragma once

#include "mat.hpp"

namespace enrlat {

// Integral LLL reduction of a positive definite Gram matrix (all-integer
// de Weger arithmetic, Lovasz constant 99/100). Returns the reduced Gram
// G' = T * G * T^T and, if requested, the unimodular transform T.
IMat lll_gram(const IMat& gram, IMat* transform = nullptr);

// Reduction for a definite Gram of either sign: negates internally for
// negative definite input. The returned Gram keeps the input's sign.
IMat lll_reduce_definite(const IMat& gram, IMat* transform = nullptr);

}  // namespace enrlat
