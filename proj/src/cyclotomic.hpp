#pragma once

#include "ints.hpp"

#include <vector>

namespace enrlat {

// Exact arithmetic in Z[zeta_L]: elements are integer coefficient vectors
// modulo x^L - 1, equality is decided by polynomial reduction modulo the
// L-th cyclotomic polynomial. Sizes here are tiny (L <= a few hundred),
// so dense vectors are fine.
class CycInt {
public:
    explicit CycInt(int level) : level_(level), coef_(level) {}

    static CycInt zero(int level) { return CycInt(level); }
    // zeta_L^e
    static CycInt root(int level, const Int& e);

    int level() const { return level_; }

    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator*(const CycInt& o) const;
    CycInt scaled(const Int& s) const;

    void add_root(const Int& e);  // += zeta^e

    bool is_zero() const;

private:
    int level_;
    std::vector<Int> coef_;
};

// Coefficients of the L-th cyclotomic polynomial, constant term first.
const std::vector<Int>& cyclotomic_poly(int level);

// sqrt(n) for n >= 1 as an element of Z[zeta_L]; requires 8 | L and
// p | L for every odd prime p with odd multiplicity in n.
CycInt sqrt_as_cyc(int level, const Int& n);

}  // namespace enrlat
