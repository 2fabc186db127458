#pragma once

#include <vector>

#include "latfactor/arith.hpp"

namespace latfactor {

struct PrimeProduct {
    Int m;
    std::vector<Int> S;  // ascending
    Int phi_m;
    Rational ratio;  // phi(m) / m
    Int primorial;   // m * removed
    Int removed;
};

// Squarefree m with x/2 < m < 2x: the first primorial above x with one prime removed.
PrimeProduct prime_product(const Int& x);

// Smallest m >= m0 coprime to n.
Int coprime_shift(const Int& m0, const Int& n);

}  // namespace latfactor
