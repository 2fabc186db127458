#pragma once

#include <cstdint>
#include <vector>

#include "latfactor/arith.hpp"

namespace latfactor {

using IntVector = std::vector<Int>;

struct IntLattice {
    std::vector<IntVector> rows;

    std::size_t width() const { return rows.empty() ? 0 : rows.front().size(); }
};

struct ReducedBasis {
    std::vector<IntVector> rows;
    // transform * original == rows
    std::vector<IntVector> transform;
};

ReducedBasis lll_reduce(const IntLattice& basis, const Rational& delta = Rational(3, 4));

IntLattice build_balanced_basis(const Int& N, const Int& m_inv, const Int& j, const Int& X);
IntLattice build_mod_basis(const Int& N, const Int& mj_s, const Int& X);

struct PowerRows {
    IntVector u, v;
};
PowerRows build_power_rows(const Int& M, const Int& X, unsigned r);

struct SecondVector {
    Int c, b, a, X;
};
SecondVector second_vector(const ReducedBasis& rb, const Int& X);

// All nonzero lattice vectors with squared norm <= bound^2.
std::vector<IntVector> enum_shortest_dim3(const IntLattice& basis, const Int& bound,
                                          std::uint64_t step_budget = 20'000'000);

Int norm2(const IntVector& v);
Int dot(const IntVector& a, const IntVector& b);

// Exact Gram-Schmidt data: mu[i][j] (j < i) and squared norms of b*_i.
struct GramSchmidt {
    std::vector<std::vector<Rational>> mu;
    std::vector<Rational> bstar2;
};
GramSchmidt gram_schmidt(const std::vector<IntVector>& rows);

}  // namespace latfactor
