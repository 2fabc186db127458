#pragma once

#include <cstddef>
#include <vector>

#include "latfactor/arith.hpp"

namespace latfactor {

// Coefficients are residues in [0, modulus); index = degree. Zero is empty.
struct ZnPoly {
    std::vector<Int> coeffs;
    Int modulus;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    bool operator==(const ZnPoly&) const = default;
};

ZnPoly make_poly(std::vector<Int> coeffs, const Int& N);

ZnPoly poly_mul(const ZnPoly& a, const ZnPoly& b);

// Reference multiplication, used by tests and for tiny operands.
ZnPoly poly_mul_schoolbook(const ZnPoly& a, const ZnPoly& b);

// prod (x - v_h) mod N.
ZnPoly product_tree(const std::vector<Int>& points, const Int& N);
ZnPoly product_tree(const std::vector<ZnElem>& points);

Int horner(const ZnPoly& f, const Int& x);

// [f(alpha^0), ..., f(alpha^(m-1))] through a single chirp product.
std::vector<Int> eval_geometric(const ZnPoly& f, const ZnElem& alpha, std::size_t m);

// Raw integer product of nonnegative coefficient vectors (no reduction).
std::vector<Int> kronecker_mul(const std::vector<Int>& a, const std::vector<Int>& b,
                               std::size_t coeff_bits);

}  // namespace latfactor
