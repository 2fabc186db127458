#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "latfactor/errors.hpp"

namespace latfactor {

using Rational = mpq_class;

struct ZnElem {
    Int residue;
    Int modulus;

    bool operator==(const ZnElem&) const = default;
};

// Reduces v into [0, N).
ZnElem zn(const Int& v, const Int& N);

ZnElem mod_pow(const ZnElem& base, const Int& exp);
// Negative exponents go through the inverse; throws NotInvertible.
ZnElem mod_pow_signed(const ZnElem& base, const Int& exp);

struct ExtGcd {
    Int g, u, v;
};
ExtGcd ext_gcd(const Int& x, const Int& y);

ZnElem mod_inv(const Int& x, const Int& N);

// floor((x/y)^(u/v)) and the matching ceiling.
Int int_root_floor(const Int& x, const Int& y, unsigned long u, unsigned long v);
Int int_root_ceil(const Int& x, const Int& y, unsigned long u, unsigned long v);

// Deterministic for n < 2^64.
bool det_prime_test(const Int& n);

struct PrimePower {
    Int prime;
    unsigned mult = 0;

    bool operator==(const PrimePower&) const = default;
};
using Factorization = std::vector<PrimePower>;

struct SweepResult {
    Factorization factors;
    Int cofactor;
};
SweepResult small_factor_sweep(const Int& N, const Int& B);

std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

// Full factorization by trial division; n < 2^48.
Factorization factor_small(const Int& n);

// Binary log surrogate used in every parameter formula.
std::size_t bitlen(const Int& n);

// Product of p^e, sorted by prime, merged.
Factorization normalize(Factorization f);
Int recompose(const Factorization& f);

// Exact power test: returns (b, e) with n = b^e and e maximal.
std::pair<Int, unsigned long> perfect_power(const Int& n);

}  // namespace latfactor
