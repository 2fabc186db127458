#pragma once

#include <variant>

#include "latfactor/arith.hpp"
#include "latfactor/counters.hpp"

namespace latfactor {

struct Order {
    Int d;
};
struct ExceedsBound {
    Int T;
};
struct FactorFound {
    Int g;  // 1 < g < N, g | N
};
struct RPowerFree {};
struct ElementFound {
    ZnElem a;
};
struct Prime {};

using OrderOutcome = std::variant<Order, ExceedsBound, FactorFound, RPowerFree, ElementFound, Prime>;

// ord_N(a) if it is at most T, by baby-step giant-step over exponents.
OrderOutcome order_bounded(const Int& N, const ZnElem& a, const Int& T);

// Element of order > delta, a nontrivial factor, "r-power free" or "prime".
OrderOutcome order_find_or_factor(const Int& N, unsigned r, const Int& delta, Counters* ctr = nullptr);

// alpha with gcd(alpha^(m^2 i) - 1, N) = 1 for 1 <= i <= k, or a factor.
OrderOutcome find_alpha(const Int& N, const Int& k, const Int& m, const Factorization& m_fact,
                        Counters* ctr = nullptr);

}  // namespace latfactor
