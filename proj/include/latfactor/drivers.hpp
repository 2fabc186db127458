#pragma once

#include <string>
#include <utility>
#include <vector>

#include "latfactor/arith.hpp"
#include "latfactor/counters.hpp"

namespace latfactor {

struct TraceEntry {
    std::string stage;
    std::vector<std::pair<std::string, std::string>> params;
    Counters counters;
};

struct FactorizationResult {
    Factorization factors;  // sorted, prime, recomposes to N
    std::vector<TraceEntry> trace;

    Counters totals() const;
    // First value recorded for `key` across the trace, or "".
    std::string param(const std::string& key) const;
};

struct BalancedPlan {
    Int x;  // floor(N^(1/5) (loglog N)^(2/5) / log^(2/5) N)
    Int m;
    Factorization m_fact;
    Int phi_m;
    Int k;
    bool feasible = false;  // 72 < m < N^((1-beta)/2)/2
};
BalancedPlan plan_balanced(const Int& N, const Rational& beta, const Rational& c);

// N = pq with c N^beta < p <= N^beta.
FactorizationResult factor_balanced(const Int& N, const Rational& beta = Rational(1, 2),
                                    const Rational& c = Rational(1, 2));

// Every prime factor of N is r (mod n).
FactorizationResult factor_with_modinfo(const Int& N, const Int& n, const Int& r);

// N = a^n +- b^n; n and the sign are recovered by scanning.
FactorizationResult factor_anbn(const Int& a, const Int& b, const Int& N);

struct RPowerPlan {
    bool enumerate = false;  // r > log N / (32 loglog N)
    Int m;                   // round(r^(-1/4) N^(1/4r) log^(1/2) N)
    Int k;                   // ceil(2 e m sqrt r)
    Int delta_full;         // ceil(N^(1/4r) log^8 N)
    Int delta;               // bound actually handed to order finding
};
RPowerPlan plan_rpower(const Int& N, unsigned r);

// N = p^r q with c1 N^(1/2) < q < c2 N^(1/2); factors {(p, r), (q, 1)}.
FactorizationResult factor_rpower(const Int& N, unsigned r, const Rational& c1, const Rational& c2);
// Same without the constants: c1 = 1/2, 1/4, ... until the search succeeds.
FactorizationResult factor_rpower(const Int& N, unsigned r);

// All primes p with p^r | N, ascending.
std::vector<Int> rpower_all(const Int& N, unsigned r, Counters* ctr = nullptr);

struct Reduction {
    Factorization removed;
    Int core;  // 1, prime, or pq with p, q > core^(1/3)
};
Reduction reduce_to_semiprime(const Int& N);

}  // namespace latfactor
