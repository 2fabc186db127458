#pragma once

#include <utility>
#include <vector>

#include "latfactor/arith.hpp"
#include "latfactor/bsgs.hpp"
#include "latfactor/counters.hpp"

namespace latfactor {

// Baby-step counts, exact ceilings of the closed forms.
Int balanced_k(const Int& N, const Rational& c, const Int& m);  // 2 3^(5/4) N^(1/2) / (c m^(3/2))
Int mod_k(const Int& N, const Int& mn);                         // 4 3^(5/4) N^(1/2) / (mn)^(3/2)
Int power_k(const Int& m, unsigned r);                          // 2 e m sqrt(r)

struct BalancedParams {
    Int N;
    Rational beta;
    Rational c;  // c N^beta < p <= N^beta
    Int m;
    Int m_inv;
    Int X;  // floor(N^beta / m)
    Int k;  // ceil(2 3^(5/4) N^(1/2) / (c m^(3/2)))
    ZnElem alpha;
};

// Computes X, k and m^-1; throws BoundTooLarge unless 72 < m < N^((1-beta)/2)/2,
// 1/3 <= beta <= 1/2, 0 < c < 1, and SharedFactor when gcd(m, N) > 1.
BalancedParams make_balanced_params(const Int& N, const Rational& beta, const Rational& c, const Int& m,
                                    const ZnElem& alpha);

struct ModParams {
    Int N;
    Int r, n;  // p = r (mod n)
    Int m;
    Int s;             // (mn)^-1 mod N
    Int m_inv_mod_n;
    Int n_inv_mod_m;
    Int k;             // ceil(4 3^(5/4) N^(1/2) / (mn)^(3/2))
    std::vector<Int> X_seq;
    ZnElem alpha;
};

ModParams make_mod_params(const Int& N, const Int& r, const Int& n, const Int& m, const ZnElem& alpha);
// m_j = r (mod n), m_j = j (mod m)
Int crt_residue(const ModParams& P, const Int& j);

struct PowerParams {
    Int N;
    unsigned r = 1;
    Rational c1, c2;  // c1 N^(1/2) < q < c2 N^(1/2)
    Int m;            // also X
    Int k;            // ceil(2 e m sqrt(r))
    Int J;            // last giant index, floor(N^(1/2r) / (X c1^(1/r)))
    ZnElem alpha;
};

PowerParams make_power_params(const Int& N, unsigned r, const Rational& c1, const Rational& c2, const Int& m,
                              const ZnElem& alpha);

// One giant step: the reduced polynomial c + b x + a x^2 (or the r-power row) and
// x = alpha^E. `j` is the residue class (balanced), m_j (modular) or the msb index (power).
struct GiantStep {
    Int j;
    std::size_t sweep = 0;
    Int c, b, a;
    Int E;
    Int x;
};

std::vector<GiantStep> balanced_giant_steps(const BalancedParams& P, Counters* ctr = nullptr);
std::vector<GiantStep> mod_giant_steps(const ModParams& P, Counters* ctr = nullptr);

// Each returns (p, N/p) with p the smaller factor; SearchExhausted otherwise.
std::pair<Int, Int> main_search(const BalancedParams& P, Counters* ctr = nullptr);
std::pair<Int, Int> main_search_mod(const ModParams& P, Counters* ctr = nullptr);
// For N = p^r q returns (p, q).
std::pair<Int, Int> main_search_power(const PowerParams& P, Counters* ctr = nullptr);

// (p, q) from any nontrivial divisor g of N = p^r q.
std::pair<Int, Int> split_power_divisor(const Int& N, unsigned r, const Int& g);

}  // namespace latfactor
