#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "latfactor/arith.hpp"
#include "latfactor/counters.hpp"
#include "latfactor/lattice.hpp"

namespace latfactor {

// Integer polynomial, index = degree.
using IntPoly = std::vector<Int>;

Int poly_eval(const IntPoly& f, const Int& x);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_pow(const IntPoly& f, unsigned e);
IntPoly poly_shift(const IntPoly& f, const Int& tau);  // f(x + tau)
IntPoly poly_derivative(const IntPoly& f);
void poly_trim(IntPoly& f);

// Every integer root of g in [lo, hi].
std::vector<Int> integer_roots(const IntPoly& g, const Int& lo, const Int& hi);
// Every positive integer root of g.
std::vector<Int> positive_integer_roots(const IntPoly& g);
// Integer roots of A p^2 + B p + C through an exact discriminant test.
std::vector<Int> quadratic_integer_roots(const Int& A, const Int& B, const Int& C);

struct HintInstance {
    Int N;
    Rational beta;
    IntPoly f;  // monic
    Rational c = 1;

    unsigned delta_deg() const { return static_cast<unsigned>(f.size() - 1); }
};

struct HintParams {
    unsigned n = 0;  // lattice dimension
    unsigned m = 0;
    Int X;
};

// Picks (n, m, X) satisfying the Howgrave-Graham condition, trading dimension
// against the number of translates needed to cover half_range.
HintParams choose_hint_params(const Int& N, const Rational& beta, unsigned delta, const Int& half_range);

// Rows x^j N^(m-i) f^i (i < m, j < delta) then x^i f^m (i < n - delta m), at xX.
IntLattice build_hint_lattice(const IntPoly& f, const Int& N, unsigned m, unsigned n, const Int& X);

// Sees every lattice solve_window builds, with its (N, delta, m, n, X). Must be
// thread safe if searches run in parallel; pass {} to clear.
using HintLatticeObserver =
    std::function<void(const IntLattice&, const Int& N, unsigned delta, unsigned m, unsigned n, const Int& X)>;
void set_hint_lattice_observer(HintLatticeObserver obs);

// Roots x0 in [lo, hi] with gcd(f(x0), N) >= N^beta / 2.
std::vector<Int> small_roots_in(const IntPoly& f, const Int& N, const Rational& beta, const Int& lo, const Int& hi,
                                Counters* ctr = nullptr);
std::vector<Int> small_roots(const HintInstance& inst, Counters* ctr = nullptr);

struct SweepPlan {
    std::vector<Int> X_seq;  // X_seq[i] = floor(N^(1/r)) >> i
    Int m;
    Int s;
};
SweepPlan make_sweep_plan(const Int& N, unsigned r, const Int& s, const Int& m);

struct SweepOptions {
    // An interval with at most this many candidates is stepped directly.
    std::uint64_t exhaustive_below = 4096;
    // Direct stepping also wins when candidates <= translates * lll_weight.
    std::uint64_t lll_weight = 2000;
};

// All p > 1 with p = s (mod m) and p^r | N, ascending.
std::vector<Int> rpower_divisors_congruence(const Int& N, unsigned r, const Int& s, const Int& m,
                                            const SweepOptions& opt = {}, Counters* ctr = nullptr);

// Primes p = s (mod m) dividing N.
std::vector<Int> factor_with_congruence(const Int& N, const Int& s, const Int& m, const SweepOptions& opt = {},
                                        Counters* ctr = nullptr);

// beta = u/v with N^beta <= b, as large as the denominator allows.
Rational beta_lower(const Int& N, const Int& b, unsigned long v = 256);

}  // namespace latfactor
