#include "doctest.h"

#include <algorithm>

#include "latfactor/coppersmith.hpp"
#include "support.hpp"

using namespace latfactor;
using testsupport::pow_int;
using testsupport::Rng;

namespace {

IntPoly linear_times(const IntPoly& f, const Int& a, const Int& b) {  // f * (a x + b)
    return poly_mul(f, IntPoly{b, a});
}

// Divisor enumeration oracle from a trial-division factorization.
std::vector<Int> brute_rpower(const Int& N, unsigned r, const Int& s, const Int& m) {
    std::vector<Int> divs{Int(1)};
    for (auto& pp : testsupport::trial_factor(N)) {
        std::size_t n0 = divs.size();
        Int pk = 1;
        for (unsigned e = 1; e <= pp.mult; ++e) {
            pk *= pp.prime;
            for (std::size_t i = 0; i < n0; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::vector<Int> out;
    for (auto& d : divs)
        if (d > 1 && d % m == s % m && N % pow_int(d, r) == 0) out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

Int poly_content_mod(const IntPoly& row, const Int& X, const Int& x0) {
    // row is a polynomial evaluated at xX; recover its value at x0
    Int acc = 0, Xp = 1, xp = 1;
    for (auto& c : row) {
        acc += c / Xp * xp;
        Xp *= X;
        xp *= x0;
    }
    return acc;
}

}  // namespace

TEST_CASE("integer_roots examples") {
    CHECK(positive_integer_roots(IntPoly{-9, 0, 1}) == std::vector<Int>{3});
    CHECK(quadratic_integer_roots(1, 0, -9) == std::vector<Int>{-3, 3});
    CHECK(quadratic_integer_roots(1, 0, -8).empty());
    CHECK(quadratic_integer_roots(2, -1, -1) == std::vector<Int>{1});  // 2p^2 - p - 1 = (2p+1)(p-1)
    // x (x + 13 - 13)... the degree-4 equation x(x-13)^3 = 0 has positive root 13
    IntPoly g{0, 1};
    for (int i = 0; i < 3; ++i) g = linear_times(g, 1, -13);
    CHECK(positive_integer_roots(g) == std::vector<Int>{13});
    CHECK(integer_roots(g, -5, 20) == std::vector<Int>{0, 13});
    CHECK(integer_roots(IntPoly{1, 0, 1}, -100, 100).empty());
}

TEST_CASE("integer_roots matches planted factors") {
    Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        IntPoly g{Int(static_cast<long>(rng.range(1, 5)))};
        std::vector<Int> want;
        unsigned deg = rng.range(1, 6);
        for (unsigned d = 0; d < deg; ++d) {
            Int root = Int(static_cast<long>(rng.range(0, 2000))) - 1000;
            if (rng.below(3) == 0) {
                // rational non-integer root 2x - (2k+1)
                g = linear_times(g, 2, -(2 * root + 1));
            } else {
                g = linear_times(g, 1, -root);
                want.push_back(root);
            }
        }
        if (rng.below(4) == 0) g = poly_mul(g, IntPoly{1, 0, 1});  // no real roots
        std::sort(want.begin(), want.end());
        want.erase(std::unique(want.begin(), want.end()), want.end());
        CHECK(integer_roots(g, -1000, 1000) == want);
        std::vector<Int> pos;
        for (auto& w : want)
            if (w > 0) pos.push_back(w);
        CHECK(positive_integer_roots(g) == pos);
    }
}

TEST_CASE("quadratic_integer_roots agrees with brute force") {
    Rng rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        Int A = Int(static_cast<long>(rng.range(0, 20))) - 10, B = Int(static_cast<long>(rng.range(0, 400))) - 200,
            C = Int(static_cast<long>(rng.range(0, 4000))) - 2000;
        if (A == 0 && B == 0) continue;
        std::vector<Int> want;
        for (long x = -2500; x <= 2500; ++x)
            if (A * x * x + B * x + C == 0) want.push_back(x);
        CHECK(quadratic_integer_roots(A, B, C) == want);
    }
}

TEST_CASE("poly helpers") {
    IntPoly f{2, 3, 1};  // (x+1)(x+2)
    CHECK(poly_shift(f, 1) == IntPoly{6, 5, 1});
    CHECK(poly_eval(poly_shift(f, -7), 10) == poly_eval(f, 3));
    CHECK(poly_pow(IntPoly{1, 1}, 3) == IntPoly{1, 3, 3, 1});
    CHECK(poly_derivative(f) == IntPoly{3, 2});
}

TEST_CASE("beta_lower brackets log_N b") {
    Rng rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        Int N = rng.big_range(Int(1) << 20, Int(1) << 80);
        Int b = rng.big_range(2, N - 1);
        Rational beta = beta_lower(N, b);
        Rational scaled = beta * 256;
        unsigned long u = scaled.get_num().get_ui();
        CHECK(pow_int(N, u) <= pow_int(b, 256));
        CHECK(pow_int(N, u + 1) > pow_int(b, 256));
    }
}

TEST_CASE("hint lattice is triangular with the expected determinant") {
    Rng rng(44);
    for (int trial = 0; trial < 40; ++trial) {
        Int N = rng.big_range(Int(1) << 30, Int(1) << 62);
        unsigned delta = rng.range(1, 3), m = rng.range(1, 3);
        unsigned n = delta * m + rng.range(0, 4);
        if (n < 2) n = 2;
        Int X = rng.big_range(1, Int(1) << 12);
        IntPoly f(delta + 1);
        for (auto& c : f) c = rng.big_below(N);
        f.back() = 1;
        auto L = build_hint_lattice(f, N, m, n, X);
        REQUIRE(L.rows.size() == n);
        Int diag = 1;
        for (unsigned i = 0; i < n; ++i) {
            for (unsigned k = i + 1; k < n; ++k) CHECK(L.rows[i][k] == 0);
            diag *= L.rows[i][i];
        }
        unsigned long eN = delta * m * (m + 1) / 2, eX = n * (n - 1) / 2;
        CHECK(diag == pow_int(N, eN) * pow_int(X, eX));
    }
}

TEST_CASE("hint lattice rows vanish mod b^m at a planted root") {
    Rng rng(45);
    for (int trial = 0; trial < 30; ++trial) {
        Int p = rng.prime_in(Int(1) << 20, Int(1) << 21), q = rng.prime_in(Int(1) << 20, Int(1) << 21);
        Int N = p * q, x0 = rng.big_range(0, 1000);
        // f(x) = x + t with f(x0) = 0 mod p
        Int t = (rng.big_below(q) * p - x0) % N;
        if (t < 0) t += N;
        IntPoly f{t, 1};
        unsigned m = rng.range(1, 3), n = m + rng.range(1, 3);
        auto L = build_hint_lattice(f, N, m, n, 7);
        for (auto& row : L.rows) CHECK(poly_content_mod(row, 7, x0) % pow_int(p, m) == 0);
    }
}

TEST_CASE("small_roots examples") {
    Int N = 100160063;
    Int t = mod_inv(317, N).residue;
    HintInstance inst{N, Rational(1, 2), IntPoly{Int(180 * t % N), 1}};
    auto roots = small_roots(inst);
    CHECK(std::find(roots.begin(), roots.end(), Int(31)) != roots.end());

    HintInstance zero{Int("1000036000099"), Rational(1), IntPoly{0, 1}};
    roots = small_roots(zero);
    CHECK(std::find(roots.begin(), roots.end(), Int(0)) != roots.end());
}

TEST_CASE("small_roots recovers planted roots") {
    Rng rng(46);
    for (int trial = 0; trial < 20; ++trial) {
        Int p = rng.prime_in(Int(1) << 27, Int(1) << 28), q = rng.prime_in(Int(1) << 27, Int(1) << 28);
        if (p < q) std::swap(p, q);
        Int N = p * q;
        Int m = int_root_ceil(N, 1, 1, 4) + rng.big_below(1000);
        if (gcd(m, N) != 1) continue;
        Int s = p % m, x0 = p / m;
        Int t = mod_inv(m, N).residue;
        HintInstance inst{N, Rational(1, 2), IntPoly{Int(s * t % N), 1}, Rational(2)};  // p/m may exceed N^(1/4)
        Counters ctr;
        auto roots = small_roots(inst, &ctr);
        CHECK(std::find(roots.begin(), roots.end(), x0) != roots.end());
        CHECK(ctr.lll_calls > 0);
    }
}

TEST_CASE("rpower_divisors_congruence examples") {
    CHECK(rpower_divisors_congruence(4839991, 3, 13, 20) == std::vector<Int>{13});
    CHECK(rpower_divisors_congruence(2047, 2, 1, 2).empty());
    CHECK(rpower_divisors_congruence(81, 4, 3, 5) == std::vector<Int>{3});
    CHECK_THROWS_AS(rpower_divisors_congruence(35, 1, 1, 10), SharedFactor);
    // forced lattice path
    SweepOptions lat{0, 0};
    CHECK(rpower_divisors_congruence(4839991, 3, 13, 20, lat) == std::vector<Int>{13});
}

TEST_CASE("factor_with_congruence examples") {
    CHECK(factor_with_congruence(100160063, 10007 % 317, 317) == std::vector<Int>{10007});
    CHECK(factor_with_congruence(35, 5, 6) == std::vector<Int>{5});
    CHECK(factor_with_congruence(2047, 1, 11) == std::vector<Int>{23, 89});
    SweepOptions lat{0, 0};
    Counters ctr;
    CHECK(factor_with_congruence(100160063, 10007 % 317, 317, lat, &ctr) == std::vector<Int>{10007});
    CHECK(ctr.lll_calls > 0);
}

TEST_CASE("make_sweep_plan halves down to a constant") {
    auto plan = make_sweep_plan(Int("1000036000099"), 1, 0, 1);
    CHECK(plan.X_seq.front() == Int("1000036000099"));
    CHECK(plan.X_seq.size() == 41);
    for (std::size_t i = 1; i < plan.X_seq.size(); ++i) CHECK(plan.X_seq[i] == plan.X_seq[i - 1] / 2);
    CHECK(plan.X_seq.back() <= 1);
}

TEST_CASE("rpower sweep matches brute force") {
    Rng rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        unsigned r = rng.range(1, 4);
        // r = 1 costs about N^(1/4)/m reductions, keep m near N^(1/4) there
        Int m = r == 1 ? rng.range(1000, 5000) : rng.range(1, 400);
        unsigned pbits = std::min(48u / r, 16u);
        Int p = rng.prime_in(2, Int(1) << pbits);
        Int pr = pow_int(p, r);
        Int N = pr * rng.big_range(1, (Int(1) << 48) / pr);
        if (gcd(m, N) != 1) continue;
        Int s = trial % 2 ? Int(p % m) : rng.big_below(m);
        auto want = brute_rpower(N, r, s, m);
        CHECK(rpower_divisors_congruence(N, r, s, m) == want);
        // lattice on every interval is only affordable when few candidates sit below N^(1/r)
        if (int_root_floor(N, 1, 1, r) / m < 20000)
            CHECK(rpower_divisors_congruence(N, r, s, m, SweepOptions{0, 0}) == want);
    }
}
