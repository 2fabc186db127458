#include "doctest.h"

#include <algorithm>

#include "latfactor/drivers.hpp"
#include "latfactor/primesel.hpp"
#include "latfactor/search.hpp"
#include "support.hpp"

using namespace latfactor;
using testsupport::pow_int;
using testsupport::Rng;

namespace {

void check_valid(const FactorizationResult& res, const Int& N) {
    CHECK(recompose(res.factors) == N);
    for (auto& pp : res.factors) CHECK(det_prime_test(pp.prime));
    CHECK(std::is_sorted(res.factors.begin(), res.factors.end(),
                         [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; }));
}

Factorization fac(std::initializer_list<std::pair<long, unsigned>> l) {
    Factorization f;
    for (auto& [p, e] : l) f.push_back({Int(p), e});
    return f;
}

bool has_stage(const FactorizationResult& res, const std::string& s) {
    return std::any_of(res.trace.begin(), res.trace.end(), [&](const TraceEntry& t) { return t.stage == s; });
}

Int next_prime(const Int& n) {
    Int p;
    mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
    return p;
}

}  // namespace

TEST_CASE("factor_balanced reference instance") {
    Int N("1000036000099");
    auto res = factor_balanced(N);
    check_valid(res, N);
    CHECK(res.factors == fac({{1000003, 1}, {1000033, 1}}));
    CHECK(res.param("m") != "");
    CHECK(res.param("k") != "");
}

TEST_CASE("factor_balanced returns on gcd(N, m)") {
    // 7 q with 7 | m: the gcd step splits before any search
    for (Int q = next_prime(Int(1) << 45);; q = next_prime(q * 2)) {
        Int N = 7 * q;
        auto plan = plan_balanced(N, Rational(1, 2), Rational(1, 2));
        if (!plan.feasible || plan.m % 7 != 0) continue;
        auto res = factor_balanced(N);
        check_valid(res, N);
        CHECK(res.factors == Factorization{{7, 1}, {q, 1}});
        CHECK(has_stage(res, "gcd_m"));
        CHECK(!has_stage(res, "main_search"));
        break;
    }
}

TEST_CASE("plan_balanced closed forms") {
    Rng rng(61);
    for (int t = 0; t < 40; ++t) {
        Int N = rng.big_range(Int(1) << 40, Int(1) << 64);
        auto plan = plan_balanced(N, Rational(1, 2), Rational(1, 2));
        Int l = bitlen(N), ll = bitlen(l);
        // x^5 <= N ll^2 / l^2 < (x+1)^5
        CHECK(pow_int(plan.x, 5) * l * l <= N * ll * ll);
        CHECK(pow_int(plan.x + 1, 5) * l * l > N * ll * ll);
        CHECK(plan.m > 72);
        CHECK(plan.m == recompose(plan.m_fact));
        // k^4 >= 16 * 243 N^2 / (c^4 m^6) with c = 1/2, minimal
        Int rhs = 16 * 243 * 16 * N * N;
        CHECK(pow_int(plan.k, 4) * pow_int(plan.m, 6) >= rhs);
        CHECK(pow_int(plan.k - 1, 4) * pow_int(plan.m, 6) < rhs);
    }
}

TEST_CASE("factor_balanced random 28-bit semiprimes") {
    Rng rng(62);
    for (int t = 0; t < 12; ++t) {
        Int p = rng.prime_in(Int(1) << 27, (Int(1) << 28) - 1), q = rng.prime_in(Int(1) << 27, (Int(1) << 28) - 1);
        Int N = p * q;
        auto res = factor_balanced(N);
        check_valid(res, N);
        Factorization want = p == q ? Factorization{{p, 2}} : normalize({{p, 1}, {q, 1}});
        CHECK(res.factors == want);
    }
}

TEST_CASE("factor_balanced small N falls back and rejects primes") {
    auto res = factor_balanced(Int(10007) * 10009);
    CHECK(res.factors == fac({{10007, 1}, {10009, 1}}));
    CHECK(has_stage(res, "fallback_trial_division"));
    CHECK_THROWS_AS(factor_balanced(Int(1000003)), NotSemiprime);
    CHECK_THROWS_AS(factor_balanced(Int(30)), NotSemiprime);
    CHECK(factor_balanced(Int(1000003) * 1000003).factors == fac({{1000003, 2}}));
}

TEST_CASE("reduce_to_semiprime examples") {
    auto r = reduce_to_semiprime(30);
    CHECK(r.removed == fac({{2, 1}, {3, 1}, {5, 1}}));
    CHECK(r.core == 1);
    r = reduce_to_semiprime(Int(2) * 10007 * 10009);
    CHECK(r.removed == fac({{2, 1}}));
    CHECK(r.core == 100160063);
    r = reduce_to_semiprime(1000003);
    CHECK(r.removed.empty());
    CHECK(r.core == 1000003);
}

TEST_CASE("reduce_to_semiprime postcondition") {
    Rng rng(63);
    for (int t = 0; t < 300; ++t) {
        Int N = rng.big_range(2, Int(1) << 40);
        auto r = reduce_to_semiprime(N);
        CHECK(recompose(r.removed) * r.core == N);
        if (r.core == 1 || det_prime_test(r.core)) continue;
        auto f = testsupport::trial_factor(r.core);
        unsigned total = 0;
        for (auto& pp : f) total += pp.mult;
        CHECK(total == 2);
        CHECK(pow_int(f.front().prime, 3) > r.core);
    }
}

TEST_CASE("factor_with_modinfo examples") {
    auto res = factor_with_modinfo(2047, 11, 1);
    check_valid(res, 2047);
    CHECK(res.factors == fac({{23, 1}, {89, 1}}));

    // gcd(n, N) > 1: N is a power of p0
    res = factor_with_modinfo(pow_int(13, 5), 26, 13);
    CHECK(res.factors == fac({{13, 5}}));
    CHECK(has_stage(res, "prime_power"));
    CHECK_THROWS_AS(factor_with_modinfo(13 * 27, 26, 13), PromiseViolated);

    // n >= N^(1/4)
    Int p = 10007, q = 10007 + 2 * 317 * 10;
    while (!det_prime_test(q)) q += 317;
    res = factor_with_modinfo(p * q, 317, p % 317);
    CHECK(res.factors == normalize({{p, 1}, {q, 1}}));
    CHECK(has_stage(res, "congruence_sweep"));

    CHECK_THROWS_AS(factor_with_modinfo(35, 4, 1), PromiseViolated);
}

TEST_CASE("factor_with_modinfo runs the modular search") {
    Rng rng(64);
    int searched = 0;
    for (int t = 0; t < 8; ++t) {
        Int n = rng.range(11, 40);
        Int r = rng.range(1, n.get_ui() - 1);
        if (gcd(r, n) != 1) r = 1;
        auto draw = [&] {
            for (;;) {
                Int c = rng.big_range(Int(1) << 24, Int(1) << 26);
                c += (r - c % n + n) % n;
                if (det_prime_test(c)) return c;
            }
        };
        Int p = draw(), q = draw();
        Int N = p * q;
        auto res = factor_with_modinfo(N, n, r);
        check_valid(res, N);
        CHECK(res.factors == normalize({{p, 1}, {q, 1}}));
        searched += has_stage(res, "main_search_mod");
    }
    CHECK(searched > 0);
}

TEST_CASE("factor_with_modinfo with three or more factors") {
    // every prime 1 mod 10
    Int N = Int(11) * 31 * 41 * 61 * 71 * 101;
    auto res = factor_with_modinfo(N, 10, 1);
    check_valid(res, N);
    CHECK(res.factors.size() == 6);
}

TEST_CASE("factor_anbn examples") {
    CHECK(factor_anbn(2, 1, 2047).factors == fac({{23, 1}, {89, 1}}));
    CHECK(factor_anbn(2, 1, 63).factors == fac({{3, 2}, {7, 1}}));
    CHECK(factor_anbn(3, 2, 275).factors == fac({{5, 2}, {11, 1}}));
    CHECK_THROWS_AS(factor_anbn(2, 1, 10), NotOfForm);
    CHECK(factor_anbn(2, 1, 1).factors.empty());
    CHECK_THROWS(factor_anbn(4, 2, 12));
}

TEST_CASE("factor_anbn grid slice matches trial division") {
    // the full grid runs in the acceptance binary
    for (long a = 2; a <= 5; ++a)
        for (long b = 1; b < a; ++b) {
            if (gcd(Int(a), Int(b)) != 1) continue;
            for (unsigned n = 1; n <= 30; ++n)
                for (int sign : {-1, 1}) {
                    Int N = pow_int(a, n) + sign * pow_int(b, n);
                    if (N > (Int(1) << 32) || N < 1) continue;
                    auto res = factor_anbn(a, b, N);
                    CHECK(res.factors == (N == 1 ? Factorization{} : testsupport::trial_factor(N)));
                }
        }
}

TEST_CASE("factor_rpower examples") {
    auto res = factor_rpower(4839991, 3, Rational(1, 2), Rational(2));
    CHECK(res.factors == fac({{13, 3}, {2203, 1}}));
    CHECK(res.param("promise_ok") == "true");
    CHECK(factor_rpower(4839991, 3).factors == fac({{13, 3}, {2203, 1}}));

    Int q = next_prime(Int(1) << 20);
    Int N = pow_int(2, 10) * q;
    auto plan = plan_rpower(N, 10);
    CHECK(plan.enumerate);
    res = factor_rpower(N, 10, Rational(1, 100), Rational(100));
    CHECK(res.factors == Factorization{{2, 10}, {q, 1}});
    CHECK(has_stage(res, "enumerate"));

    CHECK_THROWS_AS(factor_rpower(Int(1000003) * 1000033, 2, Rational(1, 2), Rational(2)), PromiseViolated);
}

TEST_CASE("plan_rpower closed forms") {
    Rng rng(65);
    for (int t = 0; t < 60; ++t) {
        unsigned r = rng.range(1, 5);
        Int N = rng.big_range(Int(1) << 30, Int(1) << 64);
        auto plan = plan_rpower(N, r);
        Int l = bitlen(N), ll = bitlen(l);
        CHECK(plan.enumerate == (32 * ll * r > l));
        // 2m - 1 <= 2y < 2m + 1 with (2y)^(4r) = 16^r N l^(2r) / r^r
        Int rhs = pow_int(16, r) * N * pow_int(l, 2 * r);
        if (plan.m > 1) CHECK(pow_int(2 * plan.m - 1, 4 * r) * pow_int(r, r) <= rhs);
        CHECK(pow_int(2 * plan.m + 1, 4 * r) * pow_int(r, r) > rhs);
        // k = ceil(2 e m sqrt r): e in (2.718281828, 2.718281829)
        Rational lo(Int(2718281828), Int(1000000000)), hi(Int(2718281829), Int(1000000000));
        Rational km(plan.k);
        CHECK(km * km >= 4 * lo * lo * plan.m * plan.m * r);
        CHECK((km - 1) * (km - 1) < 4 * hi * hi * plan.m * plan.m * r);
        // delta sanity: 2 e m sqrt r < N^(1/4r) log^8 N
        CHECK(plan.k <= plan.delta_full);
        CHECK(pow_int(plan.delta_full, 4 * r) >= N * pow_int(l, 32 * r));
        CHECK(plan.delta == std::min(plan.delta_full, Int(2 * plan.k)));
    }
}

TEST_CASE("factor_rpower planted instances") {
    Rng rng(66);
    for (int t = 0; t < 10; ++t) {
        unsigned r = rng.range(2, 3);
        Int p = rng.prime_in(Int(1) << 6, Int(1) << 10);
        Int pr = pow_int(p, r);
        // q near sqrt(N) means q^2 ~ p^r q, i.e. q ~ p^r
        Int q = rng.prime_in(pr / 2, pr * 2);
        if (q == p) continue;
        Int N = pr * q;
        auto res = factor_rpower(N, r, Rational(1, 4), Rational(4));
        check_valid(res, N);
        CHECK(res.factors == normalize({{p, r}, {q, 1}}));
    }
}

TEST_CASE("rpower_all examples") {
    CHECK(rpower_all(4839991, 3) == std::vector<Int>{13});
    CHECK(rpower_all(pow_int(2, 6) * pow_int(3, 6) * 5, 6) == std::vector<Int>{2, 3});
    CHECK(rpower_all(Int(1000003) * 1000033 * 7, 2).empty());
    CHECK(rpower_all(81, 4) == std::vector<Int>{3});
}

TEST_CASE("rpower_all matches brute force") {
    Rng rng(67);
    for (int t = 0; t < 40; ++t) {
        unsigned r = rng.range(2, 4);
        Int p = rng.prime_in(2, Int(1) << (36 / r / 2));
        Int N = pow_int(p, r) * rng.big_range(1, (Int(1) << 36) / pow_int(p, r));
        std::vector<Int> want;
        for (auto& pp : testsupport::trial_factor(N))
            if (pp.mult >= r) want.push_back(pp.prime);
        CHECK(rpower_all(N, r) == want);
    }
}
