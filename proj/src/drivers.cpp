#include "latfactor/drivers.hpp"

#include <algorithm>
#include <map>

#include "latfactor/coppersmith.hpp"
#include "latfactor/order.hpp"
#include "latfactor/parallel.hpp"
#include "latfactor/primesel.hpp"
#include "latfactor/search.hpp"

namespace latfactor {

namespace {

Int pow_ui(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

std::string str(const Int& v) { return v.get_str(); }
std::string str(const Rational& v) { return v.get_str(); }

bool is_prime(const Int& n) { return det_prime_test(n); }

TraceEntry& add_stage(FactorizationResult& res, std::string stage,
                      std::vector<std::pair<std::string, std::string>> params = {}, const Counters& ctr = {}) {
    res.trace.push_back({std::move(stage), std::move(params), ctr});
    return res.trace.back();
}

Factorization from_primes(std::initializer_list<Int> ps) {
    Factorization f;
    for (auto& p : ps)
        if (p > 1) f.push_back({p, 1});
    return normalize(f);
}

void check_result(const FactorizationResult& res, const Int& N) {
    if (recompose(res.factors) != N) throw Error("internal: factors do not recompose to " + N.get_str());
}

// (p, q) for a semiprime from any nontrivial divisor.
std::pair<Int, Int> split_by(const Int& N, const Int& g) {
    Int a = g, b = N / g;
    return {std::min(a, b), std::max(a, b)};
}

Factorization semiprime_factors(const Int& N, const std::pair<Int, Int>& pq) {
    if (!is_prime(pq.first) || !is_prime(pq.second))
        throw NotSemiprime("factors of " + N.get_str() + " are not both prime", {pq.first, pq.second});
    return from_primes({pq.first, pq.second});
}

Factorization prime_list_factorization(const Int& m) { return factor_small(m); }

// Split a semiprime with p = q = r (mod n) and gcd(n, N) = 1.
std::pair<Int, Int> split_semiprime_mod(const Int& N, const Int& n, const Int& r, FactorizationResult& res) {
    Int s = sqrt(N);
    if (s * s == N) {
        add_stage(res, "square", {{"N", str(N)}});
        return {s, s};
    }
    auto sweep = [&](const char* why) {
        Counters c;
        auto ps = factor_with_congruence(N, r, n, {}, &c);
        add_stage(res, "congruence_sweep", {{"N", str(N)}, {"n", str(n)}, {"r", str(r)}, {"reason", why}}, c);
        if (ps.empty()) throw PromiseViolated("no prime factor of " + N.get_str() + " is " + r.get_str() + " mod " + n.get_str());
        return split_by(N, ps.front());
    };
    if (pow_ui(n, 4) >= N) return sweep("n >= N^(1/4)");

    const Int l = bitlen(N);
    Int m0 = int_root_ceil(N, pow_ui(l, 4) * pow_ui(n, 3), 1, 5);
    if (m0 * n <= 72) m0 = 72 / n + 1;
    const Int m = coprime_shift(std::max(m0, Int(1)), n);
    const Int mn = m * n;
    if (pow_ui(2 * mn, 4) >= N) return sweep("72 < mn < N^(1/4)/2 infeasible");
    if (Int g = gcd(mn, N); g > 1) {
        add_stage(res, "gcd_mn", {{"g", str(g)}});
        return split_by(N, g);
    }
    const Int k = mod_k(N, mn);
    Counters c;
    auto out = find_alpha(N, k, mn, prime_list_factorization(mn), &c);
    add_stage(res, "find_alpha", {{"m", str(m)}, {"n", str(n)}, {"k", str(k)}}, c);
    if (auto* f = std::get_if<FactorFound>(&out)) return split_by(N, f->g);
    auto* e = std::get_if<ElementFound>(&out);
    if (!e) throw SearchExhausted("find_alpha gave no element for " + N.get_str());
    ModParams P = make_mod_params(N, r, n, m, e->a);
    Counters cs;
    auto pq = main_search_mod(P, &cs);
    add_stage(res, "main_search_mod",
              {{"m", str(m)}, {"n", str(n)}, {"k", str(P.k)}, {"sweeps", std::to_string(P.X_seq.size())}}, cs);
    return pq;
}

}  // namespace

Counters FactorizationResult::totals() const {
    Counters c;
    for (auto& t : trace) c += t.counters;
    return c;
}

std::string FactorizationResult::param(const std::string& key) const {
    for (auto& t : trace)
        for (auto& [k, v] : t.params)
            if (k == key) return v;
    return "";
}

BalancedPlan plan_balanced(const Int& N, const Rational& beta, const Rational& c) {
    BalancedPlan plan;
    const Int l = bitlen(N), ll = bitlen(l);
    plan.x = int_root_floor(N * ll * ll, l * l, 1, 5);
    Int x = std::max(plan.x, Int(3));
    PrimeProduct pp = prime_product(x);
    // the search needs m > 72; desk-size x can land just below it
    while (pp.m <= 72) {
        x *= 2;
        pp = prime_product(x);
    }
    plan.m = pp.m;
    for (auto& p : pp.S) plan.m_fact.push_back({p, 1});
    plan.phi_m = pp.phi_m;
    plan.k = balanced_k(N, c, plan.m);
    const unsigned long bn = beta.get_num().get_ui(), bd = beta.get_den().get_ui();
    plan.feasible = pow_ui(2 * plan.m, 2 * bd) < pow_ui(N, bd - bn);
    return plan;
}

FactorizationResult factor_balanced(const Int& N, const Rational& beta, const Rational& c) {
    if (beta < Rational(1, 3) || beta > Rational(1, 2)) throw BoundTooLarge("beta must lie in [1/3, 1/2]");
    if (c <= 0 || c >= 1) throw BoundTooLarge("c must lie in (0, 1)");
    if (N < 4) throw NotSemiprime(N.get_str() + " is not a semiprime", {N});
    if (is_prime(N)) throw NotSemiprime(N.get_str() + " is prime", {N});
    FactorizationResult res;
    auto finish = [&](const std::pair<Int, Int>& pq) {
        res.factors = semiprime_factors(N, pq);
        check_result(res, N);
        return res;
    };

    if (Int s = sqrt(N); s * s == N) {
        add_stage(res, "square", {{"N", str(N)}});
        return finish({s, s});
    }

    BalancedPlan plan = plan_balanced(N, beta, c);
    add_stage(res, "plan",
              {{"x", str(plan.x)}, {"m", str(plan.m)}, {"phi_m", str(plan.phi_m)}, {"k", str(plan.k)},
               {"beta", str(beta)}, {"c", str(c)}});
    if (!plan.feasible) {
        // below the size where 72 < m < N^((1-beta)/2)/2 can hold
        if (bitlen(N) > 48) throw BoundTooLarge("no feasible m for N = " + N.get_str());
        auto f = factor_small(N);
        add_stage(res, "fallback_trial_division", {{"N", str(N)}});
        if (f.size() == 1 && f[0].mult == 2) return finish({f[0].prime, f[0].prime});
        if (f.size() != 2 || f[0].mult != 1 || f[1].mult != 1) {
            std::vector<Int> part;
            for (auto& pp : f) part.push_back(pp.prime);
            throw NotSemiprime(N.get_str() + " is not a semiprime", part);
        }
        return finish({f[0].prime, f[1].prime});
    }
    if (Int g = gcd(N, plan.m); g > 1) {
        add_stage(res, "gcd_m", {{"g", str(g)}});
        return finish(split_by(N, g));
    }

    Counters ca;
    auto out = find_alpha(N, plan.k, plan.m, plan.m_fact, &ca);
    add_stage(res, "find_alpha", {{"m", str(plan.m)}, {"k", str(plan.k)}}, ca);
    if (auto* f = std::get_if<FactorFound>(&out)) return finish(split_by(N, f->g));
    if (std::holds_alternative<Prime>(out)) throw NotSemiprime(N.get_str() + " is prime", {N});
    auto* e = std::get_if<ElementFound>(&out);
    if (!e) throw SearchExhausted("find_alpha returned no element for " + N.get_str());

    BalancedParams P = make_balanced_params(N, beta, c, plan.m, e->a);
    Counters cs;
    auto pq = main_search(P, &cs);
    add_stage(res, "main_search",
              {{"m", str(P.m)}, {"k", str(P.k)}, {"phi_m", str(plan.phi_m)}, {"X", str(P.X)}, {"alpha", str(e->a.residue)}},
              cs);
    return finish(pq);
}

Reduction reduce_to_semiprime(const Int& N) {
    Reduction red;
    red.core = N;
    if (N <= 1) return red;
    Int B = std::max(int_root_ceil(N, 1, 1, 3), Int(2));
    SweepResult sw = small_factor_sweep(N, B);
    red.removed = sw.factors;
    red.core = sw.cofactor;
    // no prime <= B is left, so a cofactor <= B^2 is prime
    if (!red.removed.empty() && red.core > 1 && red.core <= B * B) {
        red.removed.push_back({red.core, 1});
        red.core = 1;
    }
    red.removed = normalize(red.removed);
    return red;
}

FactorizationResult factor_with_modinfo(const Int& N, const Int& n, const Int& r0) {
    if (N < 1 || n < 1) throw Error("factor_with_modinfo: need N >= 1, n >= 1");
    const Int r = ((r0 % n) + n) % n;
    FactorizationResult res;
    if (N == 1) return res;
    auto check_class = [&](const Int& p) {
        if (p % n != r)
            throw PromiseViolated("prime " + p.get_str() + " is not " + r.get_str() + " mod " + n.get_str());
    };

    if (Int g = gcd(n, N); g > 1) {
        // every prime factor is then the prime p0 | gcd(n, N)
        Int p0 = factor_small(g).front().prime;
        Int rest = N;
        unsigned e = 0;
        while (rest % p0 == 0) {
            rest /= p0;
            ++e;
        }
        if (rest != 1) throw PromiseViolated("gcd(n, N) > 1 but N is not a power of " + p0.get_str());
        check_class(p0);
        add_stage(res, "prime_power", {{"p", str(p0)}, {"e", std::to_string(e)}});
        res.factors = {{p0, e}};
        return res;
    }
    if (is_prime(N)) {
        check_class(N);
        add_stage(res, "prime", {{"N", str(N)}});
        res.factors = {{N, 1}};
        return res;
    }

    Reduction red = reduce_to_semiprime(N);
    add_stage(res, "reduce", {{"removed", std::to_string(red.removed.size())}, {"core", str(red.core)}});
    Factorization f = red.removed;
    if (red.core > 1) {
        if (is_prime(red.core)) {
            f.push_back({red.core, 1});
        } else {
            auto pq = split_semiprime_mod(red.core, n, r, res);
            for (const Int& p : {pq.first, pq.second}) {
                if (!is_prime(p)) throw NotSemiprime("core " + red.core.get_str() + " did not split into primes", {pq.first, pq.second});
                f.push_back({p, 1});
            }
        }
    }
    res.factors = normalize(f);
    for (auto& pp : res.factors) check_class(pp.prime);
    check_result(res, N);
    return res;
}

FactorizationResult factor_anbn(const Int& a, const Int& b, const Int& N) {
    if (b < 1 || a <= b || gcd(a, b) != 1) throw Error("factor_anbn: need coprime a > b >= 1");
    // recover n and the sign
    long n = 0;
    bool plus = false;
    const long cap = 2 * static_cast<long>(bitlen(N)) + 2;
    for (long e = 1; e <= cap; ++e) {
        Int an = pow_ui(a, e), bn = pow_ui(b, e);
        if (an - bn == N) {
            n = e;
            break;
        }
        if (an + bn == N) {
            n = e;
            plus = true;
            break;
        }
        if (an - bn > N) break;
    }
    if (n == 0) throw NotOfForm(N.get_str() + " is not " + a.get_str() + "^n +- " + b.get_str() + "^n");

    FactorizationResult res;
    add_stage(res, "form", {{"a", str(a)}, {"b", str(b)}, {"n", std::to_string(n)}, {"sign", plus ? "+" : "-"}});
    if (N == 1) return res;

    std::vector<Int> D;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) D.push_back(plus ? Int(2 * d) : Int(d));

    Factorization f;
    Int Nj = N;
    // 2 has order 1 and would break p = 1 (mod d) for the even d used with "+"
    if (Nj % 2 == 0) {
        unsigned e = 0;
        while (Nj % 2 == 0) {
            Nj /= 2;
            ++e;
        }
        f.push_back({2, e});
    }
    for (const Int& d : D) {
        if (Nj == 1) break;
        Int ab = a * mod_inv(b, Nj).residue % Nj;
        Int G = gcd(Int(mod_pow(ZnElem{ab, Nj}, d).residue - 1), Nj);
        if (G == 1) continue;
        auto sub = factor_with_modinfo(G, d, 1);
        for (auto& t : sub.trace) {
            t.params.push_back({"d", str(d)});
            res.trace.push_back(t);
        }
        for (auto& pp : sub.factors) {
            unsigned e = 0;
            while (Nj % pp.prime == 0) {
                Nj /= pp.prime;
                ++e;
            }
            f.push_back({pp.prime, e});
        }
    }
    if (Nj != 1) throw Error("factor_anbn: cofactor " + Nj.get_str() + " left over");
    res.factors = normalize(f);
    check_result(res, N);
    return res;
}

RPowerPlan plan_rpower(const Int& N, unsigned r) {
    RPowerPlan plan;
    const Int l = bitlen(N), ll = bitlen(l);
    plan.enumerate = 32 * ll * r > l;
    // m = round(y), y^(4r) = N l^(2r) / r^r; floor(2y) first
    Int two_y = int_root_floor(N * pow_ui(l, 2 * r) * pow_ui(Int(2), 4 * r), pow_ui(Int(r), r), 1, 4 * r);
    plan.m = std::max(Int((two_y + 1) / 2), Int(1));
    plan.k = power_k(plan.m, r);
    plan.delta_full = int_root_ceil(N * pow_ui(l, 32 * r), 1, 1, 4 * r);
    plan.delta = std::min(plan.delta_full, Int(2 * plan.k));
    return plan;
}

namespace {

FactorizationResult rpower_attempt(const Int& N, unsigned r, const Rational& c1, const Rational& c2) {
    if (r < 1 || N < 2) throw Error("factor_rpower: need r >= 1, N >= 2");
    FactorizationResult res;
    auto finish = [&](const Int& p, const Int& q) {
        if (pow_ui(p, r) * q != N) throw Error("internal: p^r q != N");
        Factorization f{{p, r}};
        if (q > 1) f.push_back({q, 1});
        res.factors = normalize(f);
        Rational qq(q * q), n(N);
        bool ok = c1 * c1 * n < qq && qq < c2 * c2 * n;
        res.trace.back().params.push_back({"promise_ok", ok ? "true" : "false"});
        return res;
    };

    RPowerPlan plan = plan_rpower(N, r);
    add_stage(res, "plan",
              {{"r", std::to_string(r)}, {"m", str(plan.m)}, {"k", str(plan.k)}, {"delta", str(plan.delta)},
               {"c1", str(c1)}, {"c2", str(c2)}});
    if (plan.enumerate) {
        // large r: p < log N; the smallest i with i^r | N is prime
        const Int l = bitlen(N);
        for (Int i = 2; i <= l; ++i) {
            if (N % pow_ui(i, r) == 0) {
                add_stage(res, "enumerate", {{"p", str(i)}});
                return finish(i, N / pow_ui(i, r));
            }
        }
        add_stage(res, "enumerate", {{"p", "none"}});
    }

    Counters co;
    auto out = order_find_or_factor(N, r, plan.delta, &co);
    add_stage(res, "order", {{"delta", str(plan.delta)}}, co);
    if (auto* f = std::get_if<FactorFound>(&out)) {
        auto pq = split_power_divisor(N, r, f->g);
        return finish(pq.first, pq.second);
    }
    if (std::holds_alternative<RPowerFree>(out) || std::holds_alternative<Prime>(out))
        throw PromiseViolated(N.get_str() + " has no prime p with p^" + std::to_string(r) + " | N");
    auto* e = std::get_if<ElementFound>(&out);
    if (!e) throw SearchExhausted("order finding returned no element for " + N.get_str());

    PowerParams P = make_power_params(N, r, c1, c2, plan.m, e->a);
    Counters cs;
    auto pq = main_search_power(P, &cs);
    add_stage(res, "main_search_power", {{"m", str(P.m)}, {"k", str(P.k)}, {"J", str(P.J)}}, cs);
    return finish(pq.first, pq.second);
}

}  // namespace

FactorizationResult factor_rpower(const Int& N, unsigned r, const Rational& c1, const Rational& c2) {
    try {
        return rpower_attempt(N, r, c1, c2);
    } catch (const SearchExhausted& e) {
        // the search provably covers every q in the promised window
        throw PromiseViolated(e.what());
    }
}

FactorizationResult factor_rpower(const Int& N, unsigned r) {
    const Rational c2(pow_ui(Int(2), bitlen(N)));
    Rational c1(1, 2);
    for (std::size_t t = 1; t <= bitlen(N); ++t, c1 /= 2) {
        try {
            auto res = rpower_attempt(N, r, c1, c2);
            res.trace.front().params.push_back({"scan_step", std::to_string(t)});
            return res;
        } catch (const SearchExhausted&) {
        }
    }
    throw PromiseViolated("no c1 down to 2^-" + std::to_string(bitlen(N)) + " located q for " + N.get_str());
}

std::vector<Int> rpower_all(const Int& N, unsigned r, Counters* ctr) {
    if (r < 1) throw Error("rpower_all: need r >= 1");
    std::vector<Int> out;
    if (N < 2) return out;
    Int x = std::max(int_root_ceil(N, 1, 1, 4 * r), Int(3));
    PrimeProduct pp = prime_product(x);
    Int N1 = N;
    for (const Int& p : pp.S) {
        unsigned e = 0;
        while (N1 % p == 0) {
            N1 /= p;
            ++e;
        }
        if (e >= r) out.push_back(p);
    }
    if (N1 > 1) {
        const Int& m = pp.m;
        std::vector<Int> classes;
        for (Int i = 1; i < m; ++i)
            if (gcd(i, m) == 1) classes.push_back(i);
        std::vector<std::vector<Int>> found(classes.size());
        std::vector<Counters> cs(classes.size());
        parallel_for(classes.size(), [&](std::size_t t) {
            found[t] = rpower_divisors_congruence(N1, r, classes[t], m, {}, &cs[t]);
        });
        for (std::size_t t = 0; t < classes.size(); ++t) {
            if (ctr) *ctr += cs[t];
            for (auto& d : found[t])
                if (is_prime(d)) out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace latfactor
