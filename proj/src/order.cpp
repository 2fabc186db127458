#include "latfactor/order.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <tuple>

#include "latfactor/coppersmith.hpp"
#include "latfactor/znpoly.hpp"

namespace latfactor {

namespace {

Int nontrivial_or_zero(const Int& g, const Int& N) { return (g > 1 && g < N) ? g : Int(0); }

// gcd(a^e - 1, N)
Int gcd_pow_minus_one(const ZnElem& a, const Int& e, Counters* ctr) {
    if (ctr) ++ctr->gcd_calls;
    ZnElem y = mod_pow(a, e);
    return gcd(y.residue - 1, a.modulus);
}

// Same baby-step giant-step on machine words, for N < 2^32. Returns 0 when
// the order exceeds T.
std::uint64_t order_bounded_word(std::uint64_t n, std::uint64_t a, std::uint64_t T) {
    std::uint64_t s = 1;
    while (s * s < T) ++s;
    // direct-address baby table for small n, sorted pairs otherwise
    const bool direct = n <= (1u << 20);
    thread_local std::vector<std::uint32_t> stamp, slot;
    thread_local std::uint32_t gen = 0;
    thread_local std::vector<std::pair<std::uint64_t, std::uint64_t>> baby;
    if (direct) {
        if (stamp.size() < n) {
            stamp.assign(n, 0);
            slot.assign(n, 0);
            gen = 0;
        }
        if (++gen == 0) {
            std::fill(stamp.begin(), stamp.end(), 0);
            gen = 1;
        }
    } else {
        baby.clear();
    }
    std::uint64_t y = 1 % n;
    for (std::uint64_t u = 0; u < s; ++u) {
        if (u > 0 && y == 1) return u <= T ? u : 0;
        if (direct) {
            stamp[y] = gen;
            slot[y] = static_cast<std::uint32_t>(u);
        } else {
            baby.emplace_back(y, u);
        }
        y = y * a % n;
    }
    if (y == 1) return s <= T ? s : 0;
    if (!direct) std::sort(baby.begin(), baby.end());
    // y is a unit, so the extended Euclid below always lands on gcd 1
    std::int64_t r0 = static_cast<std::int64_t>(n), r1 = static_cast<std::int64_t>(y), t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    const std::uint64_t step = static_cast<std::uint64_t>(t0 < 0 ? t0 + static_cast<std::int64_t>(n) : t0);
    std::uint64_t giant = 1;
    for (std::uint64_t v = 1; v * s <= T; ++v) {
        giant = giant * step % n;
        std::uint64_t u;
        if (direct) {
            if (stamp[giant] != gen) continue;
            u = slot[giant];
        } else {
            auto it = std::lower_bound(baby.begin(), baby.end(), std::make_pair(giant, std::uint64_t{0}));
            if (it == baby.end() || it->first != giant) continue;
            u = it->second;
        }
        std::uint64_t d = v * s + u;
        return d <= T ? d : 0;
    }
    return 0;
}

}  // namespace

OrderOutcome order_bounded(const Int& N, const ZnElem& a0, const Int& T) {
    ZnElem a = zn(a0.residue, N);
    if (bitlen(N) <= 32) {
        std::uint64_t n = N.get_ui(), av = a.residue.get_ui();
        if (std::gcd(n, av) == 1 && T >= 1 && n > 1) {
            // orders never exceed N, so T can be capped there
            std::uint64_t Tw = T > N ? n : T.get_ui();
            std::uint64_t d = order_bounded_word(n, av, Tw);
            if (d == 0) return ExceedsBound{T};
            return Order{Int(static_cast<unsigned long>(d))};
        }
    }
    Int g = gcd(a.residue, N);
    if (g != 1) {
        if (Int f = nontrivial_or_zero(g, N); f != 0) return FactorFound{f};
        throw NotInvertible(g);
    }
    if (T < 1) return ExceedsBound{T};
    Int s = sqrt(T);
    if (s * s < T) ++s;
    const std::size_t S = s.get_ui();

    // babies a^u for u < S; an order this small shows up directly
    std::vector<std::pair<Int, std::size_t>> baby;
    baby.reserve(S);
    Int y = 1;
    for (std::size_t u = 0; u < S; ++u) {
        if (u > 0 && y == 1) return u <= T ? OrderOutcome{Order{Int(static_cast<unsigned long>(u))}} : ExceedsBound{T};
        baby.emplace_back(y, u);
        y = y * a.residue % N;
    }
    if (y == 1) return s <= T ? OrderOutcome{Order{s}} : ExceedsBound{T};
    std::sort(baby.begin(), baby.end());

    // giants a^(-v S); first match gives the least d = v S + u
    Int step = mod_inv(y, N).residue;  // a^(-S)
    Int giant = 1;
    for (Int v = 1; v * s <= T; ++v) {
        giant = giant * step % N;
        auto it = std::lower_bound(baby.begin(), baby.end(), std::make_pair(giant, std::size_t{0}));
        if (it != baby.end() && it->first == giant) {
            Int d = v * s + static_cast<unsigned long>(it->second);
            return d <= T ? OrderOutcome{Order{d}} : ExceedsBound{T};
        }
    }
    return ExceedsBound{T};
}

OrderOutcome order_find_or_factor(const Int& N, unsigned r, const Int& delta, Counters* ctr) {
    if (N < 2) throw Error("order_find_or_factor: need N >= 2");
    // T1 = delta^(1/2) / log^2 N with log N := bit length
    const Int lg = bitlen(N);
    const Int T1 = sqrt(delta) / (lg * lg);
    const std::size_t cap = 2 * bitlen(delta) + 2;

    Int M = 1;
    Int a = 2;
    for (std::size_t e = 1; e <= cap; ++e) {
        while (a < N && !mpz_divisible_p(N.get_mpz_t(), a.get_mpz_t()) && mod_pow(zn(a, N), M).residue == 1) ++a;
        if (a >= N) return Prime{};
        if (mpz_divisible_p(N.get_mpz_t(), a.get_mpz_t())) return FactorFound{a};

        ZnElem ae = zn(a, N);
        OrderOutcome o = order_bounded(N, ae, T1);
        if (std::holds_alternative<FactorFound>(o)) return o;
        if (!std::holds_alternative<Order>(o)) {
            o = order_bounded(N, ae, delta);
            if (std::holds_alternative<FactorFound>(o)) return o;
            if (!std::holds_alternative<Order>(o)) return ElementFound{ae};
        }
        Int me = std::get<Order>(o).d;
        for (auto& pp : factor_small(me)) {
            Int g = gcd_pow_minus_one(ae, me / pp.prime, ctr);
            if (Int f = nontrivial_or_zero(g, N); f != 0) return FactorFound{f};
        }
        mpz_lcm(M.get_mpz_t(), M.get_mpz_t(), me.get_mpz_t());
        if (M >= T1) {
            std::vector<Int> found;
            try {
                found = rpower_divisors_congruence(N, r, 1, M, {}, ctr);
            } catch (const SharedFactor& sf) {
                if (Int f = nontrivial_or_zero(sf.factor(), N); f != 0) return FactorFound{f};
                throw;
            }
            for (auto& p : found)
                if (p < N) return FactorFound{p};
            // every prime factor is 1 mod M, so for r = 1 the sweep would have found a proper one
            if (r == 1) return Prime{};
            return RPowerFree{};
        }
        ++a;
    }
    return ExceedsBound{delta};
}

OrderOutcome find_alpha(const Int& N, const Int& k, const Int& m, const Factorization& m_fact, Counters* ctr) {
    if (Int g = gcd(m, N); g != 1) {
        if (Int f = nontrivial_or_zero(g, N); f != 0) return FactorFound{f};
        throw Error("find_alpha: N divides m");
    }
    Int D = int_root_ceil(N, 1, 1, 3);
    OrderOutcome o = order_find_or_factor(N, 1, D, ctr);
    if (!std::holds_alternative<ElementFound>(o)) return o;
    const ZnElem alpha = std::get<ElementFound>(o).a;

    const Int m2 = m * m;
    const ZnElem beta = mod_pow(alpha, m2);
    Int n = sqrt(k);
    if (n * n < k) ++n;
    if (n < 1) n = 1;
    const std::size_t nn = n.get_ui();

    ZnElem binv;
    try {
        binv = mod_inv(beta.residue, N);
    } catch (const NotInvertible& e) {
        return FactorFound{e.gcd()};
    }
    std::vector<Int> pts(nn);
    Int cur = 1;
    for (std::size_t t = 0; t < nn; ++t) {
        cur = cur * binv.residue % N;
        pts[t] = cur;  // beta^-(t+1)
    }
    ZnPoly f = product_tree(pts, N);
    std::vector<Int> ys = eval_geometric(f, mod_pow(beta, n), nn);

    for (std::size_t i = 0; i < nn; ++i) {
        if (ctr) ++ctr->gcd_calls;
        Int gi = gcd(ys[i], N);
        if (gi == 1) continue;
        if (Int fct = nontrivial_or_zero(gi, N); fct != 0) return FactorFound{fct};

        // localize inside block {i n + 1, ..., i n + n}
        Int base = Int(static_cast<unsigned long>(i)) * n;
        Int bp = mod_pow(beta, base).residue;
        for (std::size_t j = 1; j <= nn; ++j) {
            bp = bp * beta.residue % N;
            if (ctr) ++ctr->gcd_calls;
            Int dl = gcd(bp - 1, N);
            if (dl == 1) continue;
            if (Int fct = nontrivial_or_zero(dl, N); fct != 0) return FactorFound{fct};

            // order reduction over the primes of m
            Int r = m2 * (base + static_cast<unsigned long>(j));
            for (auto& pp : m_fact)
                while (mpz_divisible_p(r.get_mpz_t(), pp.prime.get_mpz_t()) &&
                       gcd_pow_minus_one(alpha, r / pp.prime, ctr) == N)
                    r /= pp.prime;
            for (auto& pp : m_fact) {
                if (!mpz_divisible_p(r.get_mpz_t(), pp.prime.get_mpz_t())) continue;
                Int d2 = gcd_pow_minus_one(alpha, r / pp.prime, ctr);
                if (Int fct = nontrivial_or_zero(d2, N); fct != 0) return FactorFound{fct};
            }
            // equal orders mod p and q: every prime factor is 1 mod r
            try {
                for (auto& p : factor_with_congruence(N, 1, r, {}, ctr))
                    if (p < N) return FactorFound{p};
            } catch (const SharedFactor& sf) {
                if (Int fct = nontrivial_or_zero(sf.factor(), N); fct != 0) return FactorFound{fct};
            }
            throw SearchExhausted("find_alpha: order " + r.get_str() + " reached but no factor is 1 mod it");
        }
        throw SearchExhausted("find_alpha: block gcd was N but no index inside the block hit");
    }
    return ElementFound{alpha};
}

}  // namespace latfactor
