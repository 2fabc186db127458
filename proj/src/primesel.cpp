#include "latfactor/primesel.hpp"

namespace latfactor {

PrimeProduct prime_product(const Int& x) {
    if (x < 3) throw Error("prime_product: need x >= 3");
    std::vector<Int> primes;
    Int P = 1;
    std::uint32_t limit = 64;
    std::vector<std::uint32_t> pool = primes_up_to(limit);
    for (std::size_t i = 0; P <= x; ++i) {
        if (i == pool.size()) pool = primes_up_to(limit *= 2);
        primes.push_back(pool[i]);
        P *= pool[i];
    }
    Int t = P / x;
    // smallest prime above t; t <= p_k always, and t = p_k only when x is itself a primorial
    Int ps = primes.back();
    for (auto& p : primes)
        if (p > t) {
            ps = p;
            break;
        }

    PrimeProduct out;
    out.m = P / ps;
    out.primorial = P;
    out.removed = ps;
    out.phi_m = 1;
    for (auto& p : primes)
        if (p != ps) {
            out.S.push_back(p);
            out.phi_m *= p - 1;
        }
    out.ratio = Rational(out.phi_m, out.m);
    out.ratio.canonicalize();
    return out;
}

Int coprime_shift(const Int& m0, const Int& n) {
    Int m = m0;
    while (gcd(m, n) != 1) ++m;
    return m;
}

}  // namespace latfactor
