#include "latfactor/arith.hpp"

#include <algorithm>
#include <map>

namespace latfactor {

ZnElem zn(const Int& v, const Int& N) {
    Int r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), N.get_mpz_t());
    return {r, N};
}

ZnElem mod_pow(const ZnElem& base, const Int& exp) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.residue.get_mpz_t(), exp.get_mpz_t(), base.modulus.get_mpz_t());
    return {r, base.modulus};
}

ZnElem mod_pow_signed(const ZnElem& base, const Int& exp) {
    if (exp >= 0) return mod_pow(base, exp);
    ZnElem inv = mod_inv(base.residue, base.modulus);
    return mod_pow(inv, Int(-exp));
}

ExtGcd ext_gcd(const Int& x, const Int& y) {
    ExtGcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
}

ZnElem mod_inv(const Int& x, const Int& N) {
    Int xr = x % N;
    if (xr < 0) xr += N;
    Int g = gcd(xr, N);
    if (g != 1) throw NotInvertible(g == 0 ? N : g);
    Int r;
    mpz_invert(r.get_mpz_t(), xr.get_mpz_t(), N.get_mpz_t());
    return {r, N};
}

Int int_root_floor(const Int& x, const Int& y, unsigned long u, unsigned long v) {
    if (y < 1 || v < 1) throw Error("int_root_floor: need y >= 1, v >= 1");
    Int xu, yu;
    mpz_pow_ui(xu.get_mpz_t(), x.get_mpz_t(), u);
    mpz_pow_ui(yu.get_mpz_t(), y.get_mpz_t(), u);
    // floor((A/B)^(1/v)) == floor(floor(A/B)^(1/v)) since r^v is integral.
    Int q = xu / yu;
    Int r;
    mpz_root(r.get_mpz_t(), q.get_mpz_t(), v);
    return r;
}

Int int_root_ceil(const Int& x, const Int& y, unsigned long u, unsigned long v) {
    Int r = int_root_floor(x, y, u, v);
    Int xu, yu, rv;
    mpz_pow_ui(xu.get_mpz_t(), x.get_mpz_t(), u);
    mpz_pow_ui(yu.get_mpz_t(), y.get_mpz_t(), u);
    mpz_pow_ui(rv.get_mpz_t(), r.get_mpz_t(), v);
    if (rv * yu < xu) r += 1;
    return r;
}

namespace {

bool mr_witness(const Int& n, const Int& d, unsigned s, unsigned long a) {
    Int x;
    Int base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Int nm1 = n - 1;
    if (x == 1 || x == nm1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return false;
    }
    return true;
}

}  // namespace

bool det_prime_test(const Int& n) {
    if (n < 2) return false;
    if (bitlen(n) > 64) throw UnsupportedSize("det_prime_test: n >= 2^64 " + n.get_str());
    static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long p : bases) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Int d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    for (unsigned long a : bases)
        if (mr_witness(n, d, s, a)) return false;
    return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    if (n < 2) return out;
    std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

std::size_t bitlen(const Int& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

SweepResult small_factor_sweep(const Int& N, const Int& B) {
    if (B < 2) throw Error("small_factor_sweep: B must be >= 2");
    if (bitlen(B) > 32) throw UnsupportedSize("small_factor_sweep: B >= 2^32");
    SweepResult res;
    res.cofactor = N;
    auto primes = primes_up_to(static_cast<std::uint32_t>(B.get_ui()));

    auto strip = [&](std::uint32_t p) {
        unsigned e = 0;
        while (res.cofactor != 0 && mpz_divisible_ui_p(res.cofactor.get_mpz_t(), p)) {
            mpz_divexact_ui(res.cofactor.get_mpz_t(), res.cofactor.get_mpz_t(), p);
            ++e;
        }
        if (e) res.factors.push_back({Int(p), e});
    };

    // Plain trial division for the first primes, then gcd against block products.
    const std::size_t direct = std::min<std::size_t>(primes.size(), 256);
    for (std::size_t i = 0; i < direct; ++i) strip(primes[i]);

    const std::size_t block = 1024;
    for (std::size_t lo = direct; lo < primes.size() && res.cofactor > 1; lo += block) {
        std::size_t hi = std::min(primes.size(), lo + block);
        Int prod = 1;
        for (std::size_t i = lo; i < hi; ++i) prod *= primes[i];
        Int g = gcd(prod, res.cofactor);
        if (g == 1) continue;
        for (std::size_t i = lo; i < hi; ++i)
            if (mpz_divisible_ui_p(g.get_mpz_t(), primes[i])) strip(primes[i]);
    }
    return res;
}

Factorization factor_small(const Int& n) {
    if (n < 1) throw Error("factor_small: need n >= 1");
    if (bitlen(n) > 48) throw UnsupportedSize("factor_small: n >= 2^48");
    if (n == 1) return {};
    Int B = sqrt(n) + 1;
    SweepResult sw = small_factor_sweep(n, std::max(B, Int(2)));
    if (sw.cofactor > 1) sw.factors.push_back({sw.cofactor, 1});
    return normalize(sw.factors);
}

Factorization normalize(Factorization f) {
    std::map<Int, unsigned> acc;
    for (auto& pp : f)
        if (pp.mult) acc[pp.prime] += pp.mult;
    Factorization out;
    for (auto& [p, e] : acc) out.push_back({p, e});
    return out;
}

Int recompose(const Factorization& f) {
    Int r = 1;
    for (auto& pp : f) {
        Int t;
        mpz_pow_ui(t.get_mpz_t(), pp.prime.get_mpz_t(), pp.mult);
        r *= t;
    }
    return r;
}

std::pair<Int, unsigned long> perfect_power(const Int& n) {
    if (n < 4) return {n, 1};
    for (unsigned long e = bitlen(n); e >= 2; --e) {
        Int r;
        if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), e)) return {r, e};
    }
    return {n, 1};
}

}  // namespace latfactor
