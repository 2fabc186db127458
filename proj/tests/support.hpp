#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "latfactor/arith.hpp"

namespace testsupport {

using latfactor::Int;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t u64() { return eng(); }
    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng); }
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(eng);
    }

    // Uniform in [0, n).
    Int big_below(const Int& n) {
        std::size_t bits = latfactor::bitlen(n) + 64;
        Int acc = 0;
        for (std::size_t b = 0; b < bits; b += 64) acc = (acc << 64) + Int(std::to_string(u64()));
        return acc % n;
    }
    Int big_range(const Int& lo, const Int& hi) { return lo + big_below(hi - lo + 1); }

    Int prime_in(const Int& lo, const Int& hi) {
        for (;;) {
            Int c = big_range(lo, hi);
            Int p;
            mpz_nextprime(p.get_mpz_t(), Int(c - 1).get_mpz_t());
            if (p <= hi && latfactor::det_prime_test(p)) return p;
        }
    }
};

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Trial-division factorization oracle (n < 2^64).
inline latfactor::Factorization trial_factor(const Int& N) {
    latfactor::Factorization f;
    std::uint64_t n = std::stoull(N.get_str());
    auto take = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.push_back({Int(std::to_string(p)), e});
    };
    take(2);
    for (std::uint64_t p = 3; p <= n / p; p += 2) take(p);
    if (n > 1) f.push_back({Int(std::to_string(n)), 1});
    return f;
}

inline bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace testsupport
