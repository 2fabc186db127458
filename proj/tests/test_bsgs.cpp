#include "doctest.h"

#include <algorithm>

#include "latfactor/bsgs.hpp"
#include "latfactor/parallel.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace latfactor;
using testsupport::Rng;

TEST_CASE("sort_match examples") {
    BabyTable b{{{Int(1), 0}, {Int(2), 1}}, 1};
    GiantList g{{{Int(2), 5}}};
    CHECK(sort_match(b, g) == std::vector<Match>{{1, 5}});
    CHECK(sort_match(b, GiantList{{{Int(7), 0}, {Int(9), 1}}}).empty());
    // duplicate giants both match
    GiantList dup{{{Int(1), 3}, {Int(1), 2}, {Int(2), 9}}};
    CHECK(sort_match(b, dup) == std::vector<Match>{{0, 2}, {0, 3}, {1, 9}});
}

TEST_CASE("sort_match is permutation invariant") {
    Rng rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        BabyTable b;
        GiantList g;
        unsigned nb = rng.range(0, 40), ng = rng.range(0, 40);
        std::vector<std::uint64_t> res(nb);
        for (unsigned i = 0; i < nb; ++i) b.entries.push_back({Int(static_cast<unsigned long>(rng.below(60))), i});
        for (unsigned t = 0; t < ng; ++t) g.entries.push_back({Int(static_cast<unsigned long>(rng.below(60))), t});
        auto want = sort_match(b, g);
        for (auto& [l, r] : want) {
            auto bi = std::find_if(b.entries.begin(), b.entries.end(), [&](auto& e) { return e.second == l; });
            auto gi = std::find_if(g.entries.begin(), g.entries.end(), [&](auto& e) { return e.second == r; });
            CHECK(bi->first == gi->first);
        }
        std::size_t count = 0;
        for (auto& x : b.entries)
            for (auto& y : g.entries) count += x.first == y.first;
        CHECK(want.size() == count);
        std::shuffle(b.entries.begin(), b.entries.end(), rng.eng);
        std::shuffle(g.entries.begin(), g.entries.end(), rng.eng);
        CHECK(sort_match(b, g) == want);
    }
}

TEST_CASE("find_collisions examples") {
    ZnElem two{2, 35};
    auto r = find_collisions(35, 12, two, {13});
    REQUIRE(r);
    CHECK(*r == std::make_pair(Int(5), Int(7)));
    // 31 = 1 = 2^0 (mod 5) is hit before 31 = 2^2 (mod 7)
    r = find_collisions(35, 12, two, {31});
    REQUIRE(r);
    CHECK(*r == std::make_pair(Int(5), Int(7)));
    CHECK(testsupport::brute_collisions(35, 12, two, {31}) == r);
    // with i = 0 excluded by starting from 2^1, mod 7 is found first
    r = find_collisions(35, 11, ZnElem{2, 35}, {Int(31 * 18 % 35)});  // v/2 keeps the same ladder shifted by one
    CHECK(r == testsupport::brute_collisions(35, 11, ZnElem{2, 35}, {Int(31 * 18 % 35)}));
    CHECK_FALSE(find_collisions(35, 12, two, {20}));  // 20 is 0 mod 5 and 6 mod 7, never a power of 2
}

TEST_CASE("find_collisions recovers the factor when a v_h equals gamma^i mod N") {
    Int N = Int(10007) * 10009;
    ZnElem g{3, N};
    Int exact = mod_pow(g, 40).residue;
    Int p = 10007;
    // second value collides only mod p, at a larger index
    Int modp = (mod_pow(ZnElem{3, p}, 70).residue + p * 5) % N;
    auto r = find_collisions(N, 100, g, {exact, modp});
    REQUIRE(r);
    CHECK(r->first * r->second == N);
    CHECK(r == testsupport::brute_collisions(N, 100, g, {exact, modp}));
    // only an exact hit: surfaced as no collision
    CHECK_FALSE(find_collisions(N, 100, g, {exact}));
}

TEST_CASE("find_collisions matches brute force, including tiling and threads") {
    Rng rng(62);
    for (int trial = 0; trial < 300; ++trial) {
        Int N = trial % 3 ? rng.prime_in(100, 5000) * rng.prime_in(100, 5000) : rng.big_range(6, 1 << 20);
        Int gam = rng.big_range(2, N - 1);
        while (gcd(gam, N) != 1) gam = rng.big_range(2, N - 1);
        unsigned n = rng.range(1, 64);
        std::uint64_t kappa = rng.range(1, (1u << 16) / n);
        std::vector<Int> vs;
        for (unsigned h = 0; h < n; ++h) vs.push_back(rng.big_below(N));
        CollisionOptions opt;
        opt.block = trial % 2 ? 1u << 16 : rng.range(1, 64);
        set_threads(trial % 4 == 0 ? 3 : 1);
        auto got = find_collisions(N, kappa, ZnElem{gam, N}, vs, opt);
        CHECK(got == testsupport::brute_collisions(N, kappa, ZnElem{gam, N}, vs));
    }
    set_threads(0);
}
