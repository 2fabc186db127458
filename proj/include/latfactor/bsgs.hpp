#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "latfactor/arith.hpp"
#include "latfactor/counters.hpp"

namespace latfactor {

struct BabyTable {
    std::vector<std::pair<Int, std::uint64_t>> entries;  // (residue, i)
    Int stride_exponent;                                  // m^2 or 1
};

struct GiantList {
    std::vector<std::pair<Int, std::uint64_t>> entries;  // (residue, tag)
};

struct Match {
    std::uint64_t i;
    std::uint64_t tag;
    bool operator==(const Match&) const = default;
};

// Pairs with equal residues, ordered by (i, tag).
std::vector<Match> sort_match(const BabyTable& babies, const GiantList& giants);

struct CollisionOptions {
    std::size_t block = std::size_t{1} << 16;  // tile size for both i and the v_h
};

// (p, q) from the first nontrivial gcd(N, v_h - gamma^i), smallest i then h; nullopt
// when nothing splits N. gamma must be a unit (NotInvertible otherwise).
std::optional<std::pair<Int, Int>> find_collisions(const Int& N, const Int& kappa, const ZnElem& gamma,
                                                   const std::vector<Int>& vs, const CollisionOptions& opt = {},
                                                   Counters* ctr = nullptr);

}  // namespace latfactor
