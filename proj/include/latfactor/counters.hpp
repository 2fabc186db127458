#pragma once

#include <cstdint>

namespace latfactor {

// Exact event counts surfaced in run reports.
struct Counters {
    std::uint64_t baby_steps = 0;
    std::uint64_t giant_steps = 0;
    std::uint64_t lll_calls = 0;
    std::uint64_t collisions_checked = 0;
    std::uint64_t gcd_calls = 0;

    Counters& operator+=(const Counters& o) {
        baby_steps += o.baby_steps;
        giant_steps += o.giant_steps;
        lll_calls += o.lll_calls;
        collisions_checked += o.collisions_checked;
        gcd_calls += o.gcd_calls;
        return *this;
    }
};

}  // namespace latfactor
