#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "latfactor/arith.hpp"
#include "latfactor/counters.hpp"

namespace latfactor {

// Decimal or 0x-hex; throws std::invalid_argument.
Int parse_int(const std::string& s);
// "u/v", an integer, or a plain decimal such as 0.25.
Rational parse_rational(const std::string& s);

struct BenchOptions {
    unsigned min_bits = 40;
    unsigned max_bits = 64;
    unsigned step = 4;
    unsigned count = 5;
    std::uint64_t seed = 1;
    Rational c = Rational(1, 2);
};

struct BenchRow {
    unsigned bits = 0;
    unsigned index = 0;
    Int N, p, q;
    Int m, phi_m, k;
    std::string path;  // last trace stage
    Counters counters;
    bool ok = false;  // factors equal {p, q}
    double wall_time_ms = 0;
};

// Balanced semiprime with both primes of exactly bits/2 bits (bits even, >= 8).
std::pair<Int, Int> bench_instance(unsigned bits, std::uint64_t seed, unsigned index);
BenchRow bench_row(unsigned bits, std::uint64_t seed, unsigned index, const Rational& c);
std::vector<BenchRow> run_bench(const BenchOptions& opt);

struct PowerFit {
    double exponent = 0;
    double log2_C = 0;
    std::size_t points = 0;
};
// Least squares of log2 baby_steps against log2 N over rows that reached the search;
// nullopt unless two or more sizes remain.
std::optional<PowerFit> fit_baby_steps(const std::vector<BenchRow>& rows);

// Whole CLI; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latfactor
