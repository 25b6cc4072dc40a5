#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zetadef {

struct BenchPoint {
    std::uint64_t size = 0;    // L or p
    double fast_ms = 0;        // giant-step path
    double naive_ms = 0;       // reference path
};

struct BenchReport {
    std::vector<BenchPoint> points;
    std::vector<double> fast_ratios;   // t(4L)/t(L) per consecutive pair
    std::vector<double> naive_ratios;
    double fast_ratio_median = 0;
    double naive_ratio_median = 0;
    std::string to_json() const;
};

/// interval_product scaling: m x m, modulus p^N, sizes L, L*4, L*16, ...
BenchReport bench_bgs(int m, std::int64_t p, int N, std::vector<std::uint64_t> sizes,
                      int repeats = 3);

/// factorial_table scaling at fixed R: table to M = c + p R for each p.
BenchReport bench_fact(std::vector<std::int64_t> primes, std::int64_t R, int Nprime,
                       int repeats = 3);

}  // namespace zetadef
