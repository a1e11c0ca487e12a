#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace modelspec::table1 {

inline constexpr std::array<double, 5> kExponents{1.1, 1.5, 2.0, 2.5, 2.9};
/// delta_k = kDeltaNumerators[k] * pi / 24.
inline constexpr std::array<int, 6> kDeltaNumerators{1, 2, 4, 6, 8, 10};
inline constexpr int kCases = 3;

double delta(std::size_t k);

/// Published upper bounds m_p for torus case c (1..3), exponent index i, radius index k.
double golden(int c, std::size_t i, std::size_t k);

struct Cell {
    int torus_case = 0;
    double p = 0.0;
    double delta = 0.0;
    double value = 0.0;
    double golden = 0.0;
    /// (value - golden) / golden
    double deviation = 0.0;
    double argmax_r = 0.0;
};

/// All 90 cells in row order (case, p, delta), computed on `threads` workers
/// (0: hardware concurrency). Output order does not depend on scheduling.
std::vector<Cell> compute(unsigned threads = 0);

} // namespace modelspec::table1
