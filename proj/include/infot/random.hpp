#pragma once

// Seeded instance generators shared by the benchmark command and the tests.
// Only std::mt19937_64 output is consumed directly (its sequence is fixed by
// the standard), so instances are identical across standard libraries.

#include "infot/core.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace infot::random {

/// Uniform double in [0, 1) with 53 random bits.
inline double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [lo, hi].
inline std::int64_t integer(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline CostMatrix uniform_costs(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::vector<double> entries(rows * cols);
  for (double& c : entries) c = unit(rng);
  return CostMatrix(rows, cols, std::move(entries));
}

/// Small nonnegative integers, for tests that need ties.
inline CostMatrix integer_costs(std::size_t rows, std::size_t cols,
                                std::int64_t max_value, std::mt19937_64& rng) {
  std::vector<double> entries(rows * cols);
  for (double& c : entries) c = static_cast<double>(integer(rng, 0, max_value));
  return CostMatrix(rows, cols, std::move(entries));
}

/// Fractions p/q with 1 <= q <= max_denominator and 1 <= p <= q, rescaled to
/// total mass 1.
inline std::vector<Rational> random_fractions(std::size_t count,
                                              std::int64_t max_denominator,
                                              std::mt19937_64& rng) {
  std::vector<Rational> w;
  w.reserve(count);
  Rational sum = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::int64_t q = integer(rng, 1, max_denominator);
    const std::int64_t p = integer(rng, 1, q);
    w.emplace_back(p, q);
    sum += w.back();
  }
  for (auto& x : w) x /= sum;
  return w;
}

/// Integer proportions in [1, max_weight], rescaled to total mass 1.
inline std::vector<Rational> random_proportions(std::size_t count, std::int64_t max_weight,
                                                std::mt19937_64& rng) {
  std::vector<std::int64_t> raw(count);
  std::int64_t sum = 0;
  for (auto& x : raw) {
    x = integer(rng, 1, max_weight);
    sum += x;
  }
  std::vector<Rational> w;
  w.reserve(count);
  for (auto x : raw) w.emplace_back(x, sum);
  return w;
}

}  // namespace infot::random
