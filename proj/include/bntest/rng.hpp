#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace bntest {

/** One splitmix64 mixing step. Stateless; used for seed derivation. */
std::uint64_t splitmix64(std::uint64_t x);

/**
 * Derives a child seed from a root seed, a label and an index.
 *
 * Every random routine in the library draws its seed through this
 * function so that one root seed determines an entire run while
 * unrelated consumers (different labels or indices) see independent
 * streams.
 */
std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                          std::uint64_t index = 0);

/**
 * Deterministic random generator wrapping mt19937_64.
 *
 * All sampling helpers consume the engine only through its raw 64-bit
 * output, so a given seed reproduces the same draws on every run.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  /** Uniform double in [0, 1) with 53 random bits. */
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /** Uniform integer in {0, ..., n-1}; n must be positive. */
  std::uint64_t below(std::uint64_t n);

  /**
   * Index drawn from an unnormalized nonnegative weight vector.
   * Falls back to the last positive cell if rounding exhausts the walk.
   */
  int categorical(std::span<const double> weights);

  std::int64_t poisson(double mean);

  /**
   * Number of marked items in a size-`draws` subset chosen uniformly
   * without replacement from `population` items of which `successes`
   * are marked.
   */
  std::int64_t hypergeometric(std::int64_t population, std::int64_t successes,
                              std::int64_t draws);

 private:
  std::mt19937_64 gen_;
};

}  // namespace bntest
