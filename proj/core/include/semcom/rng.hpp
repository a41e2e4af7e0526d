#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace semcom {

// Deterministic 64-bit generator (splitmix64). Chosen over <random> engines
// plus std distributions because the standard leaves distribution output
// unspecified across implementations; this generator produces bit-identical
// streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit();

  // Uniform integer in [0, bound), bound >= 1, via rejection (unbiased).
  std::uint64_t next_below(std::uint64_t bound);

  // Draws an index from a probability vector by CDF scan. Falls back to the
  // last positive-mass index if accumulated rounding leaves the draw past the
  // final cumulative value.
  std::size_t sample_pmf(const std::vector<double>& probs);

 private:
  std::uint64_t state_;
};

// Stateless mix of a seed with one or more labels/indices, for carving
// independent named substreams out of a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

}  // namespace semcom
