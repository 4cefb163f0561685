#ifndef GVSA_RNG_HPP
#define GVSA_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace gvsa {

/// Mixes a 64-bit state into a well-distributed output (splitmix64 step).
std::uint64_t splitmix64(std::uint64_t& state);

/// Derives a child seed from a base seed and a list of stream identifiers.
///
/// Experiments key their generators as
///   derive_seed(base, {experiment_id, repetition, member, ...})
/// so that every job owns an independent, reproducible stream.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> ids);

/// Seedable, portable random source: std::mt19937_64 for the raw stream,
/// with in-house uniform/normal mappings so that values do not depend on
/// standard-library distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound) without modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Standard normal deviate via the Marsaglia polar method.
  double gauss();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gvsa

#endif
