#pragma once

#include <cstdint>
#include <random>

#include "greedy/dictionary.hpp"

namespace greedy {

// Identifier of the pseudo-random scheme, written into verification output
// headers so trials are replayable across implementations: the mt19937_64
// engine with doubles taken as (word >> 11) * 2^-53.
inline constexpr const char* kGeneratorId = "mt19937_64/raw53";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1), 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

  int sign() { return uniform() < 0.5 ? 1 : -1; }

 private:
  std::mt19937_64 engine_;
};

// Per-trial seed derivation (splitmix64 of base + 1 + trial), so parallel
// trials draw from independent, index-addressed streams.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial);

// n_atoms unit-norm atoms with coordinates drawn uniformly from [-1, 1) and
// normalized.
Dictionary random_dictionary(int dim, int n_atoms, Rng& rng);

// A random certified A1 instance: random dictionary, nonnegative
// coefficients normalized to sum exactly to 1 (the last coefficient absorbs
// the rounding), then random signs. Draw order: atoms, coefficients, signs.
Instance random_a1_instance(int dim, int n_atoms, std::uint64_t seed);

}  // namespace greedy
