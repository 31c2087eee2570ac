#include "greedy/instances.hpp"

#include <algorithm>
#include <stdexcept>

namespace greedy {

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) {
  // splitmix64 output function applied to base + 1 + trial.
  std::uint64_t z = base + (trial + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Dictionary random_dictionary(int dim, int n_atoms, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("random_dictionary: dim must be >= 1");
  if (n_atoms < 1) throw std::invalid_argument("random_dictionary: n_atoms must be >= 1");
  Dictionary dict;
  dict.dim = dim;
  dict.atoms.reserve(static_cast<std::size_t>(n_atoms));
  while (static_cast<int>(dict.atoms.size()) < n_atoms) {
    Vector atom(static_cast<std::size_t>(dim));
    for (double& c : atom) c = rng.symmetric();
    const double norm = norm_l2(atom);
    if (norm < 1e-3) continue;  // essentially unreachable; keeps the scaling sane
    for (double& c : atom) c /= norm;
    dict.atoms.push_back(std::move(atom));
  }
  return dict;
}

Instance random_a1_instance(int dim, int n_atoms, std::uint64_t seed) {
  Rng rng(seed);
  Instance inst;
  inst.dict = random_dictionary(dim, n_atoms, rng);

  const std::size_t n = inst.dict.atoms.size();
  std::vector<double> raw(n);
  for (double& c : raw) c = rng.uniform();
  double total = 0.0;
  for (double c : raw) total += c;

  // Normalize to sum exactly to 1: the last coefficient absorbs the rounding
  // of the first n-1.
  std::vector<A1Entry> entries(n);
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    entries[i].coefficient = raw[i] / total;
    partial += entries[i].coefficient;
  }
  entries[n - 1].coefficient = std::max(0.0, 1.0 - partial);
  for (std::size_t i = 0; i < n; ++i) {
    entries[i].index = static_cast<int>(i);
    entries[i].sign = rng.sign();
  }

  inst.element = build_a1_element(inst.dict, entries, 1.0);
  return inst;
}

}  // namespace greedy
