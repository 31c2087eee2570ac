#pragma once

#include <string>
#include <vector>

#include "greedy/dictionary.hpp"

namespace greedy {

enum class Algorithm { PGA, RGA, PRGA, CRGA };

const char* algorithm_name(Algorithm kind);

struct AlgorithmConfig {
  Algorithm kind = Algorithm::PGA;
  double alpha = 1.0;  // PRGA relaxation exponent; the step at iteration m is 1/m^alpha
  int max_iterations = 100;
  double stop_epsilon = 1e-14;  // early-stop threshold on the residual l2 norm
};

// State after the m-th update. `step` is the applied coefficient: the
// correlation for PGA (and for the first RGA/PRGA step), 1/m^alpha for later
// RGA/PRGA steps, and gamma_m in [0,1] for CRGA.
struct IterationRecord {
  int m = 0;  // 1-based
  AtomRef atom;
  double step = 0;
  double residual_l2 = 0;
  double residual_squared = 0;
  double approx_l1 = 0;
};

struct Trace {
  AlgorithmConfig config;
  std::string instance_label;
  std::vector<IterationRecord> records;
  Vector final_approx;
  bool terminated_early = false;

  // CRGA convex-combination certificate (empty for the other algorithms).
  // Weights live over signed atoms, slot 2*i for +atoms[i] and 2*i+1 for
  // -atoms[i]; they stay nonnegative and sum to at most 1 at every step.
  std::vector<double> ledger_sums;  // one entry per record
  std::vector<double> ledger_mins;  // one entry per record
  std::vector<double> final_weights;
};

Trace run_pga(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg);
Trace run_rga(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg);
Trace run_prga(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg);
Trace run_crga(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg);

// Dispatch on cfg.kind.
Trace run(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg);

// Exact line-search step for the update r - gamma*d over gamma in [0,1]:
// the unconstrained minimizer <r,d>/||d||^2 clamped to the interval, and 0
// when d == 0.
double optimal_gamma(const Vector& r, const Vector& d);

// Re-applies one recorded step to a running approximant. Engines and replay
// share this function, so replaying a trace reproduces the run bit-for-bit.
Vector apply_step(Algorithm kind, int m, double step, const Vector& g, const Vector& approx);

// Approximant after each recorded step, rebuilt from the trace alone.
std::vector<Vector> replay_states(const Dictionary& dict, const Trace& trace);

// Final approximant rebuilt from the trace; bit-identical to final_approx.
Vector replay_approximation(const Dictionary& dict, const Trace& trace);

}  // namespace greedy
