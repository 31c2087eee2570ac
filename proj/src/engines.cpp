#include "greedy/engines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace greedy {

namespace {

void validate_common(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg) {
  if (static_cast<int>(f.size()) != dict.dim) {
    throw std::invalid_argument("run: element dimension does not match dictionary");
  }
  if (dict.atoms.empty()) throw std::invalid_argument("run: empty dictionary");
  if (!is_finite(f)) throw std::invalid_argument("run: element has non-finite coordinates");
  if (cfg.max_iterations < 1) throw std::invalid_argument("run: max_iterations must be >= 1");
  if (!(cfg.stop_epsilon >= 0.0)) throw std::invalid_argument("run: stop_epsilon must be >= 0");
}

// 1/m^alpha, with an exact reciprocal when alpha == 1 so the RGA and
// PRGA(alpha=1) step sequences are identical bit-for-bit.
double relax_weight(int m, double alpha) {
  return alpha == 1.0 ? 1.0 / static_cast<double>(m)
                      : std::pow(static_cast<double>(m), -alpha);
}

Trace run_engine(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg,
                 double alpha) {
  validate_common(f, dict, cfg);

  Trace trace;
  trace.config = cfg;

  const bool crga = cfg.kind == Algorithm::CRGA;
  Vector approx = zeros(f.size());
  Vector residual = f;
  double res_sq = inner(residual, residual);
  double res_l2 = std::sqrt(res_sq);
  std::vector<double> weights(crga ? 2 * dict.atoms.size() : 0, 0.0);

  trace.records.reserve(static_cast<std::size_t>(cfg.max_iterations));
  for (int m = 1; m <= cfg.max_iterations; ++m) {
    if (res_l2 < cfg.stop_epsilon) {
      trace.terminated_early = true;
      break;
    }
    const AtomRef ref = select_atom(dict, residual);
    const Vector g = signed_atom(dict, ref);

    double step = 0.0;
    switch (cfg.kind) {
      case Algorithm::PGA:
        step = ref.correlation;
        break;
      case Algorithm::RGA:
      case Algorithm::PRGA:
        // First step is the correlation-scaled atom; later steps enter the
        // convex combination with coefficient 1 and weight 1/m^alpha.
        step = m == 1 ? ref.correlation : relax_weight(m, alpha);
        break;
      case Algorithm::CRGA: {
        const Vector direction = combine(1.0, g, -1.0, approx);
        step = optimal_gamma(residual, direction);
        break;
      }
    }

    approx = apply_step(cfg.kind, m, step, g, approx);
    residual = combine(1.0, f, -1.0, approx);
    res_sq = inner(residual, residual);
    res_l2 = std::sqrt(res_sq);

    if (crga) {
      for (double& w : weights) w *= 1.0 - step;
      weights[2 * static_cast<std::size_t>(ref.index) + (ref.sign < 0 ? 1 : 0)] += step;
      double sum = 0.0;
      double min_w = weights[0];
      for (double w : weights) {
        sum += w;
        min_w = std::min(min_w, w);
      }
      trace.ledger_sums.push_back(sum);
      trace.ledger_mins.push_back(min_w);
    }

    trace.records.push_back({m, ref, step, res_l2, res_sq, norm_l1(approx)});
  }

  trace.final_approx = std::move(approx);
  if (crga) trace.final_weights = std::move(weights);
  return trace;
}

}  // namespace

const char* algorithm_name(Algorithm kind) {
  switch (kind) {
    case Algorithm::PGA: return "pga";
    case Algorithm::RGA: return "rga";
    case Algorithm::PRGA: return "prga";
    case Algorithm::CRGA: return "crga";
  }
  return "unknown";
}

Trace run_pga(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg) {
  if (cfg.kind != Algorithm::PGA) throw std::invalid_argument("run_pga: config kind is not PGA");
  return run_engine(f, dict, cfg, 1.0);
}

Trace run_rga(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg) {
  if (cfg.kind != Algorithm::RGA) throw std::invalid_argument("run_rga: config kind is not RGA");
  return run_engine(f, dict, cfg, 1.0);
}

Trace run_prga(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg) {
  if (cfg.kind != Algorithm::PRGA) {
    throw std::invalid_argument("run_prga: config kind is not PRGA");
  }
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("run_prga: alpha must be > 0");
  return run_engine(f, dict, cfg, cfg.alpha);
}

Trace run_crga(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg) {
  if (cfg.kind != Algorithm::CRGA) {
    throw std::invalid_argument("run_crga: config kind is not CRGA");
  }
  return run_engine(f, dict, cfg, 1.0);
}

Trace run(const Vector& f, const Dictionary& dict, const AlgorithmConfig& cfg) {
  switch (cfg.kind) {
    case Algorithm::PGA: return run_pga(f, dict, cfg);
    case Algorithm::RGA: return run_rga(f, dict, cfg);
    case Algorithm::PRGA: return run_prga(f, dict, cfg);
    case Algorithm::CRGA: return run_crga(f, dict, cfg);
  }
  throw std::invalid_argument("run: unknown algorithm kind");
}

double optimal_gamma(const Vector& r, const Vector& d) {
  const double den = inner(d, d);  // also checks dimensions
  if (den == 0.0) return 0.0;
  const double unclamped = inner(r, d) / den;
  return std::min(1.0, std::max(0.0, unclamped));
}

Vector apply_step(Algorithm kind, int m, double step, const Vector& g, const Vector& approx) {
  switch (kind) {
    case Algorithm::PGA:
      return combine(1.0, approx, step, g);
    case Algorithm::RGA:
    case Algorithm::PRGA:
      if (m == 1) return combine(step, g, 0.0, approx);
      return combine(1.0 - step, approx, step, g);
    case Algorithm::CRGA:
      return combine(1.0 - step, approx, step, g);
  }
  throw std::invalid_argument("apply_step: unknown algorithm kind");
}

std::vector<Vector> replay_states(const Dictionary& dict, const Trace& trace) {
  std::vector<Vector> states;
  states.reserve(trace.records.size());
  Vector approx = zeros(static_cast<std::size_t>(dict.dim));
  for (const IterationRecord& rec : trace.records) {
    approx = apply_step(trace.config.kind, rec.m, rec.step, signed_atom(dict, rec.atom), approx);
    states.push_back(approx);
  }
  return states;
}

Vector replay_approximation(const Dictionary& dict, const Trace& trace) {
  Vector approx = zeros(static_cast<std::size_t>(dict.dim));
  for (const IterationRecord& rec : trace.records) {
    approx = apply_step(trace.config.kind, rec.m, rec.step, signed_atom(dict, rec.atom), approx);
  }
  return approx;
}

}  // namespace greedy
