// Acceptance gate: every shipped guarantee checked end to end, one PASS/FAIL
// line per criterion, nonzero exit if anything fails. Tolerances and budgets
// are pinned here, next to the checks that use them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "greedy/analysis.hpp"
#include "greedy/engines.hpp"
#include "greedy/instances.hpp"
#include "greedy/serialize.hpp"

namespace {

using namespace greedy;

struct Outcome {
  bool pass = true;
  std::string detail;
};

AlgorithmConfig config(Algorithm kind, int m, double alpha = 1.0) {
  AlgorithmConfig cfg;
  cfg.kind = kind;
  cfg.alpha = alpha;
  cfg.max_iterations = m;
  cfg.stop_epsilon = 0.0;  // every criterion is a claim about every iterate
  return cfg;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// The shared randomized suite: 100 certified random instances, 25 per
// dimension, dictionaries twice as large as the space, seeds derived from
// base 7 by trial index.
const std::vector<Instance>& suite() {
  static const std::vector<Instance> instances = [] {
    const int dims[] = {2, 8, 16, 64};
    std::vector<Instance> out;
    out.reserve(100);
    for (int t = 0; t < 100; ++t) {
      const int dim = dims[t / 25];
      out.push_back(random_a1_instance(dim, 2 * dim, trial_seed(7, t)));
    }
    return out;
  }();
  return instances;
}

// Final errors of the power-relaxed runs on f = (1/2, 1/2) in R^2, with the
// alpha=2 value cross-checked against the closed form 0.5*(501/1000)/sqrt(2).
Outcome criterion_reproduction() {
  Outcome out;
  const Dictionary dict = canonical_dictionary(2);
  const A1Element element = build_a1_element(dict, {{0, 1, 0.5}, {1, 1, 0.5}}, 1.0);

  const struct {
    double alpha;
    double golden;
  } rows[] = {{1.1, 0.003805}, {1.5, 0.068021}, {2.0, 0.177130}};

  double final_alpha2 = 0.0;
  for (const auto& row : rows) {
    const Trace t = run_prga(element.vector, dict, config(Algorithm::PRGA, 500, row.alpha));
    const double final_error = t.records.back().residual_l2;
    if (std::fabs(final_error - row.golden) > 1e-4) {
      out.pass = false;
      out.detail += fmt("alpha=%.1f final %.6f off golden %.6f; ", row.alpha, final_error,
                        row.golden);
    }
    if (row.alpha == 2.0) final_alpha2 = final_error;
  }

  const double closed_form = 0.5 * (501.0 / 1000.0) / std::sqrt(2.0);
  const double diff = std::fabs(final_alpha2 - closed_form);
  if (diff > 1e-6) {
    out.pass = false;
    out.detail += fmt("alpha=2 deviates %.3e from the closed form; ", diff);
  }
  if (out.pass) out.detail = fmt("all three within 1e-4, closed-form diff %.1e", diff);
  return out;
}

Outcome criterion_line_search_rate() {
  Outcome out;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < suite().size(); ++i) {
    const Instance& inst = suite()[i];
    const Trace t = run_crga(inst.element.vector, inst.dict, config(Algorithm::CRGA, 200));
    const BoundReport report = check_upper_bound(t, Bound::CRGA);
    worst = std::min(worst, report.worst_margin);
    if (!report.all_satisfied) {
      out.pass = false;
      out.detail += fmt("instance %.0f violates 2/sqrt(m+4); ", static_cast<double>(i));
    }
  }
  if (out.pass) {
    out.detail = fmt("100 instances x 200 iterations, worst margin %.3e", worst);
  }
  return out;
}

Outcome criterion_relaxed_rates() {
  Outcome out;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < suite().size(); ++i) {
    const Instance& inst = suite()[i];
    const Trace rga = run_rga(inst.element.vector, inst.dict, config(Algorithm::RGA, 200));
    const BoundReport r = check_upper_bound(rga, Bound::RGA);
    worst = std::min(worst, r.worst_margin);
    if (!r.all_satisfied) {
      out.pass = false;
      out.detail += fmt("instance %.0f violates 2/sqrt(m); ", static_cast<double>(i));
    }

    for (const double alpha : {0.25, 0.5, 1.0}) {
      const Trace prga =
          run_prga(inst.element.vector, inst.dict, config(Algorithm::PRGA, 200, alpha));
      const BoundReport p = check_upper_bound(prga, Bound::PRGA);
      worst = std::min(worst, p.worst_margin);
      if (!p.all_satisfied) {
        out.pass = false;
        out.detail += fmt("instance %.0f violates 2/m^(%.2f/2); ", static_cast<double>(i), alpha);
      }
      if (alpha == 1.0) {
        // The two engines must agree bit for bit, file contents included.
        bool identical = trace_csv(prga) == trace_csv(rga) &&
                         prga.final_approx.size() == rga.final_approx.size();
        for (std::size_t k = 0; identical && k < rga.final_approx.size(); ++k) {
          identical = prga.final_approx[k] == rga.final_approx[k];
        }
        if (!identical) {
          out.pass = false;
          out.detail += fmt("instance %.0f: alpha=1 trace differs from rga; ",
                            static_cast<double>(i));
        }
      }
    }
  }
  if (out.pass) {
    out.detail =
        fmt("rga + alphas {0.25,0.5,1} all bounded, worst margin %.3e; alpha=1 bit-identical",
            worst);
  }
  return out;
}

Outcome criterion_stall_floor() {
  Outcome out;
  double worst = std::numeric_limits<double>::infinity();
  for (const double b : {0.1, 0.25, 0.4}) {
    const Instance inst = counterexample_instance(b);
    for (const double alpha : {1.1, 1.5, 2.0, 3.0}) {
      const Trace t =
          run_prga(inst.element.vector, inst.dict, config(Algorithm::PRGA, 10000, alpha));
      const BoundReport report = check_divergence_floor(t, b, alpha);
      worst = std::min(worst, report.worst_margin);
      if (!report.all_satisfied) {
        out.pass = false;
        out.detail += fmt("b=%.2f alpha=%.1f breaks the per-m floor; ", b, alpha);
      }
      const ProductBound pb = product_with_tail(alpha, 1000000);
      const double limit_floor = b * pb.lower / std::sqrt(2.0);
      const double final_residual = t.records.back().residual_l2;
      if (!(limit_floor > 0.0) || !(final_residual > limit_floor)) {
        out.pass = false;
        out.detail += fmt("b=%.2f alpha=%.1f: final %.6e not above limit %.6e; ", b, alpha,
                          final_residual);
      }
    }
  }
  if (out.pass) {
    out.detail = fmt("12 (b,alpha) pairs, M=10000, worst per-m margin %.3e", worst);
  }
  return out;
}

Outcome criterion_product_identity() {
  Outcome out;
  double worst = 0.0;
  for (const std::int64_t n : {2LL, 10LL, 100LL, 1000LL, 10000LL, 100000LL, 1000000LL}) {
    const double expected = static_cast<double>(n + 1) / (2.0 * static_cast<double>(n));
    const double diff = std::fabs(partial_product(2.0, n) - expected);
    worst = std::max(worst, diff);
    if (diff >= 1e-12) {
      out.pass = false;
      out.detail += fmt("N=%.0f deviates %.3e from (N+1)/(2N); ", static_cast<double>(n), diff);
    }
  }

  const ProductBound pb = product_with_tail(2.0, 10000);
  if (!(pb.lower <= 0.5 && 0.5 <= pb.upper && pb.upper - pb.lower < 1e-3)) {
    out.pass = false;
    out.detail += fmt("alpha=2 bracket [%.9f, %.9f] misses 1/2 or is too wide; ", pb.lower,
                      pb.upper);
  }
  for (const double alpha : {1.1, 1.5, 3.0}) {
    if (!(product_with_tail(alpha, 10000).lower > 0.0)) {
      out.pass = false;
      out.detail += fmt("alpha=%.1f bracket not positive; ", alpha);
    }
  }
  if (out.pass) {
    out.detail = fmt("telescoping within %.1e up to N=1e6, bracket width %.2e", worst,
                     pb.upper - pb.lower);
  }
  return out;
}

Outcome criterion_m_term_floor() {
  Outcome out;
  double worst_eq = 0.0;
  for (const int m : {2, 3, 4, 5}) {
    const Instance inst = lower_bound_instance(m);
    const double floor = 1.0 / (2.0 * std::sqrt(static_cast<double>(m)));
    const double oracle = best_m_term_error(inst.element.vector, inst.dict, m);
    const double diff = std::fabs(oracle - floor);
    worst_eq = std::max(worst_eq, diff);
    if (diff > 1e-12) {
      out.pass = false;
      out.detail += fmt("m=%.0f oracle %.15f != 1/(2*sqrt(m)); ", static_cast<double>(m), oracle);
    }

    const struct {
      Algorithm kind;
      double alpha;
    } algos[] = {{Algorithm::PGA, 1.0},
                 {Algorithm::RGA, 1.0},
                 {Algorithm::PRGA, 0.5},
                 {Algorithm::PRGA, 1.0},
                 {Algorithm::CRGA, 1.0}};
    for (const auto& a : algos) {
      const Trace t = run(inst.element.vector, inst.dict, config(a.kind, m, a.alpha));
      const double err = t.records.back().residual_l2;
      if (err < floor - 1e-12) {
        out.pass = false;
        out.detail += fmt("m=%.0f: a greedy m-th iterate beat the floor (%.3e below); ",
                          static_cast<double>(m), floor - err);
      }
    }
  }
  if (out.pass) out.detail = fmt("m in {2..5}: oracle equals the floor within %.1e", worst_eq);
  return out;
}

Outcome criterion_gamma_oracle() {
  Outcome out;
  double worst_gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng(trial_seed(11, i));
    Vector r(8), d(8);
    for (double& v : r) v = rng.symmetric();
    for (double& v : d) v = rng.symmetric();

    const double gamma = optimal_gamma(r, d);

    // Dense scan of Phi(g) = ||r - g*d||^2 over [0,1] in 1e-5 steps, using
    // the expanded quadratic; ties keep the lowest g.
    const double rr = inner(r, r);
    const double rd = inner(r, d);
    const double dd = inner(d, d);
    double best_g = 0.0;
    double best_phi = rr;
    for (int k = 1; k <= 100000; ++k) {
      const double g = static_cast<double>(k) * 1e-5;
      const double phi = rr - 2.0 * g * rd + g * g * dd;
      if (phi < best_phi) {
        best_phi = phi;
        best_g = g;
      }
    }

    const double gap = std::fabs(gamma - best_g);
    worst_gap = std::max(worst_gap, gap);
    if (gap > 2e-5) {
      out.pass = false;
      out.detail += fmt("pair %.0f: gamma %.7f vs grid %.7f; ", static_cast<double>(i), gamma,
                        best_g);
    }

    const double phi_opt = inner(combine(1.0, r, -gamma, d), combine(1.0, r, -gamma, d));
    const double phi_grid = inner(combine(1.0, r, -best_g, d), combine(1.0, r, -best_g, d));
    if (phi_opt > phi_grid + 1e-10) {
      out.pass = false;
      out.detail += fmt("pair %.0f: closed form loses to the grid by %.3e; ",
                        static_cast<double>(i), phi_opt - phi_grid);
    }
  }
  if (out.pass) out.detail = fmt("1000 pairs, worst |gamma - grid argmin| = %.2e", worst_gap);
  return out;
}

Outcome criterion_monotonic_ledger() {
  Outcome out;
  std::vector<Instance> extra;
  for (const double b : {0.1, 0.25, 0.4}) extra.push_back(counterexample_instance(b));
  for (const int m : {2, 3, 4, 5}) extra.push_back(lower_bound_instance(m));

  int checked = 0;
  auto verify_one = [&](const Instance& inst) {
    const Trace t = run_crga(inst.element.vector, inst.dict, config(Algorithm::CRGA, 200));
    double prev = norm_l2(inst.element.vector);
    for (const IterationRecord& rec : t.records) {
      if (rec.residual_l2 > prev + 1e-12) {
        out.pass = false;
        out.detail += fmt("residual rose by %.3e at m=%.0f; ", rec.residual_l2 - prev,
                          static_cast<double>(rec.m));
      }
      prev = rec.residual_l2;
    }
    for (std::size_t k = 0; k < t.ledger_sums.size(); ++k) {
      if (t.ledger_sums[k] > 1.0 + 1e-12 || t.ledger_mins[k] < 0.0) {
        out.pass = false;
        out.detail += fmt("weight ledger broken at m=%.0f (sum %.15f); ",
                          static_cast<double>(k + 1), t.ledger_sums[k]);
      }
    }
    ++checked;
  };

  for (const Instance& inst : suite()) verify_one(inst);
  for (const Instance& inst : extra) verify_one(inst);
  if (out.pass) {
    out.detail = fmt("%.0f line-search runs: residuals nonincreasing, ledger sums <= 1",
                     static_cast<double>(checked));
  }
  return out;
}

struct Criterion {
  const char* name;
  Outcome (*check)();
  double budget_seconds;  // 0 = no budget
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"final-error reproduction on f=(1/2,1/2), M=500", criterion_reproduction, 1.0},
      {"line-search rate 2/sqrt(m+4), 100 random instances", criterion_line_search_rate, 10.0},
      {"relaxed rates 2/m^(alpha/2) + alpha=1 bit identity", criterion_relaxed_rates, 0.0},
      {"stall floor b*prod(1-k^-alpha)/sqrt(2), M=10000", criterion_stall_floor, 30.0},
      {"partial-product telescoping and tail brackets", criterion_product_identity, 0.0},
      {"m-term floor 1/(2*sqrt(m)) vs brute-force oracle", criterion_m_term_floor, 0.0},
      {"line-search step oracle vs 1e-5 grid", criterion_gamma_oracle, 0.0},
      {"residual monotonicity and weight ledger", criterion_monotonic_ledger, 0.0},
  };

  const int total = static_cast<int>(sizeof criteria / sizeof criteria[0]);
  int passed = 0;
  for (int i = 0; i < total; ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = criteria[i].check();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_seconds > 0.0 && seconds >= criteria[i].budget_seconds) {
      outcome.pass = false;
      outcome.detail += fmt("exceeded the %.0fs budget; ", criteria[i].budget_seconds);
    }
    passed += outcome.pass ? 1 : 0;
    std::printf("[%d/%d] %s  %s (%.2fs) — %s\n", i + 1, total, outcome.pass ? "PASS" : "FAIL",
                criteria[i].name, seconds, outcome.detail.c_str());
  }
  std::printf("acceptance: %d/%d criteria passed\n", passed, total);
  return passed == total ? 0 : 1;
}
