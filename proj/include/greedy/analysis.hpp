#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "greedy/engines.hpp"

namespace greedy {

// Convergence-rate evaluators. All return the bound on the residual l2 norm
// so every checker compares against the same quantity.
double rga_bound(int m);                     // 2/sqrt(m), m >= 1
double prga_bound(int m, double alpha);      // 2/m^(alpha/2), alpha in (0,1]
double crga_bound(int m);                    // 2/sqrt(m+4), m >= 0

// prod_{k=2}^{n_terms} (1 - k^-alpha) for alpha > 1, computed by
// compensated accumulation of log1p(-k^-alpha) so a million factors stay
// within ~1 ulp of the exact product.
double partial_product(double alpha, std::int64_t n_terms);

// Prefix products: entry [m] = prod_{k=2}^{m} (1 - k^-alpha), entries
// [0] and [1] are the empty product 1. Bit-identical to calling
// partial_product at each m.
std::vector<double> partial_products(double alpha, int m_max);

// Certified bracket for the infinite product P_alpha = prod_{k>=2}(1-k^-alpha):
//   upper = partial (every omitted factor is < 1),
//   lower = partial * exp(-2*T) with T = N^(1-alpha)/(alpha-1), an integral
//           bound on the omitted tail sum, combined with log(1-x) >= -2x.
struct ProductBound {
  double alpha = 0;
  std::int64_t n_terms = 0;
  double partial = 0;
  double lower = 0;
  double upper = 0;
};

ProductBound product_with_tail(double alpha, std::int64_t n_terms);

// The two-dimensional stall instance f = (1-b, b) over the canonical
// dictionary, certified in A1. Requires b in (0, 1/2).
Instance counterexample_instance(double b);

// Per-iteration residual floor b * prod_{k=2}^{m}(1-k^-alpha) / sqrt(2)
// (empty product for m = 1). Requires b in (0, 1/2) and alpha > 1.
double counterexample_floor(double b, double alpha, int m);

enum class Bound { RGA, PRGA, CRGA };

struct BoundEntry {
  int m = 0;
  double observed = 0;
  double bound = 0;
  bool satisfied = false;
};

// Margin convention: bound - observed for upper bounds, observed - bound for
// floors; worst_margin is the minimum over entries (0 when there are none).
struct BoundReport {
  std::string name;
  std::vector<BoundEntry> per_m;
  bool all_satisfied = true;
  double worst_margin = 0;
};

// Compares residual_l2(m) against the matching rate bound at tolerance
// 1e-12. The trace must come from the paired algorithm; PRGA traces with
// alpha > 1 are refused because no such bound exists there.
BoundReport check_upper_bound(const Trace& trace, Bound bound);

// Verifies residual_l2(m) >= counterexample_floor(b, alpha, m) - 1e-12 for
// every record of a PRGA trace on the stall instance; a fully satisfied
// report certifies non-convergence numerically.
BoundReport check_divergence_floor(const Trace& trace, double b, double alpha);

// Canonical dictionary of R^(2m) with f = (1/2m) * sum e_i, the instance on
// which no m-term approximant beats 1/(2*sqrt(m)). Requires m >= 2.
Instance lower_bound_instance(int m);

// Brute-force best m-term approximation error: enumerates every support of
// at most m atoms and projects f onto its span (dense least squares).
// Independent of the iterative engines by construction. Refuses supports
// with C(|atoms|, m) > 1e6.
double best_m_term_error(const Vector& f, const Dictionary& dict, int m);

inline constexpr double kBoundTolerance = 1e-12;

}  // namespace greedy
