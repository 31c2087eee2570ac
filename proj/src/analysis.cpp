#include "greedy/analysis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace greedy {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Compensated (Kahan) accumulator. The log sums below run over up to a
// million terms and the telescoping identity is checked at 1e-12, which a
// naive left-to-right sum cannot guarantee.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double log_factor(double k, double alpha) { return std::log1p(-std::pow(k, -alpha)); }

void require_product_args(double alpha, std::int64_t n_terms) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument(
        "partial_product: alpha must be > 1 (the product vanishes in the limit otherwise)");
  }
  if (n_terms < 2) throw std::invalid_argument("partial_product: n_terms must be >= 2");
}

void require_counterexample_args(double b, double alpha) {
  if (!(b > 0.0 && b < 0.5)) {
    throw std::invalid_argument("counterexample: b must lie strictly inside (0, 1/2)");
  }
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("counterexample: alpha must be > 1");
  }
}

}  // namespace

double rga_bound(int m) {
  if (m < 1) throw std::invalid_argument("rga_bound: m must be >= 1");
  return 2.0 / std::sqrt(static_cast<double>(m));
}

double prga_bound(int m, double alpha) {
  if (m < 1) throw std::invalid_argument("prga_bound: m must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument(
        "prga_bound: alpha must lie in (0, 1]; for alpha > 1 no rate bound exists (the "
        "algorithm can stall at a positive error)");
  }
  return 2.0 / std::pow(static_cast<double>(m), 0.5 * alpha);
}

double crga_bound(int m) {
  if (m < 0) throw std::invalid_argument("crga_bound: m must be >= 0");
  return 2.0 / std::sqrt(static_cast<double>(m) + 4.0);
}

double partial_product(double alpha, std::int64_t n_terms) {
  require_product_args(alpha, n_terms);
  KahanSum log_sum;
  for (std::int64_t k = 2; k <= n_terms; ++k) {
    log_sum.add(log_factor(static_cast<double>(k), alpha));
  }
  return std::exp(log_sum.sum);
}

std::vector<double> partial_products(double alpha, int m_max) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument(
        "partial_products: alpha must be > 1 (the product vanishes in the limit otherwise)");
  }
  if (m_max < 1) throw std::invalid_argument("partial_products: m_max must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(m_max) + 1, 1.0);
  KahanSum log_sum;
  for (int m = 2; m <= m_max; ++m) {
    log_sum.add(log_factor(static_cast<double>(m), alpha));
    out[static_cast<std::size_t>(m)] = std::exp(log_sum.sum);
  }
  return out;
}

ProductBound product_with_tail(double alpha, std::int64_t n_terms) {
  const double partial = partial_product(alpha, n_terms);
  // Integral comparison: sum_{k>N} k^-alpha <= N^(1-alpha)/(alpha-1).
  const double tail = std::pow(static_cast<double>(n_terms), 1.0 - alpha) / (alpha - 1.0);
  ProductBound out;
  out.alpha = alpha;
  out.n_terms = n_terms;
  out.partial = partial;
  out.lower = partial * std::exp(-2.0 * tail);
  out.upper = partial;
  return out;
}

Instance counterexample_instance(double b) {
  if (!(b > 0.0 && b < 0.5)) {
    throw std::invalid_argument("counterexample_instance: b must lie strictly inside (0, 1/2)");
  }
  Instance inst;
  inst.dict = canonical_dictionary(2);
  inst.element = build_a1_element(inst.dict, {{0, 1, 1.0 - b}, {1, 1, b}}, 1.0);
  return inst;
}

double counterexample_floor(double b, double alpha, int m) {
  require_counterexample_args(b, alpha);
  if (m < 1) throw std::invalid_argument("counterexample_floor: m must be >= 1");
  const double product = m == 1 ? 1.0 : partial_product(alpha, m);
  return b * product / kSqrt2;
}

BoundReport check_upper_bound(const Trace& trace, Bound bound) {
  BoundReport report;
  switch (bound) {
    case Bound::RGA:
      if (trace.config.kind != Algorithm::RGA) {
        throw std::invalid_argument("check_upper_bound: rga bound requires an RGA trace");
      }
      report.name = "rga";
      break;
    case Bound::PRGA:
      if (trace.config.kind != Algorithm::PRGA) {
        throw std::invalid_argument("check_upper_bound: prga bound requires a PRGA trace");
      }
      // Validates alpha <= 1; refuses traces outside the bound's scope.
      prga_bound(1, trace.config.alpha);
      {
        std::ostringstream name;
        name << "prga(alpha=" << trace.config.alpha << ")";
        report.name = name.str();
      }
      break;
    case Bound::CRGA:
      if (trace.config.kind != Algorithm::CRGA) {
        throw std::invalid_argument("check_upper_bound: crga bound requires a CRGA trace");
      }
      report.name = "crga";
      break;
  }

  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const IterationRecord& rec : trace.records) {
    double value = 0.0;
    switch (bound) {
      case Bound::RGA: value = rga_bound(rec.m); break;
      case Bound::PRGA: value = prga_bound(rec.m, trace.config.alpha); break;
      case Bound::CRGA: value = crga_bound(rec.m); break;
    }
    const bool ok = rec.residual_l2 <= value + kBoundTolerance;
    report.per_m.push_back({rec.m, rec.residual_l2, value, ok});
    report.all_satisfied = report.all_satisfied && ok;
    report.worst_margin = std::min(report.worst_margin, value - rec.residual_l2);
  }
  if (report.per_m.empty()) report.worst_margin = 0.0;
  return report;
}

BoundReport check_divergence_floor(const Trace& trace, double b, double alpha) {
  require_counterexample_args(b, alpha);
  if (trace.config.kind != Algorithm::PRGA) {
    throw std::invalid_argument("check_divergence_floor: requires a PRGA trace");
  }
  if (trace.config.alpha != alpha) {
    throw std::invalid_argument("check_divergence_floor: trace alpha does not match");
  }

  BoundReport report;
  {
    std::ostringstream name;
    name << "divergence-floor(b=" << b << ",alpha=" << alpha << ")";
    report.name = name.str();
  }
  const int m_max = trace.records.empty() ? 1 : trace.records.back().m;
  const std::vector<double> products = partial_products(alpha, m_max);

  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const IterationRecord& rec : trace.records) {
    const double floor = b * products[static_cast<std::size_t>(rec.m)] / kSqrt2;
    const bool ok = rec.residual_l2 >= floor - kBoundTolerance;
    report.per_m.push_back({rec.m, rec.residual_l2, floor, ok});
    report.all_satisfied = report.all_satisfied && ok;
    report.worst_margin = std::min(report.worst_margin, rec.residual_l2 - floor);
  }
  if (report.per_m.empty()) report.worst_margin = 0.0;
  return report;
}

Instance lower_bound_instance(int m) {
  if (m < 2) throw std::invalid_argument("lower_bound_instance: m must be >= 2");
  Instance inst;
  inst.dict = canonical_dictionary(2 * m);
  std::vector<A1Entry> entries;
  entries.reserve(static_cast<std::size_t>(2 * m));
  const double coeff = 1.0 / (2.0 * static_cast<double>(m));
  for (int i = 0; i < 2 * m; ++i) entries.push_back({i, 1, coeff});
  inst.element = build_a1_element(inst.dict, entries, 1.0);
  return inst;
}

double best_m_term_error(const Vector& f, const Dictionary& dict, int m) {
  if (m < 0) throw std::invalid_argument("best_m_term_error: m must be >= 0");
  if (static_cast<int>(f.size()) != dict.dim) {
    throw std::invalid_argument("best_m_term_error: element dimension does not match dictionary");
  }
  if (m == 0) return norm_l2(f);

  const int n = static_cast<int>(dict.atoms.size());
  const int k = std::min(m, n);  // a larger span never hurts the projection

  double combinations = 1.0;
  for (int i = 0; i < k; ++i) combinations *= static_cast<double>(n - i) / (i + 1);
  if (combinations > 1e6) {
    std::ostringstream msg;
    msg << "best_m_term_error: support enumeration refused, C(" << n << "," << k
        << ") ~= " << combinations << " exceeds 1e6";
    throw std::length_error(msg.str());
  }

  Eigen::VectorXd target(dict.dim);
  for (int i = 0; i < dict.dim; ++i) target(i) = f[static_cast<std::size_t>(i)];

  // Enumerate k-subsets in lexicographic order; project onto each span.
  std::vector<int> support(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) support[static_cast<std::size_t>(i)] = i;

  double best = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd basis(dict.dim, k);
  while (true) {
    for (int c = 0; c < k; ++c) {
      const Vector& atom = dict.atoms[static_cast<std::size_t>(support[static_cast<std::size_t>(c)])];
      for (int i = 0; i < dict.dim; ++i) basis(i, c) = atom[static_cast<std::size_t>(i)];
    }
    // Rank-revealing least squares; exact for rank-deficient supports too.
    const Eigen::VectorXd coeffs = basis.colPivHouseholderQr().solve(target);
    const double residual = (target - basis * coeffs).norm();
    best = std::min(best, residual);

    // next combination
    int pos = k - 1;
    while (pos >= 0 && support[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++support[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j) {
      support[static_cast<std::size_t>(j)] = support[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return best;
}

}  // namespace greedy
