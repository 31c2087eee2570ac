#include "greedy/dictionary.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace greedy {

Dictionary canonical_dictionary(int n) {
  if (n < 1) throw std::invalid_argument("canonical_dictionary: n must be >= 1");
  Dictionary d;
  d.dim = n;
  d.atoms.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vector e = zeros(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(i)] = 1.0;
    d.atoms.push_back(std::move(e));
  }
  return d;
}

DictionaryReport validate(const Dictionary& dict) {
  DictionaryReport report;
  if (dict.atoms.empty()) {
    report.violations.push_back({-1, "empty atom list", 0.0});
    return report;
  }
  if (dict.dim < 1) {
    report.violations.push_back({-1, "dim must be >= 1", static_cast<double>(dict.dim)});
  }
  for (std::size_t i = 0; i < dict.atoms.size(); ++i) {
    const Vector& a = dict.atoms[i];
    const int idx = static_cast<int>(i);
    if (static_cast<int>(a.size()) != dict.dim) {
      report.violations.push_back({idx, "dimension mismatch", static_cast<double>(a.size())});
      continue;
    }
    const double norm = norm_l2(a);
    // NaN coordinates fail this comparison and are reported too.
    if (!(std::fabs(norm - 1.0) <= kAtomNormTolerance)) {
      report.violations.push_back({idx, "atom norm deviates from 1", norm});
    }
  }
  return report;
}

AtomRef select_atom(const Dictionary& dict, const Vector& r) {
  if (dict.atoms.empty()) throw std::invalid_argument("select_atom: empty dictionary");
  if (static_cast<int>(r.size()) != dict.dim) {
    throw std::invalid_argument("select_atom: residual dimension does not match dictionary");
  }
  int best_index = 0;
  double best_corr = inner(r, dict.atoms[0]);
  double best_abs = std::fabs(best_corr);
  for (std::size_t i = 1; i < dict.atoms.size(); ++i) {
    const double c = inner(r, dict.atoms[i]);
    if (std::fabs(c) > best_abs) {  // strict: ties keep the lowest index
      best_index = static_cast<int>(i);
      best_corr = c;
      best_abs = std::fabs(c);
    }
  }
  return {best_index, best_corr < 0.0 ? -1 : 1, best_abs};
}

Vector signed_atom(const Dictionary& dict, const AtomRef& ref) {
  if (ref.index < 0 || ref.index >= static_cast<int>(dict.atoms.size())) {
    throw std::invalid_argument("signed_atom: atom index out of range");
  }
  const Vector& a = dict.atoms[static_cast<std::size_t>(ref.index)];
  if (ref.sign == 1) return a;
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

A1Element build_a1_element(const Dictionary& dict, const std::vector<A1Entry>& entries,
                           double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("build_a1_element: tau must be > 0");
  const int n_atoms = static_cast<int>(dict.atoms.size());
  for (const A1Entry& e : entries) {
    if (e.index < 0 || e.index >= n_atoms) {
      throw std::invalid_argument("build_a1_element: entry index " + std::to_string(e.index) +
                                  " out of range");
    }
    if (e.sign != 1 && e.sign != -1) {
      throw std::invalid_argument("build_a1_element: sign must be +1 or -1");
    }
  }
  double sum = 0.0;
  for (const A1Entry& e : entries) {
    sum += tau == 1.0 ? std::fabs(e.coefficient) : std::pow(std::fabs(e.coefficient), tau);
  }
  if (!(sum <= 1.0 + kMembershipTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "build_a1_element: coefficient constraint violated, sum |a|^tau = " << sum;
    throw std::domain_error(msg.str());
  }
  A1Element out;
  out.vector = zeros(static_cast<std::size_t>(dict.dim));
  for (const A1Entry& e : entries) {
    out.vector = combine(1.0, out.vector, e.sign * e.coefficient,
                         dict.atoms[static_cast<std::size_t>(e.index)]);
  }
  out.entries = entries;
  out.tau = tau;
  return out;
}

}  // namespace greedy
