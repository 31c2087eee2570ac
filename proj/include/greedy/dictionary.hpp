#pragma once

#include <string>
#include <vector>

#include "greedy/hilbert.hpp"

namespace greedy {

// Finite symmetric dictionary. Only one representative per +/- pair is
// stored; the symmetric closure {+a, -a} is implied everywhere, which makes
// the sup of correlations over the closure equal to the max of absolute
// correlations over the stored atoms.
struct Dictionary {
  std::vector<Vector> atoms;
  int dim = 0;
};

// Result of a greedy selection: the winning representative, the sign that
// realizes the maximal correlation, and the correlation value itself.
struct AtomRef {
  int index = 0;
  int sign = 1;            // +1 or -1
  double correlation = 0;  // <r, sign*atom>, nonnegative when produced by selection
};

struct A1Entry {
  int index = 0;
  int sign = 1;
  double coefficient = 0;
};

// A vector together with the atomic representation certifying its class
// membership: vector == sum coefficient * (sign * atom) with
// sum |coefficient|^tau <= 1 (+1e-12 slack for rounding).
struct A1Element {
  Vector vector;
  std::vector<A1Entry> entries;
  double tau = 1.0;
};

// A dictionary paired with a certified element living in it.
struct Instance {
  Dictionary dict;
  A1Element element;
};

struct DictionaryViolation {
  int index = -1;
  std::string what;
  double value = 0;
};

struct DictionaryReport {
  std::vector<DictionaryViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Canonical basis e_1..e_n of R^n as atoms.
Dictionary canonical_dictionary(int n);

// Lists every atom whose l2 norm deviates from 1 by more than 1e-9 and any
// dimension mismatch. Violations are data, not errors.
DictionaryReport validate(const Dictionary& dict);

// Greedy selection over the symmetric closure: maximizes <r, g> over
// g in {+/- atoms}. Ties break to the lowest index (strict '>' required to
// displace the incumbent); an exactly zero correlation reports sign +1.
AtomRef select_atom(const Dictionary& dict, const Vector& r);

// Materializes sign * atoms[index].
Vector signed_atom(const Dictionary& dict, const AtomRef& ref);

// Assembles the vector from its entries and verifies the coefficient
// constraint sum |a|^tau <= 1 + 1e-12. Throws std::domain_error (reporting
// the actual sum) if the constraint fails.
A1Element build_a1_element(const Dictionary& dict, const std::vector<A1Entry>& entries,
                           double tau);

inline constexpr double kAtomNormTolerance = 1e-9;
inline constexpr double kMembershipTolerance = 1e-12;

}  // namespace greedy
