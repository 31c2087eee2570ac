#include "greedy/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace greedy {

namespace {

void require_same_dim(const Vector& x, const Vector& y, const char* op) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(x.size()) + " vs " + std::to_string(y.size()) +
                                ")");
  }
}

}  // namespace

Vector zeros(std::size_t dim) { return Vector(dim, 0.0); }

bool is_finite(const Vector& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double inner(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm_l2(const Vector& x) { return std::sqrt(inner(x, x)); }

double norm_l1(const Vector& x) {
  double s = 0.0;
  for (double v : x) s += std::fabs(v);
  return s;
}

Vector combine(double a, const Vector& x, double b, const Vector& y) {
  require_same_dim(x, y, "combine");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

}  // namespace greedy
