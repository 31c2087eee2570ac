#pragma once

#include <cstddef>
#include <vector>

namespace greedy {

// Dense real coordinate vector; the dimension is the length.
using Vector = std::vector<double>;

Vector zeros(std::size_t dim);

bool is_finite(const Vector& x);

// Euclidean inner product. Summation is left-to-right over the coordinate
// index, so results are bit-reproducible across runs.
double inner(const Vector& x, const Vector& y);

double norm_l2(const Vector& x);

double norm_l1(const Vector& x);

// a*x + b*y, componentwise. All iterative updates are expressed through
// this single primitive so a recorded trace can be replayed bit-for-bit.
Vector combine(double a, const Vector& x, double b, const Vector& y);

}  // namespace greedy
