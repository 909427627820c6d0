#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "relkg/error.hpp"

namespace relkg {

/// Dense row-major matrix of doubles. Rows are the unit of parallel work
/// throughout the kernels, so row pointers are the primary accessor.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

  double* row(std::size_t i) { return a.data() + i * cols; }
  const double* row(std::size_t i) const { return a.data() + i * cols; }
  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  std::size_t size() const { return a.size(); }

  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

inline double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// In-place stable softmax.
inline void softmax_inplace(std::span<double> v) {
  double m = v[0];
  for (double x : v)
    if (x > m) m = x;
  double z = 0.0;
  for (double& x : v) {
    x = std::exp(x - m);
    z += x;
  }
  for (double& x : v) x /= z;
}

inline void fill_uniform(Matrix& m, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  for (double& x : m.a) x = dist(rng);
}

/// Splittable seeding: derive an independent stream id from a base seed and tags.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b = 0) {
  std::uint64_t x = seed ^ (tag_a * 0x9E3779B97F4A7C15ULL) ^ (tag_b * 0xBF58476D1CE4E5B9ULL);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

}  // namespace relkg
