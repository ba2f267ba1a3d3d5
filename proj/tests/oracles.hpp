#pragma once

// Test-only reference computations. Nothing here shares code paths with the
// library routines they are used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "cfin/linalg.hpp"

namespace cfin::oracle {

/// Central-difference Jacobian of f at s.
template <std::size_t N, class F>
Matrix<N> fd_jacobian(F&& f, const State<N>& s, double step = 1e-5) {
  Matrix<N> j{};
  for (std::size_t col = 0; col < N; ++col) {
    State<N> plus = s, minus = s;
    plus[col] += step;
    minus[col] -= step;
    const State<N> fp = f(plus), fm = f(minus);
    for (std::size_t row = 0; row < N; ++row) j[row][col] = (fp[row] - fm[row]) / (2.0 * step);
  }
  return j;
}

/// Determinant by Gaussian elimination with partial pivoting.
template <std::size_t N>
double determinant(Matrix<N> m) {
  double det = 1.0;
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < N; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[pivot][c])) pivot = r;
    if (m[pivot][c] == 0.0) return 0.0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < N; ++r) {
      const double factor = m[r][c] / m[c][c];
      for (std::size_t k = c; k < N; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  return det;
}

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

/// Smallest period q <= max_period with |s[i] - s[i+q]| <= tol throughout, or 0.
inline std::size_t detect_period(const std::vector<double>& s, std::size_t max_period, double tol) {
  for (std::size_t q = 1; q <= max_period && q < s.size(); ++q) {
    bool periodic = true;
    for (std::size_t i = 0; i + q < s.size() && periodic; ++i) periodic = std::fabs(s[i] - s[i + q]) <= tol;
    if (periodic) return q;
  }
  return 0;
}

inline double sample_stddev(const std::vector<double>& s) {
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  double var = 0.0;
  for (double v : s) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(s.size() - 1));
}

}  // namespace cfin::oracle
