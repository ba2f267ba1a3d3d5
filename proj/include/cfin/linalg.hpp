#pragma once

// Small fixed-size vector/matrix helpers shared by the integrator, the models
// and the tangent-space code. Dimensions are compile-time; everything is a value.

#include <array>
#include <cmath>
#include <cstddef>

namespace cfin {

template <std::size_t N>
using State = std::array<double, N>;

/// Row-major N x N matrix.
template <std::size_t N>
using Matrix = std::array<std::array<double, N>, N>;

template <std::size_t N>
constexpr Matrix<N> identity() {
  Matrix<N> m{};
  for (std::size_t i = 0; i < N; ++i) m[i][i] = 1.0;
  return m;
}

template <std::size_t N>
Matrix<N> multiply(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> out{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t l = 0; l < N; ++l) {
      const double ail = a[i][l];
      for (std::size_t j = 0; j < N; ++j) out[i][j] += ail * b[l][j];
    }
  return out;
}

template <std::size_t N>
State<N> multiply(const Matrix<N>& a, const State<N>& v) {
  State<N> out{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out[i] += a[i][j] * v[j];
  return out;
}

template <std::size_t N>
double norm(const State<N>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

template <std::size_t N>
bool all_finite(const State<N>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

template <std::size_t N>
bool all_finite(const Matrix<N>& m) {
  for (const auto& row : m)
    if (!all_finite(row)) return false;
  return true;
}

}  // namespace cfin
