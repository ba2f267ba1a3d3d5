#pragma once

// Lyapunov spectra of maps by tangent-frame propagation with periodic
// Gram-Schmidt re-orthonormalization, and regime labels derived from them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cfin/conformable.hpp"
#include "cfin/linalg.hpp"

namespace cfin {

struct LyapunovSettings {
  std::size_t transient = 10'000;
  std::size_t iterations = 200'000;
  std::size_t reorth_every = 1;
  double eps_positive = 0.01;
  double guard = kDefaultGuard;
  /// Tail-variation bound used for the converged flag.
  double convergence_tol = 1e-3;

  void validate() const {
    if (iterations < 1) throw std::invalid_argument("LyapunovSettings: iterations must be >= 1");
    if (reorth_every < 1) throw std::invalid_argument("LyapunovSettings: reorth_every must be >= 1");
    if (!(eps_positive > 0.0)) throw std::invalid_argument("LyapunovSettings: eps_positive must be > 0");
    if (!(guard > 0.0)) throw std::invalid_argument("LyapunovSettings: guard must be > 0");
  }
};

struct LyapunovSpectrum {
  /// Natural-log exponents per map iteration, sorted descending.
  std::vector<double> exponents;
  std::size_t n_iterations = 0;
  std::size_t transient_skipped = 0;
  bool converged = false;
  bool diverged = false;
  /// A stretch factor collapsed to zero; the affected exponent is -infinity.
  bool degenerate = false;
};

namespace detail {

/// Modified Gram-Schmidt on the columns of q, in place. Adds log of each
/// column's pre-normalization length (the R diagonal) to log_stretch.
template <std::size_t N>
bool orthonormalize_columns(Matrix<N>& q, State<N>& log_stretch) {
  bool degenerate = false;
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t prev = 0; prev < j; ++prev) {
      double dot = 0.0;
      for (std::size_t i = 0; i < N; ++i) dot += q[i][j] * q[i][prev];
      for (std::size_t i = 0; i < N; ++i) q[i][j] -= dot * q[i][prev];
    }
    double len = 0.0;
    for (std::size_t i = 0; i < N; ++i) len += q[i][j] * q[i][j];
    len = std::sqrt(len);
    if (!(len > 0.0) || !std::isfinite(len)) {
      degenerate = true;
      log_stretch[j] = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < N; ++i) q[i][j] = 0.0;
      continue;
    }
    log_stretch[j] += std::log(len);
    for (std::size_t i = 0; i < N; ++i) q[i][j] /= len;
  }
  return degenerate;
}

inline std::vector<double> sorted_descending(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace detail

/// Spectrum of x -> map(x) started at x0. The first `transient` iterates are
/// discarded; the tangent frame starts at the standard basis.
template <std::size_t N, class Map, class MapJacobian>
LyapunovSpectrum lyapunov_spectrum(Map&& map, MapJacobian&& map_jacobian, const State<N>& x0,
                                   const LyapunovSettings& settings = {}) {
  settings.validate();
  LyapunovSpectrum out;
  out.transient_skipped = settings.transient;
  out.n_iterations = settings.iterations;

  State<N> x = x0;
  if (escaped(x, settings.guard)) {
    out.diverged = true;
    return out;
  }
  for (std::size_t n = 0; n < settings.transient; ++n) {
    x = map(x);
    if (escaped(x, settings.guard)) {
      out.diverged = true;
      return out;
    }
  }

  Matrix<N> frame = identity<N>();
  State<N> log_stretch{};
  const std::size_t tail_start = settings.iterations - settings.iterations / 10;
  State<N> tail_min, tail_max;
  tail_min.fill(std::numeric_limits<double>::infinity());
  tail_max.fill(-std::numeric_limits<double>::infinity());

  for (std::size_t n = 1; n <= settings.iterations; ++n) {
    frame = multiply(map_jacobian(x), frame);
    x = map(x);
    if (escaped(x, settings.guard)) {
      out.diverged = true;
      out.n_iterations = n;
      return out;
    }
    if (n % settings.reorth_every == 0 || n == settings.iterations) {
      out.degenerate |= detail::orthonormalize_columns(frame, log_stretch);
      if (n >= tail_start) {
        std::vector<double> running(N);
        for (std::size_t i = 0; i < N; ++i) running[i] = log_stretch[i] / static_cast<double>(n);
        running = detail::sorted_descending(std::move(running));
        for (std::size_t i = 0; i < N; ++i) {
          tail_min[i] = std::min(tail_min[i], running[i]);
          tail_max[i] = std::max(tail_max[i], running[i]);
        }
      }
    }
  }

  out.exponents.resize(N);
  for (std::size_t i = 0; i < N; ++i) out.exponents[i] = log_stretch[i] / static_cast<double>(settings.iterations);
  out.exponents = detail::sorted_descending(std::move(out.exponents));

  out.converged = !out.degenerate;
  for (std::size_t i = 0; i < N && out.converged; ++i)
    if (!(tail_max[i] - tail_min[i] < settings.convergence_tol)) out.converged = false;
  return out;
}

enum class Regime { divergent, stable, periodic_or_quasi, chaotic, hyperchaotic };

constexpr std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::divergent: return "divergent";
    case Regime::stable: return "stable";
    case Regime::periodic_or_quasi: return "periodic_or_quasi";
    case Regime::chaotic: return "chaotic";
    case Regime::hyperchaotic: return "hyperchaotic";
  }
  return "unknown";
}

inline std::size_t count_positive(const LyapunovSpectrum& s, double eps) {
  return static_cast<std::size_t>(
      std::count_if(s.exponents.begin(), s.exponents.end(), [eps](double v) { return v > eps; }));
}

inline Regime classify_regime(const LyapunovSpectrum& s, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("classify_regime: eps must be positive");
  if (s.diverged || s.exponents.empty()) return Regime::divergent;
  const std::size_t positive = count_positive(s, eps);
  if (positive >= 2) return Regime::hyperchaotic;
  if (positive == 1) return Regime::chaotic;
  const double leading = *std::max_element(s.exponents.begin(), s.exponents.end());
  return leading >= -eps ? Regime::periodic_or_quasi : Regime::stable;
}

}  // namespace cfin
