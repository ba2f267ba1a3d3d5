#pragma once

// Conformable-calculus primitives and the fixed-step piecewise-constant
// integrator x_{n+1} = x_n + (h^a / a) * f(x_n), applied per component.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "cfin/linalg.hpp"

namespace cfin {

/// Norm bound above which an orbit is considered escaped.
inline constexpr double kDefaultGuard = 1e8;

inline bool valid_order(double alpha) { return alpha > 0.0 && alpha <= 1.0; }

/// h^alpha / alpha. The alpha == 1 case yields h exactly.
inline double step_coefficient(double alpha, double h) {
  if (!valid_order(alpha))
    throw std::domain_error("step_coefficient: order must lie in (0, 1], got " + std::to_string(alpha));
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::domain_error("step_coefficient: step size must be positive, got " + std::to_string(h));
  return std::pow(h, alpha) / alpha;
}

/// Per-dimension fractional orders, each in (0, 1].
template <std::size_t N>
class OrderVector {
 public:
  explicit OrderVector(const State<N>& alphas) : alphas_(alphas) {
    for (std::size_t i = 0; i < N; ++i)
      if (!valid_order(alphas_[i]))
        throw std::domain_error("OrderVector: alpha[" + std::to_string(i) + "] = " +
                                std::to_string(alphas_[i]) + " outside (0, 1]");
  }

  static OrderVector uniform(double alpha) {
    State<N> a;
    a.fill(alpha);
    return OrderVector(a);
  }

  double operator[](std::size_t i) const { return alphas_[i]; }
  const State<N>& values() const { return alphas_; }
  static constexpr std::size_t size() { return N; }

 private:
  State<N> alphas_;
};

struct GridSpec {
  double h;
  std::size_t n_steps;
  double t0 = 0.0;

  GridSpec(double step, std::size_t steps) : h(step), n_steps(steps) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::domain_error("GridSpec: h must be positive");
    if (n_steps < 1) throw std::domain_error("GridSpec: n_steps must be >= 1");
  }

  double horizon() const { return static_cast<double>(n_steps) * h; }
  double time_at(std::size_t step) const { return t0 + static_cast<double>(step) * h; }
};

/// coeffs[i] = h^{alpha_i} / alpha_i.
template <std::size_t N>
class StepCoefficients {
 public:
  StepCoefficients(const OrderVector<N>& orders, double h) {
    for (std::size_t i = 0; i < N; ++i) coeffs_[i] = step_coefficient(orders[i], h);
  }

  double operator[](std::size_t i) const { return coeffs_[i]; }
  const State<N>& values() const { return coeffs_; }

 private:
  State<N> coeffs_{};
};

/// One explicit step. The field is evaluated once, at x.
template <std::size_t N, class Field>
State<N> euler_step(Field&& field, const State<N>& x, const StepCoefficients<N>& coeffs) {
  const State<N> f = field(x);
  State<N> next;
  for (std::size_t i = 0; i < N; ++i) next[i] = x[i] + coeffs[i] * f[i];
  return next;
}

template <std::size_t N>
bool escaped(const State<N>& x, double guard) {
  return !all_finite(x) || norm(x) > guard;
}

struct IterationOutcome {
  std::size_t steps_taken = 0;
  bool diverged = false;
  /// Index of the first state that escaped the guard (valid when diverged).
  std::size_t divergence_index = 0;
};

/// Iterates the scheme n_steps times, handing every accepted state (including x0,
/// at index 0) to observer(index, state). Stops at the first escaped state.
template <std::size_t N, class Field, class Observer>
IterationOutcome iterate(Field&& field, const State<N>& x0, const StepCoefficients<N>& coeffs,
                         std::size_t n_steps, double guard, Observer&& observer) {
  if (!(guard > 0.0)) throw std::domain_error("iterate: guard must be positive");
  IterationOutcome out;
  if (escaped(x0, guard)) {
    out.diverged = true;
    return out;
  }
  observer(std::size_t{0}, x0);
  State<N> x = x0;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    x = euler_step(field, x, coeffs);
    if (escaped(x, guard)) {
      out.diverged = true;
      out.divergence_index = n;
      return out;
    }
    observer(n, x);
    out.steps_taken = n;
  }
  return out;
}

template <std::size_t N>
struct Trajectory {
  /// x_0 .. x_N, or up to the last state before divergence.
  std::vector<State<N>> states;
  bool diverged = false;
  std::size_t divergence_index = 0;
};

template <std::size_t N, class Field>
Trajectory<N> integrate(Field&& field, const State<N>& x0, const OrderVector<N>& orders,
                        const GridSpec& grid, double guard = kDefaultGuard) {
  const StepCoefficients<N> coeffs(orders, grid.h);
  Trajectory<N> traj;
  traj.states.reserve(grid.n_steps + 1);
  const auto outcome = iterate(std::forward<Field>(field), x0, coeffs, grid.n_steps, guard,
                               [&](std::size_t, const State<N>& s) { traj.states.push_back(s); });
  traj.diverged = outcome.diverged;
  traj.divergence_index = outcome.divergence_index;
  return traj;
}

enum class DifferenceScheme { forward, central };

/// Finite-difference estimate of the left conformable derivative
///   (f(t + eps (t - t0)^{1-alpha}) - f(t)) / eps.
/// The central variant uses the symmetric quotient with the same displacement.
template <class F>
double conformable_derivative_at(F&& f, double t, double t0, double alpha, double eps = 1e-6,
                                 DifferenceScheme scheme = DifferenceScheme::forward) {
  if (!(t > t0)) throw std::domain_error("conformable_derivative_at: requires t > t0");
  if (!valid_order(alpha)) throw std::domain_error("conformable_derivative_at: order outside (0, 1]");
  if (!(eps > 0.0)) throw std::domain_error("conformable_derivative_at: eps must be positive");
  const double scale = std::pow(t - t0, 1.0 - alpha);
  if (scheme == DifferenceScheme::central)
    return (f(t + eps * scale) - f(t - eps * scale)) / (2.0 * eps);
  return (f(t + eps * scale) - f(t)) / eps;
}

/// Left conformable integral  int_{t0}^{t} (s - t0)^{alpha-1} f(s) ds.
///
/// With u = (s - t0)^alpha the weight disappears:
///   (1/alpha) int_0^{(t-t0)^alpha} f(t0 + u^{1/alpha}) du,
/// which is then integrated with a composite 10-point Gauss-Legendre rule on n_quad panels.
template <class F>
double conformable_integral(F&& f, double t0, double t, double alpha, std::size_t n_quad = 16) {
  if (!(t > t0)) throw std::domain_error("conformable_integral: requires t > t0");
  if (!valid_order(alpha)) throw std::domain_error("conformable_integral: order outside (0, 1]");
  if (n_quad < 1) throw std::domain_error("conformable_integral: n_quad must be >= 1");

  using Rule = boost::math::quadrature::gauss<double, 10>;
  const double upper = std::pow(t - t0, alpha);
  const double inv_alpha = 1.0 / alpha;
  auto integrand = [&](double u) { return f(t0 + std::pow(u, inv_alpha)); };
  const double width = upper / static_cast<double>(n_quad);
  double sum = 0.0;
  for (std::size_t i = 0; i < n_quad; ++i) {
    const double lo = width * static_cast<double>(i);
    const double hi = (i + 1 == n_quad) ? upper : width * static_cast<double>(i + 1);
    sum += Rule::integrate(integrand, lo, hi);
  }
  return sum * inv_alpha;
}

}  // namespace cfin
