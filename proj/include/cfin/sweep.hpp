#pragma once

// Parameter sweeps over the discretized 5D financial map: Lyapunov spectra
// per grid point, bifurcation sample columns, and projected attractor orbits.
// Grid points are independent and may be evaluated on a worker pool; results
// always come back in grid order.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "cfin/conformable.hpp"
#include "cfin/finance.hpp"
#include "cfin/lyapunov.hpp"

namespace cfin {

/// Everything needed to iterate the 5D map from one initial state.
struct FinanceSetup {
  FinanceParams params;
  State5 orders{1.0, 1.0, 1.0, 1.0, 1.0};
  double h = 0.002;
  State5 x0{};
  double guard = kDefaultGuard;

  OrderVector<5> order_vector() const { return OrderVector<5>(orders); }
  StepCoefficients<5> coefficients() const { return StepCoefficients<5>(order_vector(), h); }

  void validate() const {
    params.validate();
    (void)coefficients();
    if (!(guard > 0.0)) throw std::invalid_argument("FinanceSetup: guard must be positive");
  }
};

/// Base settings of the hyperchaos experiments: h=0.002, a=0.8, b=0.6, c=1, d=2,
/// alpha_1..4 = (0.3, 0.5, 0.6, 0.24), x0 = (0.4, 0.6, 0.8, 0.3, 0.4), with
/// alpha_5 = 0.24, k = 2, p = 1.
inline FinanceSetup reference_setup() {
  FinanceSetup s;
  s.params.a = 0.8;
  s.params.b = 0.6;
  s.params.c = 1.0;
  s.params.d = 2.0;
  s.params.k = 2.0;
  s.params.p = 1.0;
  s.orders = {0.3, 0.5, 0.6, 0.24, 0.24};
  s.h = 0.002;
  s.x0 = {0.4, 0.6, 0.8, 0.3, 0.4};
  return s;
}

enum class SweepParameter { alpha1, alpha2, alpha3, alpha4, alpha5, a, b, c, d, k, p, h };

inline constexpr std::array<std::string_view, 12> kSweepParameterNames = {
    "alpha1", "alpha2", "alpha3", "alpha4", "alpha5", "a", "b", "c", "d", "k", "p", "h"};

constexpr std::string_view to_string(SweepParameter p) { return kSweepParameterNames[static_cast<std::size_t>(p)]; }

inline std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (std::size_t i = 0; i < kSweepParameterNames.size(); ++i)
    if (kSweepParameterNames[i] == name) return static_cast<SweepParameter>(i);
  return std::nullopt;
}

inline FinanceSetup with_parameter(FinanceSetup s, SweepParameter target, double value) {
  switch (target) {
    case SweepParameter::alpha1:
    case SweepParameter::alpha2:
    case SweepParameter::alpha3:
    case SweepParameter::alpha4:
    case SweepParameter::alpha5: s.orders[static_cast<std::size_t>(target)] = value; break;
    case SweepParameter::a: s.params.a = value; break;
    case SweepParameter::b: s.params.b = value; break;
    case SweepParameter::c: s.params.c = value; break;
    case SweepParameter::d: s.params.d = value; break;
    case SweepParameter::k: s.params.k = value; break;
    case SweepParameter::p: s.params.p = value; break;
    case SweepParameter::h: s.h = value; break;
  }
  return s;
}

inline constexpr std::array<std::string_view, 5> kComponentNames = {"x", "y", "z", "w", "u"};

constexpr std::string_view to_string(Component c) { return kComponentNames[static_cast<std::size_t>(c)]; }

inline std::optional<Component> parse_component(std::string_view name) {
  for (std::size_t i = 0; i < kComponentNames.size(); ++i)
    if (kComponentNames[i] == name) return static_cast<Component>(i);
  return std::nullopt;
}

struct BifurcationSettings {
  std::size_t transient = 10'000;
  std::size_t samples = 200;
};

struct SweepPlan {
  SweepParameter target = SweepParameter::alpha5;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t grid_points = 97;
  FinanceSetup base = reference_setup();
  LyapunovSettings lyapunov;
  BifurcationSettings bifurcation;
  /// 0 means one worker per hardware thread.
  std::size_t workers = 0;

  double value_at(std::size_t i) const {
    if (i + 1 == grid_points) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
  }

  std::vector<double> values() const {
    std::vector<double> v(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) v[i] = value_at(i);
    return v;
  }

  void validate() const {
    if (!(lo < hi)) throw std::invalid_argument("SweepPlan: requires lo < hi");
    if (grid_points < 2) throw std::invalid_argument("SweepPlan: grid_points must be >= 2");
    with_parameter(base, target, lo).validate();
    with_parameter(base, target, hi).validate();
    lyapunov.validate();
    if (bifurcation.samples < 1) throw std::invalid_argument("SweepPlan: bifurcation samples must be >= 1");
  }
};

struct SweepRecord {
  double value = 0.0;
  LyapunovSpectrum spectrum;
  /// Set by spectrum scans; bifurcation scans only set it for escaped orbits.
  std::optional<Regime> regime;
  /// Post-transient values of the selected component (bifurcation scans).
  std::vector<double> samples;
  bool diverged = false;
};

struct SweepResult {
  SweepParameter target = SweepParameter::alpha5;
  std::vector<SweepRecord> records;
};

inline std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on up to `workers` threads. The first
/// exception thrown by any body is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body&& body) {
  workers = std::min(resolve_workers(workers), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
}

inline LyapunovSpectrum finance_spectrum(const FinanceSetup& setup, const LyapunovSettings& settings) {
  const auto field = finance_field_5d(setup.params);
  const auto coeffs = setup.coefficients();
  LyapunovSettings s = settings;
  s.guard = setup.guard;
  return lyapunov_spectrum<5>(discrete_map(field, coeffs), discrete_map_jacobian(field, coeffs), setup.x0, s);
}

inline SweepResult spectrum_scan(const SweepPlan& plan) {
  plan.validate();
  SweepResult result;
  result.target = plan.target;
  result.records.resize(plan.grid_points);
  parallel_for(plan.grid_points, plan.workers, [&](std::size_t i) {
    SweepRecord& rec = result.records[i];
    rec.value = plan.value_at(i);
    rec.spectrum = finance_spectrum(with_parameter(plan.base, plan.target, rec.value), plan.lyapunov);
    rec.diverged = rec.spectrum.diverged;
    rec.regime = classify_regime(rec.spectrum, plan.lyapunov.eps_positive);
  });
  return result;
}

/// Successive post-transient values of one component. Stops early (and
/// flags) if the orbit escapes.
inline std::vector<double> bifurcation_column(const FinanceSetup& setup, Component component,
                                              const BifurcationSettings& settings, bool& diverged) {
  const auto coeffs = setup.coefficients();
  const auto idx = static_cast<std::size_t>(component);
  std::vector<double> samples;
  samples.reserve(settings.samples);
  const std::size_t last = settings.transient + settings.samples - 1;
  const auto outcome = iterate(
      [&](const State5& s) { return field_5d(s, setup.params); }, setup.x0, coeffs, last, setup.guard,
      [&](std::size_t n, const State5& s) {
        if (n >= settings.transient) samples.push_back(s[idx]);
      });
  diverged = outcome.diverged;
  return samples;
}

/// Bifurcation columns only; no spectrum is computed.
inline SweepResult bifurcation_scan(const SweepPlan& plan, Component component) {
  plan.validate();
  SweepResult result;
  result.target = plan.target;
  result.records.resize(plan.grid_points);
  parallel_for(plan.grid_points, plan.workers, [&](std::size_t i) {
    SweepRecord& rec = result.records[i];
    rec.value = plan.value_at(i);
    rec.samples = bifurcation_column(with_parameter(plan.base, plan.target, rec.value), component,
                                     plan.bifurcation, rec.diverged);
    if (rec.diverged) rec.regime = Regime::divergent;
  });
  return result;
}

struct AttractorTrace {
  std::vector<std::array<double, 3>> points;
  bool diverged = false;
  /// Largest state norm seen over the recorded part of the orbit.
  double max_norm = 0.0;
};

/// Orbit states x_T .. x_{N-1} (T = transient) projected onto three components.
template <class Field>
AttractorTrace attractor_trace(const Field& field, const OrderVector<Field::dimension>& orders,
                               const State<Field::dimension>& x0, const GridSpec& grid, std::size_t transient,
                               const std::array<std::size_t, 3>& projection, double guard = kDefaultGuard) {
  constexpr std::size_t N = Field::dimension;
  for (std::size_t c : projection)
    if (c >= N) throw std::invalid_argument("attractor_trace: projection component out of range");
  if (transient >= grid.n_steps) throw std::invalid_argument("attractor_trace: transient must be < n_steps");
  const StepCoefficients<N> coeffs(orders, grid.h);
  AttractorTrace out;
  out.points.reserve(grid.n_steps - transient);
  const auto outcome = iterate(field.field, x0, coeffs, grid.n_steps - 1, guard, [&](std::size_t n, const State<N>& s) {
    if (n < transient) return;
    out.points.push_back({s[projection[0]], s[projection[1]], s[projection[2]]});
    out.max_norm = std::max(out.max_norm, norm(s));
  });
  out.diverged = outcome.diverged;
  return out;
}

inline AttractorTrace attractor_trace(const FinanceSetup& setup, std::size_t n_steps, std::size_t transient,
                                      const std::array<Component, 3>& projection) {
  setup.validate();
  return attractor_trace(finance_field_5d(setup.params), setup.order_vector(), setup.x0, GridSpec(setup.h, n_steps),
                         transient,
                         {static_cast<std::size_t>(projection[0]), static_cast<std::size_t>(projection[1]),
                          static_cast<std::size_t>(projection[2])},
                         setup.guard);
}

}  // namespace cfin
