#include "commands.hpp"

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <type_traits>
#include <vector>

#include "cfin/csv.hpp"
#include "cfin/svg.hpp"

namespace cfin::cli {

namespace {

template <class Fn>
decltype(auto) dispatch_model(const RunConfig& cfg, Fn&& fn) {
  switch (cfg.model) {
    case Model::finance3d: return fn(finance_field_3d(cfg.params));
    case Model::finance4d: return fn(finance_field_4d(cfg.params));
    case Model::finance5d: return fn(finance_field_5d(cfg.params));
    case Model::zero: return fn(zero_field<5>());
  }
  throw ConfigError("model: unsupported");
}

template <std::size_t N>
State<N> to_state(const std::vector<double>& v) {
  State<N> s{};
  for (std::size_t i = 0; i < N; ++i) s[i] = v.at(i);
  return s;
}

std::filesystem::path csv_path(const RunConfig& cfg, const CommandOptions& opts, const char* fallback) {
  if (!opts.output.empty()) return opts.output;
  if (!cfg.csv_path.empty()) return cfg.csv_path;
  return fallback;
}

std::filesystem::path svg_path(const RunConfig& cfg, const std::filesystem::path& csv) {
  if (!cfg.svg_path.empty()) return cfg.svg_path;
  auto p = csv;
  p.replace_extension(".svg");
  return p;
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

void write_svg(const std::filesystem::path& path, const std::vector<svg::Panel>& panels, std::ostream& log) {
  write_file(path, [&](std::ostream& os) { os << svg::render(panels); });
  log << "plot: " << path.string() << '\n';
}

}  // namespace

int run_simulate(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log) {
  const auto path = csv_path(cfg, opts, "trajectory.csv");
  return dispatch_model(cfg, [&](const auto& field) {
    constexpr std::size_t N = std::decay_t<decltype(field)>::dimension;
    const StepCoefficients<N> coeffs(OrderVector<N>(to_state<N>(cfg.orders)), cfg.h);
    IterationOutcome outcome;
    std::size_t rows = 0;
    write_file(path, [&](std::ostream& os) {
      os << csv::trajectory_header(N) << '\n';
      outcome = iterate(field.field, to_state<N>(cfg.initial_state), coeffs, cfg.steps, cfg.guard,
                        [&](std::size_t n, const State<N>& s) {
                          csv::write_trajectory_row(os, n, static_cast<double>(n) * cfg.h, s);
                          ++rows;
                        });
    });
    log << "simulate: " << rows << " rows -> " << path.string() << '\n';
    if (outcome.diverged) {
      log << "orbit escaped at step " << outcome.divergence_index << "; trajectory truncated\n";
      return static_cast<int>(kDiverged);
    }
    return static_cast<int>(kOk);
  });
}

int run_lyapunov(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log) {
  const auto path = csv_path(cfg, opts, "spectrum.csv");
  const LyapunovSpectrum spectrum = dispatch_model(cfg, [&](const auto& field) {
    constexpr std::size_t N = std::decay_t<decltype(field)>::dimension;
    const StepCoefficients<N> coeffs(OrderVector<N>(to_state<N>(cfg.orders)), cfg.h);
    return lyapunov_spectrum<N>(discrete_map(field, coeffs), discrete_map_jacobian(field, coeffs),
                                to_state<N>(cfg.initial_state), cfg.lyapunov);
  });
  write_file(path, [&](std::ostream& os) { csv::write_spectrum(os, spectrum); });

  const Regime regime = classify_regime(spectrum, cfg.lyapunov.eps_positive);
  log << "model " << to_string(cfg.model) << ": " << spectrum.n_iterations << " iterations after "
      << spectrum.transient_skipped << " transient\n";
  for (std::size_t i = 0; i < spectrum.exponents.size(); ++i)
    log << "  lambda_" << (i + 1) << " = " << csv::format_number(spectrum.exponents[i]) << '\n';
  log << "positive exponents (> " << cfg.lyapunov.eps_positive
      << "): " << count_positive(spectrum, cfg.lyapunov.eps_positive) << '\n'
      << "regime: " << to_string(regime) << '\n'
      << "converged: " << (spectrum.converged ? "yes" : "no") << '\n';
  if (opts.plot) log << "(no plot for lyapunov)\n";
  return spectrum.diverged ? static_cast<int>(kDiverged) : static_cast<int>(kOk);
}

int run_scan(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log) {
  if (cfg.model != Model::finance5d) throw ConfigError("model: scan requires the 5d model");
  const auto path = csv_path(cfg, opts, "scan.csv");
  const SweepPlan plan = cfg.sweep_plan();
  const std::string xlabel(to_string(plan.target));

  SweepResult result;
  std::vector<svg::Panel> panels(1);
  if (cfg.scan.kind == ScanKind::spectrum) {
    result = spectrum_scan(plan);
    write_file(path, [&](std::ostream& os) { csv::write_spectrum_scan(os, result); });
    panels[0] = {"Lyapunov exponents vs " + xlabel, xlabel, "lambda", {}};
    for (std::size_t i = 0; i < 5; ++i) {
      svg::Series s;
      s.polyline = true;
      s.color = svg::kPalette[i];
      for (const auto& rec : result.records)
        if (i < rec.spectrum.exponents.size()) s.points.emplace_back(rec.value, rec.spectrum.exponents[i]);
      panels[0].series.push_back(std::move(s));
    }
  } else {
    result = bifurcation_scan(plan, cfg.scan.component);
    write_file(path, [&](std::ostream& os) { csv::write_bifurcation_scan(os, result); });
    const std::string comp(to_string(cfg.scan.component));
    panels[0] = {"Bifurcation of " + comp + " vs " + xlabel, xlabel, comp, {}};
    svg::Series s;
    for (const auto& rec : result.records)
      for (double v : rec.samples) s.points.emplace_back(rec.value, v);
    panels[0].series.push_back(std::move(s));
  }

  std::size_t divergent = 0, hyper = 0;
  for (const auto& rec : result.records) {
    divergent += rec.diverged ? 1 : 0;
    hyper += rec.regime == Regime::hyperchaotic ? 1 : 0;
  }
  log << "scan " << xlabel << " [" << plan.lo << ", " << plan.hi << "], " << plan.grid_points << " points -> "
      << path.string() << '\n'
      << "divergent points: " << divergent << '\n';
  if (cfg.scan.kind == ScanKind::spectrum) log << "hyperchaotic points: " << hyper << '\n';
  if (opts.plot) write_svg(svg_path(cfg, path), panels, log);
  return static_cast<int>(kOk);
}

int run_attractor(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log) {
  if (cfg.transient >= cfg.steps) throw ConfigError("grid.transient: must be < grid.steps for attractor");
  const auto path = csv_path(cfg, opts, "attractor.csv");
  const AttractorTrace trace = dispatch_model(cfg, [&](const auto& field) {
    constexpr std::size_t N = std::decay_t<decltype(field)>::dimension;
    return attractor_trace(field, OrderVector<N>(to_state<N>(cfg.orders)), to_state<N>(cfg.initial_state),
                           GridSpec(cfg.h, cfg.steps), cfg.transient, cfg.projection, cfg.guard);
  });
  write_file(path, [&](std::ostream& os) { csv::write_attractor(os, trace); });
  log << "attractor: " << trace.points.size() << " points -> " << path.string() << '\n'
      << "max state norm: " << csv::format_number(trace.max_norm) << '\n';

  if (opts.plot) {
    const std::string names[3] = {std::string(kComponentNames[cfg.projection[0]]),
                                  std::string(kComponentNames[cfg.projection[1]]),
                                  std::string(kComponentNames[cfg.projection[2]])};
    constexpr std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    std::vector<svg::Panel> panels;
    for (const auto& [i, j] : pairs) {
      svg::Panel p{"(" + names[i] + ", " + names[j] + ")", names[i], names[j], {}};
      svg::Series s;
      s.points.reserve(trace.points.size());
      for (const auto& pt : trace.points) s.points.emplace_back(pt[i], pt[j]);
      p.series.push_back(std::move(s));
      panels.push_back(std::move(p));
    }
    write_svg(svg_path(cfg, path), panels, log);
  }
  if (trace.diverged) {
    log << "orbit escaped; attractor truncated\n";
    return static_cast<int>(kDiverged);
  }
  return static_cast<int>(kOk);
}

}  // namespace cfin::cli
