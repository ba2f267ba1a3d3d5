#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cfin/finance.hpp"
#include "cfin/lyapunov.hpp"
#include "cfin/sweep.hpp"

namespace cfin::cli {

/// Malformed or out-of-range configuration. The message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Model { finance3d, finance4d, finance5d, zero };

std::size_t dimension(Model m);
std::string_view to_string(Model m);

enum class ScanKind { spectrum, bifurcation };

struct ScanConfig {
  SweepParameter parameter = SweepParameter::alpha5;
  double lo = 0.232;
  double hi = 0.328;
  std::size_t points = 97;
  ScanKind kind = ScanKind::spectrum;
  Component component = Component::u;
  std::size_t samples = 200;
};

struct RunConfig {
  Model model = Model::finance5d;
  FinanceParams params;
  std::vector<double> orders;
  std::vector<double> initial_state;
  double h = 0.002;
  std::size_t steps = 1000;
  std::size_t transient = 10'000;
  double guard = kDefaultGuard;
  LyapunovSettings lyapunov;
  ScanConfig scan;
  std::array<std::size_t, 3> projection{1, 2, 4};
  std::string csv_path;
  std::string svg_path;
  std::size_t workers = 0;

  /// The 5D setup used by sweeps. Only meaningful for the 5d model.
  FinanceSetup finance_setup() const;
  SweepPlan sweep_plan() const;
};

/// Built-in defaults as a JSON document (also the schema: every accepted key appears here).
nlohmann::json default_document();

/// Named presets. Throws ConfigError for an unknown name.
nlohmann::json preset_document(const std::string& name);

/// Layers defaults, preset, config file and `key=value` overrides (dotted paths,
/// array indices as segments), then validates.
RunConfig load_config(const std::optional<std::filesystem::path>& file, const std::optional<std::string>& preset,
                      const std::vector<std::string>& overrides);

/// Validates a fully merged document and converts it.
RunConfig parse_document(const nlohmann::json& doc);

void apply_override(nlohmann::json& doc, const std::string& assignment);

}  // namespace cfin::cli
