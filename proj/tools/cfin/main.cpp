// cfin: simulate the conformable financial systems, compute Lyapunov spectra,
// run parameter scans and dump attractor projections.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

struct Invocation {
  std::string config;
  std::string preset;
  std::vector<std::string> overrides;
  cfin::cli::CommandOptions options;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& description, Invocation& inv) {
  CLI::App* sub = app.add_subcommand(name, description);
  sub->add_option("config", inv.config, "JSON run configuration");
  sub->add_option("--preset", inv.preset, "Start from a named preset (paper-sec4)");
  sub->add_option("--override", inv.overrides, "Set a config key: dotted.path=value (repeatable)")->allow_extra_args(false);
  sub->add_option("-o,--output", inv.options.output, "CSV output path (overrides output.csv)");
  sub->add_flag("--plot", inv.options.plot, "Also write an SVG plot");
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cfin::cli;
  CLI::App app{"Conformable financial system toolkit"};
  app.require_subcommand(1);
  Invocation inv;
  CLI::App* simulate = add_command(app, "simulate", "Iterate the discretized system and write the trajectory", inv);
  CLI::App* lyapunov = add_command(app, "lyapunov", "Compute the Lyapunov spectrum and regime label", inv);
  CLI::App* scan = add_command(app, "scan", "Sweep one parameter (spectrum or bifurcation scan)", inv);
  CLI::App* bifurcate = add_command(app, "bifurcate", "Bifurcation scan (scan with scan.kind=bifurcation)", inv);
  CLI::App* attractor = add_command(app, "attractor", "Write a projected post-transient orbit", inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (inv.config.empty() && inv.preset.empty()) throw ConfigError("config: give a config file or --preset");
    if (bifurcate->parsed()) inv.overrides.insert(inv.overrides.begin(), "scan.kind=bifurcation");
    const RunConfig cfg = load_config(inv.config.empty() ? std::nullopt : std::optional<std::filesystem::path>(inv.config),
                                      inv.preset.empty() ? std::nullopt : std::optional<std::string>(inv.preset),
                                      inv.overrides);
    if (simulate->parsed()) return run_simulate(cfg, inv.options, std::cout);
    if (lyapunov->parsed()) return run_lyapunov(cfg, inv.options, std::cout);
    if (scan->parsed() || bifurcate->parsed()) return run_scan(cfg, inv.options, std::cout);
    if (attractor->parsed()) return run_attractor(cfg, inv.options, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kConfigError;
}
