#pragma once

// CSV serialization of trajectories, spectra and sweeps. Numbers carry 17
// significant digits so every double round-trips exactly.

#include <cstddef>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "cfin/lyapunov.hpp"
#include "cfin/sweep.hpp"

namespace cfin::csv {

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// "step,t,x,y,z[,w[,u]]" trimmed to the state dimension.
inline std::string trajectory_header(std::size_t dimension) {
  std::string h = "step,t";
  for (std::size_t i = 0; i < dimension && i < kComponentNames.size(); ++i) {
    h += ',';
    h += kComponentNames[i];
  }
  return h;
}

inline void write_trajectory_row(std::ostream& os, std::size_t step, double t, std::span<const double> state) {
  os << step << ',' << format_number(t);
  for (double v : state) os << ',' << format_number(v);
  os << '\n';
}

inline void write_spectrum(std::ostream& os, const LyapunovSpectrum& s) {
  os << "exponent_rank,value\n";
  for (std::size_t i = 0; i < s.exponents.size(); ++i) os << (i + 1) << ',' << format_number(s.exponents[i]) << '\n';
}

/// param_value,lambda_1..lambda_n,regime. Escaped points carry nan exponents.
inline void write_spectrum_scan(std::ostream& os, const SweepResult& r, std::size_t dimension = 5) {
  os << "param_value";
  for (std::size_t i = 1; i <= dimension; ++i) os << ",lambda_" << i;
  os << ",regime\n";
  for (const auto& rec : r.records) {
    os << format_number(rec.value);
    for (std::size_t i = 0; i < dimension; ++i)
      os << ',' << (i < rec.spectrum.exponents.size() ? format_number(rec.spectrum.exponents[i]) : std::string("nan"));
    os << ',' << to_string(rec.regime.value_or(Regime::divergent)) << '\n';
  }
}

inline void write_bifurcation_scan(std::ostream& os, const SweepResult& r) {
  os << "param_value,sample_index,component_value\n";
  for (const auto& rec : r.records) {
    const std::string value = format_number(rec.value);
    for (std::size_t i = 0; i < rec.samples.size(); ++i)
      os << value << ',' << i << ',' << format_number(rec.samples[i]) << '\n';
  }
}

inline void write_attractor(std::ostream& os, const AttractorTrace& t) {
  os << "c1,c2,c3\n";
  for (const auto& p : t.points)
    os << format_number(p[0]) << ',' << format_number(p[1]) << ',' << format_number(p[2]) << '\n';
}

}  // namespace cfin::csv
