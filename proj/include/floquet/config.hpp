#pragma once

// Run configuration: flat `key = value` text, `#` starts a comment, nesting by
// dotted keys. Every key has a default; an empty file yields the conservative
// brick-wall reference run (M = 1, phi = pi/2, golden-ratio tones).

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "floquet/drive.hpp"
#include "floquet/evolution.hpp"
#include "floquet/sweep.hpp"

namespace floquet::config {

struct RunConfig {
  ModelKind kind = ModelKind::BrickWall;
  double mass = 1.0;
  double phi = kPi / 2.0;

  // Drive. omega2 = ratio * omega1, delta = 2 M omega_r.
  double omega1 = 3.0;
  double ratio = kGoldenRatio;
  double phi1 = kPi / 10.0;
  double phi2 = 0.0;
  double omega_r = 125.0;

  sweep::Mode mode = sweep::Mode::Conservative;
  double gamma = 0.01;
  double gamma_e = 0.01;
  double s0 = 1.0;
  double detuning = -375.0;  // laser detuning, rad/us

  double periods = 30.0;
  double dt = evolution::kDefaultDt;
  int decimate = evolution::kDefaultDecimate;
  double window = observables::kDefaultWindowStart;

  double m_min = -6.0;
  double m_max = 6.0;
  int m_n = 10;
  double phi_min = -kPi;
  double phi_max = kPi;
  int phi_n = 10;
  int workers = 0;
  int chern_grid = 64;

  int dos_grid = 256;
  int dos_bins = 120;

  double sample_rate = 1000.0;  // samples per us
  double signal_duration = 0.0;  // us; 0 means one slow period

  std::string output_dir = ".";
  bool deterministic = true;  // always on

  drive::DriveConfig drive() const;
  evolution::DissipationConfig dissipation() const;
  evolution::EvolutionParams evolution_params() const;
  sweep::SweepSpec sweep_spec() const;

  /// Throws ValidationError naming the first offending key.
  void validate() const;
};

/// Applies one assignment. Throws UnknownKey or ValidationError (the latter
/// for values that do not parse as the key's type).
void set_value(RunConfig& cfg, const std::string& key, const std::string& value);
std::string get_value(const RunConfig& cfg, const std::string& key);

/// All keys in canonical order.
const std::vector<std::string>& keys();

RunConfig parse(std::istream& in);
RunConfig parse_string(const std::string& text);
RunConfig load(const std::string& path);

/// Ratio p/q with q <= max_denominator within 1e-9, if any.
struct Rational {
  long long p = 0;
  long long q = 0;
};
bool rational_approximation(double x, int max_denominator, Rational& out);
bool is_commensurate(const RunConfig& cfg);

/// Canonical (key, value) pairs plus derived entries (omega2, delta,
/// commensurate); values use 17 significant digits.
std::vector<std::pair<std::string, std::string>> echo(const RunConfig& cfg);

/// Round-trip formatting used for every number the tool writes.
std::string format_number(double v);

}  // namespace floquet::config
