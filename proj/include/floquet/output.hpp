#pragma once

// CSV and manifest writers. Numbers are written with 17 significant digits
// and every file starts with `# key = value` lines echoing the full config.

#include <string>
#include <utility>
#include <vector>

#include "floquet/evolution.hpp"
#include "floquet/observables.hpp"
#include "floquet/sweep.hpp"

namespace floquet::output {

using Echo = std::vector<std::pair<std::string, std::string>>;

/// Columns t, re_b1, im_b1, re_b2, im_b2, bx, by, bz, norm, W1, W2.
void write_trajectory_csv(const std::string& path, const evolution::Trajectory& traj,
                          const Echo& echo);

/// Columns M, phi, slope1, slope2, r2_1, r2_2, chern, status (mass-major).
void write_sweep_csv(const std::string& path, const sweep::SweepResult& result,
                     const Echo& echo);

/// Columns M, E_low, E_high, density; one block per histogram.
void write_dos_csv(const std::string& path, const std::vector<observables::DosHistogram>& dos,
                   const Echo& echo);

struct WaveformInfo {
  double sample_rate = 0.0;  // samples per us
  double duration = 0.0;     // us
  std::size_t samples = 0;
  double highest_tone = 0.0;  // rad/us
};

/// Uniform samples of Vx/V0, Vy/V0, lambda and Delta = integral of lambda
/// (trapezoid at the sample rate). Columns t, vx, vy, lambda, Delta.
/// Throws NyquistViolation unless sample_rate > 4 x the highest tone in
/// cycles per us.
WaveformInfo export_waveforms(ModelKind kind, const drive::DriveConfig& cfg, double phi,
                              double sample_rate, double duration, const std::string& path,
                              const Echo& echo);

struct Manifest {
  std::string command;
  Echo echo;
  std::vector<std::string> outputs;
  double wall_time_s = 0.0;
};

/// JSON manifest: tool version, command, parameter echo, outputs, wall time
/// and the driven-dissipative frame convention.
void write_manifest(const std::string& path, const Manifest& manifest);

}  // namespace floquet::output
