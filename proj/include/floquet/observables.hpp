#pragma once

#include <vector>

#include "floquet/core.hpp"
#include "floquet/drive.hpp"
#include "floquet/evolution.hpp"

namespace floquet::observables {

struct WorkSeries {
  std::vector<double> times;
  std::vector<double> w1;
  std::vector<double> w2;
};

/// Normalized pumping rates 2 pi dW_i/dt / (Omega_1 Omega_2) from a linear fit.
struct SlopeFit {
  double slope1 = 0.0;
  double slope2 = 0.0;
  double r2_1 = 0.0;
  double r2_2 = 0.0;
  double window = 0.0;  // fraction of the series used
};

struct CoverageReport {
  int n_bins = 0;
  int visited = 0;
  double fraction = 0.0;
};

struct DosHistogram {
  std::vector<double> edges;   // n + 1 energy edges, units of Omega_R
  std::vector<double> counts;  // unit-area density
  double mass = 0.0;
  double min_abs_energy = 0.0;  // smallest |E| on the grid, units of Omega_R

  /// Index of the bin containing energy e, or -1 outside the range.
  int bin_of(double e) const;
};

/// Work done by each drive; the trajectory must come from (kind, cfg, phi).
WorkSeries work_done(const evolution::Trajectory& traj, ModelKind kind,
                     const drive::DriveConfig& cfg, double phi);

inline constexpr double kDefaultWindowStart = 0.1;

/// Ordinary least squares on [window_start T, T]. Needs >= 100 samples there.
SlopeFit pumping_slope(const WorkSeries& ws, const drive::DriveConfig& cfg,
                       double window_start_fraction = kDefaultWindowStart);

/// (<sx>, <sy>, <sz>) on the normalized state, sigma_y = -i(b1+ b2 - b2+ b1).
Vec3 bloch_vector(const evolution::ModeState& state);

/// Equal-area sphere cells: round(sqrt(n_bins)) latitude bands of equal
/// height per cell, each split into equal longitude sectors.
CoverageReport coverage_fraction(const evolution::Trajectory& traj, int n_bins = 400);
CoverageReport coverage_fraction(const std::vector<Vec3>& points, int n_bins = 400);

/// Eigenvalues of the traceless H(theta) on a grid_n x grid_n grid over the
/// reciprocal parallelogram, histogrammed on a symmetric energy axis.
DosHistogram density_of_states(ModelKind kind, const drive::DriveConfig& cfg, double phi,
                               double mass, int grid_n, int n_energy_bins);

/// Energy exchanged through every tone of the modulation, plus the
/// recombinations that isolate the transverse pumping.
struct HarmonicWork {
  std::vector<drive::HarmonicChannel> channels;
  std::vector<double> times;
  std::vector<std::vector<double>> energy;  // [channel][sample]
  /// Brick-wall: 1/2 (E_10 - E_01) + 1/2 (E_11 - E_-11).
  /// Haldane: P_x + P_y with the 1/(2 sqrt 3) and 1/6 path normalizations.
  std::vector<double> net;
  std::vector<double> x_part;  // Haldane only; empty otherwise
  std::vector<double> y_part;
  /// max over samples of |sum_c E_c - (W1 + W2)| / max(1, |W1| + |W2|).
  double completeness_residual = 0.0;
};

HarmonicWork work_by_harmonic(const evolution::Trajectory& traj, ModelKind kind,
                              const drive::DriveConfig& cfg, double phi,
                              const std::vector<drive::HarmonicChannel>& table);

/// Slope of a single series, normalized like pumping_slope.
double normalized_rate(const std::vector<double>& times, const std::vector<double>& values,
                       const drive::DriveConfig& cfg, double window_start_fraction);

}  // namespace floquet::observables
