#pragma once

// (M, phi) phase-diagram sweeps: one full evolution per cell, fitted pumping
// slopes, and the Chern number of the same cell for comparison.

#include <optional>
#include <string>
#include <vector>

#include "floquet/core.hpp"
#include "floquet/drive.hpp"
#include "floquet/evolution.hpp"
#include "floquet/observables.hpp"

namespace floquet::sweep {

enum class Mode { Conservative, DrivenDissipative };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// n evenly spaced points from min to max inclusive.
struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  int n = 2;

  double value(int i) const;
  double step() const { return (max - min) / (n - 1); }
};

struct SweepSpec {
  ModelKind kind = ModelKind::Haldane;
  AxisRange mass{-6.0, 6.0, 10};
  AxisRange phi{-kPi, kPi, 10};
  Mode mode = Mode::DrivenDissipative;
  double ratio = kGoldenRatio;  // Omega_2 / Omega_1
  /// omega1, phases and Omega_R are taken from here; omega2 and delta are set per cell.
  drive::DriveConfig base;
  evolution::DissipationConfig dissipation = evolution::reference_dissipation(125.0);
  double periods = 30.0;  // of the slower tone
  double dt = evolution::kDefaultDt;
  int decimate = evolution::kDefaultDecimate;
  double window_start = observables::kDefaultWindowStart;
  int chern_grid = 64;
  int workers = 0;  // 0: hardware concurrency

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

enum class CellStatus { Ok, GapClosed, NumericalFailure };

std::string_view to_string(CellStatus status);

struct SweepCell {
  int i_mass = 0;
  int i_phi = 0;
  double mass = 0.0;
  double phi = 0.0;
  observables::SlopeFit fit;
  std::optional<int> chern;  // empty when the gap closes on the oracle grid
  bool boundary = false;
  CellStatus status = CellStatus::Ok;
  std::string message;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepCell> cells;  // mass-major: cells[i_mass * phi.n + i_phi]

  const SweepCell& at(int i_mass, int i_phi) const;
};

/// Drive settings used for one cell.
drive::DriveConfig cell_drive(const SweepSpec& spec, double mass);

/// True if |M| lies within one mass step of the analytic transition at phi.
bool is_boundary(ModelKind kind, double mass, double phi, double mass_step);

/// Lower-band Chern number of H(theta) / Omega_R at grid_n^2 points.
/// Same magnitude as the lattice oracle; the drive map reverses the flux sign.
int drive_chern(ModelKind kind, const drive::DriveConfig& cfg, double phi, int grid_n);

/// Worker count after applying FLOQUET_WORKERS; always >= 1.
int resolve_workers(int hint);

/// Evaluates one cell. Failures are reported in the status, never thrown.
SweepCell run_cell(const SweepSpec& spec, int i_mass, int i_phi);

/// Cells run on a bounded thread pool; the result does not depend on the
/// worker count.
SweepResult sweep(const SweepSpec& spec);

/// Same as sweep with Omega_2 / Omega_1 forced to 3/2.
SweepResult commensurate_control(SweepSpec spec);

inline constexpr double kCommensurateRatio = 1.5;

}  // namespace floquet::sweep
