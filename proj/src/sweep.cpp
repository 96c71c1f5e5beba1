#include "floquet/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "floquet/error.hpp"
#include "floquet/lattice.hpp"

namespace floquet::sweep {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void require(bool ok, const char* field, const std::string& why) {
  if (!ok) throw Error(ErrorCode::ValidationError, std::string(field) + ": " + why);
}

}  // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::Conservative ? "conservative" : "driven-dissipative";
}

Mode parse_mode(std::string_view text) {
  const std::string s = lower(text);
  if (s == "conservative") return Mode::Conservative;
  if (s == "driven-dissipative" || s == "dd" || s == "dissipative") {
    return Mode::DrivenDissipative;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown sweep mode '" + std::string(text) + "'");
}

std::string_view to_string(CellStatus status) {
  switch (status) {
    case CellStatus::Ok: return "ok";
    case CellStatus::GapClosed: return "gap-closed";
    case CellStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

double AxisRange::value(int i) const {
  if (i == n - 1) return max;
  return min + step() * i;
}

void SweepSpec::validate() const {
  require(mass.n >= 2, "sweep.m_n", "needs at least 2 points");
  require(phi.n >= 2, "sweep.phi_n", "needs at least 2 points");
  require(std::isfinite(mass.min) && std::isfinite(mass.max) && mass.min < mass.max,
          "sweep.m_min", "mass range must be finite and increasing");
  require(std::isfinite(phi.min) && std::isfinite(phi.max) && phi.min < phi.max,
          "sweep.phi_min", "phi range must be finite and increasing");
  require(std::isfinite(ratio) && ratio > 0.0, "drive.ratio", "must be positive");
  require(std::isfinite(periods) && periods > 0.0, "evolution.periods", "must be positive");
  require(std::isfinite(dt) && dt > 0.0, "evolution.dt", "must be positive");
  require(decimate >= 1, "evolution.decimate", "must be >= 1");
  require(window_start >= 0.0 && window_start < 1.0, "evolution.window", "must be in [0, 1)");
  require(chern_grid >= 16, "sweep.chern_grid", "must be >= 16");
  require(workers >= 0, "sweep.workers", "must be >= 0");
  require(dissipation.gamma >= 0.0, "dissipation.gamma", "must be non-negative");
  require(dissipation.gamma_e >= 0.0, "dissipation.gamma_e", "must be non-negative");
}

const SweepCell& SweepResult::at(int i_mass, int i_phi) const {
  return cells.at(static_cast<std::size_t>(i_mass * spec.phi.n + i_phi));
}

drive::DriveConfig cell_drive(const SweepSpec& spec, double mass) {
  drive::DriveConfig cfg = spec.base;
  cfg.omega2 = spec.ratio * cfg.omega1;
  cfg.delta = drive::detuning_for_mass(mass, cfg.omega_r);
  return cfg;
}

bool is_boundary(ModelKind kind, double mass, double phi, double mass_step) {
  const double edge = std::abs(lattice::phase_boundary(kind, phi).upper);
  return std::abs(std::abs(mass) - edge) <= std::abs(mass_step);
}

int drive_chern(ModelKind kind, const drive::DriveConfig& cfg, double phi, int grid_n) {
  const double scale = 1.0 / cfg.omega_r;
  const lattice::BlochMap h = [&](Vec2 k) {
    Hermitian2 m = drive::hamiltonian_at(kind, cfg, phi, {k.x, k.y});
    return scale * m;
  };
  return lattice::chern_number(h, lattice::geometry(kind), grid_n);
}

int resolve_workers(int hint) {
  if (const char* env = std::getenv("FLOQUET_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 1024L));
  }
  if (hint >= 1) return hint;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

SweepCell run_cell(const SweepSpec& spec, int i_mass, int i_phi) {
  SweepCell cell;
  cell.i_mass = i_mass;
  cell.i_phi = i_phi;
  cell.mass = spec.mass.value(i_mass);
  cell.phi = spec.phi.value(i_phi);
  cell.boundary = is_boundary(spec.kind, cell.mass, cell.phi, spec.mass.step());
  const drive::DriveConfig cfg = cell_drive(spec, cell.mass);

  try {
    cell.chern = drive_chern(spec.kind, cfg, cell.phi, spec.chern_grid);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GapClosed && e.code() != ErrorCode::NonIntegerChern) throw;
    cell.message = e.what();
  }

  try {
    evolution::EvolutionParams params;
    params.duration = evolution::default_duration(cfg, spec.periods);
    params.dt = spec.dt;
    params.decimate = spec.decimate;
    const evolution::Trajectory traj =
        spec.mode == Mode::Conservative
            ? evolution::evolve_conservative(spec.kind, cfg, cell.phi, params)
            : evolution::evolve_driven_dissipative(spec.kind, cfg, cell.phi, spec.dissipation,
                                                   params);
    const observables::WorkSeries ws = observables::work_done(traj, spec.kind, cfg, cell.phi);
    cell.fit = observables::pumping_slope(ws, cfg, spec.window_start);
  } catch (const Error& e) {
    cell.status = e.code() == ErrorCode::DegenerateStart ? CellStatus::GapClosed
                                                         : CellStatus::NumericalFailure;
    cell.message = e.what();
  }
  return cell;
}

SweepResult sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  const int total = spec.mass.n * spec.phi.n;
  result.cells.resize(static_cast<std::size_t>(total));

  std::atomic<int> next{0};
  auto work = [&] {
    for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
      SweepCell cell;
      try {
        cell = run_cell(spec, idx / spec.phi.n, idx % spec.phi.n);
      } catch (const std::exception& e) {
        cell.i_mass = idx / spec.phi.n;
        cell.i_phi = idx % spec.phi.n;
        cell.mass = spec.mass.value(cell.i_mass);
        cell.phi = spec.phi.value(cell.i_phi);
        cell.status = CellStatus::NumericalFailure;
        cell.message = e.what();
      }
      result.cells[static_cast<std::size_t>(idx)] = std::move(cell);
    }
  };

  const int workers = std::min(resolve_workers(spec.workers), total);
  if (workers <= 1) {
    work();
    return result;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  return result;
}

SweepResult commensurate_control(SweepSpec spec) {
  spec.ratio = kCommensurateRatio;
  return sweep(spec);
}

}  // namespace floquet::sweep
