#include "floquet/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floquet/error.hpp"
#include "floquet/lattice.hpp"

namespace floquet::observables {
namespace {

struct LineFit {
  double slope = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y, std::size_t first) {
  const std::size_t n = x.size() - first;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = first; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = first; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  if (syy <= 0.0) {
    fit.r2 = 1.0;
  } else {
    const double ss_res = std::max(0.0, syy - fit.slope * sxy);
    fit.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

std::size_t window_begin(const std::vector<double>& times, double start_fraction) {
  if (times.empty()) return 0;
  const double t0 = times.front() + start_fraction * (times.back() - times.front());
  const auto it = std::lower_bound(times.begin(), times.end(), t0);
  return static_cast<std::size_t>(it - times.begin());
}

void require_window(const std::vector<double>& times, std::size_t first) {
  if (times.size() < first + 100) {
    throw Error(ErrorCode::InsufficientData,
                "slope fit needs >= 100 samples in the window, got " +
                    std::to_string(times.size() > first ? times.size() - first : 0));
  }
}

int cell_index(const Vec3& v, const std::vector<double>& band_top,
               const std::vector<int>& band_cells, const std::vector<int>& band_offset) {
  const double z = std::clamp(v.z, -1.0, 1.0);
  auto it = std::lower_bound(band_top.begin(), band_top.end(), z);
  if (it == band_top.end()) --it;
  const auto band = static_cast<std::size_t>(it - band_top.begin());
  double lon = std::atan2(v.y, v.x);
  if (lon < 0.0) lon += kTwoPi;
  int sector = static_cast<int>(lon / kTwoPi * band_cells[band]);
  sector = std::clamp(sector, 0, band_cells[band] - 1);
  return band_offset[band] + sector;
}

}  // namespace

int DosHistogram::bin_of(double e) const {
  if (edges.size() < 2 || e < edges.front() || e > edges.back()) return -1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), e);
  const auto idx = static_cast<int>(it - edges.begin()) - 1;
  return std::min(idx, static_cast<int>(counts.size()) - 1);
}

WorkSeries work_done(const evolution::Trajectory& traj, ModelKind kind,
                     const drive::DriveConfig& cfg, double phi) {
  if (!traj.signature.matches(kind, cfg, phi)) {
    throw Error(ErrorCode::ConfigMismatch,
                "trajectory was produced with a different model, drive or flux");
  }
  return {traj.times, traj.w1, traj.w2};
}

double normalized_rate(const std::vector<double>& times, const std::vector<double>& values,
                       const drive::DriveConfig& cfg, double window_start_fraction) {
  const std::size_t first = window_begin(times, window_start_fraction);
  require_window(times, first);
  return kTwoPi * fit_line(times, values, first).slope / (cfg.omega1 * cfg.omega2);
}

SlopeFit pumping_slope(const WorkSeries& ws, const drive::DriveConfig& cfg,
                       double window_start_fraction) {
  if (ws.w1.size() != ws.times.size() || ws.w2.size() != ws.times.size()) {
    throw Error(ErrorCode::InvalidArgument, "work series lengths differ");
  }
  const std::size_t first = window_begin(ws.times, window_start_fraction);
  require_window(ws.times, first);
  const double norm = kTwoPi / (cfg.omega1 * cfg.omega2);
  const LineFit f1 = fit_line(ws.times, ws.w1, first);
  const LineFit f2 = fit_line(ws.times, ws.w2, first);
  SlopeFit fit;
  fit.slope1 = norm * f1.slope;
  fit.slope2 = norm * f2.slope;
  fit.r2_1 = f1.r2;
  fit.r2_2 = f2.r2;
  fit.window = 1.0 - window_start_fraction;
  return fit;
}

Vec3 bloch_vector(const evolution::ModeState& state) {
  const double n2 = state.amp.norm_squared();
  if (!(n2 > 0.0)) throw Error(ErrorCode::ZeroNorm, "Bloch vector of a zero state");
  const Complex off = std::conj(state.amp.first) * state.amp.second;
  Vec3 v{2.0 * off.real() / n2, 2.0 * off.imag() / n2,
         (std::norm(state.amp.first) - std::norm(state.amp.second)) / n2};
  const double len = norm(v);
  return {v.x / len, v.y / len, v.z / len};
}

CoverageReport coverage_fraction(const std::vector<Vec3>& points, int n_bins) {
  if (n_bins < 16) throw Error(ErrorCode::InvalidArgument, "coverage needs n_bins >= 16");
  const int bands = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_bins))));
  std::vector<int> band_cells(static_cast<std::size_t>(bands), n_bins / bands);
  for (int i = 0; i < n_bins % bands; ++i) ++band_cells[static_cast<std::size_t>(i)];
  // Band height proportional to its cell count keeps every cell at 4 pi / n_bins.
  std::vector<double> band_top(band_cells.size());
  std::vector<int> band_offset(band_cells.size());
  double z = -1.0;
  int offset = 0;
  for (std::size_t b = 0; b < band_cells.size(); ++b) {
    z += 2.0 * band_cells[b] / static_cast<double>(n_bins);
    band_top[b] = b + 1 == band_cells.size() ? 1.0 : z;
    band_offset[b] = offset;
    offset += band_cells[b];
  }

  std::vector<bool> hit(static_cast<std::size_t>(n_bins), false);
  for (const Vec3& p : points) {
    if (norm(p) == 0.0) continue;
    hit[static_cast<std::size_t>(cell_index(p, band_top, band_cells, band_offset))] = true;
  }
  CoverageReport report;
  report.n_bins = n_bins;
  report.visited = static_cast<int>(std::count(hit.begin(), hit.end(), true));
  report.fraction = static_cast<double>(report.visited) / n_bins;
  return report;
}

CoverageReport coverage_fraction(const evolution::Trajectory& traj, int n_bins) {
  return coverage_fraction(traj.bloch, n_bins);
}

DosHistogram density_of_states(ModelKind kind, const drive::DriveConfig& cfg, double phi,
                               double mass, int grid_n, int n_energy_bins) {
  if (grid_n < 64) throw Error(ErrorCode::InvalidArgument, "density_of_states needs grid_n >= 64");
  if (n_energy_bins < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 energy bins");
  drive::DriveConfig at_mass = cfg;
  at_mass.delta = drive::detuning_for_mass(mass, cfg.omega_r);
  const drive::DriveEvaluator eval(kind, at_mass, phi);
  const auto g = lattice::reciprocal_vectors(kind);

  std::vector<double> energies;
  energies.reserve(static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const Vec2 k = (static_cast<double>(i) / grid_n) * g[0] + (static_cast<double>(j) / grid_n) * g[1];
      energies.push_back(eval.at_theta({k.x, k.y}).h.splitting() / cfg.omega_r);
    }
  }
  const double e_max = *std::max_element(energies.begin(), energies.end());
  DosHistogram dos;
  dos.mass = mass;
  dos.min_abs_energy = *std::min_element(energies.begin(), energies.end());
  const double top = e_max * (1.0 + 1e-9) + 1e-12;
  const double width = 2.0 * top / n_energy_bins;
  dos.edges.resize(static_cast<std::size_t>(n_energy_bins) + 1);
  for (int b = 0; b <= n_energy_bins; ++b) dos.edges[static_cast<std::size_t>(b)] = -top + b * width;
  dos.counts.assign(static_cast<std::size_t>(n_energy_bins), 0.0);
  for (double e : energies) {
    // +E and -E land in mirrored bins, so the histogram is exactly even.
    int upper = static_cast<int>((e + top) / width);
    upper = std::clamp(upper, n_energy_bins / 2, n_energy_bins - 1);
    dos.counts[static_cast<std::size_t>(upper)] += 1.0;
    dos.counts[static_cast<std::size_t>(n_energy_bins - 1 - upper)] += 1.0;
  }
  const double total = 2.0 * static_cast<double>(energies.size()) * width;
  for (double& c : dos.counts) c /= total;
  return dos;
}

HarmonicWork work_by_harmonic(const evolution::Trajectory& traj, ModelKind kind,
                              const drive::DriveConfig& cfg, double phi,
                              const std::vector<drive::HarmonicChannel>& table) {
  if (!traj.signature.matches(kind, cfg, phi)) {
    throw Error(ErrorCode::ConfigMismatch,
                "trajectory was produced with a different model, drive or flux");
  }
  if (table.size() != traj.channels.size()) {
    throw Error(ErrorCode::ConfigMismatch, "harmonic table does not match the trajectory");
  }
  for (std::size_t c = 0; c < table.size(); ++c) {
    if (table[c].a != traj.channels[c].a || table[c].b != traj.channels[c].b) {
      throw Error(ErrorCode::ConfigMismatch, "harmonic table does not match the trajectory");
    }
  }

  HarmonicWork out;
  out.channels = table;
  out.times = traj.times;
  out.energy = traj.channel_energy;
  const std::size_t n = traj.size();
  out.net.resize(n);
  const auto& e = out.energy;
  if (kind == ModelKind::BrickWall) {
    // Channels: (1,0), (0,1), (-1,1), (1,1).
    for (std::size_t i = 0; i < n; ++i) {
      out.net[i] = 0.5 * (e[0][i] - e[1][i]) + 0.5 * (e[3][i] - e[2][i]);
    }
  } else {
    // Channels: a_1, a_2, a_3, b_1, b_2, b_3.
    out.x_part.resize(n);
    out.y_part.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.x_part[i] = ((e[0][i] - e[1][i]) + e[5][i]) / (2.0 * kSqrt3);
      out.y_part[i] = (-e[1][i] + e[2][i] - e[0][i] + e[2][i] - e[3][i] - e[4][i]) / 6.0;
      out.net[i] = out.x_part[i] + out.y_part[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (const auto& channel : e) sum += channel[i];
    const double total = traj.w1[i] + traj.w2[i];
    const double scale = std::max(1.0, std::abs(traj.w1[i]) + std::abs(traj.w2[i]));
    out.completeness_residual = std::max(out.completeness_residual, std::abs(sum - total) / scale);
  }
  return out;
}

}  // namespace floquet::observables
