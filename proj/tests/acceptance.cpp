// End-to-end acceptance checks. One PASS/FAIL line per criterion; exit status
// is nonzero when any criterion fails.
//
//   acceptance [--out DIR] [criterion ...]
//
// With no criterion numbers all nine run. --out writes the trajectory, DoS and
// sweep CSVs that the plotting scripts consume.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "floquet/config.hpp"
#include "floquet/drive.hpp"
#include "floquet/error.hpp"
#include "floquet/evolution.hpp"
#include "floquet/lattice.hpp"
#include "floquet/observables.hpp"
#include "floquet/output.hpp"
#include "floquet/sweep.hpp"

using namespace floquet;

namespace {

// Slopes settle slowly: at 30 periods the fit R^2 is below 0.3 even deep in
// the topological phase, so the pumping checks use a longer horizon.
constexpr double kPumpPeriods = 300.0;
constexpr double kSweepPeriods = 100.0;
constexpr double kWindow = observables::kDefaultWindowStart;

std::string out_dir;

struct Run {
  evolution::Trajectory traj;
  observables::SlopeFit fit;
  double drift = 0.0;
  double completeness = 0.0;
};

using RunKey = std::tuple<int, bool, double, double, double, int>;
std::map<RunKey, Run> run_cache;

const char* kind_name(ModelKind kind) {
  return kind == ModelKind::Haldane ? "haldane" : "brickwall";
}

output::Echo run_echo(ModelKind kind, bool dissipative, double mass, double phi, double periods) {
  return {{"model.kind", kind_name(kind)},
          {"model.M", config::format_number(mass)},
          {"model.phi", config::format_number(phi)},
          {"evolution.mode", dissipative ? "driven-dissipative" : "conservative"},
          {"evolution.periods", config::format_number(periods)}};
}

const Run& run(ModelKind kind, bool dissipative, double mass, double phi, double periods,
               int decimate = evolution::kDefaultDecimate) {
  const RunKey key{static_cast<int>(kind), dissipative, mass, phi, periods, decimate};
  if (auto it = run_cache.find(key); it != run_cache.end()) return it->second;

  const drive::DriveConfig cfg = drive::reference_drive(mass);
  evolution::EvolutionParams p;
  p.duration = evolution::default_duration(cfg, periods);
  p.decimate = decimate;
  Run r;
  r.traj = dissipative ? evolution::evolve_driven_dissipative(
                             kind, cfg, phi, evolution::reference_dissipation(cfg.omega_r), p)
                       : evolution::evolve_conservative(kind, cfg, phi, p);
  r.fit = observables::pumping_slope(observables::work_done(r.traj, kind, cfg, phi), cfg, kWindow);
  for (double n : r.traj.norm) r.drift = std::max(r.drift, std::abs(n - 1.0));
  r.completeness = observables::work_by_harmonic(r.traj, kind, cfg, phi,
                                                 drive::harmonic_table(kind))
                       .completeness_residual;
  std::fprintf(stderr, "  run %s %s M=%g phi=%.4f T=%g: slopes %+.3f %+.3f  r2 %.3f %.3f\n",
               kind_name(kind), dissipative ? "dd" : "cons", mass, phi, periods, r.fit.slope1,
               r.fit.slope2, r.fit.r2_1, r.fit.r2_2);
  if (!out_dir.empty()) {
    char name[160];
    std::snprintf(name, sizeof name, "%s/trajectory_%s_%s_M%g_T%g.csv", out_dir.c_str(),
                  kind_name(kind), dissipative ? "dd" : "cons", mass, periods);
    output::write_trajectory_csv(name, r.traj, run_echo(kind, dissipative, mass, phi, periods));
  }
  return run_cache.emplace(key, std::move(r)).first->second;
}

struct Verdict {
  bool pass = true;
  std::string detail;
  std::string failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures += (failures.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double boundary_mass(ModelKind kind, double phi) {
  return lattice::phase_boundary(kind, phi).upper;
}

// 1: lattice Chern scan locates the |C| 1 -> 0 transition.
Verdict phase_boundaries() {
  Verdict v;
  double worst = 0.0;
  for (ModelKind kind : {ModelKind::Haldane, ModelKind::BrickWall}) {
    for (double phi : {kPi / 6.0, kPi / 3.0, kPi / 2.0}) {
      const double expect = boundary_mass(kind, phi);
      for (double side : {1.0, -1.0}) {
        std::optional<double> last_topo;
        std::optional<double> transition;
        for (int i = 0; i <= 140 && !transition; ++i) {
          const double m = side * 0.05 * i;
          try {
            const int c = std::abs(lattice::chern_number(
                lattice::bloch_map(kind, {m, phi, 1.0, 1.0}), lattice::geometry(kind), 64));
            if (c == 1) last_topo = m;
            if (c == 0 && last_topo) transition = 0.5 * (*last_topo + m);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::GapClosed && e.code() != ErrorCode::NonIntegerChern) throw;
          }
        }
        const std::string where = fmt("%s phi=%.3f side %+g", kind_name(kind), phi, side);
        if (!transition) {
          v.require(false, where + ": no transition found");
          continue;
        }
        const double err = std::abs(std::abs(*transition) - expect);
        worst = std::max(worst, err);
        v.require(err <= 0.1, where + fmt(": transition %.3f vs %.3f", *transition, side * expect));
      }
    }
  }
  v.note(fmt("max |transition - boundary| = %.3f", worst));
  return v;
}

// 2: conservative pumping at M = 1, the boundary and M = 6.
Verdict conservative_pumping() {
  Verdict v;
  struct Target {
    ModelKind kind;
    double s1, s2;
  };
  for (const Target& t : {Target{ModelKind::BrickWall, 1.97, -1.97},
                          Target{ModelKind::Haldane, 1.96, -1.94}}) {
    const Run& topo = run(t.kind, false, 1.0, kPi / 2.0, kPumpPeriods);
    const Run& edge = run(t.kind, false, boundary_mass(t.kind, kPi / 2.0), kPi / 2.0, kPumpPeriods);
    const Run& triv = run(t.kind, false, 6.0, kPi / 2.0, kPumpPeriods);
    const std::string k = kind_name(t.kind);
    v.note(fmt("%s M=1 %+.3f/%+.3f, M=6 %+.3f/%+.3f, boundary r2 %.2f->%.2f", k.c_str(),
                    topo.fit.slope1, topo.fit.slope2, triv.fit.slope1, triv.fit.slope2,
                    std::min(topo.fit.r2_1, topo.fit.r2_2), std::max(edge.fit.r2_1, edge.fit.r2_2)));
    v.require(std::abs(topo.fit.slope1 - t.s1) <= 0.2 && std::abs(topo.fit.slope2 - t.s2) <= 0.2,
              k + fmt(" M=1 slopes off target %+.2f/%+.2f", t.s1, t.s2));
    v.require(std::abs(triv.fit.slope1) < 0.2 && std::abs(triv.fit.slope2) < 0.2,
              k + " M=6 not flat");
    v.require(topo.fit.r2_1 - edge.fit.r2_1 >= 0.2 && topo.fit.r2_2 - edge.fit.r2_2 >= 0.2,
              k + " boundary R^2 drop < 0.2");
  }
  return v;
}

// 3: driven-dissipative pumping.
Verdict dissipative_pumping() {
  Verdict v;
  const Run& bw = run(ModelKind::BrickWall, true, 1.0, kPi / 2.0, kPumpPeriods);
  const Run& hal = run(ModelKind::Haldane, true, 1.0, kPi / 2.0, kPumpPeriods);
  v.note(fmt("brickwall M=1 %+.3f/%+.3f, haldane M=1 %+.3f/%+.3f", bw.fit.slope1, bw.fit.slope2,
             hal.fit.slope1, hal.fit.slope2));
  v.require(std::abs(bw.fit.slope1 - 2.00) <= 0.25 && std::abs(bw.fit.slope2 + 2.02) <= 0.25,
            "brickwall M=1 off 2.00/-2.02");
  v.require(std::abs(std::abs(hal.fit.slope1) - 2.60) <= 0.35 &&
                std::abs(std::abs(hal.fit.slope2) - 2.60) <= 0.35,
            "haldane M=1 magnitude off 2.60");
  for (ModelKind kind : {ModelKind::BrickWall, ModelKind::Haldane}) {
    const Run& triv = run(kind, true, 6.0, kPi / 2.0, kPumpPeriods);
    v.note(fmt("%s M=6 %+.3f/%+.3f", kind_name(kind), triv.fit.slope1, triv.fit.slope2));
    v.require(std::abs(triv.fit.slope1) < 0.25 && std::abs(triv.fit.slope2) < 0.25,
              std::string(kind_name(kind)) + " M=6 not flat");
  }
  return v;
}

// 4: |slope| = 2|C| at interior points; harmonic bookkeeping closes.
Verdict twice_chern() {
  Verdict v;
  const std::vector<std::pair<double, double>> points = {
      {1.0, kPi / 2.0}, {-1.0, kPi / 2.0}, {0.5, kPi / 3.0}, {1.0, -kPi / 2.0}, {-0.5, 2.0 * kPi / 3.0}};
  double worst_residual = 0.0;
  for (ModelKind kind : {ModelKind::BrickWall, ModelKind::Haldane}) {
    double worst = 0.0;
    for (const auto& [m, phi] : points) {
      const int c = lattice::chern_number(lattice::bloch_map(kind, {m, phi, 1.0, 1.0}),
                                          lattice::geometry(kind), 64);
      const Run& r = run(kind, false, m, phi, kPumpPeriods);
      for (double s : {r.fit.slope1, r.fit.slope2}) {
        worst = std::max(worst, std::abs(std::abs(s) - 2.0 * std::abs(c)));
      }
      v.require(c != 0, fmt("%s (%.2f, %.3f) is not topological", kind_name(kind), m, phi));
    }
    v.note(fmt("%s max ||slope| - 2|C|| = %.3f", kind_name(kind), worst));
    v.require(worst <= 0.3, std::string(kind_name(kind)) + " exceeds 0.3");
  }
  for (const auto& [key, r] : run_cache) worst_residual = std::max(worst_residual, r.completeness);
  v.note(fmt("completeness residual %.1e over %zu runs", worst_residual, run_cache.size()));
  v.require(worst_residual < 1e-8, "harmonic completeness residual >= 1e-8");
  return v;
}

// 5: density of states.
Verdict density_of_states() {
  Verdict v;
  std::vector<observables::DosHistogram> all;
  double worst_gap = 0.0;
  for (ModelKind kind : {ModelKind::Haldane, ModelKind::BrickWall}) {
    for (int m = 1; m <= 6; ++m) {
      const auto h = observables::density_of_states(kind, drive::reference_drive(m), kPi / 2.0, m,
                                                    256, 120);
      const int b = h.bin_of(3.0);
      v.require(b >= 0 && h.counts[static_cast<std::size_t>(b)] > 0.0,
                fmt("%s M=%d no weight at E=3", kind_name(kind), m));
      for (std::size_t i = 0; i < h.counts.size(); ++i) {
        if (h.counts[i] != h.counts[h.counts.size() - 1 - i]) {
          v.require(false, fmt("%s M=%d not even in E", kind_name(kind), m));
          break;
        }
      }
      if (kind == ModelKind::BrickWall) all.push_back(h);
    }
    const double mb = boundary_mass(kind, kPi / 2.0);
    const auto edge =
        observables::density_of_states(kind, drive::reference_drive(mb), kPi / 2.0, mb, 256, 120);
    worst_gap = std::max(worst_gap, edge.min_abs_energy);
    v.require(edge.min_abs_energy < 0.05, std::string(kind_name(kind)) + " gap open at boundary");
  }
  v.note(fmt("min|E| at boundary <= %.4f", worst_gap));
  if (!out_dir.empty()) output::write_dos_csv(out_dir + "/dos.csv", all, {{"model.kind", "brickwall"}});
  return v;
}

// 6: Bloch-sphere coverage at the default horizon.
Verdict bloch_coverage() {
  Verdict v;
  constexpr double kPeriods = 30.0;
  // The Bloch vector turns at up to ~800 rad/us. A 0.2 ns stride keeps
  // consecutive samples closer than one of the 400 cells (~0.18 rad), so the
  // binned points trace the path instead of skipping across the sphere.
  constexpr int kFineDecimate =
      static_cast<int>(2e-4 / evolution::kDefaultDt + 0.5);
  for (ModelKind kind : {ModelKind::BrickWall, ModelKind::Haldane}) {
    const Run& topo = run(kind, false, 1.0, kPi / 2.0, kPeriods, kFineDecimate);
    const Run& triv = run(kind, false, 6.0, kPi / 2.0, kPeriods, kFineDecimate);
    const double ct = observables::coverage_fraction(topo.traj, 400).fraction;
    const double cz = observables::coverage_fraction(triv.traj, 400).fraction;
    v.note(fmt("%s coverage %.3f topological vs %.3f trivial", kind_name(kind), ct, cz));
    v.require(ct > 0.95, std::string(kind_name(kind)) + " topological coverage <= 0.95");
    v.require(cz < 0.5 * ct, std::string(kind_name(kind)) + " trivial coverage too high");

    double prev = 0.0;
    for (int part = 1; part <= 6; ++part) {
      const std::size_t n = topo.traj.bloch.size() * part / 6;
      const std::vector<Vec3> prefix(topo.traj.bloch.begin(),
                                     topo.traj.bloch.begin() + static_cast<std::ptrdiff_t>(n));
      const double c = observables::coverage_fraction(prefix, 400).fraction;
      v.require(c >= prev, std::string(kind_name(kind)) + " coverage decreased with T");
      prev = c;
    }
  }
  return v;
}

sweep::SweepSpec haldane_grid() {
  sweep::SweepSpec s;
  s.kind = ModelKind::Haldane;
  s.mass = {-6.0, 6.0, 10};
  s.phi = {-kPi, kPi, 10};
  s.mode = sweep::Mode::DrivenDissipative;
  s.periods = kSweepPeriods;
  return s;
}

const sweep::SweepResult& golden_grid() {
  static std::optional<sweep::SweepResult> grid;
  if (!grid) {
    std::fprintf(stderr, "  golden-ratio 10x10 Haldane sweep (%g periods)\n", kSweepPeriods);
    grid = sweep::sweep(haldane_grid());
    if (!out_dir.empty()) {
      output::write_sweep_csv(out_dir + "/sweep_haldane_dd.csv", *grid,
                              {{"model.kind", "haldane"}, {"evolution.mode", "driven-dissipative"}});
    }
  }
  return *grid;
}

// 7: a commensurate ratio breaks the slope1 = -slope2 balance.
Verdict commensurate_control() {
  Verdict v;
  std::fprintf(stderr, "  commensurate 10x10 Haldane sweep\n");
  const sweep::SweepResult comm = sweep::commensurate_control(haldane_grid());
  if (!out_dir.empty()) {
    output::write_sweep_csv(out_dir + "/sweep_haldane_dd_commensurate.csv", comm,
                            {{"model.kind", "haldane"}, {"drive.ratio", "1.5"}});
  }
  double largest = 0.0;
  for (const auto& c : comm.cells) {
    if (c.status == sweep::CellStatus::Ok) {
      largest = std::max(largest, std::abs(c.fit.slope1 + c.fit.slope2));
    }
  }
  int interior = 0;
  int balanced = 0;
  for (const auto& c : golden_grid().cells) {
    if (c.boundary) continue;
    ++interior;
    if (c.status == sweep::CellStatus::Ok && std::abs(c.fit.slope1 + c.fit.slope2) < 0.15) {
      ++balanced;
    }
  }
  const double frac = interior ? static_cast<double>(balanced) / interior : 0.0;
  v.note(fmt("commensurate max |s1+s2| = %.3f; golden balanced %d/%d", largest, balanced,
             interior));
  v.require(largest > 0.5, "no commensurate cell with |s1+s2| > 0.5");
  v.require(frac >= 0.9, "golden grid balanced on < 90% of interior cells");
  return v;
}

int sign_with_dead_zone(double slope) {
  // Slopes are 0 or about +-2.6 in a phase; anything under 1 counts as no pumping.
  if (std::abs(slope) < 1.0) return 0;
  return slope > 0.0 ? 1 : -1;
}

// 8: slope sign follows the Chern number; slopes spike near the boundary.
Verdict phase_diagram() {
  Verdict v;
  const sweep::SweepResult& g = golden_grid();
  int cells = 0;
  int matched = 0;
  std::vector<double> interior;
  double spike = 0.0;
  for (const auto& c : g.cells) {
    if (c.boundary) {
      if (c.status == sweep::CellStatus::Ok) spike = std::max(spike, std::abs(c.fit.slope1));
      continue;
    }
    ++cells;
    if (c.status == sweep::CellStatus::Ok && c.chern &&
        sign_with_dead_zone(c.fit.slope1) == (*c.chern > 0) - (*c.chern < 0)) {
      ++matched;
    }
    interior.push_back(std::abs(c.fit.slope1));
  }
  std::sort(interior.begin(), interior.end());
  const double median = interior.empty() ? 0.0 : interior[interior.size() / 2];
  const double frac = cells ? static_cast<double>(matched) / cells : 0.0;
  v.note(fmt("sign match %d/%d, boundary max |slope1| %.3f vs interior median %.3f", matched,
             cells, spike, median));
  v.require(frac >= 0.9, "sign agreement < 90%");
  v.require(spike >= 2.0 * median, "no boundary spike >= 2x interior median");
  return v;
}

// 9: numerical hygiene.
Verdict numerical_hygiene() {
  Verdict v;
  const drive::DriveConfig cfg = drive::reference_drive(1.0);

  double drift = 0.0;
  for (const auto& [key, r] : run_cache) {
    if (!std::get<1>(key)) drift = std::max(drift, r.drift);
  }
  const Run& fresh = run(ModelKind::Haldane, false, 1.0, kPi / 2.0, 30.0);
  drift = std::max(drift, fresh.drift);

  evolution::EvolutionParams p;
  p.duration = evolution::default_duration(cfg, 5.0);
  const auto a = evolution::evolve_conservative(ModelKind::BrickWall, cfg, kPi / 2.0, p);
  p.dt /= 2.0;
  p.decimate *= 2;
  const auto b = evolution::evolve_conservative(ModelKind::BrickWall, cfg, kPi / 2.0, p);
  const double dw = std::max(std::abs(a.w1.back() - b.w1.back()) / std::abs(b.w1.back()),
                             std::abs(a.w2.back() - b.w2.back()) / std::abs(b.w2.back()));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> time(0.0, 60.0);
  std::uniform_real_distribution<double> flux(-kPi, kPi);
  double fd = 0.0;
  for (int i = 0; i < 200; ++i) {
    const ModelKind kind = i % 2 ? ModelKind::Haldane : ModelKind::BrickWall;
    const drive::DriveConfig c = drive::reference_drive(0.5 + (i % 7));
    const double phi = flux(rng);
    const double t = time(rng);
    for (int axis = 1; axis <= 2; ++axis) {
      const double h = 1e-6;
      auto lo = drive::theta(t, c);
      auto hi = lo;
      lo[axis - 1] -= h;
      hi[axis - 1] += h;
      const Hermitian2 num = (0.5 / h) * (drive::hamiltonian_at(kind, c, phi, hi) -
                                          drive::hamiltonian_at(kind, c, phi, lo));
      const Hermitian2 an = drive::dH_dtheta(kind, c, phi, t, axis);
      fd = std::max(fd, (num - an).splitting() / std::max(an.splitting(), c.omega_r));
    }
  }

  evolution::DissipationConfig loss;
  loss.gamma = 0.01;
  loss.s_amp = 0.0;
  evolution::EvolutionParams lp;
  lp.duration = evolution::default_duration(cfg, 5.0);
  const auto decay =
      evolution::evolve_driven_dissipative(ModelKind::Haldane, cfg, kPi / 2.0, loss, lp);
  double decay_err = 0.0;
  for (std::size_t i = 0; i < decay.size(); ++i) {
    const double expect = std::exp(-loss.gamma * decay.times[i]);
    decay_err = std::max(decay_err, std::abs(decay.norm[i] - expect) / expect);
  }

  sweep::SweepSpec s;
  s.kind = ModelKind::BrickWall;
  s.mass = {-2.0, 5.0, 3};
  s.phi = {-1.0, 2.0, 3};
  s.periods = 1.0;
  s.workers = 1;
  const auto serial = sweep::sweep(s);
  s.workers = 4;
  const auto pooled = sweep::sweep(s);
  bool identical = serial.cells.size() == pooled.cells.size();
  for (std::size_t i = 0; identical && i < serial.cells.size(); ++i) {
    const auto& x = serial.cells[i];
    const auto& y = pooled.cells[i];
    identical = x.fit.slope1 == y.fit.slope1 && x.fit.slope2 == y.fit.slope2 &&
                x.fit.r2_1 == y.fit.r2_1 && x.fit.r2_2 == y.fit.r2_2 && x.chern == y.chern &&
                x.status == y.status;
  }

  v.note(fmt("drift %.1e, dt-halving %.1e, dH %.1e, decay %.1e, workers %s", drift, dw, fd,
             decay_err, identical ? "identical" : "DIFFER"));
  v.require(drift < 1e-6, "norm drift");
  v.require(dw < 1e-4, "dt-halving");
  v.require(fd < 1e-6, "finite differences");
  v.require(decay_err < 1e-6, "gamma decay");
  v.require(identical, "worker-count dependence");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--out" && i + 1 < argc) {
      out_dir = argv[++i];
      std::filesystem::create_directories(out_dir);
    } else {
      const int n = std::atoi(arg.c_str());
      if (n < 1 || n > 9) {
        std::fprintf(stderr, "usage: acceptance [--out DIR] [1-9 ...]\n");
        return 2;
      }
      selected.insert(n);
    }
  }

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"phase boundaries", phase_boundaries},
      {"conservative pumping", conservative_pumping},
      {"driven-dissipative pumping", dissipative_pumping},
      {"twice-Chern slopes", twice_chern},
      {"density of states", density_of_states},
      {"Bloch coverage", bloch_coverage},
      {"commensurate control", commensurate_control},
      {"phase diagram", phase_diagram},
      {"numerical hygiene", numerical_hygiene},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(n)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.failures = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %-28s %s  (%.0f s) %s%s%s\n", n, criteria[i].first,
                v.pass ? "PASS" : "FAIL", secs, v.detail.c_str(),
                v.failures.empty() ? "" : " | failed: ", v.failures.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
