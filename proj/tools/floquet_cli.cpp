// Command-line front end. Talks to the simulator only through floquet.h.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "floquet/floquet.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct RuntimeFailure {
  std::string message;
};

void check(int rc, const char* what) {
  if (rc != FLQ_OK) {
    throw RuntimeFailure{std::string(what) + ": " + flq_error_name(rc) + ": " + flq_last_error()};
  }
}

struct ConfigDeleter {
  void operator()(flq_config* c) const { flq_config_free(c); }
};
using ConfigPtr = std::unique_ptr<flq_config, ConfigDeleter>;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "Config file (key = value lines)");
  cmd->add_option("-s,--set", opts.overrides, "Override a config key, e.g. model.M=2")
      ->take_all();
  cmd->add_option("-o,--out", opts.out_dir, "Output directory (overrides output.dir)");
}

ConfigPtr build_config(const CommonOptions& opts) {
  flq_config* raw = nullptr;
  if (opts.config_path.empty()) {
    check(flq_config_new(&raw), "config");
  } else {
    check(flq_config_load(opts.config_path.c_str(), &raw), "config");
  }
  ConfigPtr cfg(raw);
  for (const auto& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
    }
    check(flq_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()),
          "--set");
  }
  if (!opts.out_dir.empty()) check(flq_config_set(cfg.get(), "output.dir", opts.out_dir.c_str()), "--out");
  check(flq_config_validate(cfg.get()), "config");
  return cfg;
}

std::string out_dir(const flq_config* cfg) {
  size_t needed = 0;
  check(flq_config_get(cfg, "output.dir", nullptr, 0, &needed), "output.dir");
  std::string dir(needed, '\0');
  check(flq_config_get(cfg, "output.dir", dir.data(), dir.size(), &needed), "output.dir");
  dir.resize(needed - 1);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw RuntimeFailure{"cannot create output directory '" + dir + "': " + ec.message()};
  return dir;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void manifest(const flq_config* cfg, const char* command, const std::string& dir,
              const std::vector<std::string>& outputs, const Timer& timer) {
  std::vector<const char*> ptrs;
  for (const auto& o : outputs) ptrs.push_back(o.c_str());
  const std::string path = dir + "/" + command + ".manifest.json";
  check(flq_write_manifest(cfg, command, ptrs.data(), ptrs.size(), timer.seconds(), path.c_str()),
        "manifest");
}

void warn_if_commensurate(const flq_config* cfg) {
  int commensurate = 0;
  check(flq_config_is_commensurate(cfg, &commensurate), "config");
  if (commensurate) {
    std::cerr << "note: drive.ratio is commensurate; pumping is not expected to be quantized\n";
  }
}

void run_evolve(const CommonOptions& opts) {
  const Timer timer;
  const ConfigPtr cfg = build_config(opts);
  warn_if_commensurate(cfg.get());
  const std::string dir = out_dir(cfg.get());
  flq_trajectory* traj = nullptr;
  check(flq_evolve(cfg.get(), &traj), "evolve");
  const std::unique_ptr<flq_trajectory, decltype(&flq_trajectory_free)> guard(
      traj, flq_trajectory_free);
  const std::string path = dir + "/trajectory.csv";
  check(flq_trajectory_write_csv(traj, path.c_str()), "write");

  size_t needed = 0;
  check(flq_config_get(cfg.get(), "evolution.window", nullptr, 0, &needed), "window");
  std::string window(needed, '\0');
  check(flq_config_get(cfg.get(), "evolution.window", window.data(), window.size(), &needed),
        "window");
  flq_slope_fit fit{};
  if (flq_trajectory_slopes(traj, std::stod(window), &fit) == FLQ_OK) {
    std::printf("slope1 = %.6f  slope2 = %.6f  r2 = %.4f / %.4f\n", fit.slope1, fit.slope2,
                fit.r2_1, fit.r2_2);
  } else {
    std::fprintf(stderr, "note: %s\n", flq_last_error());
  }
  manifest(cfg.get(), "evolve", dir, {path}, timer);
  std::printf("wrote %s\n", path.c_str());
}

void run_sweep(const CommonOptions& opts) {
  const Timer timer;
  const ConfigPtr cfg = build_config(opts);
  const std::string dir = out_dir(cfg.get());
  flq_sweep* s = nullptr;
  check(flq_sweep_run(cfg.get(), &s), "sweep");
  const std::unique_ptr<flq_sweep, decltype(&flq_sweep_free)> guard(s, flq_sweep_free);
  const std::string path = dir + "/sweep.csv";
  check(flq_sweep_write_csv(s, path.c_str()), "write");
  size_t failed = 0;
  for (size_t i = 0; i < flq_sweep_size(s); ++i) {
    flq_sweep_cell cell{};
    check(flq_sweep_cell_at(s, i, &cell), "cell");
    if (cell.status != FLQ_CELL_OK) ++failed;
  }
  manifest(cfg.get(), "sweep", dir, {path}, timer);
  std::printf("wrote %s (%zu cells, %zu not ok)\n", path.c_str(), flq_sweep_size(s), failed);
}

void run_dos(const CommonOptions& opts, const std::vector<double>& masses) {
  const Timer timer;
  const ConfigPtr cfg = build_config(opts);
  const std::string dir = out_dir(cfg.get());
  const std::string path = dir + "/dos.csv";
  check(flq_dos_write_csv(cfg.get(), masses.data(), masses.size(), path.c_str()), "dos");
  manifest(cfg.get(), "dos", dir, {path}, timer);
  std::printf("wrote %s\n", path.c_str());
}

void run_signals(const CommonOptions& opts) {
  const Timer timer;
  const ConfigPtr cfg = build_config(opts);
  const std::string dir = out_dir(cfg.get());
  const std::string path = dir + "/signals.csv";
  check(flq_signals_write_csv(cfg.get(), path.c_str()), "signals");
  manifest(cfg.get(), "signals", dir, {path}, timer);
  std::printf("wrote %s\n", path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet synthetic-dimension Haldane and brick-wall simulator"};
  app.require_subcommand(1);

  CommonOptions evolve_opts, sweep_opts, dos_opts, signals_opts;
  auto* evolve = app.add_subcommand("evolve", "Single evolution; writes trajectory.csv");
  add_common(evolve, evolve_opts);
  auto* sweep = app.add_subcommand("sweep", "(M, phi) grid; writes sweep.csv");
  add_common(sweep, sweep_opts);
  auto* dos = app.add_subcommand("dos", "Density of states; writes dos.csv");
  add_common(dos, dos_opts);
  std::vector<double> masses{1, 2, 3, 4, 5, 6};
  dos->add_option("--masses", masses, "Masses to histogram")->capture_default_str();
  auto* signals = app.add_subcommand("signals", "AWG waveforms; writes signals.csv");
  add_common(signals, signals_opts);

  auto* chern = app.add_subcommand("chern", "Lattice Chern number; prints one integer");
  std::string kind = "haldane";
  double mass = 1.0, phi = 1.5707963267948966;
  int grid = 64;
  chern->add_option("--kind", kind, "haldane or brickwall")->capture_default_str();
  chern->add_option("--M", mass, "Mass")->capture_default_str();
  chern->add_option("--phi", phi, "Flux")->capture_default_str();
  chern->add_option("--grid", grid, "k-grid points per axis")->capture_default_str();

  auto* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*evolve) run_evolve(evolve_opts);
    else if (*sweep) run_sweep(sweep_opts);
    else if (*dos) run_dos(dos_opts, masses);
    else if (*signals) run_signals(signals_opts);
    else if (*version) std::printf("floquet %s\n", flq_version());
    else if (*chern) {
      int c = 0;
      check(flq_chern(kind.c_str(), mass, phi, grid, &c), "chern");
      std::printf("%d\n", c);
    }
  } catch (const RuntimeFailure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return kExitRuntime;
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}
