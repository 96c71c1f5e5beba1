#include "floquet/floquet.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>

#include "floquet/config.hpp"
#include "floquet/error.hpp"
#include "floquet/lattice.hpp"
#include "floquet/observables.hpp"
#include "floquet/output.hpp"
#include "floquet/sweep.hpp"

using namespace floquet;

struct flq_config {
  config::RunConfig cfg;
};

struct flq_trajectory {
  config::RunConfig cfg;
  evolution::Trajectory traj;
};

struct flq_sweep {
  config::RunConfig cfg;
  sweep::SweepResult result;
};

namespace {

thread_local std::string last_error;

int fail(int code, const std::string& message) {
  last_error = message;
  return code;
}

template <typename F>
int guard(F&& body) {
  try {
    body();
    last_error.clear();
    return FLQ_OK;
  } catch (const Error& e) {
    return fail(static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FLQ_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FLQ_INTERNAL, e.what());
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(name) + " is null");
}

void copy_out(const std::string& s, char* buf, size_t len, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (buf == nullptr || len == 0) {
    if (needed) return;
    throw Error(ErrorCode::InvalidArgument, "output buffer is null");
  }
  if (len < s.size() + 1) {
    throw Error(ErrorCode::InvalidArgument,
                "buffer of " + std::to_string(len) + " bytes is too small; need " +
                    std::to_string(s.size() + 1));
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

evolution::Trajectory run_evolution(const config::RunConfig& c) {
  c.validate();
  const evolution::EvolutionParams params = c.evolution_params();
  if (c.mode == sweep::Mode::Conservative) {
    return evolution::evolve_conservative(c.kind, c.drive(), c.phi, params);
  }
  return evolution::evolve_driven_dissipative(c.kind, c.drive(), c.phi, c.dissipation(), params);
}

}  // namespace

extern "C" {

const char* flq_version(void) { return kVersion; }

const char* flq_last_error(void) { return last_error.c_str(); }

const char* flq_error_name(int code) {
  if (code == FLQ_INTERNAL) return "internal";
  if (code < 0 || code > FLQ_NON_INTEGER_CHERN) return "unknown";
  return error_code_name(static_cast<ErrorCode>(code));
}

int flq_config_new(flq_config** out) {
  return guard([&] {
    need(out, "out");
    *out = new flq_config{};
  });
}

int flq_config_load(const char* path, flq_config** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new flq_config{config::load(path)};
  });
}

int flq_config_parse(const char* text, flq_config** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new flq_config{config::parse_string(text)};
  });
}

int flq_config_set(flq_config* cfg, const char* key, const char* value) {
  return guard([&] {
    need(cfg, "config");
    need(key, "key");
    need(value, "value");
    config::set_value(cfg->cfg, key, value);
  });
}

int flq_config_get(const flq_config* cfg, const char* key, char* buf, size_t len,
                   size_t* needed) {
  return guard([&] {
    need(cfg, "config");
    need(key, "key");
    copy_out(config::get_value(cfg->cfg, key), buf, len, needed);
  });
}

int flq_config_validate(const flq_config* cfg) {
  return guard([&] {
    need(cfg, "config");
    cfg->cfg.validate();
  });
}

int flq_config_is_commensurate(const flq_config* cfg, int* out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    *out = config::is_commensurate(cfg->cfg) ? 1 : 0;
  });
}

int flq_config_echo(const flq_config* cfg, char* buf, size_t len, size_t* needed) {
  return guard([&] {
    need(cfg, "config");
    std::string text;
    for (const auto& [k, v] : config::echo(cfg->cfg)) text += k + " = " + v + "\n";
    copy_out(text, buf, len, needed);
  });
}

void flq_config_free(flq_config* cfg) { delete cfg; }

int flq_evolve(const flq_config* cfg, flq_trajectory** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    *out = new flq_trajectory{cfg->cfg, run_evolution(cfg->cfg)};
  });
}

size_t flq_trajectory_size(const flq_trajectory* traj) { return traj ? traj->traj.size() : 0; }

int flq_trajectory_column(const flq_trajectory* traj, const char* name, double* out, size_t n) {
  return guard([&] {
    need(traj, "trajectory");
    need(name, "name");
    need(out, "out");
    const evolution::Trajectory& t = traj->traj;
    if (n != t.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "column buffer holds " + std::to_string(n) + " values, trajectory has " +
                      std::to_string(t.size()));
    }
    const std::string col = name;
    for (size_t i = 0; i < n; ++i) {
      const Spinor& b = t.states[i].amp;
      const Vec3& s = t.bloch[i];
      if (col == "t") out[i] = t.times[i];
      else if (col == "re_b1") out[i] = b.first.real();
      else if (col == "im_b1") out[i] = b.first.imag();
      else if (col == "re_b2") out[i] = b.second.real();
      else if (col == "im_b2") out[i] = b.second.imag();
      else if (col == "bx") out[i] = s.x;
      else if (col == "by") out[i] = s.y;
      else if (col == "bz") out[i] = s.z;
      else if (col == "norm") out[i] = t.norm[i];
      else if (col == "W1") out[i] = t.w1[i];
      else if (col == "W2") out[i] = t.w2[i];
      else throw Error(ErrorCode::InvalidArgument, "unknown column '" + col + "'");
    }
  });
}

int flq_trajectory_slopes(const flq_trajectory* traj, double window_start, flq_slope_fit* out) {
  return guard([&] {
    need(traj, "trajectory");
    need(out, "out");
    if (!(window_start >= 0.0 && window_start < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "window start must be in [0, 1)");
    }
    const config::RunConfig& c = traj->cfg;
    const auto ws = observables::work_done(traj->traj, c.kind, c.drive(), c.phi);
    const auto fit = observables::pumping_slope(ws, c.drive(), window_start);
    *out = {fit.slope1, fit.slope2, fit.r2_1, fit.r2_2, fit.window};
  });
}

int flq_trajectory_coverage(const flq_trajectory* traj, int n_bins, double* out) {
  return guard([&] {
    need(traj, "trajectory");
    need(out, "out");
    *out = observables::coverage_fraction(traj->traj, n_bins).fraction;
  });
}

int flq_trajectory_write_csv(const flq_trajectory* traj, const char* path) {
  return guard([&] {
    need(traj, "trajectory");
    need(path, "path");
    output::write_trajectory_csv(path, traj->traj, config::echo(traj->cfg));
  });
}

void flq_trajectory_free(flq_trajectory* traj) { delete traj; }

int flq_sweep_run(const flq_config* cfg, flq_sweep** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    cfg->cfg.validate();
    *out = new flq_sweep{cfg->cfg, sweep::sweep(cfg->cfg.sweep_spec())};
  });
}

size_t flq_sweep_size(const flq_sweep* s) { return s ? s->result.cells.size() : 0; }

int flq_sweep_cell_at(const flq_sweep* s, size_t index, flq_sweep_cell* out) {
  return guard([&] {
    need(s, "sweep");
    need(out, "out");
    if (index >= s->result.cells.size()) {
      throw Error(ErrorCode::InvalidArgument, "cell index " + std::to_string(index) +
                                                  " out of range");
    }
    const sweep::SweepCell& c = s->result.cells[index];
    out->mass = c.mass;
    out->phi = c.phi;
    out->fit = {c.fit.slope1, c.fit.slope2, c.fit.r2_1, c.fit.r2_2, c.fit.window};
    out->has_chern = c.chern ? 1 : 0;
    out->chern = c.chern.value_or(0);
    out->boundary = c.boundary ? 1 : 0;
    out->status = static_cast<int>(c.status);
  });
}

int flq_sweep_write_csv(const flq_sweep* s, const char* path) {
  return guard([&] {
    need(s, "sweep");
    need(path, "path");
    output::write_sweep_csv(path, s->result, config::echo(s->cfg));
  });
}

void flq_sweep_free(flq_sweep* s) { delete s; }

int flq_chern(const char* kind, double mass, double phi, int grid_n, int* out) {
  return guard([&] {
    need(kind, "kind");
    need(out, "out");
    const ModelKind k = parse_model_kind(kind);
    const lattice::HaldaneParams p{mass, phi, 1.0, 1.0};
    *out = lattice::chern_number(lattice::bloch_map(k, p), lattice::geometry(k), grid_n);
  });
}

int flq_dos_write_csv(const flq_config* cfg, const double* masses, size_t n, const char* path) {
  return guard([&] {
    need(cfg, "config");
    need(path, "path");
    if (n > 0) need(masses, "masses");
    const config::RunConfig& c = cfg->cfg;
    c.validate();
    std::vector<observables::DosHistogram> dos;
    if (n == 0) {
      dos.push_back(observables::density_of_states(c.kind, c.drive(), c.phi, c.mass, c.dos_grid,
                                                   c.dos_bins));
    }
    for (size_t i = 0; i < n; ++i) {
      dos.push_back(observables::density_of_states(c.kind, c.drive(), c.phi, masses[i],
                                                   c.dos_grid, c.dos_bins));
    }
    output::write_dos_csv(path, dos, config::echo(c));
  });
}

int flq_signals_write_csv(const flq_config* cfg, const char* path) {
  return guard([&] {
    need(cfg, "config");
    need(path, "path");
    const config::RunConfig& c = cfg->cfg;
    c.validate();
    const drive::DriveConfig d = c.drive();
    const double duration = c.signal_duration > 0.0
                                ? c.signal_duration
                                : kTwoPi / std::min(d.omega1, d.omega2);
    output::export_waveforms(c.kind, d, c.phi, c.sample_rate, duration, path, config::echo(c));
  });
}

int flq_write_manifest(const flq_config* cfg, const char* command, const char* const* outputs,
                       size_t n_outputs, double wall_time_s, const char* path) {
  return guard([&] {
    need(cfg, "config");
    need(command, "command");
    need(path, "path");
    if (n_outputs > 0) need(outputs, "outputs");
    output::Manifest m;
    m.command = command;
    m.echo = config::echo(cfg->cfg);
    for (size_t i = 0; i < n_outputs; ++i) {
      need(outputs[i], "output path");
      m.outputs.emplace_back(outputs[i]);
    }
    m.wall_time_s = wall_time_s;
    output::write_manifest(path, m);
  });
}

}  // extern "C"
