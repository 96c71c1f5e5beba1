#include "floquet/output.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "floquet/config.hpp"
#include "floquet/error.hpp"

namespace floquet::output {
namespace {

using config::format_number;

std::ofstream open(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

void write_echo(std::ostream& out, const Echo& echo) {
  for (const auto& [k, v] : echo) out << "# " << k << " = " << v << '\n';
}

template <typename... T>
void row(std::ostream& out, double first, T... rest) {
  out << format_number(first);
  ((out << ',' << format_number(rest)), ...);
  out << '\n';
}

}  // namespace

void write_trajectory_csv(const std::string& path, const evolution::Trajectory& traj,
                          const Echo& echo) {
  std::ofstream out = open(path);
  write_echo(out, echo);
  out << "t,re_b1,im_b1,re_b2,im_b2,bx,by,bz,norm,W1,W2\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Spinor& b = traj.states[i].amp;
    const Vec3& s = traj.bloch[i];
    row(out, traj.times[i], b.first.real(), b.first.imag(), b.second.real(), b.second.imag(), s.x,
        s.y, s.z, traj.norm[i], traj.w1[i], traj.w2[i]);
  }
  finish(out, path);
}

void write_sweep_csv(const std::string& path, const sweep::SweepResult& result,
                     const Echo& echo) {
  std::ofstream out = open(path);
  write_echo(out, echo);
  out << "M,phi,slope1,slope2,r2_1,r2_2,chern,status\n";
  for (const auto& c : result.cells) {
    out << format_number(c.mass) << ',' << format_number(c.phi) << ','
        << format_number(c.fit.slope1) << ',' << format_number(c.fit.slope2) << ','
        << format_number(c.fit.r2_1) << ',' << format_number(c.fit.r2_2) << ','
        << (c.chern ? std::to_string(*c.chern) : std::string("nan")) << ','
        << sweep::to_string(c.status) << '\n';
  }
  finish(out, path);
}

void write_dos_csv(const std::string& path, const std::vector<observables::DosHistogram>& dos,
                   const Echo& echo) {
  std::ofstream out = open(path);
  write_echo(out, echo);
  out << "M,E_low,E_high,density\n";
  for (const auto& h : dos) {
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      row(out, h.mass, h.edges[i], h.edges[i + 1], h.counts[i]);
    }
  }
  finish(out, path);
}

WaveformInfo export_waveforms(ModelKind kind, const drive::DriveConfig& cfg, double phi,
                              double sample_rate, double duration, const std::string& path,
                              const Echo& echo) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw Error(ErrorCode::InvalidArgument, "sample rate must be positive");
  }
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw Error(ErrorCode::InvalidArgument, "duration must be finite and non-negative");
  }
  WaveformInfo info;
  info.sample_rate = sample_rate;
  info.duration = duration;
  const std::vector<drive::HarmonicChannel> table = drive::harmonic_table(kind);
  const drive::HarmonicChannel* fastest = nullptr;
  for (const auto& ch : table) {
    const double w = std::abs(ch.frequency(cfg));
    if (w > info.highest_tone) {
      info.highest_tone = w;
      fastest = &ch;
    }
  }
  const double cycles = info.highest_tone / kTwoPi;
  if (sample_rate <= 4.0 * cycles) {
    throw Error(ErrorCode::NyquistViolation,
                "sample rate " + format_number(sample_rate) + "/us must exceed 4x the tone (" +
                    format_number(fastest ? fastest->a : 0.0) + ") Omega_1 + (" +
                    format_number(fastest ? fastest->b : 0.0) + ") Omega_2 at " +
                    format_number(cycles) + " cycles/us");
  }

  const double dt = 1.0 / sample_rate;
  info.samples = static_cast<std::size_t>(std::floor(duration * sample_rate + 1e-9)) + 1;
  std::ofstream out = open(path);
  write_echo(out, echo);
  out << "# sample_rate = " << format_number(sample_rate) << '\n';
  out << "# duration = " << format_number(duration) << '\n';
  out << "t,vx,vy,lambda,Delta\n";
  double big_delta = 0.0;
  double prev_lam = 0.0;
  for (std::size_t i = 0; i < info.samples; ++i) {
    const double t = static_cast<double>(i) * dt;
    const drive::ModulationSample s = drive::modulation(kind, cfg, phi, t);
    if (i > 0) big_delta += 0.5 * dt * (prev_lam + s.lam);
    prev_lam = s.lam;
    row(out, t, s.vx, s.vy, s.lam, big_delta);
  }
  finish(out, path);
  return info;
}

void write_manifest(const std::string& path, const Manifest& manifest) {
  nlohmann::ordered_json j;
  j["tool"] = "floquet";
  j["version"] = kVersion;
  j["command"] = manifest.command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : manifest.echo) params[k] = v;
  j["parameters"] = params;
  j["outputs"] = manifest.outputs;
  j["wall_time_s"] = manifest.wall_time_s;
  j["drive_frame"] = evolution::drive_frame_convention();
  std::ofstream out = open(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

}  // namespace floquet::output
