#include "floquet/evolution.hpp"

#include <array>
#include <cmath>
#include <span>
#include <sstream>

#include "floquet/error.hpp"

namespace floquet::evolution {
namespace {

using drive::DriveEvaluator;
using drive::DriveTerms;

constexpr double kZeroNorm = 1e-12;

/// Full integrator state: amplitudes plus every accumulated integral.
struct State {
  Spinor beta;
  double big_delta = 0.0;  // running integral of lambda
  double w1 = 0.0;
  double w2 = 0.0;
  std::array<double, DriveTerms::kMaxChannels> energy{};
};

using Phasors = DriveEvaluator::Phasors;

/// Exact channel phasors are recomputed this often; in between they are
/// advanced by constant rotation factors.
constexpr long long kResyncSteps = 4096;

struct Derivative {
  Spinor beta;
  double lam = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  std::array<double, DriveTerms::kMaxChannels> power{};
};

State advance(const State& s, const Derivative& d, double h, std::size_t channels) {
  State out;
  out.beta = s.beta + Complex(h) * d.beta;
  out.big_delta = s.big_delta + h * d.lam;
  out.w1 = s.w1 + h * d.p1;
  out.w2 = s.w2 + h * d.p2;
  for (std::size_t c = 0; c < channels; ++c) out.energy[c] = s.energy[c] + h * d.power[c];
  return out;
}

class Integrator {
 public:
  Integrator(ModelKind kind, const drive::DriveConfig& cfg, double phi,
             const DissipationConfig& diss, double h)
      : eval_(kind, cfg, phi), cfg_(cfg), diss_(diss), h_(h) {
    const auto& channels = eval_.channels();
    nc_ = channels.size();
    for (std::size_t c = 0; c < nc_; ++c) {
      tone_[c] = channels[c].frequency(cfg);
      half_[c] = std::polar(1.0, tone_[c] * h / 2.0);
      full_[c] = std::polar(1.0, tone_[c] * h);
    }
    drive_amp_ = diss.enabled ? std::sqrt(diss.gamma_e) * diss.s_amp : 0.0;
    loss_ = diss.enabled ? diss.gamma : 0.0;
  }

  Phasors phasors_at(double t) const { return eval_.phasors_at(drive::theta(t, cfg_)); }

  Derivative rhs(double t, const DriveTerms& terms, const State& s) const {
    Derivative d;
    const Spinor hb = terms.h.apply(s.beta);
    d.beta = {Complex(0.0, -1.0) * hb.first - loss_ * s.beta.first,
              Complex(0.0, -1.0) * hb.second - loss_ * s.beta.second};
    if (drive_amp_ != 0.0) {
      // Laser phase seen by the lower supermode once omega_0, mu and the
      // sigma_z rotation are removed; the upper supermode is not addressed.
      const double xi = -diss_.drive_detuning * t + (cfg_.delta * t - s.big_delta) / 2.0;
      d.beta.second += drive_amp_ * std::polar(1.0, xi);
    }
    d.lam = terms.lam;
    const double n2 = s.beta.norm_squared();
    if (n2 > kZeroNorm * kZeroNorm) {
      const double inv = 1.0 / n2;
      d.p1 = cfg_.omega1 * terms.dh[0].expectation(s.beta) * inv;
      d.p2 = cfg_.omega2 * terms.dh[1].expectation(s.beta) * inv;
      for (std::size_t c = 0; c < nc_; ++c) {
        d.power[c] = tone_[c] * terms.channel_slope[c].expectation(s.beta) * inv;
      }
    }
    return d;
  }

  /// One RK4 step from t with channel phasors z(t); advances z to z(t + h).
  /// H is evaluated once per distinct time: t, t + h/2 (shared by k2, k3), t + h.
  State step(double t, Phasors& z, const State& s) const {
    const double h = h_;
    Phasors mid{};
    Phasors end{};
    for (std::size_t c = 0; c < nc_; ++c) {
      mid[c] = z[c] * half_[c];
      end[c] = z[c] * full_[c];
    }
    const DriveTerms t0 = terms_at(z);
    const DriveTerms tm = terms_at(mid);
    const DriveTerms t1 = terms_at(end);
    const Derivative k1 = rhs(t, t0, s);
    const Derivative k2 = rhs(t + h / 2.0, tm, advance(s, k1, h / 2.0, nc_));
    const Derivative k3 = rhs(t + h / 2.0, tm, advance(s, k2, h / 2.0, nc_));
    const Derivative k4 = rhs(t + h, t1, advance(s, k3, h, nc_));
    z = end;
    Derivative sum;
    const auto combine = [](auto a, auto b, auto c, auto d) { return a + 2.0 * b + 2.0 * c + d; };
    sum.beta = {combine(k1.beta.first, k2.beta.first, k3.beta.first, k4.beta.first),
                combine(k1.beta.second, k2.beta.second, k3.beta.second, k4.beta.second)};
    sum.lam = combine(k1.lam, k2.lam, k3.lam, k4.lam);
    sum.p1 = combine(k1.p1, k2.p1, k3.p1, k4.p1);
    sum.p2 = combine(k1.p2, k2.p2, k3.p2, k4.p2);
    for (std::size_t c = 0; c < nc_; ++c) {
      sum.power[c] = combine(k1.power[c], k2.power[c], k3.power[c], k4.power[c]);
    }
    return advance(s, sum, h / 6.0, nc_);
  }

  const DriveEvaluator& evaluator() const { return eval_; }

 private:
  DriveTerms terms_at(const Phasors& z) const {
    return eval_.at_phasors(std::span<const Complex>(z.data(), nc_));
  }

  DriveEvaluator eval_;
  drive::DriveConfig cfg_;
  DissipationConfig diss_;
  double h_;
  std::size_t nc_ = 0;
  std::array<double, DriveTerms::kMaxChannels> tone_{};
  Phasors half_{};
  Phasors full_{};
  double drive_amp_ = 0.0;
  double loss_ = 0.0;
};

Vec3 bloch_of(const Spinor& beta) {
  const double n2 = beta.norm_squared();
  if (n2 <= kZeroNorm * kZeroNorm) return {};
  const Complex off = std::conj(beta.first) * beta.second;
  return {2.0 * off.real() / n2, 2.0 * off.imag() / n2,
          (std::norm(beta.first) - std::norm(beta.second)) / n2};
}

void record(Trajectory& traj, double t, const State& s) {
  traj.times.push_back(t);
  traj.states.push_back({s.beta, t});
  traj.bloch.push_back(bloch_of(s.beta));
  traj.w1.push_back(s.w1);
  traj.w2.push_back(s.w2);
  traj.norm.push_back(s.beta.norm());
  for (std::size_t c = 0; c < traj.channel_energy.size(); ++c) {
    traj.channel_energy[c].push_back(s.energy[c]);
  }
}

Trajectory integrate(ModelKind kind, const drive::DriveConfig& cfg, double phi,
                     const DissipationConfig& diss, const EvolutionParams& params) {
  if (!(params.dt > 0.0) || !std::isfinite(params.dt)) {
    throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  }
  if (!(params.duration >= 0.0) || !std::isfinite(params.duration)) {
    throw Error(ErrorCode::InvalidArgument, "duration must be finite and non-negative");
  }
  if (params.decimate < 1) throw Error(ErrorCode::InvalidArgument, "decimate must be >= 1");

  const Integrator integrator(kind, cfg, phi, diss, params.dt);
  const double bound = integrator.evaluator().norm_bound();
  if (params.dt * bound > kMaxPhaseStep) {
    std::ostringstream msg;
    msg << "dt * ||H|| bound = " << params.dt * bound << " rad exceeds " << kMaxPhaseStep
        << " (dt must be <= " << kMaxPhaseStep / bound << ")";
    throw Error(ErrorCode::StepTooLarge, msg.str());
  }

  State s;
  s.beta = params.initial ? *params.initial : initial_state(kind, cfg, phi).amp;
  const bool driven = diss.enabled && diss.s_amp != 0.0 && diss.gamma_e != 0.0;

  Trajectory traj;
  traj.signature = {kind, cfg, phi, diss};
  traj.channels = integrator.evaluator().channels();
  traj.channel_energy.resize(traj.channels.size());

  const auto steps = static_cast<long long>(std::llround(params.duration / params.dt));
  const auto samples = static_cast<std::size_t>(steps / params.decimate + 1);
  traj.times.reserve(samples);
  traj.states.reserve(samples);
  traj.bloch.reserve(samples);
  traj.w1.reserve(samples);
  traj.w2.reserve(samples);
  traj.norm.reserve(samples);
  for (auto& e : traj.channel_energy) e.reserve(samples);

  record(traj, 0.0, s);
  Phasors z{};
  for (long long i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * params.dt;
    if (i % kResyncSteps == 0) z = integrator.phasors_at(t);
    s = integrator.step(t, z, s);
    const double n = s.beta.norm();
    if (!std::isfinite(n) || !std::isfinite(s.w1) || !std::isfinite(s.w2)) {
      std::ostringstream msg;
      msg << "non-finite state at t = " << t + params.dt;
      throw Error(ErrorCode::NumericalBlowup, msg.str());
    }
    if (n < kZeroNorm && !driven) {
      std::ostringstream msg;
      msg << "state norm " << n << " fell below " << kZeroNorm << " at t = " << t + params.dt;
      throw Error(ErrorCode::ZeroNorm, msg.str());
    }
    if ((i + 1) % params.decimate == 0) {
      record(traj, static_cast<double>(i + 1) * params.dt, s);
    }
  }
  return traj;
}

}  // namespace

DissipationConfig reference_dissipation(double omega_r) {
  DissipationConfig d;
  d.gamma = 0.01;
  d.gamma_e = 0.01;
  d.s_amp = 1.0;
  d.drive_detuning = -3.0 * omega_r;
  d.enabled = true;
  return d;
}

double default_duration(const drive::DriveConfig& cfg, double periods) {
  return periods * kTwoPi / std::min(cfg.omega1, cfg.omega2);
}

ModeState initial_state(ModelKind kind, const drive::DriveConfig& cfg, double phi) {
  const Hermitian2 h = drive::effective_hamiltonian(kind, cfg, phi, 0.0);
  if (2.0 * h.splitting() < 1e-12) {
    throw Error(ErrorCode::DegenerateStart, "H(0) is degenerate; no lower band to start in");
  }
  return {fix_global_phase(lower_eigenvector(h)), 0.0};
}

Trajectory evolve_conservative(ModelKind kind, const drive::DriveConfig& cfg, double phi,
                               const EvolutionParams& params) {
  return integrate(kind, cfg, phi, DissipationConfig{}, params);
}

Trajectory evolve_driven_dissipative(ModelKind kind, const drive::DriveConfig& cfg, double phi,
                                     const DissipationConfig& diss, const EvolutionParams& params) {
  if (diss.gamma < 0.0 || diss.gamma_e < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "gamma and gamma_e must be non-negative");
  }
  DissipationConfig active = diss;
  active.enabled = true;
  return integrate(kind, cfg, phi, active, params);
}

const char* drive_frame_convention() {
  return "s(t) = sqrt(gamma_e) s0 (0, exp(i xi)), "
         "xi(t) = -drive_detuning t + (delta t - Delta(t))/2, Delta = integral of lambda";
}

}  // namespace floquet::evolution
