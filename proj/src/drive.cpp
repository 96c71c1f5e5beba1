#include "floquet/drive.hpp"

#include <algorithm>
#include <cmath>

#include "floquet/error.hpp"

namespace floquet::drive {

bool DriveConfig::adiabaticity_warning() const {
  return std::max(omega1, omega2) > omega_r / 10.0;
}

DriveConfig reference_drive(double mass) {
  DriveConfig cfg;
  cfg.delta = detuning_for_mass(mass, cfg.omega_r);
  return cfg;
}

std::array<double, 2> theta(double t, const DriveConfig& cfg) {
  return {cfg.omega1 * t + cfg.phi1, cfg.omega2 * t + cfg.phi2};
}

ModulationSample modulation_at(ModelKind kind, double omega_r, double phi,
                               std::array<double, 2> th) {
  const double t1 = th[0];
  const double t2 = th[1];
  const double g_v0 = 2.0 * omega_r;
  ModulationSample s;
  if (kind == ModelKind::Haldane) {
    const double h = kSqrt3 / 2.0;
    s.vx = std::cos(h * t1 + 0.5 * t2) + std::cos(-h * t1 + 0.5 * t2) + std::cos(t2);
    s.vy = std::sin(h * t1 + 0.5 * t2) + std::sin(-h * t1 + 0.5 * t2) - std::sin(t2);
    s.lam = -2.0 * g_v0 * std::sin(phi) *
            (std::sin(-h * t1 + 1.5 * t2) + std::sin(-h * t1 - 1.5 * t2) + std::sin(kSqrt3 * t1));
  } else {
    s.vx = 2.0 * std::cos(t1) + std::cos(t2);
    s.vy = -std::sin(t2);
    s.lam = -2.0 * g_v0 * std::sin(phi) * (std::sin(t2 - t1) - std::sin(t2 + t1));
  }
  return s;
}

ModulationSample modulation(ModelKind kind, const DriveConfig& cfg, double phi, double t) {
  ModulationSample s = modulation_at(kind, cfg.omega_r, phi, theta(t, cfg));
  s.t = t;
  return s;
}

Hermitian2 hamiltonian_at(ModelKind kind, const DriveConfig& cfg, double phi,
                          std::array<double, 2> th) {
  const ModulationSample s = modulation_at(kind, cfg.omega_r, phi, th);
  const double g_v0 = 2.0 * cfg.omega_r;
  return {0.0, g_v0 * s.vx / 2.0, g_v0 * s.vy / 2.0, (cfg.delta - s.lam) / 2.0};
}

Hermitian2 effective_hamiltonian(ModelKind kind, const DriveConfig& cfg, double phi, double t) {
  return hamiltonian_at(kind, cfg, phi, theta(t, cfg));
}

Hermitian2 dH_dtheta(ModelKind kind, const DriveConfig& cfg, double phi, double t, int axis) {
  if (axis != 1 && axis != 2) {
    throw Error(ErrorCode::InvalidArgument, "theta axis must be 1 or 2");
  }
  return DriveEvaluator(kind, cfg, phi).at_time(t).dh[static_cast<std::size_t>(axis - 1)];
}

std::vector<HarmonicChannel> harmonic_table(ModelKind kind) {
  using P = PauliTarget;
  if (kind == ModelKind::BrickWall) {
    // a_1 and a_2 are antiparallel: their sigma_y parts cancel, leaving 2 cos(theta_1) sx.
    return {
        {1.0, 0.0, P::XY, 2.0, 0.0},
        {0.0, 1.0, P::XY, 1.0, -1.0},
        {-1.0, 1.0, P::Z, 2.0, 0.0},
        {1.0, 1.0, P::Z, -2.0, 0.0},
    };
  }
  const double h = kSqrt3 / 2.0;
  return {
      {h, 0.5, P::XY, 1.0, 1.0},
      {-h, 0.5, P::XY, 1.0, 1.0},
      {0.0, 1.0, P::XY, 1.0, -1.0},
      {-h, 1.5, P::Z, 2.0, 0.0},
      {-h, -1.5, P::Z, 2.0, 0.0},
      {kSqrt3, 0.0, P::Z, 2.0, 0.0},
  };
}

DriveEvaluator::DriveEvaluator(ModelKind kind, const DriveConfig& cfg, double phi)
    : kind_(kind), cfg_(cfg), phi_(phi), channels_(harmonic_table(kind)) {}

DriveTerms DriveEvaluator::at_time(double t) const { return at_theta(theta(t, cfg_)); }

DriveTerms DriveEvaluator::at_theta(std::array<double, 2> th) const {
  const Phasors z = phasors_at(th);
  return at_phasors(std::span<const Complex>(z.data(), channels_.size()));
}

DriveEvaluator::Phasors DriveEvaluator::phasors_at(std::array<double, 2> th) const {
  Phasors z{};
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    z[c] = std::polar(1.0, channels_[c].a * th[0] + channels_[c].b * th[1]);
  }
  return z;
}

DriveTerms DriveEvaluator::at_phasors(std::span<const Complex> phasors) const {
  DriveTerms out;
  out.channel_count = channels_.size();
  const double wr = cfg_.omega_r;
  const double sin_phi = std::sin(phi_);
  out.h.z = cfg_.delta / 2.0;
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    const HarmonicChannel& ch = channels_[c];
    const double co = phasors[c].real();
    const double s = phasors[c].imag();
    Hermitian2 slope;
    if (ch.target == PauliTarget::XY) {
      out.h.x += wr * ch.weight * co;
      out.h.y += wr * ch.quadrature * s;
      slope = {0.0, -wr * ch.weight * s, wr * ch.quadrature * co, 0.0};
    } else {
      const double amp = wr * ch.weight * sin_phi;
      out.h.z += amp * s;
      out.lam -= 2.0 * amp * s;
      slope = {0.0, 0.0, 0.0, amp * co};
    }
    out.channel_slope[c] = slope;
    out.dh[0] = out.dh[0] + ch.a * slope;
    out.dh[1] = out.dh[1] + ch.b * slope;
  }
  return out;
}

double DriveEvaluator::max_abs_lambda() const {
  double sum = 0.0;
  for (const auto& ch : channels_) {
    if (ch.target == PauliTarget::Z) sum += std::abs(ch.weight);
  }
  return 2.0 * cfg_.omega_r * std::abs(std::sin(phi_)) * sum;
}

double DriveEvaluator::norm_bound() const {
  return 6.0 * cfg_.omega_r + std::abs(cfg_.delta) / 2.0 + max_abs_lambda() / 2.0;
}

}  // namespace floquet::drive
