#pragma once

// Two-tone modulation synthesis for the photonic-molecule spin-1/2
// Hamiltonian H(t) = ((delta - lambda)/2) sz + (g Vx / 2) sx + (g Vy / 2) sy,
// with g V0 = 2 Omega_R and drive phases theta_i = Omega_i t + phi_i playing
// the role of the lattice quasi-momentum.

#include <array>
#include <span>
#include <vector>

#include "floquet/core.hpp"

namespace floquet::drive {

/// All angular frequencies in rad/us.
struct DriveConfig {
  double omega1 = 3.0;
  double omega2 = 3.0 * kGoldenRatio;
  double phi1 = kPi / 10.0;
  double phi2 = 0.0;
  double omega_r = 125.0;
  double delta = 2.0 * 125.0;  // mass M = 1

  double mass() const { return delta / (2.0 * omega_r); }
  /// True when a drive tone exceeds a tenth of Omega_R.
  bool adiabaticity_warning() const;

  friend bool operator==(const DriveConfig&, const DriveConfig&) = default;
};

/// RF detuning that realizes lattice mass M. The sigma_z coefficient is
/// delta/2, so delta = 2 M Omega_R makes H(theta)/Omega_R the t1 = t2 = 1
/// Bloch Hamiltonian with the phase boundaries of the static lattice.
constexpr double detuning_for_mass(double mass, double omega_r) { return 2.0 * mass * omega_r; }

/// Reference drive settings for the conservative and driven-dissipative runs
/// (golden-ratio tones, Omega_1 = 3, Omega_R = 125, phases pi/10 and 0).
DriveConfig reference_drive(double mass);

std::array<double, 2> theta(double t, const DriveConfig& cfg);

struct ModulationSample {
  double t = 0.0;
  double vx = 0.0;   // V_x / V_0
  double vy = 0.0;   // V_y / V_0
  double lam = 0.0;  // lambda, rad/us
};

ModulationSample modulation(ModelKind kind, const DriveConfig& cfg, double phi, double t);
ModulationSample modulation_at(ModelKind kind, double omega_r, double phi,
                               std::array<double, 2> theta);

Hermitian2 effective_hamiltonian(ModelKind kind, const DriveConfig& cfg, double phi, double t);
Hermitian2 hamiltonian_at(ModelKind kind, const DriveConfig& cfg, double phi,
                          std::array<double, 2> theta);

/// Analytic partial derivative with respect to theta_axis (axis is 1 or 2).
Hermitian2 dH_dtheta(ModelKind kind, const DriveConfig& cfg, double phi, double t, int axis);

enum class PauliTarget { XY, Z };

/// One tone a Omega_1 + b Omega_2 of the modulation. Its Hamiltonian term is
///   XY: Omega_R (weight cos(psi) sx + quadrature sin(psi) sy)
///   Z : Omega_R weight sin(phi) sin(psi) sz
/// with psi = a theta_1 + b theta_2.
struct HarmonicChannel {
  double a = 0.0;
  double b = 0.0;
  PauliTarget target = PauliTarget::XY;
  double weight = 0.0;
  double quadrature = 0.0;

  double frequency(const DriveConfig& cfg) const { return a * cfg.omega1 + b * cfg.omega2; }
};

std::vector<HarmonicChannel> harmonic_table(ModelKind kind);

/// Everything the integrator needs at one instant.
struct DriveTerms {
  static constexpr std::size_t kMaxChannels = 6;

  Hermitian2 h;
  std::array<Hermitian2, 2> dh;  // dH/dtheta_1, dH/dtheta_2
  double lam = 0.0;
  std::size_t channel_count = 0;
  /// d h_c / d psi_c for each channel; channel power is psi_c' <d h_c / d psi_c>.
  std::array<Hermitian2, kMaxChannels> channel_slope;
};

/// Precomputed channel table for repeated evaluation at fixed (kind, cfg, phi).
class DriveEvaluator {
 public:
  DriveEvaluator(ModelKind kind, const DriveConfig& cfg, double phi);

  using Phasors = std::array<Complex, DriveTerms::kMaxChannels>;

  DriveTerms at_time(double t) const;
  DriveTerms at_theta(std::array<double, 2> theta) const;
  /// exp(i psi_c) for every channel at the given drive phases.
  Phasors phasors_at(std::array<double, 2> theta) const;
  /// Same as at_theta, from precomputed channel phasors.
  DriveTerms at_phasors(std::span<const Complex> phasors) const;

  const std::vector<HarmonicChannel>& channels() const { return channels_; }
  const DriveConfig& config() const { return cfg_; }
  ModelKind kind() const { return kind_; }
  double phi() const { return phi_; }
  /// Upper bound on ||H(t)||: 6 Omega_R + |delta|/2 + max|lambda|/2.
  double norm_bound() const;
  double max_abs_lambda() const;

 private:
  ModelKind kind_;
  DriveConfig cfg_;
  double phi_;
  std::vector<HarmonicChannel> channels_;
};

}  // namespace floquet::drive
