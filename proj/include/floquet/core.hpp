#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>

namespace floquet {

inline constexpr const char* kVersion = "0.1.0";

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSqrt3 = std::numbers::sqrt3;
inline constexpr double kGoldenRatio = std::numbers::phi;

enum class ModelKind { Haldane, BrickWall };

std::string_view to_string(ModelKind kind);
/// Accepts "haldane", "brickwall", "brick-wall" (case-insensitive).
ModelKind parse_model_kind(std::string_view text);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

/// Two complex amplitudes; the first entry is the sigma_z = +1 component.
struct Spinor {
  Complex first;
  Complex second;

  double norm_squared() const { return std::norm(first) + std::norm(second); }
  double norm() const { return std::sqrt(norm_squared()); }

  friend Spinor operator+(const Spinor& a, const Spinor& b) {
    return {a.first + b.first, a.second + b.second};
  }
  friend Spinor operator*(Complex s, const Spinor& v) { return {s * v.first, s * v.second}; }
  friend Spinor operator*(double s, const Spinor& v) { return {s * v.first, s * v.second}; }
};

inline Complex inner(const Spinor& a, const Spinor& b) {
  return std::conj(a.first) * b.first + std::conj(a.second) * b.second;
}

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Hermitian 2x2 matrix stored in the Pauli basis:
/// identity * I + x * sigma_x + y * sigma_y + z * sigma_z.
struct Hermitian2 {
  double identity = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Matrix2 matrix() const {
    return {{{Complex(identity + z, 0.0), Complex(x, -y)},
             {Complex(x, y), Complex(identity - z, 0.0)}}};
  }

  Spinor apply(const Spinor& v) const {
    return {Complex(identity + z) * v.first + Complex(x, -y) * v.second,
            Complex(x, y) * v.first + Complex(identity - z) * v.second};
  }

  /// <v|H|v> without normalization.
  double expectation(const Spinor& v) const {
    const Complex off = std::conj(v.first) * v.second;
    return identity * v.norm_squared() + 2.0 * x * off.real() + 2.0 * y * off.imag() +
           z * (std::norm(v.first) - std::norm(v.second));
  }

  /// Half the eigenvalue splitting, |d|.
  double splitting() const { return std::sqrt(x * x + y * y + z * z); }

  friend Hermitian2 operator+(const Hermitian2& a, const Hermitian2& b) {
    return {a.identity + b.identity, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Hermitian2 operator-(const Hermitian2& a, const Hermitian2& b) {
    return {a.identity - b.identity, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Hermitian2 operator*(double s, const Hermitian2& h) {
    return {s * h.identity, s * h.x, s * h.y, s * h.z};
  }
};

/// Normalized eigenvector of the lower (more negative) eigenvalue of the
/// traceless part of h. Gauge is arbitrary; callers that need a fixed phase
/// must apply it themselves. Requires h.splitting() > 0.
Spinor lower_eigenvector(const Hermitian2& h);

/// Rotates v so its first component with modulus above `tolerance` is real
/// and positive.
Spinor fix_global_phase(const Spinor& v, double tolerance = 1e-14);

}  // namespace floquet
