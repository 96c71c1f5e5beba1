#include "floquet/lattice.hpp"

#include <cmath>
#include <string>

#include "floquet/error.hpp"

namespace floquet::lattice {

LatticeGeometry geometry(ModelKind kind) {
  LatticeGeometry g;
  if (kind == ModelKind::Haldane) {
    g.nn = {Vec2{kSqrt3 / 2.0, 0.5}, Vec2{-kSqrt3 / 2.0, 0.5}, Vec2{0.0, -1.0}};
  } else {
    g.nn = {Vec2{1.0, 0.0}, Vec2{-1.0, 0.0}, Vec2{0.0, -1.0}};
  }
  const auto& a = g.nn;
  g.nnn = {a[1] - a[2], a[2] - a[0]};
  // The brick-wall geometry has no b_3 bond.
  if (kind == ModelKind::Haldane) g.nnn.push_back(a[0] - a[1]);
  g.bravais = {a[0] - a[1], a[1] - a[2]};
  g.reciprocal = reciprocal_of(g.bravais[0], g.bravais[1]);
  return g;
}

std::array<Vec2, 2> reciprocal_of(Vec2 a1, Vec2 a2) {
  const double det = cross(a1, a2);
  if (std::abs(det) < 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "degenerate Bravais vectors");
  }
  const double s = kTwoPi / det;
  return {Vec2{s * a2.y, -s * a2.x}, Vec2{-s * a1.y, s * a1.x}};
}

std::array<Vec2, 2> reciprocal_vectors(ModelKind kind) { return geometry(kind).reciprocal; }

DVector d_vector(ModelKind kind, const HaldaneParams& p, Vec2 k) {
  // Static per kind; geometry() allocates, so keep one copy around.
  static const LatticeGeometry haldane = geometry(ModelKind::Haldane);
  static const LatticeGeometry brick = geometry(ModelKind::BrickWall);
  const LatticeGeometry& g = kind == ModelKind::Haldane ? haldane : brick;

  DVector d;
  double cos_b = 0.0;
  double sin_b = 0.0;
  for (const Vec2& b : g.nnn) {
    cos_b += std::cos(dot(k, b));
    sin_b += std::sin(dot(k, b));
  }
  for (const Vec2& a : g.nn) {
    d.dx += std::cos(dot(k, a));
    d.dy += std::sin(dot(k, a));
  }
  d.eps = 2.0 * p.t2 * std::cos(p.phi) * cos_b;
  d.dx *= p.t1;
  d.dy *= p.t1;
  d.dz = p.mass - 2.0 * p.t2 * std::sin(p.phi) * sin_b;
  return d;
}

BlochMap bloch_map(ModelKind kind, const HaldaneParams& params) {
  return [kind, params](Vec2 k) { return d_vector(kind, params, k).traceless(); };
}

PhaseBoundary phase_boundary(ModelKind kind, double phi) {
  const double scale = kind == ModelKind::Haldane ? 3.0 * kSqrt3 : 2.0 * kSqrt3;
  const double m = scale * std::sin(phi);
  return {m, -m};
}

int chern_number(const BlochMap& h, const LatticeGeometry& geometry, int grid_n,
                 const ChernOptions& options) {
  if (grid_n < 16) {
    throw Error(ErrorCode::InvalidArgument, "chern_number needs grid_n >= 16");
  }
  const Vec2 g1 = geometry.reciprocal[0];
  const Vec2 g2 = geometry.reciprocal[1];
  const auto n = static_cast<std::size_t>(grid_n);

  // The Bloch map carries site-position phases, so h(k + G) equals h(k) only
  // up to a fixed sublattice gauge. Wrapping indices would pair states from
  // different gauges along the cell edge; sampling the closing row and column
  // at their true k keeps every link between genuine neighbours.
  const std::size_t m = n + 1;
  std::vector<Spinor> states(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Vec2 k = (static_cast<double>(i) / grid_n) * g1 + (static_cast<double>(j) / grid_n) * g2;
      const Hermitian2 hk = h(k);
      const double gap = 2.0 * hk.splitting();
      if (!(gap >= options.gap_tolerance)) {
        throw Error(ErrorCode::GapClosed, "band gap " + std::to_string(gap) +
                                              " below tolerance at k = (" + std::to_string(k.x) +
                                              ", " + std::to_string(k.y) + ")");
      }
      states[i * m + j] = lower_eigenvector(hk);
    }
  }

  auto at = [&](std::size_t i, std::size_t j) -> const Spinor& { return states[i * m + j]; };
  double flux = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex loop = inner(at(i, j), at(i + 1, j)) * inner(at(i + 1, j), at(i + 1, j + 1)) *
                           inner(at(i + 1, j + 1), at(i, j + 1)) * inner(at(i, j + 1), at(i, j));
      flux += std::arg(loop);
    }
  }
  // Orientation of (G1, G2) decides which way the plaquettes circulate.
  const double orientation = cross(g1, g2) > 0.0 ? 1.0 : -1.0;
  const double c = orientation * flux / kTwoPi;
  const double rounded = std::round(c);
  if (std::abs(c - rounded) >= options.integer_tolerance) {
    throw Error(ErrorCode::NonIntegerChern,
                "Berry flux sum " + std::to_string(c) + " is not near an integer");
  }
  return static_cast<int>(rounded);
}

}  // namespace floquet::lattice
