#pragma once

// Haldane and brick-wall Haldane lattices: hopping geometry, Bloch
// Hamiltonians, analytic phase boundaries and a lattice Chern-number oracle.

#include <array>
#include <functional>
#include <vector>

#include "floquet/core.hpp"

namespace floquet::lattice {

struct LatticeGeometry {
  std::array<Vec2, 3> nn;          // a_1, a_2, a_3
  std::vector<Vec2> nnn;           // b_i; three for Haldane, two for brick-wall
  std::array<Vec2, 2> bravais;     // A_1 = a_1 - a_2, A_2 = a_2 - a_3
  std::array<Vec2, 2> reciprocal;  // G_i . A_j = 2 pi delta_ij
};

struct HaldaneParams {
  double mass = 0.0;
  double phi = 0.0;  // NNN flux in [-pi, pi]
  double t1 = 1.0;
  double t2 = 1.0;
};

/// Coefficients of H(k) = eps I + dx sigma_x + dy sigma_y + dz sigma_z.
struct DVector {
  double eps = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;

  /// Traceless part; eps is dropped since it does not change eigenvectors.
  Hermitian2 traceless() const { return {0.0, dx, dy, dz}; }
};

struct PhaseBoundary {
  double upper = 0.0;
  double lower = 0.0;
};

using BlochMap = std::function<Hermitian2(Vec2)>;

LatticeGeometry geometry(ModelKind kind);

/// Solves G_i . A_j = 2 pi delta_ij. Throws InvalidArgument on collinear input.
std::array<Vec2, 2> reciprocal_of(Vec2 a1, Vec2 a2);
std::array<Vec2, 2> reciprocal_vectors(ModelKind kind);

/// Bloch vector of the tight-binding model. The NNN mass term carries the
/// conventional factor of two, dz = M - 2 t2 sin(phi) sum_i sin(k.b_i), which
/// places the gap closings at M / t2 = +-3 sqrt(3) sin(phi) (Haldane) and
/// +-2 sqrt(3) sin(phi) (brick-wall).
DVector d_vector(ModelKind kind, const HaldaneParams& params, Vec2 k);

BlochMap bloch_map(ModelKind kind, const HaldaneParams& params);

PhaseBoundary phase_boundary(ModelKind kind, double phi);

struct ChernOptions {
  double gap_tolerance = 1e-9;
  double integer_tolerance = 0.01;
};

/// Lower-band Chern number by plaquette Berry-flux summation over the
/// parallelogram spanned by the reciprocal vectors (grid_n^2 plaquettes).
/// Throws GapClosed when the two bands come within gap_tolerance anywhere on
/// the grid, NonIntegerChern if the flux sum is not near an integer.
int chern_number(const BlochMap& h, const LatticeGeometry& geometry, int grid_n,
                 const ChernOptions& options = {});

}  // namespace floquet::lattice
