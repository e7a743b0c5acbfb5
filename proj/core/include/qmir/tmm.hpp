#pragma once

#include <complex>
#include <vector>

#include "qmir/model.hpp"

namespace qmir {

// How an axial strain eps deforms the layer phases:
//   geometric     eta_i -> eta_i * (1 + eps)         (pure length change)
//   photoelastic  eta_i -> eta_i * (1 + eps * (1 - n_i^2 p12_i / 2))
// The photoelastic form folds the strain-optic index change into the same
// scale factor; it requires p12 on every layer material.
enum class StrainModel { geometric, photoelastic };

// Characteristic 2x2 matrix of one layer, [[m00, m01], [m10, m11]].
struct Mat2c {
  std::complex<double> m00, m01, m10, m11;
};

struct ComplexReflectance {
  std::complex<double> r;
  double gamma;  // arg(r), principal value in (-pi, pi]
  double T;      // 1 - |r|^2, lossless power transmission
};

struct PhaseScanPoint {
  double k;      // [1/m]
  double gamma;  // unwrapped reflection phase [rad]
  double T;
};

// [[cos eta, i sin eta / n], [i n sin eta, cos eta]] with
// eta = eta0 * k / k0. Unimodular for lossless films.
Mat2c layer_matrix(const Layer& layer, double k, double k0);

// Left-to-right matrix product from ambient to substrate, then
// r = (n0 B - C) / (n0 B + C) with [B, C]^T = M [1, n_s]^T.
// A bare high-index interface comes out at gamma = pi.
ComplexReflectance stack_reflectance(const CoatingStack& s, double k);

// Reflection phase along an ascending k grid, unwrapped to a continuous
// branch anchored at the principal value of the first point. A wrapped
// neighbor jump of pi/2 or more triggers one midpoint refinement of that
// interval; if either half still jumps by pi/2 or more the grid is too
// coarse and a NumericsError is thrown.
std::vector<PhaseScanPoint> reflection_phase_scan(
    const CoatingStack& s, const std::vector<double>& k_grid);

// Returns a strained copy of the stack. |eps| must stay below 1e-2; the
// phase model is linear in strain and large eps would silently leave its
// validity range.
CoatingStack apply_axial_strain(const CoatingStack& s, double eps,
                                StrainModel model);

// d(gamma)/d(eps) at eps = 0 by the central difference
// (gamma(+h) - gamma(-h)) / (2h), comparing the two phases on the same
// branch. h starts at 1e-7 and halves until successive estimates agree to
// 1e-6 relative; throws NumericsError after 8 halvings without agreement.
double dgamma_deps(const CoatingStack& s, double k, StrainModel model);

}  // namespace qmir
