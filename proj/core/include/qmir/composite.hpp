#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qmir/fdt.hpp"
#include "qmir/model.hpp"

namespace qmir {

// Two-mirror etalon read in reflection: front mirror of power reflectance
// R0, back mirror R2 at optical depth z2 inside a medium of index n_s with
// strain-optic coefficient p12.
struct CompositeMirror {
  double R0 = 0.0;   // 0 <= R0 < 1
  double R2 = 1.0;   // 0 < R2 <= 1
  double z2 = 0.0;   // [m]
  double n_s = 1.0;
  double p12 = 0.0;
};

// r = (-sqrt(R0) + sqrt(R2) e^{i phi}) / (1 - sqrt(R0 R2) e^{i phi}).
// Unit modulus when R2 = 1.
std::complex<double> gt_reflection(double R0, double R2, double phi);

// Analytic d(arg r)/d(phi). Peaks at (1 + sqrt(R0)) / (1 - sqrt(R0)) on
// resonance (phi = 0 mod 2pi) and dips to its reciprocal at antiresonance.
// Undefined where the reflectance vanishes (R2 < 1 with sqrt(R0 R2) =
// ... never for R2 = 1).
double gamma_slope(double R0, double R2, double phi0);

// alpha(k) = n_s (1 - n_s^2 p12 / 2) |d gamma / d phi| at the round-trip
// phase phi0 = 2 n_s k z2. Periodic in k with period pi / (n_s z2).
double strain_sensitivity_alpha(const CompositeMirror& m, double k);

// The depth phase model assumes a quasi-collimated beam over the etalon:
// z2 << n_s k w0^2 / 2. Callers should warn (not fail) when false.
bool quasi_collimated_ok(const CompositeMirror& m, double k, double w0);

// Displacement-noise power of the composite readout relative to a perfect
// front-face readout:
//   F = (1 - alpha)^2 + 2 alpha (1 - alpha) N(0, z2) + alpha^2 N(z2, z2)
double noise_ratio_F(double z2, double alpha, const BeamSubstrate& b,
                     const QuadratureSettings& q = {});

struct OptimalAlpha {
  double alpha_min;
  double F_min;
  // z2 = 0 makes the quadratic degenerate (F = 1 for every alpha); the
  // convention is alpha_min = 0 with this flag set.
  bool degenerate;
};

// Minimizer of the quadratic above:
//   alpha_min = (1 - N(0, z2)) / (1 - 2 N(0, z2) + N(z2, z2))
OptimalAlpha optimal_alpha(double z2, const BeamSubstrate& b,
                           const QuadratureSettings& q = {});

// First-order transverse-offset noise penalty, coeff * (z2 / w0). The
// coefficient is an input (alignment-dependent); there is no default.
double transverse_penalty(double z2, double w0, double coeff);

struct NoiseRatioCurve {
  double alpha;  // fixed mixing weight of the curve
  double sigma;  // substrate Poisson ratio used
  std::vector<std::pair<double, double>> points;  // (z2 / w0, F)
};

NoiseRatioCurve noise_ratio_curve(double alpha,
                                  const std::vector<double>& z2_over_w0,
                                  const BeamSubstrate& b,
                                  const QuadratureSettings& q = {});

}  // namespace qmir
