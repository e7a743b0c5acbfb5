#pragma once

#include "qmir/model.hpp"

namespace qmir {

struct QuadratureSettings {
  double rel_tol = 1e-9;
  double u_max = 10.0;  // upper limit of the Gaussian-weighted integral
};

struct CorrelationResult {
  double value;
  double est_error;  // absolute; at most rel_tol * |value| on success
};

// Depth kernel of the half-space displacement correlation:
//   f = exp(-k|z1 - z2|) (3 - 4 sigma + k|z1 - z2|)
//     + exp(-k (z1 + z2)) (5 - 12 sigma + 8 sigma^2
//                          + k (3 - 4 sigma)(z1 + z2) + 2 k^2 z1 z2)
// Strictly positive for 0 <= sigma < 1/2.
double kernel_f(double z1, double z2, double k, double sigma);

// Beam-averaged correlation of axial displacement at depths z1, z2, reduced
// to the dimensionless form
//   N = 1 / (4 sqrt(pi) (1 - sigma)^2) * integral_0^{u_max}
//       exp(-u^2) f(z1/w0, z2/w0, 2u, sigma) du
// via u = k w0 / 2, evaluated with adaptive Gauss-Kronrod quadrature.
// Normalized so N(0, 0) = 1; depends only on z1/w0, z2/w0 and sigma.
CorrelationResult correlation_N(double z1, double z2, const BeamSubstrate& b,
                                const QuadratureSettings& q = {});

// One-sided surface displacement spectral density [m^2 / (rad/s)]:
//   2 kB T (1 - sigma^2) phi_s / (pi^{3/2} w0 E omega)
double surface_psd(double omega, const BeamSubstrate& b);

// C = N(z1, z2) / sqrt(N(z1, z1) N(z2, z2)); equals 1 on the diagonal.
double normalized_correlation_C(double z1, double z2, const BeamSubstrate& b,
                                const QuadratureSettings& q = {});

// Coherent over total strain ratio by forward differences with step dz2:
//   eps_coh = (N(z1, z2 + dz2) - N(z1, z2)) / (dz2 sqrt(N(z1, z1)))
//   eps_tot = sqrt(N(z2+dz2, z2+dz2) - 2 N(z2, z2+dz2) + N(z2, z2)) / dz2
// dz2 must lie in (0, 1e-2 w0]. The eps_tot radicand loses all leading
// digits to cancellation as dz2 shrinks; if it falls below 1e3 times the
// accumulated quadrature error budget a NumericsError is thrown. The ratio
// scales as sqrt(dz2 / w0), so report Q / sqrt(dz2 / w0) when comparing
// across step sizes.
double strain_correlation_Q(double z1, double z2, double dz2,
                            const BeamSubstrate& b,
                            const QuadratureSettings& q = {});

}  // namespace qmir
