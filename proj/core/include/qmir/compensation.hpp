#pragma once

#include <utility>
#include <vector>

#include "qmir/model.hpp"
#include "qmir/tmm.hpp"

namespace qmir {

// One sample of the phase budget at wavevector k, everything normalized by
// the piston magnitude at k0 (|delta_theta(k0)| = 2 k0 q0), which removes
// the arbitrary displacement amplitude q0:
//   delta_theta = -k / k0
//   delta_beta  = dgamma_deps * zeta / (2 k0)
//   delta_phi   = delta_theta + delta_beta (exact sum)
struct PhasePoint {
  double k_over_k0;
  double delta_theta;
  double delta_beta;
  double delta_phi;
  double T;
};

struct MagicWavevectors {
  std::vector<double> roots;  // ascending k / k0 where delta_phi = 0
  std::pair<double, double> window;  // scanned k interval [1/m]
};

// Cross readout of two stacks tuned to opposite-side roots. All wavevectors
// in k / k0; phase entries are |delta_phi| in piston-normalized units.
struct DiscriminationReport {
  double k_minus_B;  // smallest root of stack B
  double k_plus_A;   // largest root of stack A
  double cross_noise_A_at_kB;
  double cross_noise_B_at_kA;
  double residual_A_at_k0;
  double residual_B_at_k0;
};

// Raw (radian) phases for a surface displacement q0.
double piston_phase(double k, double q0);
double coating_phase(const CoatingStack& s, double k, double zeta, double q0,
                     StrainModel model);

std::vector<PhasePoint> scan_total_phase(const CoatingStack& s, double zeta,
                                         const std::vector<double>& k_grid,
                                         StrainModel model);

// Sign changes of delta_phi on a uniform grid over `window` (at least
// min_points points; the grid doubles once if the transmission resonance
// spans fewer than 4 cells), each bracket refined to |dk / k0| < 1e-9.
// zeta = 0 has no roots: the piston term never vanishes.
MagicWavevectors find_magic_wavevectors(const CoatingStack& s, double zeta,
                                        std::pair<double, double> window,
                                        StrainModel model,
                                        int min_points = 2048);

// Requires both stacks to share k0 and each to have at least one root in
// the window; throws NumericsError otherwise.
DiscriminationReport discrimination_report(const CoatingStack& a,
                                           const CoatingStack& b, double zeta,
                                           std::pair<double, double> window,
                                           StrainModel model);

// Thermal rms displacement of one mode, sqrt(kB T / (M0 omega0^2)).
double eigenmode_rms(const EigenmodeSpec& mode, double temperature);

}  // namespace qmir
