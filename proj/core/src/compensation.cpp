#include "qmir/compensation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "qmir/errors.hpp"

namespace qmir {

namespace {

constexpr double kBoltzmann = 1.380649e-23;  // [J/K]

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(static_cast<size_t>(n));
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = lo + step * i;
  g.back() = hi;
  return g;
}

// Width (in grid cells) of the transmission peak at half prominence. A
// sharp etalon resonance that spans fewer than 4 cells can defeat both the
// unwrap check and the sign-change bracketing, so the caller doubles the
// grid once in that case.
int transmission_peak_cells(const std::vector<PhaseScanPoint>& scan) {
  size_t imax = 0;
  double tmax = scan[0].T, tmin = scan[0].T;
  for (size_t i = 1; i < scan.size(); ++i) {
    if (scan[i].T > tmax) {
      tmax = scan[i].T;
      imax = i;
    }
    tmin = std::min(tmin, scan[i].T);
  }
  if (!(tmax > 2.0 * tmin) || tmax == tmin) return std::numeric_limits<int>::max();
  const double half = 0.5 * (tmax + tmin);
  int cells = 1;
  for (size_t i = imax; i-- > 0 && scan[i].T > half;) ++cells;
  for (size_t i = imax + 1; i < scan.size() && scan[i].T > half; ++i) ++cells;
  return cells;
}

}  // namespace

double piston_phase(double k, double q0) {
  if (!(k > 0.0)) throw std::invalid_argument("piston_phase: k must be > 0");
  return -2.0 * k * q0;
}

double coating_phase(const CoatingStack& s, double k, double zeta, double q0,
                     StrainModel model) {
  const double eps = zeta * q0;
  if (!(std::abs(eps) < 1e-2)) {
    throw std::invalid_argument(
        "coating_phase: |zeta * q0| must stay below 1e-2 (linear regime)");
  }
  return dgamma_deps(s, k, model) * eps;
}

std::vector<PhasePoint> scan_total_phase(const CoatingStack& s, double zeta,
                                         const std::vector<double>& k_grid,
                                         StrainModel model) {
  // The phase scan validates grid ordering/density and provides T.
  const std::vector<PhaseScanPoint> scan = reflection_phase_scan(s, k_grid);
  std::vector<PhasePoint> out;
  out.reserve(k_grid.size());
  for (size_t i = 0; i < k_grid.size(); ++i) {
    const double k = k_grid[i];
    const double dtheta = -k / s.k0;
    const double dbeta = dgamma_deps(s, k, model) * zeta / (2.0 * s.k0);
    out.push_back({k / s.k0, dtheta, dbeta, dtheta + dbeta, scan[i].T});
  }
  return out;
}

MagicWavevectors find_magic_wavevectors(const CoatingStack& s, double zeta,
                                        std::pair<double, double> window,
                                        StrainModel model, int min_points) {
  if (!(window.first > 0.0) || !(window.second > window.first)) {
    throw std::invalid_argument(
        "find_magic_wavevectors: window must satisfy 0 < lo < hi");
  }
  int n = std::max(min_points, 2048);

  const auto f = [&](double k) {
    return -k / s.k0 + dgamma_deps(s, k, model) * zeta / (2.0 * s.k0);
  };

  std::vector<double> grid = linspace(window.first, window.second, n);
  if (transmission_peak_cells(reflection_phase_scan(s, grid)) < 4) {
    n *= 2;
    grid = linspace(window.first, window.second, n);
  }

  std::vector<double> fv(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) fv[i] = f(grid[i]);

  MagicWavevectors result;
  result.window = window;
  const double tol_abs = 1e-9 * s.k0;
  const auto tol = [tol_abs](double a, double b) {
    return std::abs(b - a) <= tol_abs;
  };

  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    if (fv[i] == 0.0) {
      result.roots.push_back(grid[i] / s.k0);
      continue;
    }
    if (fv[i] * fv[i + 1] < 0.0) {
      std::uintmax_t max_iter = 128;
      const auto bracket = boost::math::tools::toms748_solve(
          f, grid[i], grid[i + 1], fv[i], fv[i + 1], tol, max_iter);
      result.roots.push_back(0.5 * (bracket.first + bracket.second) / s.k0);
    }
  }
  if (!fv.empty() && fv.back() == 0.0) {
    result.roots.push_back(grid.back() / s.k0);
  }
  std::sort(result.roots.begin(), result.roots.end());
  return result;
}

DiscriminationReport discrimination_report(const CoatingStack& a,
                                           const CoatingStack& b, double zeta,
                                           std::pair<double, double> window,
                                           StrainModel model) {
  if (a.k0 != b.k0) {
    throw std::invalid_argument(
        "discrimination_report: stacks must share the reference k0");
  }
  const MagicWavevectors ra = find_magic_wavevectors(a, zeta, window, model);
  const MagicWavevectors rb = find_magic_wavevectors(b, zeta, window, model);
  if (ra.roots.empty() || rb.roots.empty()) {
    std::ostringstream msg;
    msg << "discrimination_report: no zero crossing in window for stack "
        << (ra.roots.empty() ? "A" : "B");
    throw NumericsError(msg.str());
  }

  const double k0 = a.k0;
  const auto phi_norm = [&](const CoatingStack& s, double k) {
    return -k / k0 + dgamma_deps(s, k, model) * zeta / (2.0 * k0);
  };

  DiscriminationReport rep;
  rep.k_minus_B = rb.roots.front();
  rep.k_plus_A = ra.roots.back();
  rep.cross_noise_A_at_kB = std::abs(phi_norm(a, rep.k_minus_B * k0));
  rep.cross_noise_B_at_kA = std::abs(phi_norm(b, rep.k_plus_A * k0));
  rep.residual_A_at_k0 = std::abs(phi_norm(a, k0));
  rep.residual_B_at_k0 = std::abs(phi_norm(b, k0));
  return rep;
}

double eigenmode_rms(const EigenmodeSpec& mode, double temperature) {
  if (!(mode.omega0 > 0.0) || !(mode.M0 > 0.0)) {
    throw std::invalid_argument("eigenmode_rms: omega0 and M0 must be > 0");
  }
  if (!(temperature >= 0.0)) {
    throw std::invalid_argument("eigenmode_rms: temperature must be >= 0");
  }
  return std::sqrt(kBoltzmann * temperature / (mode.M0 * mode.omega0 * mode.omega0));
}

}  // namespace qmir
