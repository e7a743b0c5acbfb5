#include "qmir/tmm.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qmir/errors.hpp"

namespace qmir {

namespace {

constexpr double kPi = std::numbers::pi;

// Map an angle difference to (-pi, pi].
double wrap_to_pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

double require_p12(const Material& m) {
  if (!m.p12) {
    throw std::invalid_argument("photoelastic strain needs p12 on material '" +
                                m.name + "'");
  }
  return *m.p12;
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("k grid must not be empty");
  double prev = 0.0;
  for (double k : grid) {
    if (!(k > prev)) {
      throw std::invalid_argument("k grid must be positive and ascending");
    }
    prev = k;
  }
}

}  // namespace

Mat2c layer_matrix(const Layer& layer, double k, double k0) {
  if (!(k > 0.0) || !(k0 > 0.0)) {
    throw std::invalid_argument("layer_matrix: k and k0 must be positive");
  }
  const double eta = layer.eta0 * (k / k0);
  const double n = layer.material.n;
  const double c = std::cos(eta);
  const double sn = std::sin(eta);
  return Mat2c{{c, 0.0}, {0.0, sn / n}, {0.0, n * sn}, {c, 0.0}};
}

ComplexReflectance stack_reflectance(const CoatingStack& s, double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("stack_reflectance: k must be positive");
  }
  if (!(s.k0 > 0.0)) {
    throw std::invalid_argument("stack_reflectance: stack k0 must be positive");
  }

  // Running product M = M_1 * M_2 * ... from the ambient side. Each factor
  // is [[c, i s / n], [i n s, c]], so the update needs only real c, s, n.
  std::complex<double> m00{1.0, 0.0}, m01{0.0, 0.0};
  std::complex<double> m10{0.0, 0.0}, m11{1.0, 0.0};
  for (const Layer& layer : s.layers) {
    const double eta = layer.eta0 * (k / s.k0);
    const double n = layer.material.n;
    const double c = std::cos(eta);
    const double sn = std::sin(eta);
    const std::complex<double> b{0.0, sn / n};
    const std::complex<double> g{0.0, n * sn};
    const std::complex<double> t00 = m00 * c + m01 * g;
    const std::complex<double> t01 = m00 * b + m01 * c;
    const std::complex<double> t10 = m10 * c + m11 * g;
    const std::complex<double> t11 = m10 * b + m11 * c;
    m00 = t00;
    m01 = t01;
    m10 = t10;
    m11 = t11;
  }

  const double n0 = s.ambient.n;
  const double ns = s.substrate.n;
  const std::complex<double> B = m00 + m01 * ns;
  const std::complex<double> C = m10 + m11 * ns;
  const std::complex<double> r = (n0 * B - C) / (n0 * B + C);
  return ComplexReflectance{r, std::arg(r), 1.0 - std::norm(r)};
}

std::vector<PhaseScanPoint> reflection_phase_scan(
    const CoatingStack& s, const std::vector<double>& k_grid) {
  check_grid(k_grid);

  std::vector<PhaseScanPoint> out;
  out.reserve(k_grid.size());
  for (double k : k_grid) {
    const ComplexReflectance rc = stack_reflectance(s, k);
    out.push_back({k, rc.gamma, rc.T});
  }

  // Unwrap in place. The first point keeps its principal value. A wrapped
  // step of pi/2 or more is ambiguous on this grid, so the interval gets one
  // midpoint refinement; failing that, the caller's grid is too coarse.
  constexpr double kJump = kPi / 2.0;
  double branch = out[0].gamma;
  double prev_principal = out[0].gamma;
  for (size_t i = 1; i < out.size(); ++i) {
    const double principal = out[i].gamma;
    double step = wrap_to_pi(principal - prev_principal);
    if (std::abs(step) >= kJump) {
      const double km = 0.5 * (k_grid[i - 1] + k_grid[i]);
      const double gm = stack_reflectance(s, km).gamma;
      const double d1 = wrap_to_pi(gm - prev_principal);
      const double d2 = wrap_to_pi(principal - gm);
      if (std::abs(d1) >= kJump || std::abs(d2) >= kJump) {
        std::ostringstream msg;
        msg << "reflection_phase_scan: phase jump of " << step << " rad near k="
            << k_grid[i] << " is ambiguous even after refinement; "
            << "the k grid is too coarse to unwrap";
        throw NumericsError(msg.str());
      }
      step = d1 + d2;
    }
    branch += step;
    out[i].gamma = branch;
    prev_principal = principal;
  }
  return out;
}

CoatingStack apply_axial_strain(const CoatingStack& s, double eps,
                                StrainModel model) {
  if (!(std::abs(eps) < 1e-2)) {
    throw std::invalid_argument(
        "apply_axial_strain: |eps| must be below 1e-2 (linear regime)");
  }
  CoatingStack out = s;
  for (Layer& layer : out.layers) {
    double factor;
    if (model == StrainModel::geometric) {
      factor = 1.0 + eps;
    } else {
      const double n = layer.material.n;
      factor = 1.0 + eps * (1.0 - n * n * require_p12(layer.material) / 2.0);
    }
    layer.eta0 *= factor;
  }
  return out;
}

double dgamma_deps(const CoatingStack& s, double k, StrainModel model) {
  // Phases at +-h are compared through a wrapped difference, which keeps the
  // two on one branch as long as |gamma(+h) - gamma(-h)| < pi. With
  // |dgamma/deps| bounded by ~1e5 for realistic stacks and h <= 1e-7 the
  // difference stays far below that.
  const auto slope = [&](double h) {
    const std::complex<double> rp =
        stack_reflectance(apply_axial_strain(s, h, model), k).r;
    const std::complex<double> rm =
        stack_reflectance(apply_axial_strain(s, -h, model), k).r;
    return wrap_to_pi(std::arg(rp) - std::arg(rm)) / (2.0 * h);
  };

  double h = 1e-7;
  double prev = slope(h);
  for (int i = 0; i < 8; ++i) {
    h *= 0.5;
    const double cur = slope(h);
    if (std::abs(cur - prev) <= 1e-6 * std::abs(cur) + 1e-12) return cur;
    if (i == 7) {
      std::ostringstream msg;
      msg << "dgamma_deps: step halving did not converge at k=" << k
          << " (last estimates " << prev << " and " << cur << ", h=" << h
          << ")";
      throw NumericsError(msg.str());
    }
    prev = cur;
  }
  return prev;  // unreachable
}

}  // namespace qmir
