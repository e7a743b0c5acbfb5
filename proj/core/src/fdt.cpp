#include "qmir/fdt.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qmir/errors.hpp"

namespace qmir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoltzmann = 1.380649e-23;  // [J/K]

double require_field(const std::optional<double>& v, const char* field,
                     const Material& m) {
  if (!v) {
    throw ConfigError("material '" + m.name + "' lacks required field '" +
                      std::string(field) + "'");
  }
  return *v;
}

struct BeamParams {
  double w0;
  double sigma;
};

BeamParams check_beam(const BeamSubstrate& b) {
  if (!(b.w0 > 0.0)) throw std::invalid_argument("beam w0 must be positive");
  const double sigma = require_field(b.substrate.sigma, "sigma", b.substrate);
  if (!(sigma >= 0.0 && sigma < 0.5)) {
    throw std::invalid_argument("substrate sigma must lie in [0, 0.5)");
  }
  return {b.w0, sigma};
}

void check_quadrature(const QuadratureSettings& q) {
  if (!(q.rel_tol > 0.0) || !(q.u_max > 0.0)) {
    throw std::invalid_argument("quadrature settings must be positive");
  }
}

}  // namespace

double kernel_f(double z1, double z2, double k, double sigma) {
  if (!(z1 >= 0.0) || !(z2 >= 0.0)) {
    throw std::invalid_argument("kernel_f: depths must be >= 0");
  }
  if (!(k >= 0.0)) throw std::invalid_argument("kernel_f: k must be >= 0");
  const double zm = std::abs(z1 - z2);
  const double zp = z1 + z2;
  const double near = std::exp(-k * zm) * (3.0 - 4.0 * sigma + k * zm);
  const double image =
      std::exp(-k * zp) * (5.0 - 12.0 * sigma + 8.0 * sigma * sigma +
                           k * (3.0 - 4.0 * sigma) * zp + 2.0 * k * k * z1 * z2);
  return near + image;
}

CorrelationResult correlation_N(double z1, double z2, const BeamSubstrate& b,
                                const QuadratureSettings& q) {
  const BeamParams bp = check_beam(b);
  check_quadrature(q);
  if (!(z1 >= 0.0) || !(z2 >= 0.0)) {
    throw std::invalid_argument("correlation_N: depths must be >= 0");
  }

  // u = k w0 / 2 renders the integrand dimensionless; the Gaussian beam
  // window becomes exp(-u^2) and the kernel sees k z = 2 u (z / w0), so the
  // result depends only on z1/w0, z2/w0 and sigma. e^{-u_max^2} bounds the
  // truncated tail (3.7e-44 at the default u_max = 10).
  const double zh1 = z1 / bp.w0;
  const double zh2 = z2 / bp.w0;
  const double sigma = bp.sigma;
  const auto integrand = [=](double u) {
    return std::exp(-u * u) * kernel_f(zh1, zh2, 2.0 * u, sigma);
  };

  // Drive the integrator two decades below the public budget: Kronrod
  // bisection stops as soon as its estimate meets the requested tolerance, so
  // asking for rel_tol exactly leaves the estimate brushing the budget and the
  // acceptance check below becomes a coin flip at large z/w0.
  double err = 0.0, l1 = 0.0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          integrand, 0.0, q.u_max, 15, 1e-2 * q.rel_tol, &err, &l1);

  const double pref =
      1.0 / (4.0 * std::sqrt(kPi) * (1.0 - sigma) * (1.0 - sigma));
  const double value = pref * integral;
  const double est_error = pref * err;
  if (!(est_error <= q.rel_tol * std::abs(value))) {
    std::ostringstream msg;
    msg << "correlation_N: quadrature reached " << est_error << " absolute ("
        << est_error / std::abs(value) << " relative), above rel_tol "
        << q.rel_tol;
    throw NumericsError(msg.str());
  }
  return {value, est_error};
}

double surface_psd(double omega, const BeamSubstrate& b) {
  const BeamParams bp = check_beam(b);
  if (!(omega > 0.0)) {
    throw std::invalid_argument("surface_psd: omega must be positive");
  }
  if (!(b.temperature > 0.0)) {
    throw std::invalid_argument("surface_psd: temperature must be positive");
  }
  const double E = require_field(b.substrate.E, "E", b.substrate);
  const double phi = require_field(b.substrate.phi_s, "phi_s", b.substrate);
  if (!(E > 0.0)) throw std::invalid_argument("surface_psd: E must be > 0");
  if (!(phi >= 0.0)) {
    throw std::invalid_argument("surface_psd: phi_s must be >= 0");
  }
  const double sigma = bp.sigma;
  return 2.0 * kBoltzmann * b.temperature * (1.0 - sigma * sigma) * phi /
         (std::pow(kPi, 1.5) * bp.w0 * E * omega);
}

double normalized_correlation_C(double z1, double z2, const BeamSubstrate& b,
                                const QuadratureSettings& q) {
  const double n12 = correlation_N(z1, z2, b, q).value;
  const double n11 = correlation_N(z1, z1, b, q).value;
  const double n22 = correlation_N(z2, z2, b, q).value;
  return n12 / std::sqrt(n11 * n22);
}

double strain_correlation_Q(double z1, double z2, double dz2,
                            const BeamSubstrate& b,
                            const QuadratureSettings& q) {
  const BeamParams bp = check_beam(b);
  if (!(dz2 > 0.0) || dz2 > 1e-2 * bp.w0) {
    throw std::invalid_argument(
        "strain_correlation_Q: dz2 must lie in (0, 1e-2 * w0]");
  }

  const CorrelationResult n11 = correlation_N(z1, z1, b, q);
  const CorrelationResult n1b = correlation_N(z1, z2 + dz2, b, q);
  const CorrelationResult n1a = correlation_N(z1, z2, b, q);
  const CorrelationResult npp = correlation_N(z2 + dz2, z2 + dz2, b, q);
  const CorrelationResult npz = correlation_N(z2, z2 + dz2, b, q);
  const CorrelationResult nzz = correlation_N(z2, z2, b, q);

  // Second difference of nearly equal O(1) numbers; with dz2 <= 1e-2 w0 the
  // surviving part is O(dz2 / w0). Guard it against the quadrature noise
  // floor before taking the square root.
  const double radicand = npp.value - 2.0 * npz.value + nzz.value;
  const double err_budget = npp.est_error + 2.0 * npz.est_error + nzz.est_error;
  if (radicand < 1e3 * err_budget) {
    std::ostringstream msg;
    msg << "strain_correlation_Q: total-strain radicand " << radicand
        << " is within 1e3x of the quadrature error budget " << err_budget
        << "; increase dz2 or tighten rel_tol";
    throw NumericsError(msg.str());
  }

  const double eps_coh = (n1b.value - n1a.value) / (dz2 * std::sqrt(n11.value));
  const double eps_tot = std::sqrt(radicand) / dz2;
  return eps_coh / eps_tot;
}

}  // namespace qmir
