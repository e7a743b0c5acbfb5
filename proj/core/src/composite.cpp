#include "qmir/composite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmir {

namespace {

constexpr double kPi = std::numbers::pi;

void check_reflectances(double R0, double R2) {
  if (!(R0 >= 0.0 && R0 < 1.0)) {
    throw std::invalid_argument("front reflectance must satisfy 0 <= R0 < 1");
  }
  if (!(R2 >= 0.0 && R2 <= 1.0)) {
    throw std::invalid_argument("back reflectance must satisfy 0 <= R2 <= 1");
  }
}

}  // namespace

std::complex<double> gt_reflection(double R0, double R2, double phi) {
  check_reflectances(R0, R2);
  const double a = std::sqrt(R0);
  const double b = std::sqrt(R2);
  const std::complex<double> e = std::polar(1.0, phi);
  return (-a + b * e) / (1.0 - a * b * e);
}

double gamma_slope(double R0, double R2, double phi0) {
  check_reflectances(R0, R2);
  if (R0 == 0.0 && R2 == 0.0) {
    throw std::invalid_argument("gamma_slope: r vanishes identically");
  }
  // d(arg r)/dphi = Re[b e /(-a + b e)] + Re[a b e / (1 - a b e)] from the
  // logarithmic derivative of the two linear factors.
  const double a = std::sqrt(R0);
  const double b = std::sqrt(R2);
  const std::complex<double> e = std::polar(1.0, phi0);
  const std::complex<double> be = b * e;
  return (be / (-a + be)).real() + (a * be / (1.0 - a * be)).real();
}

double strain_sensitivity_alpha(const CompositeMirror& m, double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("strain_sensitivity_alpha: k must be > 0");
  }
  if (!(m.z2 >= 0.0)) {
    throw std::invalid_argument("strain_sensitivity_alpha: z2 must be >= 0");
  }
  if (!(m.n_s >= 1.0)) {
    throw std::invalid_argument("strain_sensitivity_alpha: n_s must be >= 1");
  }
  const double phi0 = std::fmod(2.0 * m.n_s * k * m.z2, 2.0 * kPi);
  const double photoelastic = 1.0 - m.n_s * m.n_s * m.p12 / 2.0;
  return m.n_s * std::abs(photoelastic) *
         std::abs(gamma_slope(m.R0, m.R2, phi0));
}

bool quasi_collimated_ok(const CompositeMirror& m, double k, double w0) {
  if (!(k > 0.0) || !(w0 > 0.0)) {
    throw std::invalid_argument("quasi_collimated_ok: k and w0 must be > 0");
  }
  return m.z2 < m.n_s * k * w0 * w0 / 2.0;
}

double noise_ratio_F(double z2, double alpha, const BeamSubstrate& b,
                     const QuadratureSettings& q) {
  if (!(z2 >= 0.0)) throw std::invalid_argument("noise_ratio_F: z2 >= 0");
  const double n0z = correlation_N(0.0, z2, b, q).value;
  const double nzz = correlation_N(z2, z2, b, q).value;
  return (1.0 - alpha) * (1.0 - alpha) +
         2.0 * alpha * (1.0 - alpha) * n0z + alpha * alpha * nzz;
}

OptimalAlpha optimal_alpha(double z2, const BeamSubstrate& b,
                           const QuadratureSettings& q) {
  if (!(z2 >= 0.0)) throw std::invalid_argument("optimal_alpha: z2 >= 0");
  const double n0z = correlation_N(0.0, z2, b, q).value;
  const double nzz = correlation_N(z2, z2, b, q).value;
  const double denom = 1.0 - 2.0 * n0z + nzz;
  // z2 = 0 gives N(0,0) = N(z2,z2) = 1 and a flat F(alpha) = 1: no unique
  // minimizer, return alpha = 0 by convention.
  if (std::abs(denom) < 1e-12) {
    return {0.0, noise_ratio_F(z2, 0.0, b, q), true};
  }
  const double alpha_min = (1.0 - n0z) / denom;
  return {alpha_min, noise_ratio_F(z2, alpha_min, b, q), false};
}

double transverse_penalty(double z2, double w0, double coeff) {
  if (!(w0 > 0.0)) throw std::invalid_argument("transverse_penalty: w0 > 0");
  if (!(z2 >= 0.0)) throw std::invalid_argument("transverse_penalty: z2 >= 0");
  if (!(coeff >= 0.0)) {
    throw std::invalid_argument("transverse_penalty: coefficient must be >= 0");
  }
  return coeff * (z2 / w0);
}

NoiseRatioCurve noise_ratio_curve(double alpha,
                                  const std::vector<double>& z2_over_w0,
                                  const BeamSubstrate& b,
                                  const QuadratureSettings& q) {
  NoiseRatioCurve curve;
  curve.alpha = alpha;
  curve.sigma = b.substrate.sigma.value_or(0.0);
  curve.points.reserve(z2_over_w0.size());
  for (double zh : z2_over_w0) {
    curve.points.emplace_back(zh, noise_ratio_F(zh * b.w0, alpha, b, q));
  }
  return curve;
}

}  // namespace qmir
