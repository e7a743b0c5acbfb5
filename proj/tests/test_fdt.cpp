#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <qmir/errors.hpp>
#include <qmir/fdt.hpp>
#include <qmir/model.hpp>

#include "oracle_fdt.hpp"
#include "test_helpers.hpp"

using namespace qmir;
using qmir_test::beam_with_sigma;
using qmir_test::default_beam;
using qmir_test::linspace;

TEST_CASE("kernel closes to the surface value at zero depth") {
  for (double sigma : {0.0, 0.17, 0.2, 0.3, 0.45}) {
    for (double k : {0.0, 0.3, 2.0, 7.7}) {
      const double expect = 8.0 * (1.0 - sigma) * (1.0 - sigma);
      CHECK(kernel_f(0.0, 0.0, k, sigma) ==
            doctest::Approx(expect).epsilon(1e-14));
    }
  }
}

TEST_CASE("kernel is symmetric, positive, and decays") {
  for (double z1 : {0.0, 0.4, 1.7, 6.0}) {
    for (double z2 : {0.0, 0.9, 3.3}) {
      for (double k : {0.1, 1.0, 4.0}) {
        const double a = kernel_f(z1, z2, k, 0.2);
        const double b = kernel_f(z2, z1, k, 0.2);
        CHECK(a == b);
        CHECK(a > 0.0);
      }
    }
  }
  CHECK(kernel_f(3.0, 5.0, 40.0, 0.2) < 1e-30);
}

TEST_CASE("surface correlation is unity across sigma and beam radius") {
  for (double sigma : {0.0, 0.17, 0.2, 0.3, 0.45}) {
    for (double w0 : {1e-5, 1e-4, 1e-2}) {
      const CorrelationResult r =
          correlation_N(0.0, 0.0, beam_with_sigma(sigma, w0));
      CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r.est_error <= 1e-9 * std::abs(r.value));
    }
  }
}

TEST_CASE("correlation matches the independent quadrature oracle") {
  const double w0 = 1e-4;
  const struct {
    double z1, z2;
  } pts[] = {{0.0, 0.0},       {0.0, 1.0},  {1.0, 3.0},
             {3.0, 3.0},       {0.0, 10.0}, {10.0, 10.0},
             {0.25, 0.75}};
  for (double sigma : {0.17, 0.2, 0.3}) {
    const BeamSubstrate b = beam_with_sigma(sigma, w0);
    for (const auto& pt : pts) {
      const double lib = correlation_N(pt.z1 * w0, pt.z2 * w0, b).value;
      const double ora =
          qmir_test::oracle_N(pt.z1 * w0, pt.z2 * w0, w0, sigma);
      CHECK(lib == doctest::Approx(ora).epsilon(1e-8));
    }
  }
}

TEST_CASE("correlation symmetry and scale invariance") {
  const double w0 = 1e-4;
  const BeamSubstrate b = beam_with_sigma(0.2, w0);
  const BeamSubstrate scaled = beam_with_sigma(0.2, 37.5 * w0);
  for (double z1 : {0.0, 0.5, 2.0}) {
    for (double z2 : {0.3, 1.0, 8.0}) {
      const double ab = correlation_N(z1 * w0, z2 * w0, b).value;
      const double ba = correlation_N(z2 * w0, z1 * w0, b).value;
      CHECK(ab == doctest::Approx(ba).epsilon(1e-14));

      const double big =
          correlation_N(z1 * 37.5 * w0, z2 * 37.5 * w0, scaled).value;
      CHECK(big == doctest::Approx(ab).epsilon(1e-12));
    }
  }
}

TEST_CASE("correlation decays away from the surface and off the diagonal") {
  const double w0 = 1e-4;
  const BeamSubstrate b = beam_with_sigma(0.2, w0);
  double prev_diag = 2.0;
  double prev_col = 2.0;
  for (double z : linspace(0.0, 10.0, 41)) {
    const double diag = correlation_N(z * w0, z * w0, b).value;
    CHECK(diag < prev_diag);
    prev_diag = diag;
    const double col = correlation_N(0.0, z * w0, b).value;
    CHECK(col <= prev_col);
    prev_col = col;
  }
}

TEST_CASE("depth grid correlation matrix is positive semidefinite") {
  const double w0 = 1e-4;
  const BeamSubstrate b = beam_with_sigma(0.2, w0);
  const double depths[3] = {0.0, 0.7 * w0, 2.3 * w0};
  double m[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[i][j] = correlation_N(depths[i], depths[j], b).value;

  // Characteristic polynomial roots of the symmetric 3x3 via the
  // trigonometric closed form.
  const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  double a[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m[i][j] - (i == j ? q : 0.0);
  double p2 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p2 += a[i][j] * a[i][j];
  const double p = std::sqrt(p2 / 6.0);
  double detb = 0.0;
  if (p > 0.0) {
    double bm[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) bm[i][j] = a[i][j] / p;
    detb = bm[0][0] * (bm[1][1] * bm[2][2] - bm[1][2] * bm[2][1]) -
           bm[0][1] * (bm[1][0] * bm[2][2] - bm[1][2] * bm[2][0]) +
           bm[0][2] * (bm[1][0] * bm[2][1] - bm[1][1] * bm[2][0]);
  }
  const double phi = std::acos(std::clamp(detb / 2.0, -1.0, 1.0)) / 3.0;
  const double eig_min = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  CHECK(eig_min >= -1e-6);
}

TEST_CASE("quadrature truncation is insensitive to the cutoff") {
  const BeamSubstrate b = beam_with_sigma(0.2, 1e-4);
  QuadratureSettings wide;
  wide.u_max = 12.0;
  const double base = correlation_N(0.0, 2e-4, b).value;
  const double wider = correlation_N(0.0, 2e-4, b, wide).value;
  CHECK(base == doctest::Approx(wider).epsilon(1e-12));
}

TEST_CASE("correlation input validation") {
  const BeamSubstrate b = default_beam();
  CHECK_THROWS_AS(correlation_N(-1e-6, 0.0, b), std::invalid_argument);

  BeamSubstrate bad = b;
  bad.w0 = 0.0;
  CHECK_THROWS_AS(correlation_N(0.0, 0.0, bad), std::invalid_argument);

  BeamSubstrate no_sigma = b;
  no_sigma.substrate.sigma.reset();
  try {
    correlation_N(0.0, 0.0, no_sigma);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("sigma") != std::string::npos);
  }
}

TEST_CASE("normalized correlation") {
  const double w0 = 1e-4;
  const BeamSubstrate b = beam_with_sigma(0.2, w0);
  CHECK(normalized_correlation_C(3.0 * w0, 3.0 * w0, b) ==
        doctest::Approx(1.0).epsilon(1e-12));
  for (double z : {0.5, 2.0, 7.0}) {
    const double c = normalized_correlation_C(0.0, z * w0, b);
    CHECK(std::abs(c) <= 1.0 + 1e-9);
  }
  const double lib = normalized_correlation_C(0.0, 10.0 * w0, b);
  const double ora = qmir_test::oracle_C(0.0, 10.0 * w0, w0, 0.2);
  CHECK(lib == doctest::Approx(ora).epsilon(1e-8));
}

TEST_CASE("surface PSD scalings") {
  const BeamSubstrate b = default_beam();  // fused-silica constants
  const double om = 1.3948671381938683e7;
  const double base = surface_psd(om, b);
  CHECK(base > 0.0);

  // Exactly inverse in omega: doubling the frequency halves the density.
  CHECK(2.0 * surface_psd(2.0 * om, b) == base);

  BeamSubstrate hot = b;
  hot.temperature = 600.0;
  CHECK(surface_psd(om, hot) == doctest::Approx(2.0 * base).epsilon(1e-15));

  BeamSubstrate wide = b;
  wide.w0 = 2e-4;
  CHECK(surface_psd(om, wide) == doctest::Approx(0.5 * base).epsilon(1e-15));

  // Full formula cross-check.
  const double kB = 1.380649e-23;
  const double expect = 2.0 * kB * 300.0 * (1.0 - 0.17 * 0.17) * 1e-6 /
                        (std::pow(M_PI, 1.5) * 1e-4 * 72e9 * om);
  CHECK(base == doctest::Approx(expect).epsilon(1e-14));

  CHECK_THROWS_AS(surface_psd(0.0, b), std::invalid_argument);
  BeamSubstrate lossless = b;
  lossless.substrate.phi_s.reset();
  try {
    surface_psd(om, lossless);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("phi_s") != std::string::npos);
  }
}

TEST_CASE("layer strain correlation matches the oracle") {
  const double w0 = 1e-4;
  const BeamSubstrate b = beam_with_sigma(0.17, w0);
  const struct {
    double z1, z2;
  } pts[] = {{0.0, 0.5}, {1.0, 2.0}, {3.0, 1.0}};
  for (const auto& pt : pts) {
    const double lib =
        strain_correlation_Q(pt.z1 * w0, pt.z2 * w0, 1e-3 * w0, b);
    const double ora =
        qmir_test::oracle_Q(pt.z1 * w0, pt.z2 * w0, 1e-3 * w0, w0, 0.17);
    CHECK(lib == doctest::Approx(ora).epsilon(1e-4));
    CHECK(std::abs(lib) <= 1.0);
  }
}

TEST_CASE("layer strain correlation signs") {
  const double w0 = 1e-4;
  const BeamSubstrate b = beam_with_sigma(0.2, w0);
  // A layer directly below the surface moves against the surface average.
  CHECK(strain_correlation_Q(0.0, 0.0, 1e-3 * w0, b) < 0.0);
  // A layer between the surface and a deeper readout moves with it.
  CHECK(strain_correlation_Q(3.0 * w0, 1.0 * w0, 1e-3 * w0, b) > 0.0);
}

TEST_CASE("layer strain correlation square-root thinning") {
  const double w0 = 1e-4;
  const BeamSubstrate b = beam_with_sigma(0.2, w0);
  const double q3 = strain_correlation_Q(0.0, 2.0 * w0, 1e-3 * w0, b);
  const double q5 = strain_correlation_Q(0.0, 2.0 * w0, 1e-5 * w0, b);
  CHECK(q3 / q5 == doctest::Approx(10.0).epsilon(2e-2));
}

TEST_CASE("layer strain correlation guards") {
  const double w0 = 1e-4;
  const BeamSubstrate b = beam_with_sigma(0.2, w0);
  CHECK_THROWS_AS(strain_correlation_Q(0.0, w0, 0.0, b),
                  std::invalid_argument);
  CHECK_THROWS_AS(strain_correlation_Q(0.0, w0, 2e-2 * w0, b),
                  std::invalid_argument);
  // A differential layer thin enough that the second difference drowns in
  // quadrature noise must refuse rather than return garbage.
  CHECK_THROWS_AS(strain_correlation_Q(0.0, w0, 1e-12 * w0, b),
                  NumericsError);
}
