// Acceptance gate: every release-blocking behavior of the library and the
// CLI, one PASS/FAIL line each, nonzero exit when anything fails. Tolerances
// are stated inline next to each check.
#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <qmir/compensation.hpp>
#include <qmir/composite.hpp>
#include <qmir/errors.hpp>
#include <qmir/fdt.hpp>
#include <qmir/model.hpp>
#include <qmir/tmm.hpp>

#include "oracle_film.hpp"
#include "oracle_reduction.hpp"
#include "test_helpers.hpp"

using namespace qmir;
using qmir_test::beam_with_sigma;
using qmir_test::linspace;
using qmir_test::resonant_stack;
using qmir_test::silica;
using qmir_test::tantala;

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %-42s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  if (!ok) ++g_failures;
}

void info(const std::string& text) {
  std::printf("[info] %s\n", text.c_str());
}

void guarded(const char* name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(name, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Regression pins, frozen from the first verified run of this suite.
// Roots are in k/k0; the density value is bitwise via a 17-digit literal.
constexpr double kPinnedGeoRoots[2] = {0.99986693650016711, 1.0001330635106285};
constexpr double kPinnedPhotoRoots[2] = {0.9999024041145369,
                                         1.0000975958837943};
constexpr double kPinnedPsdFixture = 1.4384949411032869e-41;

// ---------------------------------------------------------------------------

void c01_surface_normalization() {
  double worst = 0.0;
  for (double sigma : {0.0, 0.17, 0.2, 0.3, 0.45}) {
    for (double w0 : {1e-5, 1e-4, 1e-2}) {
      const double n = correlation_N(0.0, 0.0, beam_with_sigma(sigma, w0)).value;
      worst = std::max(worst, std::abs(n - 1.0));
    }
  }
  report("surface correlation normalization", worst <= 1e-6,
         "max |N(0,0)-1| = " + fmt(worst) + ", tol 1e-6");
}

void c02_symmetry() {
  const double w0 = 1e-4;
  const BeamSubstrate b = beam_with_sigma(0.2, w0);
  const auto grid = linspace(0.0, 5.0, 6);
  double worst = 0.0;
  for (double z1 : grid) {
    for (double z2 : grid) {
      const double ab = correlation_N(z1 * w0, z2 * w0, b).value;
      const double ba = correlation_N(z2 * w0, z1 * w0, b).value;
      worst = std::max(worst, std::abs(ab - ba));
    }
  }
  report("correlation symmetry", worst <= 1e-8,
         "max |N12-N21| on 6x6 grid = " + fmt(worst) + ", tol 1e-8");
}

void c03_diagonal_limit() {
  const double w0 = 1e-4;
  const double sigma = 0.2;
  const BeamSubstrate b = beam_with_sigma(sigma, w0);

  const double deep = correlation_N(50.0 * w0, 50.0 * w0, b).value;
  const double limit =
      (3.0 - 4.0 * sigma) / (8.0 * (1.0 - sigma) * (1.0 - sigma));
  const double rel = std::abs(deep / limit - 1.0);

  bool monotone = true;
  double prev = 2.0;
  for (double z : linspace(0.0, 10.0, 41)) {
    const double d = correlation_N(z * w0, z * w0, b).value;
    if (!(d < prev)) monotone = false;
    prev = d;
  }
  report("deep diagonal limit and monotone decay",
         rel <= 0.02 && monotone,
         "N(50w0) off deep limit " + fmt(limit) + " by " + fmt(rel) +
             " (tol 2e-2), decreasing over [0,10w0]: " +
             (monotone ? "yes" : "no"));
}

void c04_optimal_mixing() {
  const double w0 = 1e-4;
  const BeamSubstrate b = beam_with_sigma(0.2, w0);

  const OptimalAlpha best = optimal_alpha(10.0 * w0, b);
  const bool f_ok = std::abs(best.F_min - 0.36) <= 0.02;
  const bool a_ok = std::abs(best.alpha_min - 0.70) <= 0.03;

  double worst = 0.0;
  for (double alpha : {0.3, 0.7, 1.0, 1.5}) {
    worst = std::max(worst, std::abs(noise_ratio_F(0.0, alpha, b) - 1.0));
  }
  report("optimal readout mixing at depth", f_ok && a_ok && worst <= 1e-6,
         "F_min = " + fmt(best.F_min) + " (0.36 +/- 0.02), alpha_min = " +
             fmt(best.alpha_min) + " (0.70 +/- 0.03), max |F(0,a)-1| = " +
             fmt(worst));
}

void c05_magic_pair() {
  const CoatingStack strong = resonant_stack(16);
  const CoatingStack weak = resonant_stack(1);
  const double zeta = -1600.0;
  const std::pair<double, double> window{0.995 * strong.k0, 1.005 * strong.k0};

  bool ok = true;
  std::string detail;
  const struct {
    StrainModel model;
    const char* tag;
    const double* pins;
  } cases[] = {{StrainModel::geometric, "geometric", kPinnedGeoRoots},
               {StrainModel::photoelastic, "photoelastic", kPinnedPhotoRoots}};
  for (const auto& c : cases) {
    const MagicWavevectors mw =
        find_magic_wavevectors(strong, zeta, window, c.model);
    const MagicWavevectors none =
        find_magic_wavevectors(weak, zeta, window, c.model);
    const bool structure = mw.roots.size() == 2 && mw.roots[0] < 1.0 &&
                           mw.roots[1] > 1.0 && none.roots.empty();
    bool pinned = structure;
    if (structure) {
      pinned = std::abs(mw.roots[0] - c.pins[0]) <= 5e-9 &&
               std::abs(mw.roots[1] - c.pins[1]) <= 5e-9;
      info(std::string("magic roots, ") + c.tag + " model: " +
           fmt17(mw.roots[0]) + ", " + fmt17(mw.roots[1]));
    }
    ok = ok && structure && pinned;
    if (!structure) detail += std::string(c.tag) + ": wrong structure; ";
    else if (!pinned) detail += std::string(c.tag) + ": drifted off pins; ";
  }
  if (detail.empty()) {
    detail = "two straddling roots (both strain models), none for the weak "
             "resonator, pins held to 5e-9";
  }
  report("magic wavevector pair structure", ok, detail);
}

void c06_discrimination() {
  const double k0 = default_k0();
  const CoatingStack a = build_stack(33, 7, 8, 0.9995 * M_PI, silica(),
                                     tantala(), silica(), k0);
  const CoatingStack b = build_stack(33, 7, 8, 1.0005 * M_PI, silica(),
                                     tantala(), silica(), k0);
  const DiscriminationReport rep = discrimination_report(
      a, b, -5000.0, {0.995 * k0, 1.005 * k0}, StrainModel::geometric);

  const bool straddle = rep.k_plus_A > 1.0 && rep.k_minus_B < 1.0;
  const bool cross_ok =
      std::abs(rep.cross_noise_A_at_kB - 0.80) <= 0.15 &&
      std::abs(rep.cross_noise_B_at_kA - 0.80) <= 0.15;
  const bool residual_ok =
      rep.residual_A_at_k0 < 0.5 && rep.residual_B_at_k0 < 0.5;
  report("detuned-pair discrimination", straddle && cross_ok && residual_ok,
         "cross readouts " + fmt(rep.cross_noise_A_at_kB) + ", " +
             fmt(rep.cross_noise_B_at_kA) + " (0.80 +/- 0.15); residuals " +
             fmt(rep.residual_A_at_k0) + ", " + fmt(rep.residual_B_at_k0) +
             " (< 0.5)");
}

void c07_tmm_oracles() {
  // Energy conservation across dense scans of every bundled stack shape.
  double worst = 0.0;
  for (int j : {1, 4, 16}) {
    const CoatingStack s = resonant_stack(j);
    for (double f : linspace(0.995, 1.005, 2001)) {
      const ComplexReflectance rc = stack_reflectance(s, f * s.k0);
      worst = std::max(worst, std::abs(std::norm(rc.r) + rc.T - 1.0));
    }
  }
  const bool energy_ok = worst <= 1e-12;

  // The resonator section reduces away at the design wavevector.
  const CoatingStack full = resonant_stack(16);
  const CoatingStack reduced = qmir_test::reduce_at_design(full);
  const double t_full = stack_reflectance(full, full.k0).T;
  const double t_reduced = stack_reflectance(reduced, full.k0).T;
  const double red_rel = std::abs(t_full / t_reduced - 1.0);
  const bool reduction_ok = red_rel <= 1e-6;
  const double t_pairs =
      stack_reflectance(qmir_test::plain_quarter_wave_stack(
                            33, silica(), tantala(), silica(), full.k0),
                        full.k0)
          .T;
  info("design-wavevector transmissions: full " + fmt(t_full) +
       ", merged equivalent (" + std::to_string(reduced.layers.size()) +
       " layers) " + fmt(t_reduced) + ", all-pairs mirror " + fmt(t_pairs));

  // Single-film strain derivative against the closed form.
  double fd_rel = 0.0;
  for (double eta : {M_PI / 2.0, 1.1}) {
    CoatingStack film;
    film.ambient = vacuum_material();
    film.substrate = silica();
    film.k0 = default_k0();
    Material m = tantala();
    film.layers.push_back(Layer{m, eta});
    const double lib = dgamma_deps(film, film.k0, StrainModel::geometric);
    const double oracle =
        eta * qmir_test::film_phase(2.03, 1.45, eta).dgamma_deta;
    fd_rel = std::max(fd_rel, std::abs(lib / oracle - 1.0));
  }
  const bool film_ok = fd_rel <= 1e-6;

  report("transfer-matrix oracles", energy_ok && reduction_ok && film_ok,
         "max |r^2+T-1| = " + fmt(worst) + " (tol 1e-12); reduction rel " +
             fmt(red_rel) + " (tol 1e-6); film derivative rel " + fmt(fd_rel) +
             " (tol 1e-6)");
}

void c08_etalon_phase() {
  double mod_worst = 0.0;
  for (double phi : linspace(-2.0 * M_PI, 2.0 * M_PI, 721)) {
    mod_worst = std::max(
        mod_worst, std::abs(std::abs(gt_reflection(0.81, 1.0, phi)) - 1.0));
  }
  const bool mod_ok = mod_worst <= 1e-12;

  const double slope = gamma_slope(0.81, 1.0, 0.0);
  const bool slope_ok = std::abs(slope - 19.0) <= 1e-9;

  CompositeMirror m;
  m.R0 = 0.81;
  m.R2 = 1.0;
  m.z2 = 2e-6;
  m.n_s = 1.45;
  m.p12 = 0.27;
  const double dk = M_PI / (m.n_s * m.z2);
  double per_worst = 0.0;
  for (double k : linspace(0.9 * default_k0(), 1.1 * default_k0(), 11)) {
    per_worst = std::max(per_worst,
                         std::abs(strain_sensitivity_alpha(m, k + dk) -
                                  strain_sensitivity_alpha(m, k)));
  }
  const bool periodic_ok = per_worst <= 1e-9;

  report("etalon phase response", mod_ok && slope_ok && periodic_ok,
         "max ||r|-1| = " + fmt(mod_worst) + " (tol 1e-12); slope " +
             fmt(slope) + " (19 +/- 1e-9); periodicity residual " +
             fmt(per_worst) + " (tol 1e-9)");
}

void c09_thinning_law() {
  const double w0 = 1e-4;
  const BeamSubstrate b = beam_with_sigma(0.2, w0);
  const double z2 = 5.0 * w0;

  double worst = 0.0;
  for (double z1 : {0.0, 1.0, 3.0, 10.0}) {
    const double q3 = strain_correlation_Q(z1 * w0, z2, 1e-3 * w0, b);
    const double q4 = strain_correlation_Q(z1 * w0, z2, 1e-4 * w0, b);
    const double s3 = q3 / std::sqrt(1e-3);
    const double s4 = q4 / std::sqrt(1e-4);
    worst = std::max(worst, std::abs(s3 / s4 - 1.0));
  }

  bool bounded = true;
  for (double z1 : {0.0, 1.0, 3.0, 10.0}) {
    for (double zz : {0.5, 2.0, 5.0, 8.0}) {
      if (std::abs(strain_correlation_Q(z1 * w0, zz * w0, 1e-3 * w0, b)) >
          1.0) {
        bounded = false;
      }
    }
  }
  report("strain-correlation thinning law", worst <= 0.02 && bounded,
         "sqrt-step residual between steps 1e-3 and 1e-4: " + fmt(worst) +
             " (tol 2e-2); |Q| <= 1 everywhere sampled: " +
             (bounded ? "yes" : "no"));
}

void c10_surface_density() {
  const BeamSubstrate b{1e-4, silica(), 300.0};
  const double om = 1.3948671381938683e7;
  const double base = surface_psd(om, b);

  bool halves = true;
  for (double w : {om, 2.5e5, 7.7e7}) {
    if (2.0 * surface_psd(2.0 * w, b) != surface_psd(w, b)) halves = false;
  }
  const bool frozen = base == kPinnedPsdFixture;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", base);
  info(std::string("density fixture value: ") + buf + " m^2/(rad/s)");
  report("surface displacement density", halves && frozen,
         std::string("exact halving under frequency doubling: ") +
             (halves ? "yes" : "no") + "; fixture bitwise: " +
             (frozen ? "yes" : "no"));
}

void c11_equipartition() {
  const double rho = 3980.0;
  const double a = 1.5e-3;
  const double l = 1e-3;
  EigenmodeSpec mode;
  mode.M0 = 2.7 * (rho * M_PI * a * a * l);
  mode.omega0 = 2.0 * M_PI * 2.22e6;
  mode.zeta = -1600.0;
  const double rms = eigenmode_rms(mode, 300.0);
  const double rel = std::abs(rms / 5.3e-16 - 1.0);
  report("equipartition rms", rel <= 0.05,
         "rms = " + fmt(rms) + " m vs 5.3e-16 m, rel " + fmt(rel) +
             " (tol 5e-2)");
}

int spawn(const std::string& args, const fs::path& log) {
  std::ostringstream cmd;
  cmd << QMIR_CLI_BIN << " --config " << QMIR_EXAMPLE_CONFIG << " " << args
      << " >> " << log << " 2>&1";
  const int status = std::system(cmd.str().c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

void c12_determinism() {
  const fs::path root = fs::path("acceptance-out");
  fs::remove_all(root);

  const struct {
    const char* args;
    const char* base;
    std::vector<const char*> exts;
  } jobs[] = {
      {"stack-scan --stack resonant-j16 --zeta -1600 --points 512 "
       "--format csv,json,svg",
       "scan", {".csv", ".json", ".svg"}},
      {"magic --stack resonant-j16 --zeta -1600 --points 2048 "
       "--format csv,json",
       "magic", {".csv", ".json"}},
      {"fdt-corr --z1 0,3 --points 41 --format csv,svg", "corr",
       {".csv", ".svg"}},
      {"noise-ratio --alpha 0.7 --optimal --points 41 --format csv,svg",
       "ratio", {".csv", ".svg"}},
      {"psd --points 61 --format csv,svg", "psd", {".csv", ".svg"}},
      {"eigenmode --mode drum-2p22mhz --format csv,json", "mode",
       {".csv", ".json"}},
  };

  bool all_ok = true;
  std::string detail;
  for (const auto& job : jobs) {
    for (const char* run_dir : {"r1", "r2"}) {
      const fs::path dir = root / run_dir;
      fs::create_directories(dir);
      const std::string args = std::string(job.args) + " --out " +
                               (dir / job.base).string();
      const int code = spawn(args, root / "spawn.log");
      if (code != 0) {
        all_ok = false;
        detail += std::string(job.base) + ": exit " + std::to_string(code) +
                  "; ";
      }
    }
    for (const char* ext : job.exts) {
      const fs::path f1 = root / "r1" / (std::string(job.base) + ext);
      const fs::path f2 = root / "r2" / (std::string(job.base) + ext);
      std::ifstream a(f1, std::ios::binary), b(f2, std::ios::binary);
      std::ostringstream sa, sb;
      sa << a.rdbuf();
      sb << b.rdbuf();
      if (sa.str().empty() || sa.str() != sb.str()) {
        all_ok = false;
        detail += std::string(job.base) + ext + ": bytes differ; ";
      }
    }
  }
  if (detail.empty()) {
    detail = "6 commands, 13 artifacts, byte-identical across repeat runs";
  }
  report("deterministic artifacts", all_ok, detail);
}

}  // namespace

int main() {
  guarded("surface correlation normalization", c01_surface_normalization);
  guarded("correlation symmetry", c02_symmetry);
  guarded("deep diagonal limit and monotone decay", c03_diagonal_limit);
  guarded("optimal readout mixing at depth", c04_optimal_mixing);
  guarded("magic wavevector pair structure", c05_magic_pair);
  guarded("detuned-pair discrimination", c06_discrimination);
  guarded("transfer-matrix oracles", c07_tmm_oracles);
  guarded("etalon phase response", c08_etalon_phase);
  guarded("strain-correlation thinning law", c09_thinning_law);
  guarded("surface displacement density", c10_surface_density);
  guarded("equipartition rms", c11_equipartition);
  guarded("deterministic artifacts", c12_determinism);

  std::printf("acceptance: %d of 12 checks passed\n", 12 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
