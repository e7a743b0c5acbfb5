#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmir/config.hpp"
#include "qmir/tmm.hpp"

#include "figure.hpp"
#include "table.hpp"

namespace qmir::cli {

// Window and resolution of a wavevector scan, in k / k0 units.
struct ScanWindow {
  double lo = 0.995;
  double hi = 1.005;
  int points = 4096;
};

struct StackScanParams {
  std::string stack;
  double zeta = 0.0;
  StrainModel model = StrainModel::geometric;
  ScanWindow window;
};

struct DiscriminateParams {
  std::string stack_a;
  std::string stack_b;
  double zeta = 0.0;
  StrainModel model = StrainModel::geometric;
  ScanWindow window;
};

// Depths and steps are all in units of w0.
struct FdtCorrParams {
  std::vector<double> z1{0.0, 1.0, 3.0, 10.0};
  std::optional<double> z2;  // set: single-point rows; unset: sweep
  double z2_max = 10.0;
  int points = 201;
  std::optional<double> sigma;  // substrate Poisson ratio override
};

struct FdtQParams {
  std::vector<double> z1{0.0, 1.0, 3.0, 10.0};
  double dz2 = 1e-3;
  double z2_max = 10.0;
  int points = 201;
  std::optional<double> sigma;
};

struct NoiseRatioParams {
  std::vector<double> alphas{0.3, 0.7, 1.0, 1.5};
  bool optimal = false;
  double z2_max = 10.0;
  int points = 201;
  std::optional<double> sigma;
  std::optional<double> transverse_coeff;
};

struct PsdParams {
  std::optional<double> omega;  // set: single row
  double omega_min = 6283.185307179586;    // 1 kHz
  double omega_max = 62831853.071795866;   // 10 MHz
  int points = 121;
  std::optional<double> sigma;
};

struct EigenmodeParams {
  std::string mode;
  std::optional<double> temperature;  // default: beam temperature
};

// Everything a command produces; run() decides which files to write.
struct CommandResult {
  Table table;
  std::string summary_json;  // always available
  std::optional<FigureKind> figure;
  std::string figure_title;
  std::string note;  // one line for stdout
  std::vector<std::string> warnings;
};

CommandResult cmd_stack_scan(const Config& cfg, const StackScanParams& p);
CommandResult cmd_magic(const Config& cfg, const StackScanParams& p);
CommandResult cmd_discriminate(const Config& cfg, const DiscriminateParams& p);
CommandResult cmd_fdt_corr(const Config& cfg, const FdtCorrParams& p);
CommandResult cmd_fdt_q(const Config& cfg, const FdtQParams& p);
CommandResult cmd_noise_ratio(const Config& cfg, const NoiseRatioParams& p);
CommandResult cmd_psd(const Config& cfg, const PsdParams& p);
CommandResult cmd_eigenmode(const Config& cfg, const EigenmodeParams& p);

struct OutputSpec {
  std::string base;  // path without extension
  bool json = false;
  bool svg = false;
};

// Writes <base>.csv (always) plus optional <base>.json / <base>.svg.
// Returns the list of files written.
std::vector<std::string> write_outputs(const CommandResult& r,
                                       const OutputSpec& out);

// Full command-line entry point: parse, dispatch, write, report.
// Exit codes: 0 success, 1 usage/config errors, 2 numerical failures.
int run(int argc, const char* const* argv);

}  // namespace qmir::cli
