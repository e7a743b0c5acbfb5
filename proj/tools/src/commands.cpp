#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmir/compensation.hpp"
#include "qmir/composite.hpp"
#include "qmir/errors.hpp"
#include "qmir/fdt.hpp"

namespace qmir::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
  std::vector<double> g(static_cast<size_t>(n));
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = lo + step * i;
  g.back() = hi;
  return g;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("log grid needs 0 < lo < hi");
  }
  std::vector<double> g = linspace(std::log(lo), std::log(hi), n);
  for (double& v : g) v = std::exp(v);
  return g;
}

std::string label_num(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%g", v);
  return b;
}

const char* model_name(StrainModel m) {
  return m == StrainModel::geometric ? "geometric" : "photoelastic";
}

const CoatingStack& need_stack(const Config& cfg, const std::string& name) {
  const CoatingStack* s = find_stack(cfg, name);
  if (!s) throw ConfigError("unknown stack '" + name + "'");
  return *s;
}

BeamSubstrate beam_for(const Config& cfg, const std::optional<double>& sigma) {
  BeamSubstrate b = cfg.beam;
  if (sigma) b.substrate.sigma = *sigma;
  return b;
}

ordered_json window_json(const ScanWindow& w) {
  return ordered_json{{"lo", w.lo}, {"hi", w.hi}, {"points", w.points}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void fill_scan_table(Table& t, const std::vector<PhasePoint>& pts) {
  t.columns = {"k_over_k0", "delta_theta", "delta_beta", "delta_phi", "T"};
  t.rows.reserve(pts.size());
  for (const PhasePoint& p : pts) {
    t.rows.push_back({p.k_over_k0, p.delta_theta, p.delta_beta, p.delta_phi, p.T});
  }
}

void maybe_warn_thin(const Config& cfg, const CoatingStack& s,
                     std::vector<std::string>& warnings) {
  if (!thin_coating_ok(s, cfg.beam.w0)) {
    std::ostringstream msg;
    msg << "coating thickness " << total_physical_thickness(s)
        << " m is not small against the beam radius " << cfg.beam.w0
        << " m; the thin-coating phase model degrades here";
    warnings.push_back(msg.str());
  }
}

}  // namespace

CommandResult cmd_stack_scan(const Config& cfg, const StackScanParams& p) {
  const CoatingStack& s = need_stack(cfg, p.stack);
  const std::vector<double> grid =
      linspace(p.window.lo * s.k0, p.window.hi * s.k0, p.window.points);
  const std::vector<PhasePoint> pts =
      scan_total_phase(s, p.zeta, grid, p.model);

  CommandResult res;
  fill_scan_table(res.table, pts);
  maybe_warn_thin(cfg, s, res.warnings);

  ordered_json summary;
  summary["command"] = "stack-scan";
  summary["request"] = {{"stack", p.stack},
                        {"zeta_per_m", p.zeta},
                        {"model", model_name(p.model)},
                        {"window", window_json(p.window)}};
  summary["k0_per_m"] = s.k0;
  summary["rows"] = res.table.rows.size();
  summary["warnings"] = res.warnings;
  res.summary_json = dump(summary);

  res.figure = FigureKind::phase_scan;
  res.figure_title = "stack-scan " + p.stack + " (" + model_name(p.model) + ")";
  std::ostringstream note;
  note << "stack-scan " << p.stack << ": " << res.table.rows.size()
       << " points in [" << p.window.lo << ", " << p.window.hi << "] k/k0, "
       << model_name(p.model) << " model";
  res.note = note.str();
  return res;
}

CommandResult cmd_magic(const Config& cfg, const StackScanParams& p) {
  const CoatingStack& s = need_stack(cfg, p.stack);
  const MagicWavevectors mw = find_magic_wavevectors(
      s, p.zeta, {p.window.lo * s.k0, p.window.hi * s.k0}, p.model,
      p.window.points);
  const std::vector<double> grid =
      linspace(p.window.lo * s.k0, p.window.hi * s.k0, p.window.points);
  const std::vector<PhasePoint> pts =
      scan_total_phase(s, p.zeta, grid, p.model);

  CommandResult res;
  fill_scan_table(res.table, pts);
  maybe_warn_thin(cfg, s, res.warnings);

  ordered_json summary;
  summary["command"] = "magic";
  summary["request"] = {{"stack", p.stack},
                        {"zeta_per_m", p.zeta},
                        {"model", model_name(p.model)},
                        {"window", window_json(p.window)}};
  summary["k0_per_m"] = s.k0;
  summary["roots_k_over_k0"] = mw.roots;
  summary["root_count"] = mw.roots.size();
  summary["warnings"] = res.warnings;
  res.summary_json = dump(summary);

  res.figure = FigureKind::phase_scan;
  res.figure_title = "magic " + p.stack + " (" + model_name(p.model) + ")";
  std::ostringstream note;
  note << "magic " << p.stack << ": " << mw.roots.size() << " root"
       << (mw.roots.size() == 1 ? "" : "s");
  if (!mw.roots.empty()) {
    note << " at k/k0 =";
    for (size_t i = 0; i < mw.roots.size(); ++i) {
      note << (i ? ", " : " ") << fmt_g12(mw.roots[i]);
    }
  }
  res.note = note.str();
  return res;
}

CommandResult cmd_discriminate(const Config& cfg, const DiscriminateParams& p) {
  const CoatingStack& a = need_stack(cfg, p.stack_a);
  const CoatingStack& b = need_stack(cfg, p.stack_b);
  const DiscriminationReport rep = discrimination_report(
      a, b, p.zeta, {p.window.lo * a.k0, p.window.hi * a.k0}, p.model);

  const std::vector<double> grid =
      linspace(p.window.lo * a.k0, p.window.hi * a.k0, p.window.points);
  const std::vector<PhasePoint> pa = scan_total_phase(a, p.zeta, grid, p.model);
  const std::vector<PhasePoint> pb = scan_total_phase(b, p.zeta, grid, p.model);

  CommandResult res;
  res.table.columns = {"k_over_k0", "delta_theta", "delta_phi_a",
                       "t_a",       "delta_phi_b", "t_b"};
  res.table.rows.reserve(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    res.table.rows.push_back({pa[i].k_over_k0, pa[i].delta_theta,
                              pa[i].delta_phi, pa[i].T, pb[i].delta_phi,
                              pb[i].T});
  }
  maybe_warn_thin(cfg, a, res.warnings);

  ordered_json summary;
  summary["command"] = "discriminate";
  summary["request"] = {{"stack_a", p.stack_a},
                        {"stack_b", p.stack_b},
                        {"zeta_per_m", p.zeta},
                        {"model", model_name(p.model)},
                        {"window", window_json(p.window)}};
  summary["k0_per_m"] = a.k0;
  summary["report"] = {{"k_minus_B", rep.k_minus_B},
                       {"k_plus_A", rep.k_plus_A},
                       {"cross_noise_A_at_kB", rep.cross_noise_A_at_kB},
                       {"cross_noise_B_at_kA", rep.cross_noise_B_at_kA},
                       {"residual_A_at_k0", rep.residual_A_at_k0},
                       {"residual_B_at_k0", rep.residual_B_at_k0}};
  summary["warnings"] = res.warnings;
  res.summary_json = dump(summary);

  res.figure = FigureKind::phase_scan;
  res.figure_title = "discriminate " + p.stack_a + " / " + p.stack_b;
  std::ostringstream note;
  note << "discriminate " << p.stack_a << "/" << p.stack_b
       << ": cross-noise A@kB- = " << rep.cross_noise_A_at_kB
       << ", B@kA+ = " << rep.cross_noise_B_at_kA
       << "; residual at k0: A = " << rep.residual_A_at_k0
       << ", B = " << rep.residual_B_at_k0;
  res.note = note.str();
  return res;
}

CommandResult cmd_fdt_corr(const Config& cfg, const FdtCorrParams& p) {
  if (p.z1.empty()) throw std::invalid_argument("fdt-corr: need at least one z1");
  const BeamSubstrate beam = beam_for(cfg, p.sigma);
  const double w0 = beam.w0;

  CommandResult res;
  ordered_json summary;
  summary["command"] = "fdt-corr";
  ordered_json req;
  req["z1_over_w0"] = p.z1;
  req["sigma"] = beam.substrate.sigma.value_or(-1.0);

  if (p.z2) {
    // Point mode: one row per z1.
    req["z2_over_w0"] = *p.z2;
    res.table.columns = {"z1_over_w0", "z2_over_w0", "n", "n_err", "c"};
    ordered_json values = ordered_json::array();
    for (double z1 : p.z1) {
      const CorrelationResult n =
          correlation_N(z1 * w0, *p.z2 * w0, beam);
      const double c = normalized_correlation_C(z1 * w0, *p.z2 * w0, beam);
      res.table.rows.push_back({z1, *p.z2, n.value, n.est_error, c});
      values.push_back({{"z1_over_w0", z1},
                        {"z2_over_w0", *p.z2},
                        {"n", n.value},
                        {"n_err", n.est_error},
                        {"c", c}});
    }
    summary["request"] = req;
    summary["values"] = values;
    std::ostringstream note;
    note << "fdt-corr: N(" << label_num(p.z1.front()) << ", "
         << label_num(*p.z2) << ") = " << fmt_g12(res.table.rows[0][2])
         << ", C = " << fmt_g12(res.table.rows[0][4]) << " (depths in w0)";
    res.note = note.str();
  } else {
    req["z2_max_over_w0"] = p.z2_max;
    req["points"] = p.points;
    const std::vector<double> z2g = linspace(0.0, p.z2_max, p.points);

    res.table.columns = {"z2_over_w0"};
    for (double z1 : p.z1) res.table.columns.push_back("n_z1_" + label_num(z1));
    for (double z1 : p.z1) res.table.columns.push_back("c_z1_" + label_num(z1));
    res.table.columns.push_back("n_diag");

    std::vector<double> n11;
    n11.reserve(p.z1.size());
    for (double z1 : p.z1) {
      n11.push_back(correlation_N(z1 * w0, z1 * w0, beam).value);
    }
    for (double z2 : z2g) {
      const double ndiag = correlation_N(z2 * w0, z2 * w0, beam).value;
      std::vector<double> row;
      row.reserve(res.table.columns.size());
      row.push_back(z2);
      std::vector<double> n1z(p.z1.size());
      for (size_t i = 0; i < p.z1.size(); ++i) {
        n1z[i] = correlation_N(p.z1[i] * w0, z2 * w0, beam).value;
        row.push_back(n1z[i]);
      }
      for (size_t i = 0; i < p.z1.size(); ++i) {
        row.push_back(n1z[i] / std::sqrt(n11[i] * ndiag));
      }
      row.push_back(ndiag);
      res.table.rows.push_back(std::move(row));
    }
    summary["request"] = req;
    summary["rows"] = res.table.rows.size();
    res.figure = FigureKind::correlation;
    res.figure_title = "normalized displacement correlation";
    std::ostringstream note;
    note << "fdt-corr: " << res.table.rows.size() << " depth points, z1/w0 = {";
    for (size_t i = 0; i < p.z1.size(); ++i) {
      note << (i ? ", " : "") << label_num(p.z1[i]);
    }
    note << "}";
    res.note = note.str();
  }
  res.summary_json = dump(summary);
  return res;
}

CommandResult cmd_fdt_q(const Config& cfg, const FdtQParams& p) {
  if (p.z1.empty()) throw std::invalid_argument("fdt-q: need at least one z1");
  const BeamSubstrate beam = beam_for(cfg, p.sigma);
  const double w0 = beam.w0;
  const std::vector<double> z2g = linspace(0.0, p.z2_max, p.points);

  CommandResult res;
  res.table.columns = {"z2_over_w0"};
  for (double z1 : p.z1) res.table.columns.push_back("q_z1_" + label_num(z1));
  for (double z1 : p.z1) {
    res.table.columns.push_back("qscaled_z1_" + label_num(z1));
  }

  const double scale = 1.0 / std::sqrt(p.dz2);
  for (double z2 : z2g) {
    std::vector<double> row;
    row.reserve(res.table.columns.size());
    row.push_back(z2);
    std::vector<double> qs(p.z1.size());
    for (size_t i = 0; i < p.z1.size(); ++i) {
      qs[i] = strain_correlation_Q(p.z1[i] * w0, z2 * w0, p.dz2 * w0, beam);
      row.push_back(qs[i]);
    }
    for (size_t i = 0; i < p.z1.size(); ++i) row.push_back(qs[i] * scale);
    res.table.rows.push_back(std::move(row));
  }

  ordered_json summary;
  summary["command"] = "fdt-q";
  summary["request"] = {{"z1_over_w0", p.z1},
                        {"dz2_over_w0", p.dz2},
                        {"z2_max_over_w0", p.z2_max},
                        {"points", p.points},
                        {"sigma", beam.substrate.sigma.value_or(-1.0)}};
  summary["rows"] = res.table.rows.size();
  res.summary_json = dump(summary);

  res.figure = FigureKind::strain_correlation;
  res.figure_title = "coherent strain fraction (step-scaled)";
  std::ostringstream note;
  note << "fdt-q: " << res.table.rows.size()
       << " depth points, dz2 = " << label_num(p.dz2) << " w0";
  res.note = note.str();
  return res;
}

CommandResult cmd_noise_ratio(const Config& cfg, const NoiseRatioParams& p) {
  if (p.alphas.empty() && !p.optimal) {
    throw std::invalid_argument("noise-ratio: need --alpha values or --optimal");
  }
  const BeamSubstrate beam = beam_for(cfg, p.sigma);
  const double w0 = beam.w0;
  const std::vector<double> z2g = linspace(0.0, p.z2_max, p.points);

  CommandResult res;
  res.table.columns = {"z2_over_w0"};
  for (double a : p.alphas) {
    res.table.columns.push_back("f_alpha_" + label_num(a));
  }
  if (p.optimal) {
    res.table.columns.push_back("alpha_min");
    res.table.columns.push_back("f_min");
  }
  if (p.transverse_coeff) res.table.columns.push_back("transverse");

  for (double z2 : z2g) {
    std::vector<double> row;
    row.reserve(res.table.columns.size());
    row.push_back(z2);
    for (double a : p.alphas) {
      row.push_back(noise_ratio_F(z2 * w0, a, beam));
    }
    if (p.optimal) {
      const OptimalAlpha oa = optimal_alpha(z2 * w0, beam);
      row.push_back(oa.alpha_min);
      row.push_back(oa.F_min);
    }
    if (p.transverse_coeff) {
      row.push_back(transverse_penalty(z2 * w0, w0, *p.transverse_coeff));
    }
    res.table.rows.push_back(std::move(row));
  }

  ordered_json summary;
  summary["command"] = "noise-ratio";
  ordered_json req;
  req["alphas"] = p.alphas;
  req["optimal"] = p.optimal;
  req["z2_max_over_w0"] = p.z2_max;
  req["points"] = p.points;
  req["sigma"] = beam.substrate.sigma.value_or(-1.0);
  if (p.transverse_coeff) req["transverse_coeff"] = *p.transverse_coeff;
  summary["request"] = req;
  summary["rows"] = res.table.rows.size();
  res.summary_json = dump(summary);

  res.figure = FigureKind::noise_ratio;
  res.figure_title = "composite readout noise ratio";
  std::ostringstream note;
  note << "noise-ratio: " << res.table.rows.size() << " depth points, "
       << p.alphas.size() << " alpha value" << (p.alphas.size() == 1 ? "" : "s")
       << (p.optimal ? " plus optimum" : "");
  res.note = note.str();
  return res;
}

CommandResult cmd_psd(const Config& cfg, const PsdParams& p) {
  const BeamSubstrate beam = beam_for(cfg, p.sigma);

  CommandResult res;
  res.table.columns = {"omega_rad_s", "psd"};
  ordered_json summary;
  summary["command"] = "psd";
  ordered_json req;
  req["sigma"] = beam.substrate.sigma.value_or(-1.0);

  if (p.omega) {
    req["omega_rad_s"] = *p.omega;
    const double v = surface_psd(*p.omega, beam);
    res.table.rows.push_back({*p.omega, v});
    summary["request"] = req;
    summary["psd_m2_per_rad_s"] = v;
    std::ostringstream note;
    note << "psd(omega = " << label_num(*p.omega)
         << " rad/s) = " << fmt_g12(v) << " m^2/(rad/s)";
    res.note = note.str();
  } else {
    req["omega_min_rad_s"] = p.omega_min;
    req["omega_max_rad_s"] = p.omega_max;
    req["points"] = p.points;
    for (double w : logspace(p.omega_min, p.omega_max, p.points)) {
      res.table.rows.push_back({w, surface_psd(w, beam)});
    }
    summary["request"] = req;
    summary["rows"] = res.table.rows.size();
    res.figure = FigureKind::psd;
    res.figure_title = "surface displacement spectral density";
    std::ostringstream note;
    note << "psd: " << res.table.rows.size() << " frequency points";
    res.note = note.str();
  }
  res.summary_json = dump(summary);
  return res;
}

CommandResult cmd_eigenmode(const Config& cfg, const EigenmodeParams& p) {
  const EigenmodeSpec* mode = find_mode(cfg, p.mode);
  if (!mode) throw ConfigError("unknown mode '" + p.mode + "'");
  const double T = p.temperature.value_or(cfg.beam.temperature);
  const double rms = eigenmode_rms(*mode, T);

  CommandResult res;
  res.table.columns = {"omega0_rad_s", "M0_kg", "zeta_per_m", "temperature_K",
                       "rms_m"};
  res.table.rows.push_back({mode->omega0, mode->M0, mode->zeta, T, rms});

  ordered_json summary;
  summary["command"] = "eigenmode";
  summary["request"] = {{"mode", p.mode}, {"temperature_K", T}};
  summary["rms_m"] = rms;
  res.summary_json = dump(summary);

  std::ostringstream note;
  note << "eigenmode " << p.mode << ": rms = " << fmt_g12(rms) << " m at T = "
       << label_num(T) << " K";
  res.note = note.str();
  return res;
}

std::vector<std::string> write_outputs(const CommandResult& r,
                                       const OutputSpec& out) {
  if (out.base.empty()) throw std::invalid_argument("output base is empty");
  const auto write_file = [](const std::string& path, const std::string& body) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    f << body;
    if (!f) throw ConfigError("failed writing '" + path + "'");
  };

  std::vector<std::string> written;
  write_file(out.base + ".csv", to_csv(r.table));
  written.push_back(out.base + ".csv");
  if (out.json) {
    write_file(out.base + ".json", r.summary_json);
    written.push_back(out.base + ".json");
  }
  if (out.svg) {
    if (!r.figure) {
      throw std::invalid_argument("this command does not define a figure");
    }
    write_file(out.base + ".svg",
               emit_figure(r.table, *r.figure, r.figure_title));
    written.push_back(out.base + ".svg");
  }
  return written;
}

namespace {

StrainModel parse_model(const std::string& name) {
  if (name == "geometric") return StrainModel::geometric;
  if (name == "photoelastic") return StrainModel::photoelastic;
  throw std::invalid_argument("unknown strain model '" + name + "'");
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{
      "layered-mirror phase compensation and substrate thermal-noise toolkit"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::string out_base;
  std::vector<std::string> formats;
  app.add_option("--config", config_path, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_base,
                 "output path base; <base>.csv is always written");
  app.add_option("--format", formats, "additional outputs (csv, json, svg)")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json", "svg"}));

  const auto add_scan_options = [](CLI::App* sc, std::string& stack,
                                   double& zeta, std::string& model,
                                   std::vector<double>& window, int& points) {
    sc->add_option("--stack", stack, "stack name from the config")->required();
    sc->add_option("--zeta", zeta, "modal strain per unit displacement [1/m]");
    sc->add_option("--model", model, "strain model")
        ->check(CLI::IsMember({"geometric", "photoelastic"}));
    sc->add_option("--window", window, "scan window lo hi in k/k0")
        ->expected(2);
    sc->add_option("--points", points, "grid points")->check(CLI::Range(2, 1 << 22));
  };

  // stack-scan
  std::string ss_stack, ss_model = "geometric";
  double ss_zeta = 0.0;
  std::vector<double> ss_window;
  int ss_points = 4096;
  CLI::App* sc_scan = app.add_subcommand(
      "stack-scan", "normalized phase terms and transmission over a k window");
  add_scan_options(sc_scan, ss_stack, ss_zeta, ss_model, ss_window, ss_points);

  // magic
  std::string mg_stack, mg_model = "geometric";
  double mg_zeta = 0.0;
  std::vector<double> mg_window;
  int mg_points = 4096;
  CLI::App* sc_magic = app.add_subcommand(
      "magic", "wavevectors where the total reflection phase is displacement-free");
  add_scan_options(sc_magic, mg_stack, mg_zeta, mg_model, mg_window, mg_points);

  // discriminate
  std::string di_a, di_b, di_model = "geometric";
  double di_zeta = 0.0;
  std::vector<double> di_window;
  int di_points = 4096;
  CLI::App* sc_disc = app.add_subcommand(
      "discriminate", "cross readout of two stacks tuned to opposite roots");
  sc_disc->add_option("--stack-a", di_a, "first stack")->required();
  sc_disc->add_option("--stack-b", di_b, "second stack")->required();
  sc_disc->add_option("--zeta", di_zeta, "modal strain per unit displacement [1/m]");
  sc_disc->add_option("--model", di_model, "strain model")
      ->check(CLI::IsMember({"geometric", "photoelastic"}));
  sc_disc->add_option("--window", di_window, "scan window lo hi in k/k0")
      ->expected(2);
  sc_disc->add_option("--points", di_points, "grid points")
      ->check(CLI::Range(2, 1 << 22));

  // fdt-corr
  std::vector<double> fc_z1;
  double fc_z2 = 0.0, fc_z2max = 10.0, fc_sigma = 0.0;
  int fc_points = 201;
  CLI::App* sc_corr = app.add_subcommand(
      "fdt-corr", "beam-averaged displacement correlation versus depth");
  sc_corr->add_option("--z1", fc_z1, "probe depths in w0 units")->delimiter(',');
  CLI::Option* opt_fc_z2 =
      sc_corr->add_option("--z2", fc_z2, "single second depth in w0 units");
  sc_corr->add_option("--z2-max", fc_z2max, "sweep upper depth in w0 units");
  sc_corr->add_option("--points", fc_points, "sweep points")
      ->check(CLI::Range(2, 100000));
  CLI::Option* opt_fc_sigma =
      sc_corr->add_option("--sigma", fc_sigma, "Poisson ratio override");

  // fdt-q
  std::vector<double> fq_z1;
  double fq_dz2 = 1e-3, fq_z2max = 10.0, fq_sigma = 0.0;
  int fq_points = 201;
  CLI::App* sc_q = app.add_subcommand(
      "fdt-q", "coherent fraction of substrate strain versus depth");
  sc_q->add_option("--z1", fq_z1, "probe depths in w0 units")->delimiter(',');
  sc_q->add_option("--dz2", fq_dz2, "forward-difference step in w0 units");
  sc_q->add_option("--z2-max", fq_z2max, "sweep upper depth in w0 units");
  sc_q->add_option("--points", fq_points, "sweep points")
      ->check(CLI::Range(2, 100000));
  CLI::Option* opt_fq_sigma =
      sc_q->add_option("--sigma", fq_sigma, "Poisson ratio override");

  // noise-ratio
  std::vector<double> nr_alphas;
  bool nr_optimal = false;
  double nr_z2max = 10.0, nr_sigma = 0.0, nr_coeff = 0.0;
  int nr_points = 201;
  CLI::App* sc_nr = app.add_subcommand(
      "noise-ratio", "composite readout noise power versus etalon depth");
  sc_nr->add_option("--alpha", nr_alphas, "mixing weights")->delimiter(',');
  sc_nr->add_flag("--optimal", nr_optimal, "add per-depth optimal weight");
  sc_nr->add_option("--z2-max", nr_z2max, "sweep upper depth in w0 units");
  sc_nr->add_option("--points", nr_points, "sweep points")
      ->check(CLI::Range(2, 100000));
  CLI::Option* opt_nr_sigma =
      sc_nr->add_option("--sigma", nr_sigma, "Poisson ratio override");
  CLI::Option* opt_nr_coeff = sc_nr->add_option(
      "--transverse-coeff", nr_coeff, "linear transverse penalty coefficient");

  // psd
  double ps_omega = 0.0, ps_omin = 6283.185307179586,
         ps_omax = 62831853.071795866, ps_sigma = 0.0;
  int ps_points = 121;
  CLI::App* sc_psd = app.add_subcommand(
      "psd", "surface displacement spectral density");
  CLI::Option* opt_ps_omega =
      sc_psd->add_option("--omega", ps_omega, "single angular frequency [rad/s]");
  sc_psd->add_option("--omega-min", ps_omin, "sweep start [rad/s]");
  sc_psd->add_option("--omega-max", ps_omax, "sweep end [rad/s]");
  sc_psd->add_option("--points", ps_points, "sweep points")
      ->check(CLI::Range(2, 100000));
  CLI::Option* opt_ps_sigma =
      sc_psd->add_option("--sigma", ps_sigma, "Poisson ratio override");

  // eigenmode
  std::string em_mode;
  double em_temp = 0.0;
  CLI::App* sc_em = app.add_subcommand(
      "eigenmode", "thermal rms displacement of a configured mode");
  sc_em->add_option("--mode", em_mode, "mode name from the config")->required();
  CLI::Option* opt_em_temp =
      sc_em->add_option("--temperature", em_temp, "temperature [K]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const Config cfg = parse_config(config_path);
    CommandResult res;
    std::string default_base;

    const auto window_of = [](const std::vector<double>& w, int points) {
      ScanWindow win;
      if (!w.empty()) {
        win.lo = w[0];
        win.hi = w[1];
      }
      if (!(win.lo > 0.0) || !(win.hi > win.lo)) {
        throw std::invalid_argument("--window needs 0 < lo < hi");
      }
      win.points = points;
      return win;
    };

    if (sc_scan->parsed()) {
      StackScanParams p{ss_stack, ss_zeta, parse_model(ss_model),
                        window_of(ss_window, ss_points)};
      res = cmd_stack_scan(cfg, p);
      default_base = "stack-scan";
    } else if (sc_magic->parsed()) {
      StackScanParams p{mg_stack, mg_zeta, parse_model(mg_model),
                        window_of(mg_window, mg_points)};
      res = cmd_magic(cfg, p);
      default_base = "magic";
    } else if (sc_disc->parsed()) {
      DiscriminateParams p{di_a, di_b, di_zeta, parse_model(di_model),
                           window_of(di_window, di_points)};
      res = cmd_discriminate(cfg, p);
      default_base = "discriminate";
    } else if (sc_corr->parsed()) {
      FdtCorrParams p;
      if (!fc_z1.empty()) p.z1 = fc_z1;
      if (opt_fc_z2->count()) p.z2 = fc_z2;
      p.z2_max = fc_z2max;
      p.points = fc_points;
      if (opt_fc_sigma->count()) p.sigma = fc_sigma;
      res = cmd_fdt_corr(cfg, p);
      default_base = "fdt-corr";
    } else if (sc_q->parsed()) {
      FdtQParams p;
      if (!fq_z1.empty()) p.z1 = fq_z1;
      p.dz2 = fq_dz2;
      p.z2_max = fq_z2max;
      p.points = fq_points;
      if (opt_fq_sigma->count()) p.sigma = fq_sigma;
      res = cmd_fdt_q(cfg, p);
      default_base = "fdt-q";
    } else if (sc_nr->parsed()) {
      NoiseRatioParams p;
      if (sc_nr->count("--alpha")) p.alphas = nr_alphas;
      p.optimal = nr_optimal;
      p.z2_max = nr_z2max;
      p.points = nr_points;
      if (opt_nr_sigma->count()) p.sigma = nr_sigma;
      if (opt_nr_coeff->count()) p.transverse_coeff = nr_coeff;
      res = cmd_noise_ratio(cfg, p);
      default_base = "noise-ratio";
    } else if (sc_psd->parsed()) {
      PsdParams p;
      if (opt_ps_omega->count()) p.omega = ps_omega;
      p.omega_min = ps_omin;
      p.omega_max = ps_omax;
      p.points = ps_points;
      if (opt_ps_sigma->count()) p.sigma = ps_sigma;
      res = cmd_psd(cfg, p);
      default_base = "psd";
    } else if (sc_em->parsed()) {
      EigenmodeParams p;
      p.mode = em_mode;
      if (opt_em_temp->count()) p.temperature = em_temp;
      res = cmd_eigenmode(cfg, p);
      default_base = "eigenmode";
    } else {
      throw std::logic_error("no subcommand dispatched");
    }

    OutputSpec out;
    out.base = out_base.empty() ? default_base : out_base;
    for (const std::string& f : formats) {
      if (f == "json") out.json = true;
      if (f == "svg") out.svg = true;
    }
    write_outputs(res, out);
    for (const std::string& w : res.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    std::cout << res.note << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const NumericsError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qmir::cli
