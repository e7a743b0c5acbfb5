#include "figure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace qmir::cli {

namespace {

struct Series {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<std::pair<double, double>> pts;
};

struct Panel {
  std::string xlabel, ylabel;
  bool logx = false, logy = false;
  std::vector<Series> series;
};

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#17becf", "#bcbd22"};
constexpr int kPaletteSize = 8;
constexpr const char* kGray = "#808080";

std::string px(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.2f", v);
  return b;
}

std::string num(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%g", v);
  return b;
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double range = hi - lo;
  if (!(range > 0.0)) return {lo};
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step =
      (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
  const double t0 = std::ceil(lo / step) * step;
  std::vector<double> ticks;
  for (int i = 0; i < 64; ++i) {
    const double t = t0 + i * step;
    if (t > hi + 1e-9 * range) break;
    ticks.push_back(t == 0.0 ? 0.0 : t);
  }
  return ticks;
}

// Data in log panels lives in log10 space; ticks sit on whole decades.
std::vector<double> decade_ticks(double lo, double hi) {
  std::vector<double> ticks;
  int stride = 1;
  if (hi - lo > 12.0) stride = static_cast<int>(std::ceil((hi - lo) / 12.0));
  const int first = static_cast<int>(std::ceil(lo - 1e-9));
  for (int d = first; d <= hi + 1e-9; ++d) {
    if ((d - first) % stride == 0) ticks.push_back(static_cast<double>(d));
  }
  if (ticks.empty()) ticks.push_back(0.5 * (lo + hi));
  return ticks;
}

struct Extent {
  double lo = 0.0, hi = 1.0;
};

Extent pad_extent(double lo, double hi) {
  if (!(hi > lo)) {
    const double bump = std::max(std::abs(lo), 1.0) * 0.05;
    return {lo - bump, hi + bump};
  }
  const double pad = 0.04 * (hi - lo);
  return {lo - pad, hi + pad};
}

void render_panel(std::string& svg, const Panel& panel, double left, double top,
                  double plot_w, double plot_h, int clip_id) {
  // Transform points into the panel's (possibly log) coordinate space.
  std::vector<std::vector<std::pair<double, double>>> tpts(panel.series.size());
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  for (size_t s = 0; s < panel.series.size(); ++s) {
    for (const auto& [x, y] : panel.series[s].pts) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (panel.logx && !(x > 0.0)) continue;
      if (panel.logy && !(y > 0.0)) continue;
      const double tx = panel.logx ? std::log10(x) : x;
      const double ty = panel.logy ? std::log10(y) : y;
      tpts[s].emplace_back(tx, ty);
      if (!any) {
        xmin = xmax = tx;
        ymin = ymax = ty;
        any = true;
      } else {
        xmin = std::min(xmin, tx);
        xmax = std::max(xmax, tx);
        ymin = std::min(ymin, ty);
        ymax = std::max(ymax, ty);
      }
    }
  }
  if (!any) {
    throw std::invalid_argument(
        "figure: no plottable data (log axes need positive values)");
  }

  const Extent ex = pad_extent(xmin, xmax);
  const Extent ey = pad_extent(ymin, ymax);
  const auto to_px = [&](double tx, double ty) {
    const double fx = (tx - ex.lo) / (ex.hi - ex.lo);
    const double fy = (ty - ey.lo) / (ey.hi - ey.lo);
    return std::pair<double, double>{left + fx * plot_w,
                                     top + (1.0 - fy) * plot_h};
  };

  const std::vector<double> xticks = panel.logx
                                         ? decade_ticks(ex.lo, ex.hi)
                                         : linear_ticks(ex.lo, ex.hi);
  const std::vector<double> yticks = panel.logy
                                         ? decade_ticks(ey.lo, ey.hi)
                                         : linear_ticks(ey.lo, ey.hi);

  // gridlines and tick labels
  for (double t : xticks) {
    if (t < ex.lo || t > ex.hi) continue;
    const double x = to_px(t, ey.lo).first;
    svg += "<line x1=\"" + px(x) + "\" y1=\"" + px(top) + "\" x2=\"" + px(x) +
           "\" y2=\"" + px(top + plot_h) + "\" stroke=\"#e0e0e0\"/>\n";
    const double label = panel.logx ? std::pow(10.0, t) : t;
    svg += "<text x=\"" + px(x) + "\" y=\"" + px(top + plot_h + 16) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + num(label) +
           "</text>\n";
  }
  for (double t : yticks) {
    if (t < ey.lo || t > ey.hi) continue;
    const double y = to_px(ex.lo, t).second;
    svg += "<line x1=\"" + px(left) + "\" y1=\"" + px(y) + "\" x2=\"" +
           px(left + plot_w) + "\" y2=\"" + px(y) + "\" stroke=\"#e0e0e0\"/>\n";
    const double label = panel.logy ? std::pow(10.0, t) : t;
    svg += "<text x=\"" + px(left - 6) + "\" y=\"" + px(y + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + num(label) +
           "</text>\n";
  }

  // frame
  svg += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" +
         px(plot_w) + "\" height=\"" + px(plot_h) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // clip region for the data
  const std::string cid = "clip" + std::to_string(clip_id);
  svg += "<clipPath id=\"" + cid + "\"><rect x=\"" + px(left) + "\" y=\"" +
         px(top) + "\" width=\"" + px(plot_w) + "\" height=\"" + px(plot_h) +
         "\"/></clipPath>\n";

  svg += "<g clip-path=\"url(#" + cid + ")\">\n";
  for (size_t s = 0; s < panel.series.size(); ++s) {
    if (tpts[s].empty()) continue;
    svg += "<polyline fill=\"none\" stroke=\"" + panel.series[s].color +
           "\" stroke-width=\"1.5\"";
    if (panel.series[s].dashed) svg += " stroke-dasharray=\"6,4\"";
    svg += " points=\"";
    for (size_t i = 0; i < tpts[s].size(); ++i) {
      const auto [x, y] = to_px(tpts[s][i].first, tpts[s][i].second);
      if (i) svg += ' ';
      svg += px(x) + "," + px(y);
    }
    svg += "\"/>\n";
  }
  svg += "</g>\n";

  // legend, top right corner of the panel
  double ly = top + 14;
  for (const Series& s : panel.series) {
    const double lx = left + plot_w - 150;
    svg += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly) + "\" x2=\"" +
           px(lx + 22) + "\" y2=\"" + px(ly) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"1.5\"" +
           (s.dashed ? std::string(" stroke-dasharray=\"6,4\"") : "") + "/>\n";
    svg += "<text x=\"" + px(lx + 28) + "\" y=\"" + px(ly + 4) +
           "\" font-size=\"11\">" + s.label + "</text>\n";
    ly += 15;
  }

  // axis labels
  svg += "<text x=\"" + px(left + plot_w / 2) + "\" y=\"" +
         px(top + plot_h + 36) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + panel.xlabel +
         "</text>\n";
  svg += "<text x=\"16\" y=\"" + px(top + plot_h / 2) +
         "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         px(top + plot_h / 2) + ")\">" + panel.ylabel + "</text>\n";
}

std::string render(const std::vector<Panel>& panels, const std::string& title) {
  const double width = 720;
  const double left = 76, right = 20;
  const double plot_w = width - left - right;
  const double plot_h = 280;
  const double title_h = 30, panel_gap = 18, axis_h = 48;
  const double height =
      title_h + panels.size() * (panel_gap + plot_h + axis_h);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) +
         " " + num(height) +
         "\" font-family=\"Helvetica,Arial,sans-serif\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"" + px(width / 2) +
         "\" y=\"20\" font-size=\"14\" font-weight=\"bold\" "
         "text-anchor=\"middle\">" +
         title + "</text>\n";

  double top = title_h + panel_gap;
  int clip_id = 0;
  for (const Panel& p : panels) {
    render_panel(svg, p, left, top, plot_w, plot_h, clip_id++);
    top += plot_h + axis_h + panel_gap;
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::pair<double, double>> column_pts(const Table& t, int xi,
                                                  int yi) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    pts.emplace_back(row[static_cast<size_t>(xi)], row[static_cast<size_t>(yi)]);
  }
  return pts;
}

int require_column(const Table& t, const std::string& name,
                   const char* kind_name) {
  const int i = column_index(t, name);
  if (i < 0) {
    throw std::invalid_argument(std::string("figure kind '") + kind_name +
                                "' requires column '" + name + "'");
  }
  return i;
}

bool starts_with(const std::string& s, const char* prefix) {
  return s.rfind(prefix, 0) == 0;
}

}  // namespace

std::string emit_figure(const Table& t, FigureKind kind,
                        const std::string& title) {
  if (t.rows.empty()) {
    throw std::invalid_argument("figure: table has no rows");
  }

  std::vector<Panel> panels;
  int color = 0;
  const auto next_color = [&color]() {
    return std::string(kPalette[color++ % kPaletteSize]);
  };

  switch (kind) {
    case FigureKind::phase_scan: {
      const int xi = require_column(t, "k_over_k0", "phase_scan");
      Panel phases{"k / k₀", "δΦ / |δθ(k₀)|"};
      Panel trans{"k / k₀", "T"};
      trans.logy = true;
      for (size_t c = 0; c < t.columns.size(); ++c) {
        const std::string& name = t.columns[c];
        if (starts_with(name, "delta_phi")) {
          phases.series.push_back(
              {name, next_color(), false, column_pts(t, xi, static_cast<int>(c))});
        } else if (name == "delta_theta") {
          phases.series.push_back(
              {name, kGray, true, column_pts(t, xi, static_cast<int>(c))});
        } else if (name == "T" || starts_with(name, "t_")) {
          trans.series.push_back(
              {name, next_color(), false, column_pts(t, xi, static_cast<int>(c))});
        }
      }
      if (phases.series.empty() || trans.series.empty()) {
        throw std::invalid_argument(
            "figure kind 'phase_scan' requires delta_phi* and T columns");
      }
      panels.push_back(std::move(phases));
      panels.push_back(std::move(trans));
      break;
    }
    case FigureKind::correlation: {
      const int xi = require_column(t, "z2_over_w0", "correlation");
      Panel p{"z₂ / w₀", "C(z₁, z₂)"};
      for (size_t c = 0; c < t.columns.size(); ++c) {
        const std::string& name = t.columns[c];
        if (starts_with(name, "c_")) {
          p.series.push_back(
              {name, next_color(), false, column_pts(t, xi, static_cast<int>(c))});
        } else if (name == "n_diag") {
          p.series.push_back(
              {name, kGray, true, column_pts(t, xi, static_cast<int>(c))});
        }
      }
      if (p.series.empty()) {
        throw std::invalid_argument(
            "figure kind 'correlation' requires c_* columns");
      }
      panels.push_back(std::move(p));
      break;
    }
    case FigureKind::strain_correlation: {
      const int xi = require_column(t, "z2_over_w0", "strain_correlation");
      Panel p{"z₂ / w₀",
              "Q / √(Δz₂/w₀)"};
      for (size_t c = 0; c < t.columns.size(); ++c) {
        if (starts_with(t.columns[c], "qscaled_")) {
          p.series.push_back({t.columns[c], next_color(), false,
                              column_pts(t, xi, static_cast<int>(c))});
        }
      }
      if (p.series.empty()) {
        throw std::invalid_argument(
            "figure kind 'strain_correlation' requires qscaled_* columns");
      }
      panels.push_back(std::move(p));
      break;
    }
    case FigureKind::noise_ratio: {
      const int xi = require_column(t, "z2_over_w0", "noise_ratio");
      Panel p{"z₂ / w₀", "Ϝ"};
      for (size_t c = 0; c < t.columns.size(); ++c) {
        const std::string& name = t.columns[c];
        if (starts_with(name, "f_")) {
          p.series.push_back(
              {name, next_color(), false, column_pts(t, xi, static_cast<int>(c))});
        } else if (name == "transverse") {
          p.series.push_back(
              {name, kGray, true, column_pts(t, xi, static_cast<int>(c))});
        }
      }
      if (p.series.empty()) {
        throw std::invalid_argument(
            "figure kind 'noise_ratio' requires f_* columns");
      }
      panels.push_back(std::move(p));
      break;
    }
    case FigureKind::psd: {
      const int xi = require_column(t, "omega_rad_s", "psd");
      const int yi = require_column(t, "psd", "psd");
      Panel p{"ω [rad/s]", "S_q [m²/(rad/s)]"};
      p.logx = true;
      p.logy = true;
      p.series.push_back({"psd", next_color(), false, column_pts(t, xi, yi)});
      panels.push_back(std::move(p));
      break;
    }
  }
  return render(panels, title);
}

}  // namespace qmir::cli
