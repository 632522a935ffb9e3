#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "scope/error.hpp"
#include "scope/plot.hpp"

namespace scope::plot {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 600;
constexpr double kMargin = 60;
constexpr double kLeft = kMargin;
constexpr double kRight = kWidth - kMargin;
constexpr double kTop = kMargin;
constexpr double kBottom = kHeight - kMargin;
constexpr int kTargetTicks = 5;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

const char* color(std::size_t i) {
  return kPalette[i % std::size(kPalette)];
}

// Pixel coordinates with two decimals. "-0.00" is folded into "0.00".
std::string px(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string number_label(double v) {
  if (v == 0) v = 0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // Control characters other than tab/newline are not allowed in XML 1.0.
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n') {
          out += ' ';
        } else {
          out += c;
        }
    }
  }
  return out;
}

// Heckbert's nice numbers: 1, 2, 5 or 10 times a power of ten.
double nice_number(double x, bool round) {
  const double exponent = std::floor(std::log10(x));
  const double fraction = x / std::pow(10.0, exponent);
  double nice;
  if (round) {
    nice = fraction < 1.5 ? 1 : fraction < 3 ? 2 : fraction < 7 ? 5 : 10;
  } else {
    nice = fraction <= 1 ? 1 : fraction <= 2 ? 2 : fraction <= 5 ? 5 : 10;
  }
  return nice * std::pow(10.0, exponent);
}

struct Axis {
  AxisScale scale = AxisScale::Linear;
  double lo = 0;
  double hi = 1;
  std::vector<double> ticks;

  double fraction(double v) const {
    if (scale == AxisScale::Log10) {
      return (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
    }
    return (v - lo) / (hi - lo);
  }
};

Axis linear_axis(double lo, double hi) {
  if (lo == hi) {
    const double pad = lo == 0 ? 1.0 : std::fabs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  const double range = nice_number(hi - lo, false);
  const double step = nice_number(range / (kTargetTicks - 1), true);
  const double first = std::floor(lo / step + 1e-9);
  const double last = std::ceil(hi / step - 1e-9);
  Axis axis;
  axis.lo = first * step;
  axis.hi = last * step;
  for (double k = first; k <= last; k += 1) {
    axis.ticks.push_back(k * step);
  }
  return axis;
}

Axis log_axis(double lo, double hi) {
  double first = std::floor(std::log10(lo) + 1e-9);
  double last = std::ceil(std::log10(hi) - 1e-9);
  if (last <= first) {
    last = first + 1;
  }
  Axis axis;
  axis.scale = AxisScale::Log10;
  axis.lo = std::pow(10.0, first);
  axis.hi = std::pow(10.0, last);
  for (double e = first; e <= last; e += 1) {
    axis.ticks.push_back(std::pow(10.0, e));
  }
  return axis;
}

Axis make_axis(AxisScale scale, double lo, double hi) {
  return scale == AxisScale::Log10 ? log_axis(lo, hi) : linear_axis(lo, hi);
}

double to_x(const Axis& a, double v) {
  return kLeft + a.fraction(v) * (kRight - kLeft);
}

double to_y(const Axis& a, double v) {
  return kBottom - a.fraction(v) * (kBottom - kTop);
}

void check_log(const AxisSpec& spec, const char* name, double v) {
  if (spec.scale == AxisScale::Log10 && !(v > 0)) {
    throw LogAxisDomain(name, v);
  }
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

class SvgWriter {
 public:
  void line(const char* cls, double x1, double y1, double x2, double y2, const char* stroke,
            double width = 1) {
    out_ += "<line class=\"";
    out_ += cls;
    out_ += "\" x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) + "\" y2=\"" +
            px(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + px(width) + "\"/>\n";
  }
  void rect(const char* cls, double x, double y, double w, double h, const char* fill,
            const char* extra = "") {
    out_ += "<rect class=\"";
    out_ += cls;
    out_ += "\" x=\"" + px(x) + "\" y=\"" + px(y) + "\" width=\"" + px(w) + "\" height=\"" +
            px(h) + "\" fill=\"" + fill + "\"" + extra + "/>\n";
  }
  void text(const char* cls, double x, double y, const char* anchor, int size,
            std::string_view content, const char* extra = "") {
    out_ += "<text class=\"";
    out_ += cls;
    out_ += "\" x=\"" + px(x) + "\" y=\"" + px(y) + "\" text-anchor=\"" + anchor +
            "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(size) + "\"" + extra +
            ">" + escape(content) + "</text>\n";
  }
  void raw(std::string_view s) { out_ += s; }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

std::string fit_label(const std::string& label, const LinearFit& fit) {
  char buf[96];
  std::snprintf(buf, sizeof buf, " (y = %.4gx %c %.4g)", fit.slope, fit.intercept < 0 ? '-' : '+',
                std::fabs(fit.intercept));
  return label + buf;
}

}  // namespace

std::string render(const PlotSpec& spec, std::span<const SeriesData> series) {
  const bool any_points = std::any_of(series.begin(), series.end(),
                                      [](const SeriesData& s) { return !s.points.empty(); });
  if (!any_points) {
    throw EmptyPlot();
  }

  Range xr, yr;
  std::set<double> slots;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      check_log(spec.x_axis, "x", p.x);
      check_log(spec.y_axis, "y", p.y);
      xr.add(p.x);
      slots.insert(p.x);
      if (spec.type == PlotType::Bar) {
        yr.add(p.y);
      } else {
        const double low = p.y - p.yerr;
        yr.add(spec.y_axis.scale == AxisScale::Log10 && !(low > 0) ? p.y : low);
        yr.add(p.y + p.yerr);
      }
    }
    if (spec.type == PlotType::Regression) {
      for (const auto& smp : s.samples) {
        xr.add(smp.x);
        yr.add(smp.y);
      }
    }
  }
  if (spec.type == PlotType::Bar && spec.y_axis.scale == AxisScale::Linear) {
    yr.add(0);
  }

  std::vector<LinearFit> fits(series.size());
  if (spec.type == PlotType::Regression) {
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (!series[i].samples.empty()) {
        fits[i] = linear_regression(series[i].samples);
      }
    }
  }

  const Axis yaxis = make_axis(spec.y_axis.scale, yr.lo, yr.hi);
  const Axis xaxis = make_axis(spec.x_axis.scale, xr.lo, xr.hi);
  const std::vector<double> slot_values(slots.begin(), slots.end());
  const double slot_width = (kRight - kLeft) / static_cast<double>(slot_values.size());

  SvgWriter w;
  w.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
  w.raw("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
        "viewBox=\"0 0 800 600\">\n");
  w.raw("<defs>\n<clipPath id=\"plot-area\">\n");
  w.rect("clip", kLeft, kTop, kRight - kLeft, kBottom - kTop, "black");
  w.raw("</clipPath>\n</defs>\n");
  w.rect("background", 0, 0, kWidth, kHeight, "white");

  if (spec.title) {
    w.text("title", kWidth / 2, 34, "middle", 18, *spec.title);
  }

  // Grid, ticks and tick labels.
  w.raw("<g class=\"axes\">\n");
  for (double t : yaxis.ticks) {
    const double y = to_y(yaxis, t);
    w.line("grid", kLeft, y, kRight, y, "#e0e0e0");
    w.line("tick", kLeft - 5, y, kLeft, y, "black");
    w.text("tick-label", kLeft - 8, y + 4, "end", 11, number_label(t));
  }
  if (spec.type == PlotType::Bar) {
    for (std::size_t j = 0; j < slot_values.size(); ++j) {
      const double x = kLeft + (static_cast<double>(j) + 0.5) * slot_width;
      w.line("tick", x, kBottom, x, kBottom + 5, "black");
      w.text("tick-label", x, kBottom + 18, "middle", 11, number_label(slot_values[j]));
    }
  } else {
    for (double t : xaxis.ticks) {
      const double x = to_x(xaxis, t);
      w.line("grid", x, kTop, x, kBottom, "#e0e0e0");
      w.line("tick", x, kBottom, x, kBottom + 5, "black");
      w.text("tick-label", x, kBottom + 18, "middle", 11, number_label(t));
    }
  }
  w.line("axis", kLeft, kBottom, kRight, kBottom, "black");
  w.line("axis", kLeft, kTop, kLeft, kBottom, "black");
  w.text("axis-label", kWidth / 2, kHeight - 16, "middle", 13, spec.x_axis.label);
  w.text("axis-label", 18, kHeight / 2, "middle", 13, spec.y_axis.label,
         " transform=\"rotate(-90 18 300)\"");
  w.raw("</g>\n");

  // Data.
  const double group_width = slot_width * 0.8;
  const double bar_width = group_width / static_cast<double>(series.size());
  const double baseline = spec.y_axis.scale == AxisScale::Log10 ? kBottom : to_y(yaxis, 0);

  for (std::size_t i = 0; i < series.size(); ++i) {
    const SeriesData& s = series[i];
    const char* c = color(i);
    w.raw("<g class=\"series\" clip-path=\"url(#plot-area)\">\n");
    switch (spec.type) {
      case PlotType::Bar:
        for (const auto& p : s.points) {
          const auto j = static_cast<double>(
              std::lower_bound(slot_values.begin(), slot_values.end(), p.x) - slot_values.begin());
          const double x = kLeft + j * slot_width + (slot_width - group_width) / 2 +
                           static_cast<double>(i) * bar_width;
          const double y = to_y(yaxis, p.y);
          w.rect("bar", x, std::min(y, baseline), bar_width, std::fabs(baseline - y), c);
        }
        break;
      case PlotType::ErrorbarLine:
        if (!s.points.empty()) {
          std::string pts;
          for (const auto& p : s.points) {
            if (!pts.empty()) pts += ' ';
            pts += px(to_x(xaxis, p.x)) + "," + px(to_y(yaxis, p.y));
          }
          w.raw("<polyline class=\"series-line\" points=\"" + pts + "\" fill=\"none\" stroke=\"" +
                c + "\" stroke-width=\"2.00\"/>\n");
        }
        [[fallthrough]];
      case PlotType::Regression:
        if (spec.type == PlotType::Regression) {
          for (const auto& smp : s.samples) {
            w.raw("<circle class=\"point\" cx=\"" + px(to_x(xaxis, smp.x)) + "\" cy=\"" +
                  px(to_y(yaxis, smp.y)) + "\" r=\"3.00\" fill=\"" + c + "\"/>\n");
          }
        }
        for (const auto& p : s.points) {
          if (p.yerr > 0) {
            const double low = p.y - p.yerr;
            const double low_px = spec.y_axis.scale == AxisScale::Log10 && !(low > 0)
                                      ? kBottom
                                      : to_y(yaxis, low);
            const double x = to_x(xaxis, p.x);
            w.line("errorbar", x, low_px, x, to_y(yaxis, p.y + p.yerr), c, 1.5);
          }
        }
        if (spec.type == PlotType::Regression && !s.samples.empty()) {
          const LinearFit& f = fits[i];
          w.line("fit", kLeft, to_y(yaxis, f.slope * xaxis.lo + f.intercept), kRight,
                 to_y(yaxis, f.slope * xaxis.hi + f.intercept), c, 2);
        }
        break;
    }
    w.raw("</g>\n");
  }

  // Legend, top right inside the plot area.
  const double lx = kRight - 200;
  const double ly = kTop + 10;
  w.raw("<g class=\"legend\">\n");
  w.rect("legend-box", lx, ly, 190, 10 + 18 * static_cast<double>(series.size()), "white",
         " stroke=\"#999999\" fill-opacity=\"0.85\"");
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = ly + 8 + 18 * static_cast<double>(i);
    w.rect("legend-swatch", lx + 8, y, 12, 12, color(i));
    std::string label = series[i].label;
    if (spec.type == PlotType::Regression && !series[i].samples.empty()) {
      label = fit_label(label, fits[i]);
    }
    w.text("legend-label", lx + 26, y + 10, "start", 11, label);
  }
  w.raw("</g>\n");
  w.raw("</svg>\n");
  return w.take();
}

}  // namespace scope::plot
