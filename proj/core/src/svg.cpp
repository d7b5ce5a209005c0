#include "specpart/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "specpart/errors.hpp"

namespace specpart {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 56.0;

std::string num(double x, int precision = 6) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, precision);
  (void)ec;
  return std::string(buf, end);
}

double nice_step(double range) {
  if (!(range > 0.0)) return 1.0;
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double mult = 10.0;
  if (norm < 1.5)
    mult = 1.0;
  else if (norm < 3.5)
    mult = 2.0;
  else if (norm < 7.5)
    mult = 5.0;
  return mult * mag;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void render_svg(const std::vector<SvgSeries>& series, const SvgAxes& axes,
                const std::string& path) {
  double x0 = axes.x_min, x1 = axes.x_max;
  double y0 = axes.y_min, y1 = axes.y_max;

  const bool auto_x = std::isnan(x0) || std::isnan(x1);
  const bool auto_y = std::isnan(y0) || std::isnan(y1);
  if (auto_x || auto_y) {
    double dx0 = 0.0, dx1 = 1.0, dy0 = 0.0, dy1 = 1.0;
    bool any = false;
    for (const auto& s : series) {
      for (const auto& p : s.points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
        if (!any) {
          dx0 = dx1 = p.x;
          dy0 = dy1 = p.y;
          any = true;
        } else {
          dx0 = std::min(dx0, p.x);
          dx1 = std::max(dx1, p.x);
          dy0 = std::min(dy0, p.y);
          dy1 = std::max(dy1, p.y);
        }
      }
    }
    if (!any) {
      dx0 = dy0 = 0.0;
      dx1 = dy1 = 1.0;
    }
    auto pad = [](double lo, double hi) {
      const double span = hi - lo;
      const double eps = span > 0.0 ? 0.05 * span : std::max(0.5, std::abs(lo));
      return std::pair<double, double>(lo - eps, hi + eps);
    };
    if (auto_x) std::tie(x0, x1) = pad(dx0, dx1);
    if (auto_y) std::tie(y0, y1) = pad(dy0, dy1);
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return kMarginLeft + (x - x0) / (x1 - x0) * plot_w; };
  auto sy = [&](double y) {
    return kHeight - kMarginBottom - (y - y0) / (y1 - y0) * plot_h;
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParamError("cannot open for writing: " + path);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << int(kWidth)
      << "\" height=\"" << int(kHeight) << "\" viewBox=\"0 0 " << int(kWidth)
      << " " << int(kHeight) << "\">\n"
      << "<rect width=\"" << int(kWidth) << "\" height=\"" << int(kHeight)
      << "\" fill=\"white\"/>\n";

  // frame
  out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop)
      << "\" width=\"" << num(plot_w) << "\" height=\"" << num(plot_h)
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  // ticks and grid
  const double xstep = nice_step(x1 - x0);
  for (double t = std::ceil(x0 / xstep) * xstep; t <= x1 + 1e-12 * xstep;
       t += xstep) {
    const double px = sx(t);
    out << "<line x1=\"" << num(px) << "\" y1=\"" << num(kHeight - kMarginBottom)
        << "\" x2=\"" << num(px) << "\" y2=\""
        << num(kHeight - kMarginBottom + 5) << "\" stroke=\"#333333\"/>\n";
    out << "<line x1=\"" << num(px) << "\" y1=\"" << num(kMarginTop)
        << "\" x2=\"" << num(px) << "\" y2=\"" << num(kHeight - kMarginBottom)
        << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    out << "<text x=\"" << num(px) << "\" y=\""
        << num(kHeight - kMarginBottom + 20)
        << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333333\">"
        << num(std::abs(t) < 1e-12 * xstep ? 0.0 : t, 4) << "</text>\n";
  }
  const double ystep = nice_step(y1 - y0);
  for (double t = std::ceil(y0 / ystep) * ystep; t <= y1 + 1e-12 * ystep;
       t += ystep) {
    const double py = sy(t);
    out << "<line x1=\"" << num(kMarginLeft - 5) << "\" y1=\"" << num(py)
        << "\" x2=\"" << num(kMarginLeft) << "\" y2=\"" << num(py)
        << "\" stroke=\"#333333\"/>\n";
    out << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(py)
        << "\" x2=\"" << num(kWidth - kMarginRight) << "\" y2=\"" << num(py)
        << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    out << "<text x=\"" << num(kMarginLeft - 9) << "\" y=\"" << num(py + 4)
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#333333\">"
        << num(std::abs(t) < 1e-12 * ystep ? 0.0 : t, 4) << "</text>\n";
  }

  // axis labels and title
  out << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\""
      << num(kHeight - 12)
      << "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#111111\">"
      << escape_xml(axes.x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << num(kMarginTop + plot_h / 2)
      << "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#111111\" "
         "transform=\"rotate(-90 18 "
      << num(kMarginTop + plot_h / 2) << ")\">" << escape_xml(axes.y_label)
      << "</text>\n";
  if (!axes.title.empty())
    out << "<text x=\"" << num(kMarginLeft + plot_w / 2)
        << "\" y=\"24\" font-size=\"15\" text-anchor=\"middle\" "
           "fill=\"#111111\">"
        << escape_xml(axes.title) << "</text>\n";

  // series
  for (const auto& s : series) {
    if (s.draw_line) {
      out << "<polyline fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"2\"";
      if (s.dashed) out << " stroke-dasharray=\"7,5\"";
      out << " points=\"";
      bool first = true;
      for (const auto& p : s.points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
        if (!first) out << " ";
        out << num(sx(p.x)) << "," << num(sy(p.y));
        first = false;
      }
      out << "\"/>\n";
    } else {
      for (const auto& p : s.points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
        out << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y))
            << "\" r=\"3.2\" fill=\"" << s.color << "\" fill-opacity=\""
            << num(std::clamp(p.opacity, 0.0, 1.0), 4) << "\"/>\n";
      }
    }
  }

  // legend
  double ly = kMarginTop + 14.0;
  for (const auto& s : series) {
    const double lx = kWidth - kMarginRight - 190.0;
    if (s.draw_line) {
      out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
          << num(lx + 22) << "\" y2=\"" << num(ly - 4) << "\" stroke=\""
          << s.color << "\" stroke-width=\"2\""
          << (s.dashed ? " stroke-dasharray=\"7,5\"" : "") << "/>\n";
    } else {
      out << "<circle cx=\"" << num(lx + 11) << "\" cy=\"" << num(ly - 4)
          << "\" r=\"3.2\" fill=\"" << s.color << "\"/>\n";
    }
    out << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly)
        << "\" font-size=\"12\" fill=\"#111111\">" << escape_xml(s.label)
        << "</text>\n";
    ly += 17.0;
  }

  out << "</svg>\n";
  if (!out) throw ParamError("write failed: " + path);
}

}  // namespace specpart
